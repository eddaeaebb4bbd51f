#include <algorithm>
#include <chrono>
#include <cmath>

#include "sqtile/mapper.hpp"

namespace sqtile {

LevelResult run_level(const PlanarDomain& domain, const Point& seed, int level, double tol) {
  const auto started = std::chrono::steady_clock::now();
  LevelResult r;
  r.sub = build_lattice_subgraph(domain, level, seed);
  classify_boundary(r.sub);
  r.mesh = contract_marked_arcs(r.sub);
  r.dual = build_dual(r.mesh);
  r.network = network_of(r.mesh.embedding);
  r.h = solve_harmonic(r.network, tol);
  r.flow = edge_flow(r.network, r.h);
  r.conjugate = conjugate_potential(r.dual, r.flow);
  r.tiling = build_tiling(r.dual, r.h, r.conjugate);
  r.tiling_report = validate_tiling(r.tiling, std::max(1e-8, 100 * tol));
  ensure_valid(r.tiling_report);
  r.map = vertex_images(r.mesh, r.sub, r.dual, r.h, r.conjugate);
  r.cr = cr_residual(r.mesh, r.sub, r.dual, r.h, r.conjugate);
  r.duffin = duffin_lower_bound(r.mesh);
  r.max_side = max_square_side(r.tiling);
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

LevelDiagnostics diagnostics_of(const LevelResult& r) {
  LevelDiagnostics d;
  d.level = r.sub.level;
  d.intensity = r.flow.intensity;
  d.r_eff = 1.0 / r.flow.intensity;
  d.duffin_lb = r.duffin;
  d.max_side = r.max_side;
  d.cr_residual = r.cr.max_residual;
  d.node_residual = r.flow.max_node_residual(r.network);
  d.cycle_residual = r.conjugate.cycle_residual;
  d.solve_iters = r.h.stats.iterations;
  d.wall_ms = r.wall_ms;
  return d;
}

std::vector<double> ConvergenceReport::increments() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const LevelDiagnostics &a = levels[k - 1], &b = levels[k];
    if (!a.failure && !b.failure) out.push_back(std::abs(b.intensity - a.intensity));
  }
  return out;
}

bool ConvergenceReport::complete() const {
  return std::none_of(levels.begin(), levels.end(),
                      [](const LevelDiagnostics& d) { return d.failure.has_value(); });
}

ConvergenceReport convergence_sweep(const PlanarDomain& domain, const Point& seed, int first,
                                    int last, double tol) {
  ConvergenceReport rep;
  for (int n = first; n <= last; ++n) {
    try {
      rep.levels.push_back(diagnostics_of(run_level(domain, seed, n, tol)));
    } catch (const Error& e) {
      LevelDiagnostics d;
      d.level = n;
      d.failure = LevelFailure{e.code(), e.module(), e.what()};
      rep.levels.push_back(d);
    }
  }
  return rep;
}

}  // namespace sqtile
