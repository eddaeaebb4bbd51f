#include "sqtile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "sqtile/error.hpp"

namespace sqtile {

namespace {

const char* kModule = "tiling";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

SquareTiling build_tiling(const DualGraph& dual, const HarmonicField& h,
                          const ConjugateField& c) {
  const PlaneMap& map = dual.primal.map;
  const std::uint64_t fp = map.fingerprint();
  if (h.fingerprint != fp || c.fingerprint != fp || h.values.size() != map.num_vertices ||
      c.values.size() != dual.num_faces()) {
    throw Error(ErrorCode::InconsistentFields, kModule, "fields were computed on different meshes");
  }

  SquareTiling t;
  t.width = c.intensity;
  const int num_edges = dual.num_edges();
  t.squares.resize(num_edges);
  t.incident.assign(map.num_vertices, {});
  for (int e = 0; e < num_edges; ++e) {
    const int x = map.tail[2 * e], y = map.head(2 * e);
    const double hx = h.values[x], hy = h.values[y];
    const double cl = c.values[dual.faces.left_face[2 * e]];
    const double cr = c.values[dual.faces.right_face(2 * e)];
    Square& s = t.squares[e];
    s.edge = e;
    s.y0 = std::min(hx, hy);
    s.y1 = std::max(hx, hy);
    s.x0 = std::min(cl, cr);
    s.x1 = std::max(cl, cr);
    s.side = s.y1 - s.y0;
    s.degenerate = x == y || s.side <= h.tol;
    if (x != y) {
      t.incident[x].push_back(e);
      t.incident[y].push_back(e);
    }
  }

  t.vertex_intervals.resize(map.num_vertices);
  for (int u = 0; u < map.num_vertices; ++u) {
    Interval& iv = t.vertex_intervals[u];
    iv.height = h.values[u];
    if (t.incident[u].empty()) continue;
    iv.lo = t.squares[t.incident[u].front()].x0;
    iv.hi = t.squares[t.incident[u].front()].x1;
    for (int e : t.incident[u]) {
      iv.lo = std::min(iv.lo, t.squares[e].x0);
      iv.hi = std::max(iv.hi, t.squares[e].x1);
    }
  }
  return t;
}

double tile_eps(const SquareTiling& t) { return 1e-9 * std::max(1.0, t.width); }

TilingReport validate_tiling(const SquareTiling& t, double tol) {
  TilingReport rep;
  rep.tol = tol;

  double area = 0.0, coverage = 0.0;
  for (const Square& s : t.squares) {
    rep.squareness = std::max(rep.squareness, std::abs((s.x1 - s.x0) - s.side));
    area += s.side * s.side;
    coverage += (s.x1 - s.x0) * (s.y1 - s.y0);
    // Squares must stay inside the rectangle.
    const double out = std::max({-s.x0, s.x1 - t.width, -s.y0, s.y1 - 1.0, 0.0});
    rep.coverage_error = std::max(rep.coverage_error, out);
  }
  rep.area_error = std::abs(area - t.width);
  rep.coverage_error = std::max(rep.coverage_error, std::abs(coverage - t.width));

  // Sweep in y: a square enters at y0 and is compared with every active
  // square whose top lies above its bottom.
  std::vector<int> order;
  for (int e = 0; e < static_cast<int>(t.squares.size()); ++e) {
    if (!t.squares[e].degenerate) order.push_back(e);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Square &sa = t.squares[a], &sb = t.squares[b];
    return sa.y0 != sb.y0 ? sa.y0 < sb.y0 : a < b;
  });
  std::vector<int> active;
  for (int e : order) {
    const Square& s = t.squares[e];
    std::erase_if(active, [&](int a) { return t.squares[a].y1 <= s.y0; });
    for (int a : active) {
      const Square& o = t.squares[a];
      const double dy = std::min(s.y1, o.y1) - std::max(s.y0, o.y0);
      const double dx = std::min(s.x1, o.x1) - std::max(s.x0, o.x0);
      const double depth = std::min(dx, dy);
      if (depth > rep.overlap) {
        rep.overlap = depth;
        rep.overlap_a = std::min(a, e);
        rep.overlap_b = std::max(a, e);
      }
    }
    active.push_back(e);
  }

  // Each I_u is a union of the intervals of its edges; sorted by left end
  // the chain must have no holes.
  for (const auto& edges : t.incident) {
    std::vector<std::pair<double, double>> iv;
    for (int e : edges) iv.emplace_back(t.squares[e].x0, t.squares[e].x1);
    std::sort(iv.begin(), iv.end());
    for (std::size_t k = 1; k < iv.size(); ++k) {
      rep.interval_gap = std::max(rep.interval_gap, iv[k].first - iv[k - 1].second);
      iv[k].second = std::max(iv[k].second, iv[k - 1].second);
    }
  }

  rep.overlap_limit = std::max(tol, tile_eps(t));
  rep.ok = rep.squareness <= tol && rep.area_error <= tol && rep.coverage_error <= tol &&
           rep.interval_gap <= tol && rep.overlap <= rep.overlap_limit;
  return rep;
}

void ensure_valid(const TilingReport& rep) {
  if (rep.ok) return;
  std::string what;
  if (rep.overlap > rep.overlap_limit) {
    what = "squares " + std::to_string(rep.overlap_a) + " and " + std::to_string(rep.overlap_b) +
           " overlap by " + fmt(rep.overlap);
  } else if (rep.squareness > rep.tol) {
    what = "a square is off by " + fmt(rep.squareness);
  } else if (rep.area_error > rep.tol) {
    what = "sum of squared sides misses the intensity by " + fmt(rep.area_error);
  } else if (rep.coverage_error > rep.tol) {
    what = "squares miss the rectangle by " + fmt(rep.coverage_error);
  } else {
    what = "a vertex interval has a gap of " + fmt(rep.interval_gap);
  }
  throw Error(ErrorCode::ValidationFailed, kModule, what);
}

DualityReport dual_tiling_check(const DualGraph& dual, double tol, double solver_tol) {
  const Network primal_net = network_of(dual.primal);
  const HarmonicField h = solve_harmonic(primal_net, solver_tol);
  const EdgeFlow w = edge_flow(primal_net, h);
  const ConjugateField c = conjugate_potential(dual, w);
  const SquareTiling primal = build_tiling(dual, h, c);

  const DualGraph second = build_dual(dual.dual);
  const Network dual_net = network_of(second.primal);
  const HarmonicField hd = solve_harmonic(dual_net, solver_tol);
  const EdgeFlow wd = edge_flow(dual_net, hd);
  const ConjugateField cd = conjugate_potential(second, wd);
  const SquareTiling rotated = build_tiling(second, hd, cd);

  DualityReport rep;
  rep.primal_intensity = w.intensity;
  rep.dual_intensity = wd.intensity;
  rep.product_error = std::abs(w.intensity * wd.intensity - 1.0);
  const double k = 1.0 / w.intensity;
  for (int e = 0; e < dual.num_edges(); ++e) {
    const Square& p = primal.squares[e];
    const Square& d = rotated.squares[e];
    const double worst = std::max({std::abs(d.x0 - (1.0 - p.y1) * k), std::abs(d.x1 - (1.0 - p.y0) * k),
                                   std::abs(d.y0 - p.x0 * k), std::abs(d.y1 - p.x1 * k)});
    if (worst > rep.square_mismatch || rep.worst_edge < 0) {
      rep.square_mismatch = std::max(rep.square_mismatch, worst);
      rep.worst_edge = e;
    }
  }
  rep.ok = rep.product_error <= tol && rep.square_mismatch <= tol;
  return rep;
}

void ensure_dual(const DualityReport& rep, double limit) {
  if (rep.product_error <= limit && rep.square_mismatch <= limit) return;
  throw Error(ErrorCode::DualityViolated, kModule,
              "edge " + std::to_string(rep.worst_edge) + " mismatches its rotated dual square by " +
                  fmt(rep.square_mismatch) + ", intensity product off by " +
                  fmt(rep.product_error));
}

}  // namespace sqtile
