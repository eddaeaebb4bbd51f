#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "sqtile/error.hpp"
#include "sqtile/tiling.hpp"

using namespace sqtile;

namespace {

struct Tiled {
  fixtures::Solved s;
  SquareTiling t;
};

Tiled tiled(const LatticeSubgraph& sub, double tol = 1e-10) {
  Tiled out{fixtures::solve_mesh(sub, tol), {}};
  out.t = build_tiling(out.s.dual, out.s.h, out.s.conj);
  return out;
}

Tiled tiled(const PlanarDomain& d, int level) {
  LatticeSubgraph sub = build_lattice_subgraph(d, level, fixtures::seed_of(d));
  classify_boundary(sub);
  return tiled(sub);
}

}  // namespace

TEST_CASE("unit square G_2 tiling") {
  const Tiled g = tiled(fixtures::unit_square(), 2);
  const SquareTiling& t = g.t;
  CHECK(t.squares.size() == 8);
  CHECK(t.width == doctest::Approx(1.5));
  std::set<std::pair<long, long>> corners;
  int degenerate = 0;
  for (const Square& s : t.squares) {
    if (s.degenerate) {
      ++degenerate;
      continue;
    }
    CHECK(s.side == doctest::Approx(0.5));
    CHECK(s.x1 - s.x0 == doctest::Approx(0.5));
    corners.insert({std::lround(s.x0 * 2), std::lround(s.y0 * 2)});
  }
  CHECK(degenerate == 2);
  // Columns [0,1/2], [1/2,1], [1,3/2] by rows [0,1/2], [1/2,1].
  CHECK(corners == std::set<std::pair<long, long>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}});
  const TilingReport rep = validate_tiling(t, 1e-12);
  CHECK(rep.ok);
  CHECK(rep.area_error < 1e-12);
  CHECK(rep.overlap < 1e-12);
  CHECK_NOTHROW(ensure_valid(rep));
  // I_t spans the whole width.
  CHECK(t.vertex_intervals[g.s.mesh.t()].lo == doctest::Approx(0.0));
  CHECK(t.vertex_intervals[g.s.mesh.t()].hi == doctest::Approx(1.5));
}

TEST_CASE("path t-v-b tiling") {
  const Tiled g = tiled(fixtures::path_subgraph());
  REQUIRE(g.t.squares.size() == 2);
  CHECK(g.t.width == doctest::Approx(0.5));
  for (const Square& s : g.t.squares) {
    CHECK(s.x0 == doctest::Approx(0.0));
    CHECK(s.x1 == doctest::Approx(0.5));
    CHECK(s.side == doctest::Approx(0.5));
  }
  CHECK(validate_tiling(g.t, 1e-12).ok);
}

TEST_CASE("injected overlap") {
  Tiled g = tiled(fixtures::unit_square(), 3);
  int target = -1;
  for (const Square& s : g.t.squares) {
    if (!s.degenerate && s.x0 > 0.1 && s.x1 < g.t.width - 0.1) target = s.edge;
  }
  REQUIRE(target >= 0);
  g.t.squares[target].x0 += 1e-3;
  g.t.squares[target].x1 += 1e-3;
  const TilingReport rep = validate_tiling(g.t, 1e-8);
  CHECK(rep.overlap == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(rep.overlap_a >= 0);
  CHECK((rep.overlap_a == target || rep.overlap_b == target));
  CHECK_FALSE(rep.ok);
  try {
    ensure_valid(rep);
    FAIL("expected ValidationFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationFailed);
    CHECK(std::string(e.what()).find("overlap") != std::string::npos);
  }
}

TEST_CASE("fields from different meshes") {
  const Tiled a = tiled(fixtures::unit_square(), 2);
  const Tiled b = tiled(fixtures::unit_square(), 3);
  try {
    build_tiling(a.s.dual, b.s.h, a.s.conj);
    FAIL("expected InconsistentFields");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentFields);
  }
}

TEST_CASE("duality on small meshes") {
  const Tiled g = tiled(fixtures::unit_square(), 2);
  const DualityReport d = dual_tiling_check(g.s.dual, 1e-10);
  CHECK(d.dual_intensity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(d.ok);
  CHECK(d.square_mismatch < 1e-12);
  CHECK_NOTHROW(ensure_dual(d, 1e-10));

  const Tiled p = tiled(fixtures::path_subgraph());
  const DualityReport dp = dual_tiling_check(p.s.dual, 1e-10);
  CHECK(dp.dual_intensity == doctest::Approx(2.0));
  CHECK(dp.ok);

  DualityReport bad = d;
  bad.square_mismatch = 1e-3;
  CHECK_THROWS_AS(ensure_dual(bad, 1e-8), Error);
}

TEST_CASE("property: tiling identities") {
  const std::vector<std::pair<PlanarDomain, std::vector<int>>> cases{
      {fixtures::unit_square(), {2, 3, 4, 5}},
      {fixtures::l_hexagon(), {2, 3, 4, 5}},
      {fixtures::disk64(), {1, 2, 3, 4}}};
  for (const auto& [domain, levels] : cases) {
    for (int n : levels) {
      CAPTURE(n);
      const Tiled g = tiled(domain, n);
      const SquareTiling& t = g.t;
      const TilingReport rep = validate_tiling(t, 1e-9);
      CHECK(rep.ok);
      CHECK(t.squares.size() == std::size_t(g.s.mesh.num_edges()));

      // Degenerate squares are exactly the edges with |w| <= tol.
      for (const Square& s : t.squares) {
        CHECK(s.degenerate == (std::abs(g.s.flow.flow[s.edge]) <= g.s.h.tol));
      }

      // Node law in pictures: at a free vertex the squares above and the
      // squares below cover the same stretch of the horizontal line.
      const PlaneMap& map = g.s.mesh.embedding.map;
      for (int u = 0; u < g.s.mesh.num_free; ++u) {
        double above = 0, below = 0, lo_a = 1e9, hi_a = -1e9, lo_b = 1e9, hi_b = -1e9;
        for (int e : t.incident[u]) {
          const Square& s = t.squares[e];
          if (s.degenerate) continue;
          const int other = map.tail[2 * e] == u ? map.head(2 * e) : map.tail[2 * e];
          if (g.s.h.values[other] > g.s.h.values[u]) {
            above += s.x1 - s.x0;
            lo_a = std::min(lo_a, s.x0);
            hi_a = std::max(hi_a, s.x1);
          } else {
            below += s.x1 - s.x0;
            lo_b = std::min(lo_b, s.x0);
            hi_b = std::max(hi_b, s.x1);
          }
        }
        if (above == 0 && below == 0) continue;
        CHECK(std::abs(above - below) <= 1e-10);
        CHECK(std::abs(lo_a - lo_b) <= 1e-10);
        CHECK(std::abs(hi_a - hi_b) <= 1e-10);
        CHECK(std::abs(t.vertex_intervals[u].lo - lo_a) <= 1e-10);
        CHECK(std::abs(t.vertex_intervals[u].hi - hi_a) <= 1e-10);
      }

      const DualityReport d = dual_tiling_check(g.s.dual, 1e-9);
      CHECK(d.ok);
      CHECK(std::abs(d.primal_intensity * d.dual_intensity - 1.0) <= 1e-9);
    }
  }
}
