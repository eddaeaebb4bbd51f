#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "sqtile/error.hpp"

using namespace sqtile;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::SchemaError;
}

BoundaryLabel label_at(const LatticeSubgraph& sub, int i, int j) {
  return sub.labels[*sub.find({i, j})];
}

// Strictly inside a convex clockwise polygon.
bool inside_convex(const std::vector<Point>& pts, const Point& p) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (cross(pts[(i + 1) % pts.size()] - pts[i], p - pts[i]) >= 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("unit square, level 2") {
  const PlanarDomain d = fixtures::unit_square();
  LatticeSubgraph sub = build_lattice_subgraph(d, 2, {0.5, 0.5});
  REQUIRE(sub.vertices.size() == 9);
  CHECK(sub.edges.size() == 12);
  for (const LatticePoint& p : sub.vertices) {
    CHECK(p.i >= 1);
    CHECK(p.i <= 3);
    CHECK(p.j >= 1);
    CHECK(p.j <= 3);
  }
  classify_boundary(sub);
  for (int i = 1; i <= 3; ++i) {
    CHECK(label_at(sub, i, 3) == BoundaryLabel::T);
    CHECK(label_at(sub, i, 1) == BoundaryLabel::B);
  }
  CHECK(label_at(sub, 1, 2) == BoundaryLabel::L);
  CHECK(label_at(sub, 3, 2) == BoundaryLabel::R);
  CHECK(label_at(sub, 2, 2) == BoundaryLabel::None);
  // The corner sees T and L; T wins.
  const int corner = *sub.find({1, 3});
  CHECK(has_arc(sub.crossing[corner][static_cast<int>(Dir::N)], Arc::T));
  CHECK(has_arc(sub.crossing[corner][static_cast<int>(Dir::W)], Arc::L));
}

TEST_CASE("too coarse, outside seed, minimum level") {
  const PlanarDomain d = fixtures::unit_square();
  CHECK(code_of([&] { build_lattice_subgraph(d, 1, {0.5, 0.5}); }) == ErrorCode::MeshTooCoarse);
  CHECK(code_of([&] { build_lattice_subgraph(d, 2, {2, 2}); }) == ErrorCode::SeedOutside);
  CHECK(minimum_feasible_level(d, {0.5, 0.5}) == 2);
  CHECK(minimum_feasible_level(fixtures::l_hexagon(), {0.5, 0.5}) == 2);
  CHECK(minimum_feasible_level(fixtures::disk64(), {0, 0}) == 1);
}

TEST_CASE("one cell wide strip sees opposite arcs") {
  const PlanarDomain strip({{0, 0}, {0, 0.3}, {1, 0.3}, {1, 0}},
                           {BoundaryPosition{1, 0.0}, {2, 0.0}, {3, 0.0}, {0, 0.0}});
  LatticeSubgraph sub = build_lattice_subgraph(strip, 2, {0.5, 0.25});
  CHECK(code_of([&] { classify_boundary(sub); }) == ErrorCode::OppositeArcViolation);
}

TEST_CASE("L hexagon, level 1 cannot separate L from R") {
  const PlanarDomain d = fixtures::l_hexagon();
  CHECK(code_of([&] {
          LatticeSubgraph sub = build_lattice_subgraph(d, 1, {0.5, 0.5});
          classify_boundary(sub);
        }) == ErrorCode::OppositeArcViolation);
}

TEST_CASE("property: convex polygons match brute-force enumeration") {
  SplitMix64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = fixtures::random_convex_cw(rng, 6 + int(rng.below(12)));
    if (pts.size() < 4) continue;
    const int n = int(pts.size());
    const PlanarDomain d(pts, {BoundaryPosition{0, 0.0}, {n / 4, 0.0}, {n / 2, 0.0}, {3 * n / 4, 0.0}});
    const Point seed = d.default_seed();
    const int level = 2 + int(rng.below(4));
    LatticeSubgraph sub;
    try {
      sub = build_lattice_subgraph(d, level, seed);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MeshTooCoarse);
      continue;
    }

    // For a convex domain an edge lies inside iff both ends do. Enumerate
    // the strictly interior lattice points and flood from the seed vertex.
    const double h = std::ldexp(1.0, -level);
    std::set<LatticePoint> inside;
    const int i0 = int(std::floor(d.bbox().min().x() / h)), i1 = int(std::ceil(d.bbox().max().x() / h));
    const int j0 = int(std::floor(d.bbox().min().y() / h)), j1 = int(std::ceil(d.bbox().max().y() / h));
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        if (inside_convex(pts, Point(i * h, j * h))) inside.insert({i, j});
      }
    }
    const LatticePoint start{int(std::ceil(seed.x() / h - 0.5)), int(std::ceil(seed.y() / h - 0.5))};
    REQUIRE(inside.count(start));
    std::set<LatticePoint> comp{start};
    std::deque<LatticePoint> queue{start};
    std::size_t edges = 0;
    while (!queue.empty()) {
      const LatticePoint p = queue.front();
      queue.pop_front();
      for (Dir dir : kDirs) {
        const LatticePoint q = step(p, dir);
        if (!inside.count(q)) continue;
        if (dir == Dir::E || dir == Dir::N) ++edges;
        if (comp.insert(q).second) queue.push_back(q);
      }
    }
    if (edges == 0) continue;
    CHECK(std::vector<LatticePoint>(comp.begin(), comp.end()) == sub.vertices);
    CHECK(edges == sub.edges.size());
    // Boundary vertices are exactly those missing a lattice neighbour.
    for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
      CHECK(sub.is_boundary(int(v)) == (sub.degree(int(v)) < 4));
    }
    ++checked;
  }
  CHECK(checked > 30);
}
