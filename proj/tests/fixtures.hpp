#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sqtile/domain.hpp"
#include "sqtile/harmonic.hpp"
#include "sqtile/lattice.hpp"
#include "sqtile/mapper.hpp"
#include "sqtile/mesh.hpp"

namespace fixtures {

using sqtile::BoundaryPosition;
using sqtile::PlanarDomain;
using sqtile::Point;

inline PlanarDomain unit_square() {
  return PlanarDomain({{0, 0}, {0, 1}, {1, 1}, {1, 0}},
                      {BoundaryPosition{1, 0.0}, {2, 0.0}, {3, 0.0}, {0, 0.0}});
}

// Non-convex hexagon: a 2x2 square with the upper-right unit square removed.
// T is the top of the left arm, B the whole bottom side.
inline PlanarDomain l_hexagon() {
  return PlanarDomain({{0, 0}, {0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}},
                      {BoundaryPosition{1, 0.0}, {2, 0.0}, {5, 0.0}, {0, 0.0}});
}

// Regular 64-gon inscribed in the unit circle, vertices running clockwise
// from 45 degrees, marks at 45, 315, 225 and 135 degrees.
inline PlanarDomain disk64() {
  std::vector<Point> pts;
  const double pi = std::acos(-1.0);
  for (int j = 0; j < 64; ++j) {
    const double a = (45.0 - 5.625 * j) * pi / 180.0;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return PlanarDomain(pts, {BoundaryPosition{0, 0.0}, {16, 0.0}, {32, 0.0}, {48, 0.0}},
                      Point(0, 0));
}

inline Point seed_of(const PlanarDomain& d) { return d.seed() ? *d.seed() : d.default_seed(); }

// Vertical three-vertex path: b at (0,0), a free vertex at (0,1), t at
// (0,2), built directly as a lattice subgraph at the given level.
inline sqtile::LatticeSubgraph path_subgraph(int level = 0) {
  using namespace sqtile;
  LatticeSubgraph sub;
  sub.level = level;
  sub.vertices = {{0, 0}, {0, 1}, {0, 2}};
  sub.edges = {{0, 1, Axis::Vertical}, {1, 2, Axis::Vertical}};
  sub.neighbor = {{-1, 1, -1, -1}, {-1, 2, -1, 0}, {-1, -1, -1, 1}};
  sub.crossing.assign(3, {0, 0, 0, 0});
  sub.crossing[0][static_cast<int>(Dir::S)] = arc_bit(Arc::B);
  sub.crossing[1][static_cast<int>(Dir::W)] = arc_bit(Arc::L);
  sub.crossing[1][static_cast<int>(Dir::E)] = arc_bit(Arc::R);
  sub.crossing[2][static_cast<int>(Dir::N)] = arc_bit(Arc::T);
  sub.labels = {BoundaryLabel::B, BoundaryLabel::L, BoundaryLabel::T};
  return sub;
}

// The network of a mesh, solved, with flows and conjugate.
struct Solved {
  sqtile::MeshGraph mesh;
  sqtile::DualGraph dual;
  sqtile::Network net;
  sqtile::HarmonicField h;
  sqtile::EdgeFlow flow;
  sqtile::ConjugateField conj;
};

inline Solved solve_mesh(const sqtile::LatticeSubgraph& sub, double tol = 1e-10) {
  using namespace sqtile;
  Solved s;
  s.mesh = contract_marked_arcs(sub);
  s.dual = build_dual(s.mesh);
  s.net = network_of(s.mesh.embedding);
  s.h = solve_harmonic(s.net, tol);
  s.flow = edge_flow(s.net, s.h);
  s.conj = conjugate_potential(s.dual, s.flow);
  return s;
}

// Deterministic random convex polygon with n vertices in clockwise order.
inline std::vector<Point> random_convex_cw(sqtile::SplitMix64& rng, int n) {
  std::vector<double> angles;
  for (int k = 0; k < n; ++k) angles.push_back(double(rng.next() >> 11) * 0x1.0p-53 * 6.283185307179586);
  std::sort(angles.begin(), angles.end(), std::greater<>());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-3; }),
               angles.end());
  std::vector<Point> pts;
  const double cx = 0.1 * double(rng.below(10)), cy = 0.1 * double(rng.below(10));
  for (double a : angles) pts.emplace_back(cx + std::cos(a), cy + std::sin(a));
  return pts;
}

inline double uniform(sqtile::SplitMix64& rng) { return double(rng.next() >> 11) * 0x1.0p-53; }

}  // namespace fixtures
