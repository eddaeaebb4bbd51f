#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqtile/domain.hpp"

namespace sqtile {

// Integer coordinates of a point of the lattice of spacing 2^-level.
struct LatticePoint {
  std::int32_t i = 0;
  std::int32_t j = 0;

  auto operator<=>(const LatticePoint&) const = default;
};

// Lattice directions in counter-clockwise order.
enum class Dir : std::uint8_t { E = 0, N = 1, W = 2, S = 3 };

constexpr std::array<Dir, 4> kDirs{Dir::E, Dir::N, Dir::W, Dir::S};

constexpr LatticePoint step(LatticePoint p, Dir d) {
  switch (d) {
    case Dir::E: return {p.i + 1, p.j};
    case Dir::N: return {p.i, p.j + 1};
    case Dir::W: return {p.i - 1, p.j};
    case Dir::S: return {p.i, p.j - 1};
  }
  return p;
}

enum class BoundaryLabel : std::uint8_t { None, T, B, L, R };

enum class Axis : std::uint8_t { Horizontal, Vertical };

struct LatticeEdge {
  int a = 0;  // lower-left endpoint (vertex index)
  int b = 0;
  Axis axis = Axis::Horizontal;
};

// The connected component of the seed in the lattice graph of edges lying
// entirely inside the domain.
struct LatticeSubgraph {
  int level = 0;
  std::vector<LatticePoint> vertices;            // sorted
  std::vector<LatticeEdge> edges;                // sorted by (a, b)
  std::vector<std::array<int, 4>> neighbor;      // vertex index per Dir, -1 if absent
  std::vector<std::array<ArcMask, 4>> crossing;  // arcs met by the full-lattice edge per Dir
  std::vector<BoundaryLabel> labels;             // filled by classify_boundary

  double spacing() const;
  Point position(LatticePoint p) const;
  Point position(int vertex) const { return position(vertices[vertex]); }
  std::optional<int> find(LatticePoint p) const;
  int degree(int vertex) const;
  bool is_boundary(int vertex) const;
};

LatticeSubgraph build_lattice_subgraph(const PlanarDomain& domain, int level, const Point& seed);

// Fills labels with T/B precedence over L/R and checks that no lattice
// vertex of the component sees opposite arcs through its incident edges.
void classify_boundary(LatticeSubgraph& sub);

// Smallest level in [1, max_level] at which build + classify succeed.
std::optional<int> minimum_feasible_level(const PlanarDomain& domain, const Point& seed,
                                          int max_level = 12);

}  // namespace sqtile
