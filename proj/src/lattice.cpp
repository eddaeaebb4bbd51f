#include "sqtile/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <tuple>
#include <unordered_map>

#include "sqtile/error.hpp"

namespace sqtile {

namespace {

const char* kModule = "mesh";

std::uint64_t key_of(std::int32_t i, std::int32_t j) {
  return (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
}

std::string coords(const LatticePoint& p, int level) {
  const double h = std::ldexp(1.0, -level);
  return "(" + std::to_string(p.i * h) + ", " + std::to_string(p.j * h) + ")";
}

// Arcs met by every full-lattice edge that touches the boundary. Keys are
// the lower-left endpoint of the edge.
struct CrossingIndex {
  std::unordered_map<std::uint64_t, ArcMask> horizontal;
  std::unordered_map<std::uint64_t, ArcMask> vertical;

  ArcMask at(LatticePoint p, Dir d) const {
    const auto lookup = [](const auto& map, std::int32_t i, std::int32_t j) -> ArcMask {
      auto it = map.find(key_of(i, j));
      return it == map.end() ? ArcMask{0} : it->second;
    };
    switch (d) {
      case Dir::E: return lookup(horizontal, p.i, p.j);
      case Dir::W: return lookup(horizontal, p.i - 1, p.j);
      case Dir::N: return lookup(vertical, p.i, p.j);
      case Dir::S: return lookup(vertical, p.i, p.j - 1);
    }
    return 0;
  }
};

CrossingIndex index_crossings(const PlanarDomain& domain, double h) {
  CrossingIndex index;
  for (int s = 0; s < domain.segment_count(); ++s) {
    const Point a = domain.segment_start(s);
    const Point b = domain.segment_end(s);
    const auto i_lo = static_cast<std::int32_t>(std::floor(std::min(a.x(), b.x()) / h)) - 1;
    const auto i_hi = static_cast<std::int32_t>(std::ceil(std::max(a.x(), b.x()) / h)) + 1;
    const auto j_lo = static_cast<std::int32_t>(std::floor(std::min(a.y(), b.y()) / h)) - 1;
    const auto j_hi = static_cast<std::int32_t>(std::ceil(std::max(a.y(), b.y()) / h)) + 1;
    for (std::int32_t j = j_lo; j <= j_hi; ++j) {
      for (std::int32_t i = i_lo; i <= i_hi; ++i) {
        const Point p(i * h, j * h);
        const SegmentContact ch = segment_contact(p, Point((i + 1) * h, j * h), a, b);
        if (ch.hit) index.horizontal[key_of(i, j)] |= domain.arcs_on_range(s, ch.s0, ch.s1);
        const SegmentContact cv = segment_contact(p, Point(i * h, (j + 1) * h), a, b);
        if (cv.hit) index.vertical[key_of(i, j)] |= domain.arcs_on_range(s, cv.s0, cv.s1);
      }
    }
  }
  return index;
}

}  // namespace

double LatticeSubgraph::spacing() const { return std::ldexp(1.0, -level); }

Point LatticeSubgraph::position(LatticePoint p) const {
  const double h = spacing();
  return {p.i * h, p.j * h};
}

std::optional<int> LatticeSubgraph::find(LatticePoint p) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) return std::nullopt;
  return static_cast<int>(it - vertices.begin());
}

int LatticeSubgraph::degree(int vertex) const {
  return static_cast<int>(std::count_if(neighbor[vertex].begin(), neighbor[vertex].end(),
                                        [](int n) { return n >= 0; }));
}

bool LatticeSubgraph::is_boundary(int vertex) const {
  const auto& c = crossing[vertex];
  return (c[0] | c[1] | c[2] | c[3]) != 0;
}

LatticeSubgraph build_lattice_subgraph(const PlanarDomain& domain, int level, const Point& seed) {
  if (level < 0 || level > 24) {
    throw Error(ErrorCode::SchemaError, kModule, "level must lie in [0, 24]");
  }
  if (locate_point(domain, seed) != Location::Inside) {
    throw Error(ErrorCode::SeedOutside, kModule, "seed point is not strictly inside the domain");
  }
  LatticeSubgraph sub;
  sub.level = level;
  const double h = sub.spacing();

  // Nearest lattice vertex, ties toward smaller coordinates.
  const LatticePoint start{static_cast<std::int32_t>(std::ceil(seed.x() / h - 0.5)),
                           static_cast<std::int32_t>(std::ceil(seed.y() / h - 0.5))};
  if (locate_point(domain, sub.position(start)) != Location::Inside) {
    throw Error(ErrorCode::MeshTooCoarse, kModule,
                "lattice vertex nearest the seed lies outside the domain at level " +
                    std::to_string(level));
  }

  const CrossingIndex crossings = index_crossings(domain, h);

  std::unordered_map<std::uint64_t, bool> seen;
  std::deque<LatticePoint> queue{start};
  seen[key_of(start.i, start.j)] = true;
  while (!queue.empty()) {
    const LatticePoint p = queue.front();
    queue.pop_front();
    sub.vertices.push_back(p);
    for (Dir d : kDirs) {
      if (crossings.at(p, d) != 0) continue;
      const LatticePoint q = step(p, d);
      if (seen.emplace(key_of(q.i, q.j), true).second) queue.push_back(q);
    }
  }
  std::sort(sub.vertices.begin(), sub.vertices.end());

  const std::size_t n = sub.vertices.size();
  sub.neighbor.assign(n, {-1, -1, -1, -1});
  sub.crossing.assign(n, {0, 0, 0, 0});
  sub.labels.assign(n, BoundaryLabel::None);
  for (std::size_t v = 0; v < n; ++v) {
    const LatticePoint p = sub.vertices[v];
    for (Dir d : kDirs) {
      const auto k = static_cast<std::size_t>(d);
      sub.crossing[v][k] = crossings.at(p, d);
      if (sub.crossing[v][k] != 0) continue;
      sub.neighbor[v][k] = *sub.find(step(p, d));
    }
    for (Dir d : {Dir::E, Dir::N}) {
      const int w = sub.neighbor[v][static_cast<std::size_t>(d)];
      if (w >= 0) {
        sub.edges.push_back({static_cast<int>(v), w,
                             d == Dir::E ? Axis::Horizontal : Axis::Vertical});
      }
    }
  }
  std::sort(sub.edges.begin(), sub.edges.end(), [](const LatticeEdge& x, const LatticeEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  if (sub.edges.empty()) {
    throw Error(ErrorCode::MeshTooCoarse, kModule,
                "no lattice edge lies inside the domain at level " + std::to_string(level));
  }
  return sub;
}

void classify_boundary(LatticeSubgraph& sub) {
  const std::size_t n = sub.vertices.size();
  sub.labels.assign(n, BoundaryLabel::None);
  std::array<int, 4> counts{0, 0, 0, 0};
  for (std::size_t v = 0; v < n; ++v) {
    ArcMask mask = 0;
    for (ArcMask m : sub.crossing[v]) mask |= m;
    if (mask == 0) continue;
    const bool top = has_arc(mask, Arc::T);
    const bool bottom = has_arc(mask, Arc::B);
    const bool left = has_arc(mask, Arc::L);
    const bool right = has_arc(mask, Arc::R);
    if ((top && bottom) || (left && right)) {
      throw Error(ErrorCode::OppositeArcViolation, kModule,
                  "edges at lattice vertex " + coords(sub.vertices[v], sub.level) +
                      " meet opposite arcs; increase the level");
    }
    BoundaryLabel label = top ? BoundaryLabel::T
                          : bottom ? BoundaryLabel::B
                          : left   ? BoundaryLabel::L
                                   : BoundaryLabel::R;
    sub.labels[v] = label;
    ++counts[static_cast<std::size_t>(label) - 1];
  }
  static constexpr const char* kNames[] = {"T", "B", "L", "R"};
  for (std::size_t k = 0; k < 4; ++k) {
    if (counts[k] == 0) {
      throw Error(ErrorCode::EmptyBoundaryClass, kModule,
                  std::string("boundary class ") + kNames[k] + "_n is empty at level " +
                      std::to_string(sub.level));
    }
  }
}

std::optional<int> minimum_feasible_level(const PlanarDomain& domain, const Point& seed,
                                          int max_level) {
  for (int level = 1; level <= max_level; ++level) {
    try {
      LatticeSubgraph sub = build_lattice_subgraph(domain, level, seed);
      classify_boundary(sub);
      return level;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SeedOutside) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace sqtile
