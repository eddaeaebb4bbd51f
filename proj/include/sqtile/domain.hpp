#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "sqtile/geometry.hpp"

namespace sqtile {

// Boundary arcs in clockwise order: T = x1->x2, R = x2->x3, B = x3->x4,
// L = x4->x1. Each arc contains its starting mark and excludes its end.
enum class Arc : std::uint8_t { T = 0, R = 1, B = 2, L = 3 };

using ArcMask = std::uint8_t;

constexpr ArcMask arc_bit(Arc a) { return ArcMask(1u << static_cast<unsigned>(a)); }
constexpr bool has_arc(ArcMask m, Arc a) { return (m & arc_bit(a)) != 0; }

char arc_name(Arc a);

// A point on the boundary polyline: segment index plus parameter in [0, 1).
struct BoundaryPosition {
  int segment = 0;
  double t = 0.0;

  auto operator<=>(const BoundaryPosition&) const = default;
};

enum class Location { Inside, Outside, OnBoundary };

class PlanarDomain {
 public:
  // Validates and takes ownership of a clockwise simple polygon (first point
  // not repeated) and four clockwise marks. Throws Error on invalid input.
  PlanarDomain(std::vector<Point> boundary, std::array<BoundaryPosition, 4> marks,
               std::optional<Point> seed = std::nullopt);

  const std::vector<Point>& boundary() const { return boundary_; }
  const std::array<BoundaryPosition, 4>& marks() const { return marks_; }
  const std::optional<Point>& seed() const { return seed_; }
  const Eigen::AlignedBox2d& bbox() const { return bbox_; }
  int segment_count() const { return static_cast<int>(boundary_.size()); }
  Point segment_start(int i) const { return boundary_[i]; }
  Point segment_end(int i) const { return boundary_[(i + 1) % boundary_.size()]; }
  Point point_at(BoundaryPosition pos) const;

  // Absolute width of the OnBoundary band.
  double geom_eps() const { return geom_eps_; }

  // Arc owning a boundary position; t == 1 is folded onto the next segment.
  Arc arc_at(int segment, double t) const;

  // Arcs covered by the closed parameter range [s0, s1] of one segment.
  ArcMask arcs_on_range(int segment, double s0, double s1) const;

  // A point strictly inside, used when no seed is supplied.
  Point default_seed() const;

 private:
  std::vector<Point> boundary_;
  std::array<BoundaryPosition, 4> marks_;
  std::optional<Point> seed_;
  Eigen::AlignedBox2d bbox_;
  double geom_eps_ = 0.0;
};

PlanarDomain parse_domain(const std::string& document);
PlanarDomain load_domain(const std::string& path);
std::string domain_to_json(const PlanarDomain& domain);

Location locate_point(const PlanarDomain& domain, const Point& p);

// Arcs met by the closed segment [p, q]. A contact exactly at a mark goes
// to the arc that starts there.
ArcMask classify_crossing(const PlanarDomain& domain, const Point& p, const Point& q);

}  // namespace sqtile
