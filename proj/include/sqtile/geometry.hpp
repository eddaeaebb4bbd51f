#pragma once

#include <Eigen/Core>

namespace sqtile {

using Point = Eigen::Vector2d;

// Sign of the doubled signed area of (a, b, c): +1 counter-clockwise,
// -1 clockwise, 0 collinear. A floating-point filter decides the easy
// cases; near-degenerate ones are re-evaluated in extended precision.
int orientation(const Point& a, const Point& b, const Point& c);

double cross(const Point& u, const Point& v);

double segment_distance(const Point& p, const Point& a, const Point& b);

// Intersection of the closed segments [p, q] and [a, b], described by the
// parameter range it occupies along [a, b].
struct SegmentContact {
  bool hit = false;
  double s0 = 0.0;  // parameter along [a, b], 0 at a, 1 at b
  double s1 = 0.0;  // s1 > s0 only for collinear overlaps
};

SegmentContact segment_contact(const Point& p, const Point& q, const Point& a,
                               const Point& b);

// True when the closed segments share any point.
bool segments_touch(const Point& p, const Point& q, const Point& a, const Point& b);

}  // namespace sqtile
