#include "sqtile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqtile {

namespace {

// Error bound of the filtered determinant (Shewchuk's ccwerrboundA).
constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;

int sign(long double v) { return (v > 0) - (v < 0); }

}  // namespace

double cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }

int orientation(const Point& a, const Point& b, const Point& c) {
  const double left = (a.x() - c.x()) * (b.y() - c.y());
  const double right = (a.y() - c.y()) * (b.x() - c.x());
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound || -det > bound) return det > 0 ? 1 : -1;

  using ld = long double;
  const ld det_ext = (ld(a.x()) - ld(c.x())) * (ld(b.y()) - ld(c.y())) -
                     (ld(a.y()) - ld(c.y())) * (ld(b.x()) - ld(c.x()));
  return sign(det_ext);
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

SegmentContact segment_contact(const Point& p, const Point& q, const Point& a,
                               const Point& b) {
  SegmentContact out;
  const int o_p = orientation(a, b, p);
  const int o_q = orientation(a, b, q);
  if (o_p * o_q > 0) return out;
  const int o_a = orientation(p, q, a);
  const int o_b = orientation(p, q, b);
  if (o_a * o_b > 0) return out;

  const Point ab = b - a;
  if (o_p == 0 && o_q == 0) {
    // Collinear: overlap of the projections onto [a, b].
    const double len2 = ab.squaredNorm();
    double sp = (p - a).dot(ab) / len2;
    double sq = (q - a).dot(ab) / len2;
    if (sp > sq) std::swap(sp, sq);
    const double lo = std::max(sp, 0.0);
    const double hi = std::min(sq, 1.0);
    if (lo > hi) return out;
    out.hit = true;
    out.s0 = lo;
    out.s1 = hi;
    return out;
  }

  out.hit = true;
  if (o_a == 0) {
    out.s0 = out.s1 = 0.0;
  } else if (o_b == 0) {
    out.s0 = out.s1 = 1.0;
  } else {
    const Point pq = q - p;
    const double s = cross(p - a, pq) / cross(ab, pq);
    out.s0 = out.s1 = std::clamp(s, 0.0, 1.0);
  }
  return out;
}

bool segments_touch(const Point& p, const Point& q, const Point& a, const Point& b) {
  return segment_contact(p, q, a, b).hit;
}

}  // namespace sqtile
