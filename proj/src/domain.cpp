#include "sqtile/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sqtile/error.hpp"

namespace sqtile {

namespace {

const char* kModule = "domain";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, kModule, msg);
}

double signed_area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

void check_simple(const std::vector<Point>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) fail(ErrorCode::NotJordan, "boundary needs at least three vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (poly[i] == poly[j]) {
        fail(ErrorCode::NotJordan, "repeated boundary vertex " + std::to_string(j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& c = poly[j];
      const Point& d = poly[(j + 1) % n];
      const bool next = (j == i + 1);
      const bool wrap = (i == 0 && j == n - 1);
      const SegmentContact hit = segment_contact(a, b, c, d);
      if (!hit.hit) continue;
      if (next || wrap) {
        // Neighbours share exactly one endpoint; a collinear overlap means
        // the curve doubles back on itself.
        if (hit.s1 > hit.s0) {
          fail(ErrorCode::NotJordan, "boundary folds back at vertex " + std::to_string(j));
        }
        // The shared endpoint sits at s = 0 of [c, d] for successive
        // segments and at s = 1 for the closing pair.
        const double shared_s = next ? 0.0 : 1.0;
        if (hit.s0 != shared_s) {
          fail(ErrorCode::NotJordan, "boundary self-intersects near vertex " + std::to_string(j));
        }
        continue;
      }
      fail(ErrorCode::NotJordan, "boundary segments " + std::to_string(i) + " and " +
                                     std::to_string(j) + " intersect");
    }
  }
}

// Marks are clockwise iff their polyline positions increase cyclically.
bool cyclically_increasing(const std::array<BoundaryPosition, 4>& m) {
  int descents = 0;
  for (int k = 0; k < 4; ++k) {
    if (m[(k + 1) % 4] < m[k]) ++descents;
  }
  return descents == 1;
}

bool in_half_open(const BoundaryPosition& lo, const BoundaryPosition& hi,
                  const BoundaryPosition& p) {
  if (lo < hi) return lo <= p && p < hi;
  return p >= lo || p < hi;
}

}  // namespace

char arc_name(Arc a) {
  switch (a) {
    case Arc::T: return 'T';
    case Arc::R: return 'R';
    case Arc::B: return 'B';
    case Arc::L: return 'L';
  }
  return '?';
}

PlanarDomain::PlanarDomain(std::vector<Point> boundary, std::array<BoundaryPosition, 4> marks,
                           std::optional<Point> seed)
    : boundary_(std::move(boundary)), marks_(marks), seed_(seed) {
  for (const Point& p : boundary_) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) {
      fail(ErrorCode::SchemaError, "boundary coordinates must be finite");
    }
  }
  check_simple(boundary_);
  for (const Point& p : boundary_) bbox_.extend(p);
  geom_eps_ = std::ldexp(bbox_.diagonal().norm(), -40);

  const int n = segment_count();
  for (const auto& m : marks_) {
    if (m.segment < 0 || m.segment >= n || !(m.t >= 0.0 && m.t < 1.0)) {
      fail(ErrorCode::SchemaError, "mark must reference a segment with t in [0, 1)");
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (point_at(marks_[i]) == point_at(marks_[j])) {
        fail(ErrorCode::MarksNotDistinct, "marks x" + std::to_string(i + 1) + " and x" +
                                              std::to_string(j + 1) + " coincide");
      }
    }
  }
  if (signed_area(boundary_) > 0.0) {
    fail(ErrorCode::MarksNotClockwise,
         "boundary is counter-clockwise, so the marks run counter-clockwise");
  }
  if (!cyclically_increasing(marks_)) {
    fail(ErrorCode::MarksNotClockwise, "marks are not in clockwise order along the boundary");
  }
  if (seed_ && locate_point(*this, *seed_) != Location::Inside) {
    fail(ErrorCode::SeedOutside, "seed point is not strictly inside the domain");
  }
}

Point PlanarDomain::point_at(BoundaryPosition pos) const {
  const Point a = segment_start(pos.segment);
  const Point b = segment_end(pos.segment);
  return a + pos.t * (b - a);
}

Arc PlanarDomain::arc_at(int segment, double t) const {
  BoundaryPosition p{segment, t};
  if (t >= 1.0) p = {(segment + 1) % segment_count(), 0.0};
  for (int k = 0; k < 4; ++k) {
    if (in_half_open(marks_[k], marks_[(k + 1) % 4], p)) return static_cast<Arc>(k);
  }
  return Arc::T;  // unreachable for validated marks
}

ArcMask PlanarDomain::arcs_on_range(int segment, double s0, double s1) const {
  ArcMask mask = arc_bit(arc_at(segment, s0));
  if (s1 <= s0) return mask;
  for (int k = 0; k < 4; ++k) {
    const BoundaryPosition& m = marks_[k];
    const bool on_this = m.segment == segment && m.t > s0 && m.t <= s1;
    const bool at_end = s1 >= 1.0 && m.segment == (segment + 1) % segment_count() && m.t == 0.0;
    if (on_this || at_end) mask |= arc_bit(static_cast<Arc>(k));
  }
  return mask;
}

Point PlanarDomain::default_seed() const {
  Point centroid = Point::Zero();
  double area = 0.0;
  for (std::size_t i = 0; i < boundary_.size(); ++i) {
    const Point& a = boundary_[i];
    const Point& b = boundary_[(i + 1) % boundary_.size()];
    const double w = cross(a, b);
    area += w;
    centroid += w * (a + b);
  }
  centroid /= 3.0 * area;
  if (locate_point(*this, centroid) == Location::Inside) return centroid;

  // Non-convex fallback: the grid sample farthest from the boundary.
  constexpr int kGrid = 64;
  Point best = centroid;
  double best_dist = -1.0;
  const Point lo = bbox_.min();
  const Point span = bbox_.sizes();
  for (int j = 0; j < kGrid; ++j) {
    for (int i = 0; i < kGrid; ++i) {
      const Point p = lo + Point((i + 0.5) / kGrid * span.x(), (j + 0.5) / kGrid * span.y());
      if (locate_point(*this, p) != Location::Inside) continue;
      double d = std::numeric_limits<double>::infinity();
      for (int s = 0; s < segment_count(); ++s) {
        d = std::min(d, segment_distance(p, segment_start(s), segment_end(s)));
      }
      if (d > best_dist) {
        best_dist = d;
        best = p;
      }
    }
  }
  return best;
}

Location locate_point(const PlanarDomain& domain, const Point& p) {
  const int n = domain.segment_count();
  for (int i = 0; i < n; ++i) {
    if (segment_distance(p, domain.segment_start(i), domain.segment_end(i)) <= domain.geom_eps()) {
      return Location::OnBoundary;
    }
  }
  int winding = 0;
  for (int i = 0; i < n; ++i) {
    const Point a = domain.segment_start(i);
    const Point b = domain.segment_end(i);
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && orientation(a, b, p) > 0) ++winding;
    } else {
      if (b.y() <= p.y() && orientation(a, b, p) < 0) --winding;
    }
  }
  return winding != 0 ? Location::Inside : Location::Outside;
}

ArcMask classify_crossing(const PlanarDomain& domain, const Point& p, const Point& q) {
  ArcMask mask = 0;
  for (int i = 0; i < domain.segment_count(); ++i) {
    const SegmentContact c = segment_contact(p, q, domain.segment_start(i), domain.segment_end(i));
    if (c.hit) mask |= domain.arcs_on_range(i, c.s0, c.s1);
  }
  return mask;
}

PlanarDomain parse_domain(const std::string& document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SchemaError, std::string("malformed domain document: ") + e.what());
  }

  auto number = [](const json& v, const char* what) {
    if (!v.is_number()) fail(ErrorCode::SchemaError, std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorCode::SchemaError, std::string(what) + " must be finite");
    return x;
  };
  auto point = [&](const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2) {
      fail(ErrorCode::SchemaError, std::string(what) + " must be an [x, y] pair");
    }
    return Point(number(v[0], what), number(v[1], what));
  };

  if (!doc.is_object()) fail(ErrorCode::SchemaError, "domain document must be an object");
  if (!doc.contains("boundary") || !doc["boundary"].is_array()) {
    fail(ErrorCode::SchemaError, "missing boundary array");
  }
  std::vector<Point> boundary;
  for (const auto& v : doc["boundary"]) boundary.push_back(point(v, "boundary point"));

  if (!doc.contains("marks") || !doc["marks"].is_array() || doc["marks"].size() != 4) {
    fail(ErrorCode::SchemaError, "marks must be an array of four objects");
  }
  std::array<BoundaryPosition, 4> marks{};
  for (int k = 0; k < 4; ++k) {
    const json& m = doc["marks"][k];
    if (!m.is_object() || !m.contains("segment_index") || !m.contains("t")) {
      fail(ErrorCode::SchemaError, "mark needs segment_index and t");
    }
    if (!m["segment_index"].is_number_integer()) {
      fail(ErrorCode::SchemaError, "segment_index must be an integer");
    }
    marks[k] = {m["segment_index"].get<int>(), number(m["t"], "mark t")};
  }

  std::optional<Point> seed;
  if (doc.contains("seed") && !doc["seed"].is_null()) seed = point(doc["seed"], "seed");
  return PlanarDomain(std::move(boundary), marks, seed);
}

PlanarDomain load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, kModule, "cannot read domain file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_domain(buf.str());
}

std::string domain_to_json(const PlanarDomain& domain) {
  nlohmann::json doc;
  doc["boundary"] = nlohmann::json::array();
  for (const Point& p : domain.boundary()) doc["boundary"].push_back({p.x(), p.y()});
  doc["marks"] = nlohmann::json::array();
  for (const auto& m : domain.marks()) {
    doc["marks"].push_back({{"segment_index", m.segment}, {"t", m.t}});
  }
  if (domain.seed()) doc["seed"] = {domain.seed()->x(), domain.seed()->y()};
  return doc.dump(2);
}

}  // namespace sqtile
