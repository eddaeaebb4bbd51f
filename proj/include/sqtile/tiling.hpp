#pragma once

#include <vector>

#include "sqtile/conjugate.hpp"
#include "sqtile/harmonic.hpp"
#include "sqtile/mesh.hpp"

namespace sqtile {

struct Square {
  int edge = 0;
  double x0 = 0.0, x1 = 0.0;  // conjugate interval
  double y0 = 0.0, y1 = 0.0;  // potential interval
  double side = 0.0;          // |w(e)|
  bool degenerate = false;    // |w(e)| <= solver tolerance
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double height = 0.0;
};

struct SquareTiling {
  double width = 0.0;  // I*; the rectangle is [0, width] x [0, 1]
  std::vector<Square> squares;            // one per mesh edge
  std::vector<Interval> vertex_intervals; // I_u per vertex of the network
  std::vector<std::vector<int>> incident; // edges per vertex
};

// One square per edge e = xy: side |h(x) - h(y)|, heights between h(y) and
// h(x), horizontal extent between the conjugate values of the two faces
// of e. Endpoints are stored in increasing order.
SquareTiling build_tiling(const DualGraph& dual, const HarmonicField& h,
                          const ConjugateField& c);

struct TilingReport {
  double squareness = 0.0;    // max | |I_e| - side | and | height - side |
  double overlap = 0.0;       // max interior penetration over square pairs
  int overlap_a = -1, overlap_b = -1;
  double area_error = 0.0;    // | sum side^2 - I* |
  double coverage_error = 0.0;// | sum of areas - I* * 1 |
  double interval_gap = 0.0;  // max gap inside any I_u chain
  double tol = 0.0;
  double overlap_limit = 0.0; // max(tol, tile_eps)
  bool ok = false;
};

TilingReport validate_tiling(const SquareTiling& t, double tol);

// Throws ValidationFailed naming the worst violation.
void ensure_valid(const TilingReport& report);

// Geometric tolerance for contact along shared square sides.
double tile_eps(const SquareTiling& t);

struct DualityReport {
  double primal_intensity = 0.0;
  double dual_intensity = 0.0;
  double product_error = 0.0;       // | I*_dual I*_primal - 1 |
  double square_mismatch = 0.0;     // worst coordinate difference
  int worst_edge = -1;
  bool ok = false;
};

// Solves on the dual with r as source and l as sink and compares each dual
// square with the primal square of the same edge turned a quarter turn
// counter-clockwise and scaled by 1/I*: (x, y) -> ((1 - y)/I*, x/I*).
// `ok` holds when both discrepancies are at most tol.
DualityReport dual_tiling_check(const DualGraph& dual, double tol, double solver_tol = 1e-10);

// Throws DualityViolated when the check exceeds `limit`.
void ensure_dual(const DualityReport& report, double limit);

}  // namespace sqtile
