#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "sqtile/domain.hpp"
#include "sqtile/mapper.hpp"
#include "sqtile/tiling.hpp"

namespace sqtile {

// Fixed colour ramp on the unit square of normalised image coordinates:
// hue follows u = Re/I*, brightness follows v = Im.
std::array<unsigned char, 3> ramp_color(double u, double v);
std::string hex_color(const std::array<unsigned char, 3>& rgb);

// One <rect> per non-degenerate square inside the [0, I*] x [0, 1] frame,
// y pointing up. Squares are coloured by the ramp at their centre.
std::string render_tiling_svg(const SquareTiling& t, double pixel_width = 600.0);

// Two pictures over a samples x samples grid: the domain coloured by the
// ramp at the image of each cell centre (cells outside the mesh are left
// transparent), and the rectangle coloured by the ramp at each position.
// Throws EmptyRender when samples <= 0.
std::pair<std::string, std::string> render_map_svg(const DiscreteConformalMap& m,
                                                   const PlanarDomain& domain, int samples,
                                                   double pixel_width = 600.0);

// [{"edge": e, "x0": ..., "x1": ..., "y0": ..., "y1": ...}, ...] with the
// horizontal coordinates clamped to [0, I*].
std::string tiling_json(const SquareTiling& t);

// x,y,re,im,cell_flag over a samples x samples grid of the domain's
// bounding box; cell_flag is "mesh" or "outside" (empty image columns).
std::string map_csv(const DiscreteConformalMap& m, const PlanarDomain& domain, int samples);

// level,intensity,r_eff,duffin_lb,max_side,cr_residual,node_residual,
// solve_iters,wall_ms. The timing column stays empty unless requested so
// repeated runs produce identical files.
std::string report_csv(const ConvergenceReport& report, bool timings);

struct ErrorRecord {
  ErrorCode code = ErrorCode::SchemaError;
  std::string module;
  std::optional<int> level;
  std::string message;
  std::optional<int> minimum_level;  // for MeshTooCoarse
};

std::string error_record_json(const ErrorRecord& record);

// Exit status for an error code: 2 validation, 3 solver, 4 I/O.
int exit_status(ErrorCode code);

// Writes the whole file or throws IoError.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sqtile
