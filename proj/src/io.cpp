#include "sqtile/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace sqtile {

namespace {

std::string num(double v, const char* format = "%.6f") {
  char buf[40];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string exact(double v) { return num(v, "%.17g"); }

std::string svg_open(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w, "%.2f") + "\" height=\"" +
         num(h, "%.2f") + "\" viewBox=\"0 0 " + num(w, "%.2f") + " " + num(h, "%.2f") + "\">\n";
}

std::string rect(double x, double y, double w, double h, const std::string& fill) {
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" fill=\"" + fill + "\"/>\n";
}

// Maps a box of world coordinates onto pixels with y pointing up.
struct Frame {
  double x0, y0, scale, height;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return height - (y - y0) * scale; }
};

}  // namespace

std::array<unsigned char, 3> ramp_color(double u, double v) {
  u = std::clamp(u, 0.0, 1.0);
  v = std::clamp(v, 0.0, 1.0);
  const double hue = 300.0 * u;
  const double sat = 0.85;
  const double val = 0.35 + 0.65 * v;
  const double c = val * sat;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (std::min(static_cast<int>(hp), 5)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = val - c;
  auto byte = [](double t) { return static_cast<unsigned char>(std::lround(std::clamp(t, 0.0, 1.0) * 255)); };
  return {byte(r + m), byte(g + m), byte(b + m)};
}

std::string hex_color(const std::array<unsigned char, 3>& rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string render_tiling_svg(const SquareTiling& t, double pixel_width) {
  const double width = std::max(t.width, 1e-12);
  const Frame f{0.0, 0.0, pixel_width / width, pixel_width / width};
  const double stroke = 0.005 * pixel_width;
  std::string out = svg_open(pixel_width, f.height);
  for (const Square& s : t.squares) {
    if (s.degenerate) continue;
    const double x0 = std::clamp(s.x0, 0.0, t.width), x1 = std::clamp(s.x1, 0.0, t.width);
    const auto color = ramp_color(0.5 * (x0 + x1) / width, 0.5 * (s.y0 + s.y1));
    out += rect(f.px(x0), f.py(s.y1), (x1 - x0) * f.scale, (s.y1 - s.y0) * f.scale, hex_color(color));
  }
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(pixel_width) + "\" height=\"" + num(f.height) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

std::pair<std::string, std::string> render_map_svg(const DiscreteConformalMap& m,
                                                   const PlanarDomain& domain, int samples,
                                                   double pixel_width) {
  if (samples <= 0) throw Error(ErrorCode::EmptyRender, "cli_io", "sample density must be positive");
  const double width = std::max(m.width, 1e-12);

  const Eigen::AlignedBox2d& box = domain.bbox();
  const double bw = box.sizes().x(), bh = box.sizes().y();
  const double extent = std::max(bw, bh);
  const Frame fd{box.min().x(), box.min().y(), pixel_width / extent, bh * pixel_width / extent};
  std::string dom = svg_open(fd.px(box.max().x()), fd.height);
  const double cw = bw / samples, ch = bh / samples;
  for (int j = 0; j < samples; ++j) {
    for (int i = 0; i < samples; ++i) {
      const Point p(box.min().x() + (i + 0.5) * cw, box.min().y() + (j + 0.5) * ch);
      const MapValue v = evaluate_map(m, p);
      if (v.outside_mesh) continue;
      const auto color = ramp_color(v.value.real() / width, v.value.imag());
      dom += rect(fd.px(p.x() - 0.5 * cw), fd.py(p.y() + 0.5 * ch), cw * fd.scale, ch * fd.scale,
                  hex_color(color));
    }
  }
  dom += "<polygon points=\"";
  for (std::size_t k = 0; k < domain.boundary().size(); ++k) {
    const Point& q = domain.boundary()[k];
    if (k) dom += ' ';
    dom += num(fd.px(q.x())) + "," + num(fd.py(q.y()));
  }
  dom += "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(0.005 * pixel_width) + "\"/>\n";
  dom += "</svg>\n";

  const Frame fr{0.0, 0.0, pixel_width / width, pixel_width / width};
  std::string rec = svg_open(pixel_width, fr.height);
  const double rw = width / samples, rh = 1.0 / samples;
  for (int j = 0; j < samples; ++j) {
    for (int i = 0; i < samples; ++i) {
      const auto color = ramp_color((i + 0.5) / samples, (j + 0.5) / samples);
      rec += rect(fr.px(i * rw), fr.py((j + 1) * rh), rw * fr.scale, rh * fr.scale, hex_color(color));
    }
  }
  rec += "<rect x=\"0\" y=\"0\" width=\"" + num(pixel_width) + "\" height=\"" + num(fr.height) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(0.005 * pixel_width) + "\"/>\n";
  rec += "</svg>\n";
  return {dom, rec};
}

std::string tiling_json(const SquareTiling& t) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const Square& s : t.squares) {
    doc.push_back({{"edge", s.edge},
                   {"x0", std::clamp(s.x0, 0.0, t.width)},
                   {"x1", std::clamp(s.x1, 0.0, t.width)},
                   {"y0", s.y0},
                   {"y1", s.y1}});
  }
  return doc.dump(1) + "\n";
}

std::string map_csv(const DiscreteConformalMap& m, const PlanarDomain& domain, int samples) {
  if (samples <= 0) throw Error(ErrorCode::EmptyRender, "cli_io", "sample density must be positive");
  const Eigen::AlignedBox2d& box = domain.bbox();
  std::string out = "x,y,re,im,cell_flag\n";
  for (int j = 0; j <= samples; ++j) {
    for (int i = 0; i <= samples; ++i) {
      const Point p(box.min().x() + box.sizes().x() * i / samples,
                    box.min().y() + box.sizes().y() * j / samples);
      const MapValue v = evaluate_map(m, p);
      out += exact(p.x()) + "," + exact(p.y()) + ",";
      if (v.outside_mesh) {
        out += ",,outside\n";
      } else {
        out += exact(v.value.real()) + "," + exact(v.value.imag()) + ",mesh\n";
      }
    }
  }
  return out;
}

std::string report_csv(const ConvergenceReport& report, bool timings) {
  std::string out =
      "level,intensity,r_eff,duffin_lb,max_side,cr_residual,node_residual,solve_iters,wall_ms\n";
  for (const LevelDiagnostics& d : report.levels) {
    out += std::to_string(d.level);
    if (d.failure) {
      out += ",,,,,,,,\n";
      continue;
    }
    out += "," + exact(d.intensity) + "," + exact(d.r_eff) + "," + exact(d.duffin_lb) + "," +
           exact(d.max_side) + "," + num(d.cr_residual, "%.3e") + "," +
           num(d.node_residual, "%.3e") + "," + std::to_string(d.solve_iters) + ",";
    if (timings) out += num(d.wall_ms, "%.3f");
    out += "\n";
  }
  return out;
}

std::string error_record_json(const ErrorRecord& record) {
  nlohmann::ordered_json doc;
  doc["code"] = std::string(to_string(record.code));
  doc["module"] = record.module;
  doc["level"] = record.level ? nlohmann::ordered_json(*record.level) : nlohmann::ordered_json();
  doc["message"] = record.message;
  if (record.minimum_level) doc["minimum_feasible_level"] = *record.minimum_level;
  return doc.dump() + "\n";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolveDiverged:
    case ErrorCode::PoleUnreachable:
      return 3;
    case ErrorCode::IoError:
      return 4;
    default:
      return 2;
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cli_io", "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "cli_io", "failed writing " + path);
}

}  // namespace sqtile
