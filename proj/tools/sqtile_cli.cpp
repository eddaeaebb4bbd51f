#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqtile/io.hpp"
#include "sqtile/mapper.hpp"

using namespace sqtile;

namespace {

const std::set<std::string> kArtifacts{"tiling_svg", "map_svg", "tiling_json", "map_csv", "report"};

struct RunConfig {
  std::string domain_path;
  int first_level = 0;
  int last_level = 0;
  double tol = 1e-10;
  std::optional<Point> seed;
  std::int64_t mc_walks = 0;
  std::uint64_t mc_seed = 1;
  std::string out_dir = ".";
  std::set<std::string> emit = kArtifacts;
  int samples = 128;
  bool timings = false;
};

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::SchemaError, "cli_io", msg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    config_error(std::string("cannot read ") + what + " from '" + s + "'");
  }
}

void parse_levels(const std::string& text, RunConfig& cfg) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) config_error("--levels expects A..B");
  try {
    cfg.first_level = std::stoi(text.substr(0, dots));
    cfg.last_level = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    config_error("--levels expects A..B");
  }
}

void finish_config(RunConfig& cfg, const std::string& seed_text, const std::string& emit_text) {
  if (cfg.first_level > cfg.last_level) config_error("level range is empty");
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2)) config_error("--tol must lie in (0, 1e-2]");
  if (!seed_text.empty()) {
    const auto xy = split(seed_text, ',');
    if (xy.size() != 2) config_error("--seed-point expects X,Y");
    cfg.seed = Point(parse_double(xy[0], "seed x"), parse_double(xy[1], "seed y"));
  }
  if (!emit_text.empty()) {
    cfg.emit.clear();
    for (const auto& item : split(emit_text, ',')) {
      if (item.empty()) continue;
      if (item == "all") {
        cfg.emit = kArtifacts;
      } else if (item == "none") {
        cfg.emit.clear();
      } else if (!kArtifacts.count(item)) {
        config_error("unknown artifact '" + item + "'");
      } else {
        cfg.emit.insert(item);
      }
    }
  }
  if (cfg.mc_walks < 0) config_error("--mc-walks must be non-negative");
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cli_io", "cannot create " + cfg.out_dir + ": " + ec.message());
}

std::string path_in(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::string tagged(const char* stem, int level, const char* ext) {
  return std::string(stem) + "_n" + std::to_string(level) + ext;
}

struct McSummary {
  int within = 0;
  int total = 0;
};

// Random-walk estimates at up to five free vertices picked by the RNG seed.
McSummary monte_carlo(const RunConfig& cfg, const LevelResult& r, std::string* csv) {
  McSummary out;
  const int free = r.mesh.num_free;
  if (cfg.mc_walks <= 0 || free == 0) return out;
  std::vector<int> picks;
  SplitMix64 rng(cfg.mc_seed);
  const int want = std::min(5, free);
  while (static_cast<int>(picks.size()) < want) {
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(free)));
    if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
  }
  *csv = "vertex,x,y,h,estimate,std_error,within_3se\n";
  for (int v : picks) {
    const HittingEstimate est = mc_hitting_probability(r.network, v, cfg.mc_walks, cfg.mc_seed);
    const bool ok = std::abs(r.h.values[v] - est.estimate) <= 3.0 * est.std_error;
    out.within += ok;
    ++out.total;
    const Point p = r.sub.position(r.mesh.free_to_lattice[v]);
    char line[256];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", v, p.x(), p.y(),
                  r.h.values[v], est.estimate, est.std_error, ok ? 1 : 0);
    *csv += line;
  }
  return out;
}

void emit_level(const RunConfig& cfg, const PlanarDomain& domain, const LevelResult& r) {
  const int n = r.sub.level;
  if (cfg.emit.count("tiling_svg")) {
    write_text_file(path_in(cfg, tagged("tiling", n, ".svg")), render_tiling_svg(r.tiling));
  }
  if (cfg.emit.count("map_svg")) {
    const auto [dom, rect] = render_map_svg(r.map, domain, cfg.samples);
    write_text_file(path_in(cfg, tagged("map_domain", n, ".svg")), dom);
    write_text_file(path_in(cfg, tagged("map_rect", n, ".svg")), rect);
  }
  if (cfg.emit.count("tiling_json")) {
    write_text_file(path_in(cfg, tagged("tiling", n, ".json")), tiling_json(r.tiling));
  }
  if (cfg.emit.count("map_csv")) {
    write_text_file(path_in(cfg, tagged("map", n, ".csv")), map_csv(r.map, domain, cfg.samples));
  }
}

int report_failure(const RunConfig* cfg, const Error& e, std::optional<int> level,
                   const PlanarDomain* domain, const Point* seed) {
  ErrorRecord rec{e.code(), e.module(), level, e.what(), std::nullopt};
  if (e.code() == ErrorCode::MeshTooCoarse && domain && seed) {
    rec.minimum_level = minimum_feasible_level(*domain, *seed);
  }
  const std::string doc = error_record_json(rec);
  std::cerr << doc;
  if (cfg && e.code() != ErrorCode::IoError) {
    try {
      write_text_file(path_in(*cfg, "error.json"), doc);
    } catch (const Error&) {
    }
  }
  return exit_status(e.code());
}

// Runs every configured level; `check_only` skips artifacts and adds the
// duality check.
int run(const RunConfig& cfg, bool check_only) {
  std::optional<PlanarDomain> domain;
  Point seed = Point::Zero();
  std::optional<int> level;
  try {
    domain.emplace(load_domain(cfg.domain_path));
    seed = cfg.seed ? *cfg.seed : domain->seed() ? *domain->seed() : domain->default_seed();
    if (cfg.seed && locate_point(*domain, seed) != Location::Inside) {
      throw Error(ErrorCode::SeedOutside, "domain", "seed point is not strictly inside the domain");
    }

    ConvergenceReport report;
    std::optional<Error> first_failure;
    std::optional<int> failed_level;
    bool mc_failed = false;
    for (int n = cfg.first_level; n <= cfg.last_level; ++n) {
      level = n;
      try {
        const LevelResult r = run_level(*domain, seed, n, cfg.tol);
        report.levels.push_back(diagnostics_of(r));
        std::string mc_csv;
        const McSummary mc = monte_carlo(cfg, r, &mc_csv);
        if (mc.total > 0) {
          if (mc.within + 1 < mc.total) mc_failed = true;
          if (!check_only) write_text_file(path_in(cfg, tagged("mc", n, ".csv")), mc_csv);
          std::printf("level %d: Monte Carlo agrees at %d of %d vertices\n", n, mc.within, mc.total);
        }
        if (check_only) {
          const DualityReport dr = dual_tiling_check(r.dual, 1e-8, cfg.tol);
          ensure_dual(dr, 1e-8);
          std::printf(
              "level %d: I* = %.12f, tiling ok, dual I* = %.12f, square mismatch %.2e\n", n,
              r.flow.intensity, dr.dual_intensity, dr.square_mismatch);
        } else {
          emit_level(cfg, *domain, r);
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError) throw;
        LevelDiagnostics d;
        d.level = n;
        d.failure = LevelFailure{e.code(), e.module(), e.what()};
        report.levels.push_back(d);
        if (!first_failure) {
          first_failure = e;
          failed_level = n;
        }
      }
    }
    level.reset();
    if (!check_only && cfg.emit.count("report")) {
      write_text_file(path_in(cfg, "report.csv"), report_csv(report, cfg.timings));
    }
    if (first_failure) return report_failure(&cfg, *first_failure, failed_level, &*domain, &seed);
    if (mc_failed) {
      return report_failure(&cfg,
                            Error(ErrorCode::ValidationFailed, "harmonic",
                                  "random-walk estimates disagree with the potential"),
                            std::nullopt, nullptr, nullptr);
    }
    return 0;
  } catch (const Error& e) {
    return report_failure(&cfg, e, level, domain ? &*domain : nullptr, &seed);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square tilings and discrete conformal maps of polygonal domains"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string seed_text, emit_text, levels_text;
  int level = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain_path, "Domain JSON file")->required();
    sub->add_option("--tol", cfg.tol, "Solver tolerance");
    sub->add_option("--seed-point", seed_text, "Seed point X,Y inside the domain");
    sub->add_option("--mc-walks", cfg.mc_walks, "Random walks per checked vertex");
    sub->add_option("--mc-seed", cfg.mc_seed, "Seed of the random walks");
    sub->add_option("--out", cfg.out_dir, "Output directory");
  };
  auto artifacts = [&](CLI::App* sub) {
    sub->add_option("--emit", emit_text,
                    "Comma list of tiling_svg,map_svg,tiling_json,map_csv,report (or all/none)");
    sub->add_option("--samples", cfg.samples, "Grid density of map pictures and map CSV");
    sub->add_flag("--timings", cfg.timings, "Fill the wall_ms column of report.csv");
  };

  CLI::App* tile = app.add_subcommand("tile", "Tile a single level");
  common(tile);
  artifacts(tile);
  tile->add_option("--level", level, "Lattice level n")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Run a range of levels");
  common(sweep);
  artifacts(sweep);
  sweep->add_option("--levels", levels_text, "Level range A..B")->required();

  CLI::App* check = app.add_subcommand("check", "Validate tiling and duality without artifacts");
  common(check);
  auto* check_level = check->add_option("--level", level, "Lattice level n");
  auto* check_levels = check->add_option("--levels", levels_text, "Level range A..B");
  check_level->excludes(check_levels);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!levels_text.empty()) {
      parse_levels(levels_text, cfg);
    } else {
      cfg.first_level = cfg.last_level = level;
    }
    if (check->parsed() && levels_text.empty() && check_level->count() == 0) {
      config_error("check needs --level or --levels");
    }
    finish_config(cfg, seed_text, emit_text);
  } catch (const Error& e) {
    return report_failure(nullptr, e, std::nullopt, nullptr, nullptr);
  }
  return run(cfg, check->parsed());
}
