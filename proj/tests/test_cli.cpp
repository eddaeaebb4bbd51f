#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "sqtile_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(SQTILE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const char* name) { return std::string(SQTILE_DATA) + "/" + name; }

}  // namespace

TEST_CASE("counter-clockwise marks are refused") {
  fs::create_directories(kWork);
  const fs::path dom = kWork / "ccw.json";
  std::ofstream(dom) << R"({"boundary": [[0,0],[0,1],[1,1],[1,0]],
    "marks": [{"segment_index":0,"t":0},{"segment_index":3,"t":0},
              {"segment_index":2,"t":0},{"segment_index":1,"t":0}]})";
  const fs::path out = kWork / "ccw";
  CHECK(run("tile --domain " + dom.string() + " --level 3 --out " + out.string()) == 2);
  const auto err = nlohmann::json::parse(slurp(out / "error.json"));
  CHECK(err["code"] == "MarksNotClockwise");
  CHECK(err["module"] == "domain");
}

TEST_CASE("too coarse a level names the smallest workable one") {
  const fs::path out = kWork / "coarse";
  CHECK(run("tile --domain " + data("unit_square.json") + " --level 1 --out " + out.string()) == 2);
  const auto err = nlohmann::json::parse(slurp(out / "error.json"));
  CHECK(err["code"] == "MeshTooCoarse");
  CHECK(err["level"] == 1);
  CHECK(err["minimum_feasible_level"] == 2);
}

TEST_CASE("bad arguments") {
  CHECK(run("tile --domain " + data("unit_square.json") + " --level 2 --tol 0.5 --out " +
            (kWork / "tol").string()) == 2);
  CHECK(run("sweep --domain " + data("unit_square.json") + " --levels 4..2 --out " +
            (kWork / "range").string()) == 2);
  CHECK(run("tile --domain " + (kWork / "nope.json").string() + " --level 2 --out " +
            (kWork / "nope").string()) == 4);
}

TEST_CASE("sweep writes every artifact") {
  const fs::path out = kWork / "sweep";
  CHECK(run("sweep --domain " + data("unit_square.json") + " --levels 2..4 --samples 16 --mc-walks 2000 --out " +
            out.string()) == 0);
  for (int n = 2; n <= 4; ++n) {
    const std::string s = std::to_string(n);
    for (const std::string f : {"tiling_n" + s + ".svg", "map_domain_n" + s + ".svg", "map_rect_n" + s + ".svg",
                                "tiling_n" + s + ".json", "map_n" + s + ".csv", "mc_n" + s + ".csv"}) {
      CAPTURE(f);
      CHECK(fs::exists(out / f));
      CHECK(fs::file_size(out / f) > 0);
    }
  }
  std::istringstream report(slurp(out / "report.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(report, line)) ++rows;
  CHECK(rows == 4);
  CHECK_FALSE(fs::exists(out / "error.json"));

  CHECK(run("check --domain " + data("l_hexagon.json") + " --levels 2..4 --out " + (kWork / "check").string()) == 0);
  fs::remove_all(kWork);
}
