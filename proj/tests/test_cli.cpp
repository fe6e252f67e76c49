#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "sdfnav/bench.hpp"
#include "sdfnav/svg.hpp"

using namespace sdfnav;
namespace fs = std::filesystem;

namespace {

const char* kCli = SDFNAV_CLI_PATH;

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sdfnav_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(kCli) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path write_demo_scenario(const fs::path& dir) {
  const fs::path path = dir / "scenario.json";
  std::ofstream out(path);
  out << R"({
    "seed": 3,
    "room": {"width": 3.6, "depth": 3.6},
    "obstacles": [{"catalog_id": 0, "pose": [0.1, 0.25, 0.4]}],
    "start": [-1.2, -0.9, 0.6],
    "goal": [1.2, 0.9],
    "timing": {"timeout": 40.0}
  })";
  return path;
}

}  // namespace

TEST_CASE("run: valid config produces a metrics row; reruns are identical") {
  const fs::path dir = temp_dir("run");
  const fs::path scenario = write_demo_scenario(dir);
  const std::string out1 = (dir / "a").string();
  const std::string out2 = (dir / "b").string();
  CHECK(run_cli("run --config " + scenario.string() + " --method robot --out " +
                out1) == 0);
  CHECK(run_cli("run --config " + scenario.string() + " --method robot --out " +
                out2) == 0);
  const std::string m1 = slurp(fs::path(out1) / "metrics.csv");
  CHECK(m1.find("robot,") != std::string::npos);
  CHECK(m1 == slurp(fs::path(out2) / "metrics.csv"));
  CHECK(fs::exists(fs::path(out1) / "trace.csv"));
  CHECK(fs::exists(fs::path(out1) / "final.svg"));
}

TEST_CASE("run: malformed config exits nonzero without partial outputs") {
  const fs::path dir = temp_dir("bad");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  const std::string out = (dir / "out").string();
  CHECK(run_cli("run --config " + bad.string() + " --out " + out) != 0);
  CHECK_FALSE(fs::exists(fs::path(out) / "metrics.csv"));

  // Invalid geometry (goal in a wall) is also rejected before running.
  const fs::path invalid = dir / "invalid.json";
  std::ofstream(invalid) << R"({
    "room": {"width": 3.0, "depth": 3.0},
    "start": [-1.0, 0.0, 0.0],
    "goal": [1.55, 0.0]
  })";
  CHECK(run_cli("run --config " + invalid.string() + " --out " + out) != 0);
}

TEST_CASE("bench: grid counting, aggregate recompute, determinism") {
  const fs::path dir = temp_dir("bench");
  const fs::path spec = dir / "spec.json";
  std::ofstream(spec) << R"({
    "layouts": 2, "pairs": 1, "repeats": 1,
    "methods": ["robot", "dwa"],
    "seed_base": 17,
    "room": {"width": 3.4, "depth": 3.4},
    "obstacles": 2,
    "min_separation": 1.8,
    "grid_resolution": 32
  })";
  const std::string out1 = (dir / "r1").string();
  const std::string out2 = (dir / "r2").string();
  CHECK(run_cli("bench --spec " + spec.string() + " --out " + out1 +
                " --workers 2") == 0);
  CHECK(run_cli("bench --spec " + spec.string() + " --out " + out2 +
                " --workers 1") == 0);

  // Byte-identical per-episode CSVs regardless of worker count.
  const std::string episodes = slurp(fs::path(out1) / "episodes.csv");
  CHECK(episodes == slurp(fs::path(out2) / "episodes.csv"));

  // 2 methods x 2 layouts x 1 x 1 = 4 rows + header.
  std::vector<std::string> lines;
  std::stringstream ss(episodes);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == kEpisodeCsvHeader);

  // Aggregate success rates recompute exactly from the rows.
  std::map<std::string, std::pair<int, int>> per_method;  // success, total
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream row(lines[i]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    per_method[cells[0]].second += 1;
    per_method[cells[0]].first += cells[5] == "1" ? 1 : 0;
  }
  const std::string aggregate = slurp(fs::path(out1) / "aggregate.csv");
  for (const auto& [method, counts] : per_method) {
    const double rate = 100.0 * counts.first / counts.second;
    char expect[64];
    std::snprintf(expect, sizeof(expect), "%s,%d,%.2f", method.c_str(),
                  counts.second, rate);
    CHECK(aggregate.find(expect) != std::string::npos);
  }
  CHECK(fs::exists(fs::path(out1) / "density_report.csv"));
}

TEST_CASE("export: one svg per step, obstacle positions parse back") {
  const fs::path dir = temp_dir("export");

  // Build a small synthetic trace: 10 frames of one obstacle drifting.
  EpisodeLog log;
  log.room.width = 4.0;
  log.room.depth = 4.0;
  log.initial_movables.push_back(Pose2{0.5, 0.25, 0.3});
  ShapeSpec crate;
  crate.dims = Vec3(0.4, 0.4, 0.45);
  log.movable_specs.push_back(crate);
  for (int i = 0; i < 10; ++i) {
    FrameRecord f;
    f.step = 4 * i;
    f.time = 0.2 * i;
    f.output.mode = "dual";
    f.robot = Pose2{-1.0 + 0.1 * i, -0.5, 0.2};
    f.movable_poses.push_back(Pose2{0.5 + 0.02 * i, 0.25, 0.3 + 0.1 * i});
    log.frames.push_back(f);
  }
  const fs::path trace = dir / "trace.csv";
  write_trace_csv(log, trace.string());

  const fs::path out = dir / "frames";
  const int frames =
      export_trace(trace.string(), out.string(), log.movable_specs, log.room);
  CHECK(frames == 10);
  CHECK(fs::exists(out / "summary.csv"));
  int svg_count = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.path().extension() == ".svg") ++svg_count;
  }
  CHECK(svg_count == 10);

  // Parse back the rect rotation center of the obstacle in frame 3 and map
  // it to world coordinates through the declared scale.
  const std::string svg = slurp(out / "step_0012.svg");
  std::smatch m;
  REQUIRE(std::regex_search(
      svg, m,
      std::regex("data-scale=\"(\\d+)\" data-min-x=\"([-0-9.]+)\" "
                 "data-max-y=\"([-0-9.]+)\" data-margin=\"(\\d+)\"")));
  const double scale = std::stod(m[1]), min_x = std::stod(m[2]),
               max_y = std::stod(m[3]), margin = std::stod(m[4]);
  REQUIRE(std::regex_search(
      svg, m, std::regex("rotate\\([-0-9.]+ ([-0-9.]+) ([-0-9.]+)\\)")));
  const double px = std::stod(m[1]), py = std::stod(m[2]);
  const double wx = min_x + (px - margin) / scale;
  const double wy = max_y - (py - margin) / scale;
  CHECK(std::abs(wx - (0.5 + 0.02 * 3)) <= 1.0 / scale);
  CHECK(std::abs(wy - 0.25) <= 1.0 / scale);

  // Empty trace: summary only.
  EpisodeLog empty;
  empty.room = log.room;
  const fs::path empty_trace = dir / "empty.csv";
  write_trace_csv(empty, empty_trace.string());
  const fs::path out_empty = dir / "empty_out";
  CHECK(export_trace(empty_trace.string(), out_empty.string(), {}, log.room) ==
        0);
  CHECK(fs::exists(out_empty / "summary.csv"));
}

TEST_CASE("export: missing trace exits nonzero") {
  const fs::path dir = temp_dir("noexp");
  CHECK(run_cli("export --trace " + (dir / "missing.csv").string() + " --out " +
                (dir / "out").string()) != 0);
}
