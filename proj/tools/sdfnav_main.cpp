// Command-line front end: single episodes, benchmark sweeps, trace export
// and offline grid baking.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <CLI11.hpp>

#include "sdfnav/bench.hpp"
#include "sdfnav/svg.hpp"

namespace fs = std::filesystem;
using namespace sdfnav;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("SDFNAV_OUT");
  return env ? env : "out";
}

Catalog load_or_default_catalog(const std::string& path) {
  return path.empty() ? default_catalog() : load_catalog(path);
}

int cmd_run(const std::string& config_path, const std::string& method_name,
            std::uint64_t seed, const std::string& out_dir, double noise,
            const std::string& catalog_path) {
  const Catalog catalog = load_or_default_catalog(catalog_path);
  ScenarioConfig config = load_scenario(config_path);
  if (seed != 0) config.seed = seed;
  if (noise > 0.0) config.sensor.noise_sigma_per_m = noise;
  validate_scenario(config, catalog);

  auto baked = std::make_shared<FieldBank>(FieldBank::baked(catalog, 64));
  auto method = make_method(method_name, config, catalog, baked, config.seed);

  EpisodeLog log;
  const EpisodeMetrics metrics = run_episode(config, catalog, *method, &log);

  fs::create_directories(out_dir);
  EpisodeRow row;
  row.method = method_name;
  row.seed = config.seed;
  row.metrics = metrics;
  write_episode_csv({row}, (fs::path(out_dir) / "metrics.csv").string());
  write_trace_csv(log, (fs::path(out_dir) / "trace.csv").string());

  SvgSnapshot snap;
  snap.room = config.room;
  snap.obstacle_specs = log.movable_specs;
  snap.obstacle_poses = log.frames.empty() ? log.initial_movables
                                           : log.frames.back().movable_poses;
  snap.robot = log.executed.empty() ? config.start : log.executed.back();
  snap.executed = log.executed;
  snap.trajectory = log.final_trajectory;
  write_world_svg(snap, (fs::path(out_dir) / "final.svg").string());

  std::printf("method=%s success=%d reason=%s traj_len=%.3f plan_time=%.3f "
              "scene_stages=%d density=%.4f wall=%.1fs\n",
              method_name.c_str(), metrics.success ? 1 : 0,
              metrics.fail_reason.empty() ? "-" : metrics.fail_reason.c_str(),
              metrics.trajectory_length, metrics.plan_time,
              metrics.scene_stage_count, metrics.density, log.wall_seconds);
  return metrics.success ? 0 : 2;
}

int cmd_bench(const std::string& spec_path, const std::string& out_dir,
              int workers, const std::string& catalog_path) {
  const Catalog catalog = load_or_default_catalog(catalog_path);
  const BenchSpec spec = load_bench_spec(spec_path);
  if (workers <= 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  const BenchResult result = run_bench(spec, catalog, out_dir, workers, true);
  std::printf("%-8s %9s %14s %16s\n", "method", "success%", "traj_len(m)",
              "plan_time(s)");
  for (const auto& a : result.aggregates) {
    std::printf("%-8s %8.2f%% %7.2f+-%.2f %9.2f+-%.2f\n", a.method.c_str(),
                a.success_rate, a.traj_len_mean, a.traj_len_std,
                a.plan_time_mean, a.plan_time_std);
  }
  return 0;
}

int cmd_export(const std::string& trace_path, const std::string& out_dir,
               const std::string& config_path,
               const std::string& catalog_path) {
  std::vector<ShapeSpec> specs;
  RoomSpec room;
  if (!config_path.empty()) {
    const Catalog catalog = load_or_default_catalog(catalog_path);
    const ScenarioConfig config = load_scenario(config_path);
    room = config.room;
    for (const auto& o : config.obstacles) {
      specs.push_back(catalog.get(o.catalog_id));
    }
  }
  const int frames = export_trace(trace_path, out_dir, specs, room);
  std::printf("exported %d frames to %s\n", frames, out_dir.c_str());
  return 0;
}

int cmd_bake(const std::string& catalog_path, int resolution,
             const std::string& out_dir) {
  const Catalog catalog = load_or_default_catalog(catalog_path);
  fs::create_directories(out_dir);
  for (const auto& [id, spec] : catalog.shapes()) {
    const GridSdf grid = bake_catalog_grid(spec, resolution);
    char name[64];
    std::snprintf(name, sizeof(name), "shape_%03d.sdfgrid", id);
    save_grid(grid, (fs::path(out_dir) / name).string());
  }
  save_catalog(catalog, (fs::path(out_dir) / "catalog.txt").string());
  std::printf("baked %zu shapes at resolution %d\n", catalog.size(),
              resolution);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite-SDF navigation toolkit"};
  app.require_subcommand(1);

  std::string config_path, spec_path, trace_path, catalog_path;
  std::string method = "dual";
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 0;
  int workers = 0;
  int resolution = 64;
  double noise = 0.0;

  auto* run = app.add_subcommand("run", "Run one episode");
  run->add_option("--config", config_path, "Scenario JSON")->required();
  run->add_option("--method", method, "dual|robot|scene|dwa|irrt");
  run->add_option("--seed", seed, "Override scenario seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--noise", noise, "Depth noise sigma per meter");
  run->add_option("--catalog", catalog_path, "Catalog file");

  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("--spec", spec_path, "Bench spec JSON")->required();
  bench->add_option("--out", out_dir, "Output directory");
  bench->add_option("--workers", workers, "Parallel episodes");
  bench->add_option("--catalog", catalog_path, "Catalog file");

  auto* exp = app.add_subcommand("export", "Render a trace to SVG frames");
  exp->add_option("--trace", trace_path, "trace.csv from run")->required();
  exp->add_option("--out", out_dir, "Output directory");
  exp->add_option("--config", config_path, "Scenario JSON for shapes");
  exp->add_option("--catalog", catalog_path, "Catalog file");

  auto* bake = app.add_subcommand("bake", "Bake catalog grids to disk");
  bake->add_option("--catalog", catalog_path, "Catalog file");
  bake->add_option("--resolution", resolution, "Cells per axis");
  bake->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, method, seed, out_dir, noise, catalog_path);
    }
    if (bench->parsed()) {
      return cmd_bench(spec_path, out_dir, workers, catalog_path);
    }
    if (exp->parsed()) {
      return cmd_export(trace_path, out_dir, config_path, catalog_path);
    }
    if (bake->parsed()) {
      return cmd_bake(catalog_path, resolution, out_dir);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
