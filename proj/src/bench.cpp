#include "sdfnav/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sdfnav {

using nlohmann::json;

BenchSpec load_bench_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bench spec " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("bench spec parse error: ") + e.what());
  }
  BenchSpec spec;
  spec.layouts = j.value("layouts", spec.layouts);
  spec.pairs = j.value("pairs", spec.pairs);
  spec.repeats = j.value("repeats", spec.repeats);
  if (j.contains("methods")) {
    spec.methods = j["methods"].get<std::vector<std::string>>();
  }
  spec.seed_base = j.value("seed_base", spec.seed_base);
  if (j.contains("room")) {
    spec.generator.room.width = j["room"].value("width", 4.0);
    spec.generator.room.depth = j["room"].value("depth", 4.0);
  }
  spec.generator.obstacle_count = j.value("obstacles", spec.generator.obstacle_count);
  spec.generator.min_start_goal_separation =
      j.value("min_separation", spec.generator.min_start_goal_separation);
  if (j.contains("obstacle_counts")) {
    spec.obstacle_counts = j["obstacle_counts"].get<std::vector<int>>();
  }
  spec.grid_resolution = j.value("grid_resolution", spec.grid_resolution);
  return spec;
}

void save_bench_spec(const BenchSpec& spec, const std::string& path) {
  json j;
  j["layouts"] = spec.layouts;
  j["pairs"] = spec.pairs;
  j["repeats"] = spec.repeats;
  j["methods"] = spec.methods;
  j["seed_base"] = spec.seed_base;
  j["room"] = {{"width", spec.generator.room.width},
               {"depth", spec.generator.room.depth}};
  j["obstacles"] = spec.generator.obstacle_count;
  j["min_separation"] = spec.generator.min_start_goal_separation;
  if (!spec.obstacle_counts.empty()) j["obstacle_counts"] = spec.obstacle_counts;
  j["grid_resolution"] = spec.grid_resolution;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write bench spec " + path);
  out << j.dump(2) << "\n";
}

std::uint64_t episode_seed(std::uint64_t base, int layout, int pair, int repeat,
                           const std::string& method) {
  std::uint64_t h = mix64(base, 0xbe7c4);
  h = mix64(h, static_cast<std::uint64_t>(layout) + 1);
  h = mix64(h, static_cast<std::uint64_t>(pair) + 1);
  h = mix64(h, static_cast<std::uint64_t>(repeat) + 1);
  for (char c : method) h = mix64(h, static_cast<std::uint64_t>(c));
  return h;
}

ScenarioConfig bench_scenario(const BenchSpec& spec, const Catalog& catalog,
                              int layout, int pair) {
  GeneratorSpec gen = spec.generator;
  if (!spec.obstacle_counts.empty()) {
    gen.obstacle_count =
        spec.obstacle_counts[layout % spec.obstacle_counts.size()];
  }
  // Layout (obstacles) from the layout seed; start/goal from the pair seed.
  const std::uint64_t layout_seed =
      mix64(mix64(spec.seed_base, 0x9a1037), layout + 1);
  const std::uint64_t pair_seed = mix64(layout_seed, pair + 1);
  ScenarioConfig base = generate_scenario(gen, catalog, layout_seed);
  // Resample only the start/goal pair.
  for (int tries = 0; tries < 64; ++tries) {
    ScenarioConfig candidate = base;
    Rng rng(mix64(pair_seed, tries));
    const double margin = gen.placement_margin;
    const Vec2 lo(-0.5 * gen.room.width + margin, -0.5 * gen.room.depth + margin);
    const Vec2 hi(0.5 * gen.room.width - margin, 0.5 * gen.room.depth - margin);
    const WorldState world = build_world(candidate, catalog);
    const SceneComposite gt = world.ground_truth();
    const double z = candidate.robot.plane_z();
    const double need = candidate.robot.radius() + 0.1;
    bool ok = false;
    for (int inner = 0; inner < 200; ++inner) {
      const Vec2 s(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
      const Vec2 g(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
      if ((g - s).norm() < gen.min_start_goal_separation) continue;
      if (gt.value(Vec3(s.x(), s.y(), z), false) < need) continue;
      if (gt.value(Vec3(g.x(), g.y(), z), false) < need) continue;
      candidate.start =
          Pose2{s.x(), s.y(), std::atan2(g.y() - s.y(), g.x() - s.x())};
      candidate.goal = g;
      ok = true;
      break;
    }
    if (ok) return candidate;
  }
  throw std::runtime_error("bench_scenario: no valid start/goal pair");
}

const char* kEpisodeCsvHeader =
    "method,layout,pair,repeat,seed,success,fail_reason,traj_len_m,"
    "plan_time_s,scene_stage_count,density";

std::string episode_row_csv(const EpisodeRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%llu,%d,%s,%.6f,%.6f,%d,%.6f",
                row.method.c_str(), row.layout, row.pair, row.repeat,
                static_cast<unsigned long long>(row.seed),
                row.metrics.success ? 1 : 0, row.metrics.fail_reason.c_str(),
                row.metrics.trajectory_length, row.metrics.plan_time,
                row.metrics.scene_stage_count, row.metrics.density);
  return buf;
}

void write_episode_csv(const std::vector<EpisodeRow>& rows,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kEpisodeCsvHeader << "\n";
  for (const auto& row : rows) out << episode_row_csv(row) << "\n";
}

std::vector<MethodAggregate> aggregate_rows(const std::vector<EpisodeRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const EpisodeRow*>> by_method;
  for (const auto& row : rows) {
    if (!by_method.count(row.method)) order.push_back(row.method);
    by_method[row.method].push_back(&row);
  }
  auto mean_std = [](const std::vector<double>& xs, double* mean, double* sd) {
    *mean = 0.0;
    *sd = 0.0;
    if (xs.empty()) return;
    for (double x : xs) *mean += x;
    *mean /= xs.size();
    for (double x : xs) *sd += (x - *mean) * (x - *mean);
    *sd = xs.size() > 1 ? std::sqrt(*sd / (xs.size() - 1)) : 0.0;
  };
  std::vector<MethodAggregate> out;
  for (const auto& method : order) {
    const auto& list = by_method[method];
    MethodAggregate agg;
    agg.method = method;
    agg.episodes = static_cast<int>(list.size());
    std::vector<double> lens, times;
    int successes = 0;
    for (const auto* row : list) {
      if (row->metrics.success) ++successes;
      lens.push_back(row->metrics.trajectory_length);
      times.push_back(row->metrics.plan_time);
    }
    agg.success_rate = 100.0 * successes / std::max(1, agg.episodes);
    mean_std(lens, &agg.traj_len_mean, &agg.traj_len_std);
    mean_std(times, &agg.plan_time_mean, &agg.plan_time_std);
    out.push_back(agg);
  }
  return out;
}

namespace {

void write_aggregate_csv(const std::vector<MethodAggregate>& aggs,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "method,episodes,success_rate,traj_len_mean,traj_len_std,"
         "plan_time_mean,plan_time_std\n";
  char buf[256];
  for (const auto& a : aggs) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.2f,%.6f,%.6f,%.6f,%.6f",
                  a.method.c_str(), a.episodes, a.success_rate, a.traj_len_mean,
                  a.traj_len_std, a.plan_time_mean, a.plan_time_std);
    out << buf << "\n";
  }
}

// Density-bucketed view of the rows, the scalability-plot data: success rate
// and log10 plan time against obstacle density.
void write_density_report(const std::vector<EpisodeRow>& rows,
                          const std::string& path) {
  std::map<std::pair<std::string, int>, std::vector<const EpisodeRow*>> buckets;
  std::vector<std::pair<std::string, int>> order;
  const double bin = 0.02;
  for (const auto& row : rows) {
    const int b = static_cast<int>(std::floor(row.metrics.density / bin));
    const auto key = std::make_pair(row.method, b);
    if (!buckets.count(key)) order.push_back(key);
    buckets[key].push_back(&row);
  }
  std::sort(order.begin(), order.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "method,density_bin,episodes,success_rate,plan_time_mean,"
         "log10_plan_time_mean\n";
  char buf[256];
  for (const auto& key : order) {
    const auto& list = buckets[key];
    int successes = 0;
    double plan = 0.0;
    for (const auto* row : list) {
      if (row->metrics.success) ++successes;
      plan += row->metrics.plan_time;
    }
    plan /= list.size();
    std::snprintf(buf, sizeof(buf), "%s,%.2f,%zu,%.2f,%.6f,%.4f",
                  key.first.c_str(), key.second * bin, list.size(),
                  100.0 * successes / list.size(), plan,
                  plan > 0.0 ? std::log10(plan) : 0.0);
    out << buf << "\n";
  }
}

}  // namespace

BenchResult run_bench(const BenchSpec& spec, const Catalog& catalog,
                      const std::string& out_dir, int workers, bool verbose) {
  std::filesystem::create_directories(out_dir);
  auto baked = std::make_shared<FieldBank>(
      FieldBank::baked(catalog, spec.grid_resolution));

  struct Task {
    std::string method;
    int layout, pair, repeat;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& method : spec.methods) {
    for (int layout = 0; layout < spec.layouts; ++layout) {
      for (int pair = 0; pair < spec.pairs; ++pair) {
        for (int repeat = 0; repeat < spec.repeats; ++repeat) {
          tasks.push_back({method, layout, pair, repeat,
                           episode_seed(spec.seed_base, layout, pair, repeat,
                                        method)});
        }
      }
    }
  }

  // Scenarios are shared across methods/repeats; build each once.
  std::map<std::pair<int, int>, ScenarioConfig> scenarios;
  for (int layout = 0; layout < spec.layouts; ++layout) {
    for (int pair = 0; pair < spec.pairs; ++pair) {
      scenarios[{layout, pair}] = bench_scenario(spec, catalog, layout, pair);
    }
  }

  std::vector<EpisodeRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      ScenarioConfig config = scenarios.at({task.layout, task.pair});
      config.seed = task.seed;
      EpisodeRow row;
      row.method = task.method;
      row.layout = task.layout;
      row.pair = task.pair;
      row.repeat = task.repeat;
      row.seed = task.seed;
      try {
        auto method = make_method(task.method, config, catalog, baked, task.seed);
        row.metrics = run_episode(config, catalog, *method);
      } catch (const std::exception& e) {
        row.metrics.success = false;
        row.metrics.fail_reason = "planner-error";
      }
      rows[i] = std::move(row);
      const std::size_t done = completed.fetch_add(1) + 1;
      if (verbose && done % 10 == 0) {
        std::fprintf(stderr, "bench: %zu/%zu episodes\n", done, tasks.size());
      }
    }
  };
  const int n_workers = std::max(1, workers);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  BenchResult result;
  result.rows = std::move(rows);
  result.aggregates = aggregate_rows(result.rows);
  write_episode_csv(result.rows,
                    (std::filesystem::path(out_dir) / "episodes.csv").string());
  write_aggregate_csv(result.aggregates,
                      (std::filesystem::path(out_dir) / "aggregate.csv").string());
  write_density_report(
      result.rows,
      (std::filesystem::path(out_dir) / "density_report.csv").string());
  return result;
}

}  // namespace sdfnav
