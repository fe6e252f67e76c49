#pragma once

#include <string>
#include <vector>

#include "sdfnav/episode.hpp"

namespace sdfnav {

struct BenchSpec {
  int layouts = 10;
  int pairs = 5;
  int repeats = 2;
  std::vector<std::string> methods = {"dual", "robot", "scene"};
  std::uint64_t seed_base = 1;
  GeneratorSpec generator;
  // Optional per-layout obstacle counts (density tiers); layout i uses
  // obstacle_counts[i % size] when non-empty.
  std::vector<int> obstacle_counts;
  int grid_resolution = 64;
};

BenchSpec load_bench_spec(const std::string& path);
void save_bench_spec(const BenchSpec& spec, const std::string& path);

struct EpisodeRow {
  std::string method;
  int layout = 0, pair = 0, repeat = 0;
  std::uint64_t seed = 0;
  EpisodeMetrics metrics;
};

struct MethodAggregate {
  std::string method;
  int episodes = 0;
  double success_rate = 0.0;  // percent
  double traj_len_mean = 0.0, traj_len_std = 0.0;
  double plan_time_mean = 0.0, plan_time_std = 0.0;
};

// Layout from (base, layout); start/goal pair from (base, layout, pair);
// the episode stream additionally hashes the method so in-episode randomness
// is method-specific while worlds are shared.
std::uint64_t episode_seed(std::uint64_t base, int layout, int pair, int repeat,
                           const std::string& method);
ScenarioConfig bench_scenario(const BenchSpec& spec, const Catalog& catalog,
                              int layout, int pair);

struct BenchResult {
  std::vector<EpisodeRow> rows;
  std::vector<MethodAggregate> aggregates;
};

// Runs the full grid with episode-level parallelism and writes
// episodes.csv, aggregate.csv and density_report.csv under out_dir.
BenchResult run_bench(const BenchSpec& spec, const Catalog& catalog,
                      const std::string& out_dir, int workers,
                      bool verbose = false);

std::vector<MethodAggregate> aggregate_rows(const std::vector<EpisodeRow>& rows);

extern const char* kEpisodeCsvHeader;
std::string episode_row_csv(const EpisodeRow& row);
void write_episode_csv(const std::vector<EpisodeRow>& rows,
                       const std::string& path);

}  // namespace sdfnav
