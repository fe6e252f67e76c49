#pragma once

#include <memory>
#include <optional>
#include <string>

#include "sdfnav/controller.hpp"
#include "sdfnav/planner.hpp"
#include "sdfnav/sensor.hpp"
#include "sdfnav/world.hpp"

namespace sdfnav {

// Fixed conversion from deterministic work units (field evaluations) to the
// reported plan-time seconds. Keeps benchmark CSVs byte-reproducible.
inline constexpr double kSecondsPerWorkUnit = 2.5e-8;

struct StepInput {
  const DepthFrame& frame;
  const std::vector<BoundingBox2D>& boxes;
  RobotState robot;
  double sim_time = 0.0;
  // Full-observability hook; only privileged baselines may read it.
  const WorldState* world = nullptr;
};

struct StepOutput {
  std::optional<Trajectory> trajectory;
  std::optional<VelocityCommand> command;
  double plan_seconds = 0.0;  // modeled, deterministic
  double wall_ms = 0.0;
  bool scene_invoked = false;
  bool robot_stage_collision = false;
  bool degraded = false;
  int alignments = 0;
  int cache_hits = 0;
  const char* mode = "";
};

class NavigationMethod {
 public:
  virtual ~NavigationMethod() = default;
  virtual StepOutput plan(const StepInput& input) = 0;
  virtual const char* name() const = 0;
  virtual bool privileged() const { return false; }
};

// dual | robot | scene | dwa | irrt
std::unique_ptr<NavigationMethod> make_method(
    const std::string& name, const ScenarioConfig& config,
    const Catalog& catalog, std::shared_ptr<const FieldBank> baked_fields,
    std::uint64_t seed);

struct FrameRecord {
  int step = 0;
  double time = 0.0;
  StepOutput output;  // trajectory/command omitted from logs
  Pose2 robot;
  std::vector<Pose2> movable_poses;
};

struct EpisodeMetrics {
  bool success = false;
  std::string fail_reason;  // timeout | collision | planner-error | ""
  double trajectory_length = 0.0;
  double plan_time = 0.0;  // cumulative modeled seconds
  int scene_stage_count = 0;
  double density = 0.0;
};

struct EpisodeLog {
  std::vector<FrameRecord> frames;
  std::vector<Pose2> executed;        // robot pose per physics step
  std::vector<DisplacementEvent> displacements;
  Trajectory final_trajectory;
  std::vector<Pose2> initial_movables;
  std::vector<ShapeSpec> movable_specs;
  RoomSpec room;
  double wall_seconds = 0.0;
};

EpisodeMetrics compute_metrics(const EpisodeLog& log, const WorldState& initial,
                               double plane_z);

// Deterministic loop: render -> detector oracle -> plan at the frame period,
// control and displacement events at the physics step, collision/goal checks
// against ground truth.
EpisodeMetrics run_episode(const ScenarioConfig& config, const Catalog& catalog,
                           NavigationMethod& method, EpisodeLog* log = nullptr);

}  // namespace sdfnav
