#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sdfnav/catalog.hpp"
#include "sdfnav/memory.hpp"
#include "sdfnav/trajopt.hpp"

namespace sdfnav {

enum class PlanMode { dual, robot_only, scene_only };

const char* plan_mode_name(PlanMode m);

struct PlannerConfig {
  PlanMode mode = PlanMode::dual;
  int cloud_stride = 3;            // depth back-projection stride
  double waypoint_spacing = 0.15;  // optimization resolution
  double exec_spacing = 0.1;       // post-optimization resampling
  double robot_plane_z = 0.175;    // waypoint height (body center)
  double tau_bg = 0.03;
  int min_instance_points = 10;
  OptimizerConfig robot_opt;       // Eq.-4 stage
  OptimizerConfig scene_opt;       // Eq.-3 stage
  AlignmentSchedule alignment;
  // Deterministic plan-time model: one unit per field evaluation.
  double seconds_per_work_unit = 2.5e-8;
};

struct PlanResult {
  Trajectory trajectory;
  bool robot_stage_collision = false;  // in_collision on the robot-stage output
  bool scene_stage_invoked = false;
  bool degraded = false;               // some alignment did not converge
  int alignments_run = 0;
  int cache_hits = 0;
  double robot_stage_seconds = 0.0;    // modeled from work units
  double scene_stage_seconds = 0.0;
  double wall_ms = 0.0;                // measured, diagnostics only
};

struct PlannerState {
  Trajectory previous;
  PcMemory pc_memory;
  ObsMemory obs_memory;
  int steps = 0;
  int scene_invocations = 0;
  int total_alignments = 0;
};

// Algorithm-style dual-mode planner: the robot-body stage runs every frame;
// the scene-composition stage is triggered when the result still collides
// with the observed points. robot_only / scene_only run one stage
// exclusively (the baseline modes).
class DualModePlanner {
 public:
  DualModePlanner(PlannerConfig config, const Catalog& catalog,
                  std::shared_ptr<const FieldBank> object_fields,
                  std::shared_ptr<const StaticScene> statics,
                  const RobotBodySdf& robot_body, const Vec3& goal);

  PlanResult step(const DepthFrame& frame,
                  const std::vector<BoundingBox2D>& boxes, const Pose2& robot,
                  double sim_time);

  const PlannerState& state() const { return state_; }
  const PlannerConfig& config() const { return config_; }

 private:
  Trajectory robot_stage(const Trajectory& init, const PointCloud& points,
                         std::uint64_t* work);
  Trajectory scene_stage(const Trajectory& init,
                         const std::vector<SceneInstance>& instances,
                         std::uint64_t* work);
  std::vector<SceneInstance> collect_instances(
      const PointCloud& object_points, const std::vector<BoundingBox2D>& boxes,
      const DepthFrame& frame, const Pose2& robot, double sim_time,
      PlanResult* result, std::uint64_t* work);

  PlannerConfig config_;
  const Catalog& catalog_;
  std::shared_ptr<const FieldBank> object_fields_;
  std::shared_ptr<const StaticScene> statics_;
  RobotBodySdf robot_body_;
  OrientedGrid body_grid_;
  Vec3 goal_;
  PlannerState state_;
};

}  // namespace sdfnav
