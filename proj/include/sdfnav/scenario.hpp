#pragma once

#include <string>
#include <vector>

#include "sdfnav/camera.hpp"
#include "sdfnav/catalog.hpp"
#include "sdfnav/geometry.hpp"
#include "sdfnav/rng.hpp"

namespace sdfnav {

struct RoomSpec {
  double width = 4.0;        // interior extent along x
  double depth = 4.0;        // interior extent along y
  double wall_height = 0.8;
  double wall_thickness = 0.1;
};

struct PlacedShape {
  ShapeSpec spec;  // for furniture entries
  Pose2 pose;
};

struct PlacedObstacle {
  int catalog_id = 0;
  Pose2 pose;
};

struct RobotSpec {
  Vec3 dims = Vec3(0.35, 0.35, 0.35);
  double v_max = 0.4;
  double w_max = 1.8;
  double accel = 1.0;
  double w_accel = 4.0;
  double cam_height = 0.30;
  double kp = 1.2;
  double lookahead = 0.35;

  double plane_z() const { return 0.5 * dims.z(); }
  double radius() const { return 0.5 * std::hypot(dims.x(), dims.y()); }
};

struct SensorSpec {
  int width = 160;
  int height = 120;
  double hfov_deg = 87.0;
  double max_range = 4.0;
  double noise_sigma_per_m = 0.0;  // optional Gaussian depth noise

  CameraIntrinsics intrinsics() const {
    return CameraIntrinsics::from_fov(width, height, hfov_deg * M_PI / 180.0,
                                      max_range);
  }
};

struct TimingSpec {
  double dt = 0.05;
  double frame_period = 0.2;          // 5 Hz replanning
  double displacement_period = 2.0;
  double timeout = 90.0;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  RoomSpec room;
  std::vector<PlacedShape> furniture;
  std::vector<PlacedObstacle> obstacles;
  Pose2 start;
  Vec2 goal = Vec2(1.0, 1.0);
  double goal_tolerance = 0.2;
  RobotSpec robot;
  SensorSpec sensor;
  TimingSpec timing;
  double displacement_min = 0.2;
  double displacement_max = 0.8;
};

ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const std::string& text);

// Throws std::runtime_error with a human-readable reason.
void validate_scenario(const ScenarioConfig& config, const Catalog& catalog);

struct GeneratorSpec {
  int obstacle_count = 4;
  RoomSpec room;
  double min_start_goal_separation = 2.2;
  double placement_margin = 0.35;  // from walls
};

// Random layout + start/goal pair, rejection-sampled to a valid config.
ScenarioConfig generate_scenario(const GeneratorSpec& spec,
                                 const Catalog& catalog, std::uint64_t seed);

}  // namespace sdfnav
