#pragma once

#include <memory>
#include <vector>

#include "sdfnav/fields.hpp"
#include "sdfnav/perception.hpp"
#include "sdfnav/scenario.hpp"

namespace sdfnav {

struct MovableObstacle {
  int catalog_id = -1;
  int instance_index = 0;  // per-catalog-id ordinal
  ShapeSpec spec;
  Pose2 pose;

  double z_center() const { return 0.5 * spec.dims.z(); }
  Vec3 center() const { return {pose.x, pose.y, z_center()}; }
};

// Deterministic simulated world: analytic static layout plus movable catalog
// obstacles.
struct WorldState {
  RoomSpec room;
  std::shared_ptr<const StaticScene> statics;
  std::shared_ptr<const FieldBank> analytic_fields;
  std::vector<MovableObstacle> movables;
  double clock = 0.0;

  // Exact composite of the current scene; instance order follows movables.
  SceneComposite ground_truth() const;

  Vec2 interior_lo() const {
    return {-0.5 * room.width, -0.5 * room.depth};
  }
  Vec2 interior_hi() const { return {0.5 * room.width, 0.5 * room.depth}; }
};

WorldState build_world(const ScenarioConfig& config, const Catalog& catalog);

// Builds only the static layout (walls + furniture) of a config.
std::shared_ptr<const StaticScene> build_static_scene(
    const ScenarioConfig& config);

struct DisplacementEvent {
  double time = 0.0;
  int movable = -1;  // -1: all resamples rejected, world unchanged
  Pose2 new_pose;
};

// Uniformly picks a movable and applies a random planar translation within
// the magnitude bounds plus a random yaw, rejecting poses that leave the
// room, hit the static layout, or land in the robot's freeze zone
// (<= 20 tries).
DisplacementEvent displace_obstacle(WorldState& world, Rng& rng,
                                    const ScenarioConfig& config,
                                    const Pose2& robot);

// Collision oracle: ground-truth SDF at footprint samples of the robot box.
bool footprint_in_collision(const SceneComposite& gt, const Pose2& robot,
                            const Vec3& robot_dims);

// |X_obs| / |X| over the interior raster at the robot plane.
double obstacle_density(const WorldState& world, double plane_z,
                        double cell = 0.05);

}  // namespace sdfnav
