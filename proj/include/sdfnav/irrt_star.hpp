#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdfnav/fields.hpp"
#include "sdfnav/rng.hpp"

namespace sdfnav {

struct IrrtConfig {
  int max_iterations = 300;
  double goal_bias = 0.1;
  double steer_step = 0.3;
  double robot_radius = 0.25;
  double goal_tolerance = 0.2;
  double edge_check_ds = 0.05;
  double gamma_rrt = 0.0;  // 0: derived as 2 * sampling-area diagonal
  double plane_z = 0.175;
};

// Informed RRT* in the plane with clearance checks against the ground-truth
// composite field (full-observability baseline). After the first solution,
// samples are drawn from the prolate hyperspheroid of (start, goal, best
// cost). Returns waypoints start..goal, or nullopt within the iteration cap.
std::optional<std::vector<Vec2>> irrt_star_plan(
    const SceneComposite& world, const Vec2& sample_lo, const Vec2& sample_hi,
    const Vec2& start, const Vec2& goal, const IrrtConfig& cfg, Rng& rng,
    std::uint64_t* work_units = nullptr);

}  // namespace sdfnav
