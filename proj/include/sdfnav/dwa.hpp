#pragma once

#include <cstdint>

#include "sdfnav/perception.hpp"

namespace sdfnav {

struct VelocityCommand {
  double v = 0.0;
  double w = 0.0;
};

struct DwaConfig {
  double v_max = 0.4, v_min = 0.0;
  double w_max = 1.8;
  double accel = 1.0;
  double w_accel = 4.0;
  double horizon = 1.0;   // rollout length, seconds
  double dt = 0.05;
  double window_dt = 0.2; // window growth = control period
  int v_samples = 6;
  int w_samples = 15;
  double robot_radius = 0.25;
  double clearance_cap = 1.0;
  double weight_heading = 1.0;
  double weight_clearance = 0.25;
  double weight_velocity = 0.3;
  double goal_tolerance = 0.2;
};

// Dynamic-window step: samples (v, w) in the reachable window, rolls out
// unicycle arcs over the horizon, drops arcs that collide with the point set
// and returns the best-scoring admissible command; (0, 0) when every arc
// collides.
VelocityCommand dwa_step(const Pose2& robot, double v0, double w0,
                         const PointCloud& obstacles, const Vec3& goal,
                         const DwaConfig& cfg,
                         std::uint64_t* work_units = nullptr);

}  // namespace sdfnav
