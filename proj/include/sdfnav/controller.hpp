#pragma once

#include "sdfnav/dwa.hpp"
#include "sdfnav/trajectory.hpp"

namespace sdfnav {

struct RobotState {
  Pose2 pose;
  double v = 0.0;
  double w = 0.0;
};

struct ControllerConfig {
  double kp = 1.2;          // proportional speed gain
  double lookahead = 0.35;  // pure-pursuit distance
  double v_max = 0.4;
  double w_max = 1.8;
  double goal_tolerance = 0.2;
};

// Proportional speed + pure-pursuit heading along the trajectory, integrated
// with the midpoint rule over dt. Empty trajectories command zero.
RobotState controller_step(const RobotState& robot, const Trajectory& traj,
                           double dt, const ControllerConfig& cfg);

// Pure-pursuit curvature toward a lookahead point expressed in the robot
// frame: kappa = 2 y_L / L_d^2.
double pure_pursuit_curvature(double lateral_offset, double lookahead);

// Direct velocity command (DWA), clamped to the limits and integrated the
// same way.
RobotState apply_command(const RobotState& robot, const VelocityCommand& cmd,
                         double dt, const ControllerConfig& cfg);

}  // namespace sdfnav
