#include "sdfnav/controller.hpp"

#include <algorithm>
#include <cmath>

namespace sdfnav {

namespace {

RobotState integrate(const RobotState& robot, double v, double w, double dt) {
  RobotState out = robot;
  out.v = v;
  out.w = w;
  const double mid = robot.pose.theta + 0.5 * w * dt;
  out.pose.x += v * std::cos(mid) * dt;
  out.pose.y += v * std::sin(mid) * dt;
  out.pose.theta = wrap_angle(robot.pose.theta + w * dt);
  return out;
}

}  // namespace

double pure_pursuit_curvature(double lateral_offset, double lookahead) {
  return 2.0 * lateral_offset / (lookahead * lookahead);
}

RobotState controller_step(const RobotState& robot, const Trajectory& traj,
                           double dt, const ControllerConfig& cfg) {
  if (traj.size() < 2) return integrate(robot, 0.0, 0.0, dt);

  const Vec2 pos(robot.pose.x, robot.pose.y);
  const Vec2 goal(traj.back().x(), traj.back().y());
  if ((goal - pos).norm() <= cfg.goal_tolerance) {
    return integrate(robot, 0.0, 0.0, dt);
  }

  // Project onto the polyline, then walk one lookahead ahead.
  double best_d = std::numeric_limits<double>::infinity();
  std::size_t best_seg = 1;
  double best_t = 0.0;
  for (std::size_t i = 1; i < traj.waypoints.size(); ++i) {
    const Vec2 a = traj.waypoints[i - 1].head<2>(), b = traj.waypoints[i].head<2>();
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t =
        len2 > 1e-12 ? std::clamp((pos - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const double d = (a + t * ab - pos).norm();
    if (d < best_d) {
      best_d = d;
      best_seg = i;
      best_t = t;
    }
  }

  double remaining = 0.0;
  Vec2 lookahead_pt = goal;
  {
    Vec2 cursor = traj.waypoints[best_seg - 1].head<2>() +
                  best_t * (traj.waypoints[best_seg].head<2>() -
                            traj.waypoints[best_seg - 1].head<2>());
    double walked = 0.0;
    bool found = false;
    for (std::size_t i = best_seg; i < traj.waypoints.size(); ++i) {
      const Vec2 next = traj.waypoints[i].head<2>();
      const double seg = (next - cursor).norm();
      if (!found && walked + seg >= cfg.lookahead && seg > 1e-12) {
        const double t = (cfg.lookahead - walked) / seg;
        lookahead_pt = cursor + t * (next - cursor);
        found = true;
      }
      walked += seg;
      cursor = next;
    }
    remaining = walked;
  }

  const double v =
      std::clamp(cfg.kp * remaining, 0.0, cfg.v_max);
  // Lookahead in the robot frame.
  const double c = std::cos(robot.pose.theta), s = std::sin(robot.pose.theta);
  const Vec2 rel = lookahead_pt - pos;
  const double y_l = -s * rel.x() + c * rel.y();
  const double kappa = pure_pursuit_curvature(y_l, cfg.lookahead);
  const double w = std::clamp(v * kappa, -cfg.w_max, cfg.w_max);
  return integrate(robot, v, w, dt);
}

RobotState apply_command(const RobotState& robot, const VelocityCommand& cmd,
                         double dt, const ControllerConfig& cfg) {
  const double v = std::clamp(cmd.v, -cfg.v_max, cfg.v_max);
  const double w = std::clamp(cmd.w, -cfg.w_max, cfg.w_max);
  return integrate(robot, v, w, dt);
}

}  // namespace sdfnav
