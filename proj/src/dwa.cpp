#include "sdfnav/dwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdfnav {

namespace {

struct Rollout {
  Pose2 end;
  double min_clearance = std::numeric_limits<double>::infinity();
};

Rollout rollout_arc(const Pose2& start, double v, double w,
                    const PointCloud& obstacles, const DwaConfig& cfg,
                    std::uint64_t* work_units) {
  Rollout r;
  Pose2 pose = start;
  const int steps = std::max(1, static_cast<int>(std::round(cfg.horizon / cfg.dt)));
  for (int i = 0; i < steps; ++i) {
    const double mid = pose.theta + 0.5 * w * cfg.dt;
    pose.x += v * std::cos(mid) * cfg.dt;
    pose.y += v * std::sin(mid) * cfg.dt;
    pose.theta = wrap_angle(pose.theta + w * cfg.dt);
    for (const auto& p : obstacles) {
      const double d = std::hypot(p.x() - pose.x, p.y() - pose.y);
      r.min_clearance = std::min(r.min_clearance, d);
    }
    if (work_units) *work_units += obstacles.size();
  }
  r.end = pose;
  return r;
}

}  // namespace

VelocityCommand dwa_step(const Pose2& robot, double v0, double w0,
                         const PointCloud& obstacles, const Vec3& goal,
                         const DwaConfig& cfg, std::uint64_t* work_units) {
  const double dist_goal = std::hypot(goal.x() - robot.x, goal.y() - robot.y);
  if (dist_goal <= cfg.goal_tolerance) return {0.0, 0.0};

  // Reachable window from the current command and acceleration limits.
  const double v_lo = std::max(cfg.v_min, v0 - cfg.accel * cfg.window_dt);
  const double v_hi = std::min(cfg.v_max, v0 + cfg.accel * cfg.window_dt);
  const double w_lo = std::max(-cfg.w_max, w0 - cfg.w_accel * cfg.window_dt);
  const double w_hi = std::min(cfg.w_max, w0 + cfg.w_accel * cfg.window_dt);

  VelocityCommand best{0.0, 0.0};
  double best_score = -std::numeric_limits<double>::infinity();
  bool any_admissible = false;

  for (int iv = 0; iv < cfg.v_samples; ++iv) {
    const double v = cfg.v_samples > 1
                         ? v_lo + (v_hi - v_lo) * iv / (cfg.v_samples - 1)
                         : v_lo;
    for (int iw = 0; iw < cfg.w_samples; ++iw) {
      const double w = cfg.w_samples > 1
                           ? w_lo + (w_hi - w_lo) * iw / (cfg.w_samples - 1)
                           : w_lo;
      const Rollout r = rollout_arc(robot, v, w, obstacles, cfg, work_units);
      if (r.min_clearance <= cfg.robot_radius) continue;  // inadmissible

      const double goal_bearing =
          std::atan2(goal.y() - r.end.y, goal.x() - r.end.x);
      const double heading =
          (M_PI - std::abs(wrap_angle(goal_bearing - r.end.theta))) / M_PI;
      const double clearance =
          std::min(r.min_clearance - cfg.robot_radius, cfg.clearance_cap) /
          cfg.clearance_cap;
      const double velocity = cfg.v_max > 0.0 ? v / cfg.v_max : 0.0;
      const double score = cfg.weight_heading * heading +
                           cfg.weight_clearance * clearance +
                           cfg.weight_velocity * velocity;
      if (score > best_score) {
        best_score = score;
        best = {v, w};
        any_admissible = true;
      }
    }
  }
  if (!any_admissible) return {0.0, 0.0};
  return best;
}

}  // namespace sdfnav
