#include "sdfnav/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdfnav {

double Trajectory::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    len += (waypoints[i] - waypoints[i - 1]).norm();
  }
  return len;
}

double Trajectory::heading(int i) const {
  const int n = size();
  if (n < 2) return 0.0;
  int a = std::min(i, n - 2);
  // Walk back over coincident waypoints.
  while (a > 0 && (waypoints[a + 1] - waypoints[a]).head<2>().norm() < 1e-12) {
    --a;
  }
  const Vec3 d = waypoints[a + 1] - waypoints[a];
  if (d.head<2>().norm() < 1e-12) return 0.0;
  return std::atan2(d.y(), d.x());
}

Trajectory init_trajectory(const Vec3& start, const Vec3& goal,
                           double spacing) {
  if (spacing <= 0.0) throw std::invalid_argument("spacing must be > 0");
  Trajectory traj;
  const double dist = (goal - start).norm();
  if (dist < 1e-12) {
    traj.waypoints = {start, goal};
    return traj;
  }
  const int segments = std::max(1, static_cast<int>(std::ceil(dist / spacing - 1e-9)));
  traj.waypoints.reserve(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    traj.waypoints.push_back(start + t * (goal - start));
  }
  traj.waypoints.back() = goal;
  return traj;
}

Trajectory resample(const Trajectory& traj, double spacing) {
  if (traj.size() < 2) return traj;
  const double total = traj.length();
  if (total < 1e-12) {
    Trajectory out;
    out.waypoints = {traj.front(), traj.back()};
    return out;
  }
  const int segments = std::max(1, static_cast<int>(std::ceil(total / spacing - 1e-9)));
  Trajectory out;
  out.waypoints.reserve(segments + 1);
  out.waypoints.push_back(traj.front());
  double carry = 0.0;
  std::size_t seg = 1;
  const double step = total / segments;
  for (int i = 1; i < segments; ++i) {
    double target = i * step;
    while (seg < traj.waypoints.size()) {
      const double seg_len = (traj.waypoints[seg] - traj.waypoints[seg - 1]).norm();
      if (carry + seg_len >= target || seg + 1 == traj.waypoints.size()) {
        const double t = seg_len > 1e-12
                             ? std::clamp((target - carry) / seg_len, 0.0, 1.0)
                             : 0.0;
        out.waypoints.push_back(traj.waypoints[seg - 1] +
                                t * (traj.waypoints[seg] - traj.waypoints[seg - 1]));
        break;
      }
      carry += seg_len;
      ++seg;
    }
  }
  out.waypoints.push_back(traj.back());
  return out;
}

Trajectory rebase(const Trajectory& prev, const Vec3& robot_pos,
                  const Vec3& goal, double spacing) {
  if (prev.size() < 2) return init_trajectory(robot_pos, goal, spacing);

  // Nearest point on the polyline to the robot.
  double best_d = std::numeric_limits<double>::infinity();
  std::size_t best_seg = 0;
  double best_t = 0.0;
  for (std::size_t i = 1; i < prev.waypoints.size(); ++i) {
    const Vec3 a = prev.waypoints[i - 1], b = prev.waypoints[i];
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 1e-12
                         ? std::clamp((robot_pos - a).dot(ab) / len2, 0.0, 1.0)
                         : 0.0;
    const double d = (a + t * ab - robot_pos).norm();
    if (d < best_d) {
      best_d = d;
      best_seg = i;
      best_t = t;
    }
  }

  Trajectory cut;
  cut.waypoints.push_back(robot_pos);
  const Vec3 entry = prev.waypoints[best_seg - 1] +
                     best_t * (prev.waypoints[best_seg] - prev.waypoints[best_seg - 1]);
  if ((entry - robot_pos).norm() > 1e-9) cut.waypoints.push_back(entry);
  for (std::size_t i = best_seg; i < prev.waypoints.size(); ++i) {
    cut.waypoints.push_back(prev.waypoints[i]);
  }
  cut.waypoints.back() = goal;
  if (cut.size() < 2) return init_trajectory(robot_pos, goal, spacing);
  return resample(cut, spacing);
}

Transform waypoint_frame(const Trajectory& traj, int i, double gamma_r) {
  if (i < 0 || i >= traj.size()) {
    throw std::out_of_range("waypoint_frame: index out of range");
  }
  return object_alignment_transform(traj.waypoints[i], traj.heading(i),
                                    gamma_r);
}

}  // namespace sdfnav
