#pragma once

#include <vector>

#include "sdfnav/geometry.hpp"

namespace sdfnav {

// Ordered waypoints on the robot's height plane; start and goal pinned.
struct Trajectory {
  std::vector<Vec3> waypoints;

  int size() const { return static_cast<int>(waypoints.size()); }
  const Vec3& front() const { return waypoints.front(); }
  const Vec3& back() const { return waypoints.back(); }
  double length() const;

  // Segment heading at waypoint i; the last waypoint reuses the previous
  // segment's heading.
  double heading(int i) const;
};

// Straight line from start to goal with roughly `spacing` between waypoints,
// endpoints exact. start == goal degenerates to two coincident waypoints.
Trajectory init_trajectory(const Vec3& start, const Vec3& goal, double spacing);

// Uniform arc-length resampling, endpoints preserved.
Trajectory resample(const Trajectory& traj, double spacing);

// Cuts the passed-by portion and re-anchors the first waypoint at the robot
// position; falls back to a straight line when the previous path is gone.
Trajectory rebase(const Trajectory& prev, const Vec3& robot_pos,
                  const Vec3& goal, double spacing);

// Workspace -> robot-body-domain map at waypoint i:
// M p = R_z(-heading) (p - w_i) / gamma_r.
Transform waypoint_frame(const Trajectory& traj, int i, double gamma_r);

}  // namespace sdfnav
