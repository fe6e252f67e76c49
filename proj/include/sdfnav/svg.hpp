#pragma once

#include <string>
#include <vector>

#include "sdfnav/episode.hpp"

namespace sdfnav {

// Top-down world snapshot: room outline, obstacles, executed path, current
// trajectory, point cloud and robot pose. Scale is declared on the root node
// (data-scale px/m, data-origin the world coordinate of the canvas origin).
struct SvgSnapshot {
  RoomSpec room;
  std::vector<ShapeSpec> obstacle_specs;   // may be empty (generic markers)
  std::vector<Pose2> obstacle_poses;
  Pose2 robot;
  std::vector<Pose2> executed;
  Trajectory trajectory;
  PointCloud cloud;
};

void write_world_svg(const SvgSnapshot& snapshot, const std::string& path);

// Per-step trace CSV written by single runs; fixed header plus per-obstacle
// pose columns.
void write_trace_csv(const EpisodeLog& log, const std::string& path);

// Renders one SVG per trace row plus a summary plot-data CSV.
int export_trace(const std::string& trace_path, const std::string& out_dir,
                 const std::vector<ShapeSpec>& obstacle_specs, RoomSpec room);

}  // namespace sdfnav
