#include "sdfnav/svg.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sdfnav {

namespace {

constexpr double kScale = 100.0;  // px per meter
constexpr double kMargin = 20.0;

struct Canvas {
  double min_x, max_y, width, height;
  double px(double x) const { return kMargin + (x - min_x) * kScale; }
  double py(double y) const { return kMargin + (max_y - y) * kScale; }
};

Canvas canvas_for(const RoomSpec& room) {
  Canvas c;
  const double t = room.wall_thickness;
  c.min_x = -0.5 * room.width - t;
  c.max_y = 0.5 * room.depth + t;
  c.width = (room.width + 2 * t) * kScale + 2 * kMargin;
  c.height = (room.depth + 2 * t) * kScale + 2 * kMargin;
  return c;
}

}  // namespace

void write_world_svg(const SvgSnapshot& snap, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const Canvas c = canvas_for(snap.room);
  char buf[512];

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" data-scale=\"%.0f\" data-min-x=\"%.4f\" "
                "data-max-y=\"%.4f\" data-margin=\"%.0f\">\n",
                c.width, c.height, kScale, c.min_x, c.max_y, kMargin);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Room interior outline.
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n",
                c.px(-0.5 * snap.room.width), c.py(0.5 * snap.room.depth),
                snap.room.width * kScale, snap.room.depth * kScale);
  out << buf;

  out << "<g id=\"obstacles\">\n";
  for (std::size_t i = 0; i < snap.obstacle_poses.size(); ++i) {
    const Pose2& pose = snap.obstacle_poses[i];
    ShapeSpec spec;
    spec.dims = Vec3(0.3, 0.3, 0.3);
    if (i < snap.obstacle_specs.size()) spec = snap.obstacle_specs[i];
    const double cx = c.px(pose.x), cy = c.py(pose.y);
    if (spec.kind == ShapeKind::sphere || spec.kind == ShapeKind::cylinder) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" "
                    "fill=\"#c0c0e8\" stroke=\"#333\"/>\n",
                    cx, cy, 0.5 * spec.dims.x() * kScale);
    } else {
      const double w = spec.dims.x() * kScale, h = spec.dims.y() * kScale;
      std::snprintf(buf, sizeof(buf),
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                    "transform=\"rotate(%.2f %.2f %.2f)\" fill=\"#c0c0e8\" "
                    "stroke=\"#333\"/>\n",
                    cx - 0.5 * w, cy - 0.5 * h, w, h,
                    -pose.theta * 180.0 / M_PI, cx, cy);
    }
    out << buf;
  }
  out << "</g>\n";

  if (!snap.cloud.empty()) {
    out << "<g id=\"cloud\">\n";
    for (const auto& p : snap.cloud) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1\" fill=\"#888\"/>\n",
                    c.px(p.x()), c.py(p.y()));
      out << buf;
    }
    out << "</g>\n";
  }

  auto polyline = [&](const char* id, const char* color, auto&& points) {
    std::ostringstream ss;
    for (const auto& p : points) {
      ss << c.px(p.x()) << "," << c.py(p.y()) << " ";
    }
    out << "<polyline id=\"" << id << "\" points=\"" << ss.str()
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  };
  if (!snap.executed.empty()) {
    std::vector<Vec2> pts;
    for (const auto& p : snap.executed) pts.emplace_back(p.x, p.y);
    polyline("executed", "#2a7", pts);
  }
  if (snap.trajectory.size() > 1) {
    std::vector<Vec2> pts;
    for (const auto& w : snap.trajectory.waypoints) pts.emplace_back(w.x(), w.y());
    polyline("trajectory", "#d33", pts);
  }

  // Robot: triangle pointing along heading.
  {
    const double r = 0.12 * kScale;
    const double cx = c.px(snap.robot.x), cy = c.py(snap.robot.y);
    const double th = snap.robot.theta;
    auto vx = [&](double a, double d) { return cx + d * std::cos(-(th + a)) * 1.0; };
    auto vy = [&](double a, double d) { return cy + d * std::sin(-(th + a)) * 1.0; };
    std::snprintf(buf, sizeof(buf),
                  "<polygon id=\"robot\" points=\"%.1f,%.1f %.1f,%.1f %.1f,%.1f\" "
                  "fill=\"#36c\"/>\n",
                  vx(0, 1.4 * r), vy(0, 1.4 * r), vx(2.5, r), vy(2.5, r),
                  vx(-2.5, r), vy(-2.5, r));
    out << buf;
  }
  out << "</svg>\n";
}

void write_trace_csv(const EpisodeLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::size_t n_obst = log.initial_movables.size();
  out << "step,time,mode,robot_x,robot_y,robot_theta,plan_s,wall_ms,"
         "robot_collision,scene_invoked,degraded,alignments,cache_hits,"
         "n_obstacles";
  for (std::size_t i = 0; i < n_obst; ++i) {
    out << ",obst" << i << "_x,obst" << i << "_y,obst" << i << "_yaw";
  }
  out << "\n";
  char buf[256];
  for (const auto& f : log.frames) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%.3f,%s,%.6f,%.6f,%.6f,%.6f,%.3f,%d,%d,%d,%d,%d,%zu",
                  f.step, f.time, f.output.mode, f.robot.x, f.robot.y,
                  f.robot.theta, f.output.plan_seconds, f.output.wall_ms,
                  f.output.robot_stage_collision ? 1 : 0,
                  f.output.scene_invoked ? 1 : 0, f.output.degraded ? 1 : 0,
                  f.output.alignments, f.output.cache_hits, n_obst);
    out << buf;
    for (const auto& pose : f.movable_poses) {
      std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%.6f", pose.x, pose.y,
                    pose.theta);
      out << buf;
    }
    out << "\n";
  }
}

int export_trace(const std::string& trace_path, const std::string& out_dir,
                 const std::vector<ShapeSpec>& obstacle_specs, RoomSpec room) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("cannot open trace " + trace_path);
  std::filesystem::create_directories(out_dir);

  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty trace file");

  std::ofstream summary(
      (std::filesystem::path(out_dir) / "summary.csv").string());
  summary << "step,time,robot_x,robot_y,mode,plan_s\n";

  std::vector<Pose2> executed;
  std::string line;
  int frames = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 14) continue;
    SvgSnapshot snap;
    snap.room = room;
    snap.obstacle_specs = obstacle_specs;
    const int step = std::stoi(cells[0]);
    const double time = std::stod(cells[1]);
    snap.robot.x = std::stod(cells[3]);
    snap.robot.y = std::stod(cells[4]);
    snap.robot.theta = std::stod(cells[5]);
    const std::size_t n_obst = std::stoul(cells[13]);
    for (std::size_t i = 0; i < n_obst && 14 + 3 * i + 2 < cells.size(); ++i) {
      Pose2 pose;
      pose.x = std::stod(cells[14 + 3 * i]);
      pose.y = std::stod(cells[14 + 3 * i + 1]);
      pose.theta = std::stod(cells[14 + 3 * i + 2]);
      snap.obstacle_poses.push_back(pose);
    }
    executed.push_back(snap.robot);
    snap.executed = executed;
    char name[64];
    std::snprintf(name, sizeof(name), "step_%04d.svg", step);
    write_world_svg(snap, (std::filesystem::path(out_dir) / name).string());
    summary << cells[0] << "," << cells[1] << "," << cells[3] << ","
            << cells[4] << "," << cells[2] << "," << cells[6] << "\n";
    (void)time;
    ++frames;
  }
  return frames;
}

}  // namespace sdfnav
