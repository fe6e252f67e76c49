#include "sdfnav/irrt_star.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdfnav {

namespace {

struct Node {
  Vec2 pos;
  int parent = -1;
  double cost = 0.0;
};

}  // namespace

std::optional<std::vector<Vec2>> irrt_star_plan(
    const SceneComposite& world, const Vec2& sample_lo, const Vec2& sample_hi,
    const Vec2& start, const Vec2& goal, const IrrtConfig& cfg, Rng& rng,
    std::uint64_t* work_units) {
  const std::size_t fields_per_sample =
      1 + (world.statics ? world.statics->solids.size() : 0) +
      world.instances.size();
  auto clear_at = [&](const Vec2& p) {
    if (work_units) *work_units += fields_per_sample;
    return world.value(Vec3(p.x(), p.y(), cfg.plane_z),
                       /*include_floor=*/false) >= cfg.robot_radius;
  };
  auto edge_free = [&](const Vec2& a, const Vec2& b) {
    const double len = (b - a).norm();
    const int checks = std::max(1, static_cast<int>(std::ceil(len / cfg.edge_check_ds)));
    for (int i = 0; i <= checks; ++i) {
      if (!clear_at(a + (b - a) * (static_cast<double>(i) / checks))) {
        return false;
      }
    }
    return true;
  };

  if (!clear_at(start)) return std::nullopt;

  const double span = (sample_hi - sample_lo).norm();
  const double gamma_rrt = cfg.gamma_rrt > 0.0 ? cfg.gamma_rrt : 2.0 * span;
  const double c_min = (goal - start).norm();
  const Vec2 center = 0.5 * (start + goal);
  const double ellipse_angle = std::atan2(goal.y() - start.y(), goal.x() - start.x());

  std::vector<Node> nodes{{start, -1, 0.0}};
  int best_goal_node = -1;
  double best_cost = std::numeric_limits<double>::infinity();

  auto sample_free = [&]() {
    for (int tries = 0; tries < 64; ++tries) {
      Vec2 s;
      if (rng.uniform() < cfg.goal_bias) {
        s = goal;
      } else if (best_goal_node >= 0) {
        // Prolate hyperspheroid: foci start/goal, transverse axis best_cost.
        const double a = 0.5 * best_cost;
        const double b = 0.5 * std::sqrt(std::max(best_cost * best_cost - c_min * c_min, 1e-12));
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(rng.uniform());
        const Vec2 unit(a * r * std::cos(phi), b * r * std::sin(phi));
        const double ca = std::cos(ellipse_angle), sa = std::sin(ellipse_angle);
        s = center + Vec2(ca * unit.x() - sa * unit.y(),
                          sa * unit.x() + ca * unit.y());
      } else {
        s = Vec2(rng.uniform(sample_lo.x(), sample_hi.x()),
                 rng.uniform(sample_lo.y(), sample_hi.y()));
      }
      if (s.x() >= sample_lo.x() && s.x() <= sample_hi.x() &&
          s.y() >= sample_lo.y() && s.y() <= sample_hi.y()) {
        return s;
      }
    }
    return goal;
  };

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Vec2 target = sample_free();

    int nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double d = (nodes[i].pos - target).norm();
      if (d < nearest_d) {
        nearest_d = d;
        nearest = static_cast<int>(i);
      }
    }
    Vec2 new_pos = target;
    if (nearest_d > cfg.steer_step) {
      new_pos = nodes[nearest].pos +
                (target - nodes[nearest].pos) * (cfg.steer_step / nearest_d);
    }
    if (!clear_at(new_pos)) continue;

    // RRT* neighborhood.
    const double n = static_cast<double>(nodes.size() + 1);
    const double radius =
        std::max(cfg.steer_step,
                 std::min(gamma_rrt * std::sqrt(std::log(n) / n), 4.0 * cfg.steer_step));
    std::vector<int> near;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if ((nodes[i].pos - new_pos).norm() <= radius) {
        near.push_back(static_cast<int>(i));
      }
    }

    int parent = -1;
    double new_cost = std::numeric_limits<double>::infinity();
    for (int i : near) {
      const double c = nodes[i].cost + (nodes[i].pos - new_pos).norm();
      if (c < new_cost && edge_free(nodes[i].pos, new_pos)) {
        new_cost = c;
        parent = i;
      }
    }
    if (parent < 0) {
      if (!edge_free(nodes[nearest].pos, new_pos)) continue;
      parent = nearest;
      new_cost = nodes[nearest].cost + (nodes[nearest].pos - new_pos).norm();
    }
    nodes.push_back({new_pos, parent, new_cost});
    const int new_idx = static_cast<int>(nodes.size()) - 1;

    // Rewire.
    for (int i : near) {
      const double through = new_cost + (nodes[i].pos - new_pos).norm();
      if (through + 1e-12 < nodes[i].cost && edge_free(new_pos, nodes[i].pos)) {
        nodes[i].parent = new_idx;
        nodes[i].cost = through;
      }
    }

    if ((new_pos - goal).norm() <= cfg.goal_tolerance) {
      const double goal_cost = new_cost + (new_pos - goal).norm();
      if (goal_cost < best_cost) {
        best_cost = goal_cost;
        best_goal_node = new_idx;
      }
    }
  }

  if (best_goal_node < 0) return std::nullopt;
  // Costs may have improved after rewiring; refresh before extraction.
  best_cost = nodes[best_goal_node].cost + (nodes[best_goal_node].pos - goal).norm();

  std::vector<Vec2> path;
  for (int i = best_goal_node; i >= 0; i = nodes[i].parent) {
    path.push_back(nodes[i].pos);
  }
  std::reverse(path.begin(), path.end());
  if ((path.back() - goal).norm() > 1e-9) path.push_back(goal);
  return path;
}

}  // namespace sdfnav
