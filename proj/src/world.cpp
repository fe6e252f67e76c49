#include "sdfnav/world.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace sdfnav {

std::shared_ptr<const StaticScene> build_static_scene(
    const ScenarioConfig& config) {
  auto scene = std::make_shared<StaticScene>();
  scene->floor_z = 0.0;
  const auto& room = config.room;
  const double t = room.wall_thickness;
  const double h = room.wall_height;
  auto wall = [&](double cx, double cy, double dx, double dy) {
    PosedShape w;
    w.spec.kind = ShapeKind::box;
    w.spec.dims = Vec3(dx, dy, h);
    w.pose = Pose2{cx, cy, 0.0};
    w.z_center = 0.5 * h;
    scene->solids.push_back(w);
  };
  wall(0.0, 0.5 * room.depth + 0.5 * t, room.width + 2.0 * t, t);
  wall(0.0, -0.5 * room.depth - 0.5 * t, room.width + 2.0 * t, t);
  wall(0.5 * room.width + 0.5 * t, 0.0, t, room.depth + 2.0 * t);
  wall(-0.5 * room.width - 0.5 * t, 0.0, t, room.depth + 2.0 * t);
  for (const auto& f : config.furniture) {
    PosedShape s;
    s.spec = f.spec;
    s.pose = f.pose;
    s.z_center = 0.5 * f.spec.dims.z();
    scene->solids.push_back(s);
  }
  return scene;
}

WorldState build_world(const ScenarioConfig& config, const Catalog& catalog) {
  WorldState world;
  world.room = config.room;
  world.statics = build_static_scene(config);
  world.analytic_fields =
      std::make_shared<FieldBank>(FieldBank::analytic(catalog));
  std::map<int, int> per_id_count;
  for (const auto& o : config.obstacles) {
    MovableObstacle m;
    m.catalog_id = o.catalog_id;
    m.instance_index = per_id_count[o.catalog_id]++;
    m.spec = catalog.get(o.catalog_id);
    m.pose = o.pose;
    world.movables.push_back(m);
  }
  return world;
}

SceneComposite WorldState::ground_truth() const {
  SceneComposite gt;
  gt.statics = statics;
  gt.instances.reserve(movables.size());
  for (const auto& m : movables) {
    const double gamma = m.spec.normalization_scale();
    gt.instances.push_back(make_instance(
        analytic_fields->field(m.catalog_id),
        object_alignment_transform(m.center(), m.pose.theta, gamma), gamma,
        m.catalog_id, m.instance_index));
  }
  return gt;
}

DisplacementEvent displace_obstacle(WorldState& world, Rng& rng,
                                    const ScenarioConfig& config,
                                    const Pose2& robot) {
  DisplacementEvent event;
  event.time = world.clock;
  if (world.movables.empty()) return event;
  const int pick = rng.uniform_int(static_cast<int>(world.movables.size()));
  MovableObstacle& target = world.movables[pick];
  const double r_bound = target.spec.bounding_radius();
  const Vec2 lo = world.interior_lo(), hi = world.interior_hi();

  for (int attempt = 0; attempt < 20; ++attempt) {
    const double mag =
        rng.uniform(config.displacement_min, config.displacement_max);
    const double dir = rng.uniform(0.0, 2.0 * M_PI);
    Pose2 candidate;
    candidate.x = target.pose.x + mag * std::cos(dir);
    candidate.y = target.pose.y + mag * std::sin(dir);
    candidate.theta = rng.uniform(-M_PI, M_PI);

    const double planar_bound = 0.5 * std::hypot(target.spec.dims.x(),
                                                 target.spec.dims.y());
    if (candidate.x - planar_bound < lo.x() ||
        candidate.x + planar_bound > hi.x() ||
        candidate.y - planar_bound < lo.y() ||
        candidate.y + planar_bound > hi.y()) {
      continue;
    }
    const Vec3 center(candidate.x, candidate.y, target.z_center());
    // Conservative bounding-sphere separation from the static layout.
    if (world.statics->value(center, /*include_floor=*/false) < r_bound) {
      continue;
    }
    if (std::hypot(candidate.x - robot.x, candidate.y - robot.y) - planar_bound <=
        0.5) {
      continue;  // would invade the freeze zone
    }
    target.pose = candidate;
    event.movable = pick;
    event.new_pose = candidate;
    return event;
  }
  return event;  // unmoved this period
}

bool footprint_in_collision(const SceneComposite& gt, const Pose2& robot,
                            const Vec3& robot_dims) {
  const Mat3 rot = yaw_matrix(robot.theta);
  const double z = 0.5 * robot_dims.z();
  const int n = 5;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const Vec3 offset(-0.5 * robot_dims.x() + robot_dims.x() * ix / (n - 1),
                        -0.5 * robot_dims.y() + robot_dims.y() * iy / (n - 1),
                        0.0);
      const Vec3 p = Vec3(robot.x, robot.y, z) + rot * offset;
      if (gt.value(p, /*include_floor=*/false) <= 0.0) return true;
    }
  }
  return false;
}

double obstacle_density(const WorldState& world, double plane_z, double cell) {
  const SceneComposite gt = world.ground_truth();
  const Vec2 lo = world.interior_lo(), hi = world.interior_hi();
  const int nx = std::max(1, static_cast<int>(std::round((hi.x() - lo.x()) / cell)));
  const int ny = std::max(1, static_cast<int>(std::round((hi.y() - lo.y()) / cell)));
  long occupied = 0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Vec3 p(lo.x() + (ix + 0.5) * cell, lo.y() + (iy + 0.5) * cell,
                   plane_z);
      if (gt.value(p, /*include_floor=*/false) <= 0.0) ++occupied;
    }
  }
  return static_cast<double>(occupied) / (static_cast<double>(nx) * ny);
}

}  // namespace sdfnav
