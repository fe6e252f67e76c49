#include "sdfnav/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sdfnav/world.hpp"

namespace sdfnav {

using nlohmann::json;

namespace {

json pose_to_json(const Pose2& p) { return json::array({p.x, p.y, p.theta}); }

Pose2 pose_from_json(const json& j) {
  Pose2 p;
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
  p.theta = j.size() > 2 ? j.at(2).get<double>() : 0.0;
  return p;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(),
              j.at(2).get<double>());
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["room"] = {{"width", c.room.width},
               {"depth", c.room.depth},
               {"wall_height", c.room.wall_height},
               {"wall_thickness", c.room.wall_thickness}};
  j["furniture"] = json::array();
  for (const auto& f : c.furniture) {
    j["furniture"].push_back({{"kind", shape_kind_name(f.spec.kind)},
                              {"dims", vec3_to_json(f.spec.dims)},
                              {"round_radius", f.spec.round_radius},
                              {"pose", pose_to_json(f.pose)}});
  }
  j["obstacles"] = json::array();
  for (const auto& o : c.obstacles) {
    j["obstacles"].push_back(
        {{"catalog_id", o.catalog_id}, {"pose", pose_to_json(o.pose)}});
  }
  j["start"] = pose_to_json(c.start);
  j["goal"] = json::array({c.goal.x(), c.goal.y()});
  j["goal_tolerance"] = c.goal_tolerance;
  j["robot"] = {{"dims", vec3_to_json(c.robot.dims)},
                {"v_max", c.robot.v_max},
                {"w_max", c.robot.w_max},
                {"accel", c.robot.accel},
                {"w_accel", c.robot.w_accel},
                {"cam_height", c.robot.cam_height},
                {"kp", c.robot.kp},
                {"lookahead", c.robot.lookahead}};
  j["sensor"] = {{"width", c.sensor.width},
                 {"height", c.sensor.height},
                 {"hfov_deg", c.sensor.hfov_deg},
                 {"max_range", c.sensor.max_range},
                 {"noise_sigma_per_m", c.sensor.noise_sigma_per_m}};
  j["timing"] = {{"dt", c.timing.dt},
                 {"frame_period", c.timing.frame_period},
                 {"displacement_period", c.timing.displacement_period},
                 {"timeout", c.timing.timeout}};
  j["displacement"] = {{"min", c.displacement_min}, {"max", c.displacement_max}};
  return j.dump(2);
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario parse error: ") + e.what());
  }
  ScenarioConfig c;
  c.seed = j.value("seed", 0ull);
  if (j.contains("room")) {
    const auto& r = j["room"];
    c.room.width = r.value("width", c.room.width);
    c.room.depth = r.value("depth", c.room.depth);
    c.room.wall_height = r.value("wall_height", c.room.wall_height);
    c.room.wall_thickness = r.value("wall_thickness", c.room.wall_thickness);
  }
  for (const auto& f : j.value("furniture", json::array())) {
    PlacedShape s;
    s.spec.kind = shape_kind_from_name(f.value("kind", "box"));
    s.spec.dims = vec3_from_json(f.at("dims"));
    s.spec.round_radius = f.value("round_radius", 0.0);
    s.pose = pose_from_json(f.at("pose"));
    c.furniture.push_back(s);
  }
  for (const auto& o : j.value("obstacles", json::array())) {
    PlacedObstacle p;
    p.catalog_id = o.at("catalog_id").get<int>();
    p.pose = pose_from_json(o.at("pose"));
    c.obstacles.push_back(p);
  }
  if (j.contains("start")) c.start = pose_from_json(j["start"]);
  if (j.contains("goal")) {
    c.goal = Vec2(j["goal"].at(0).get<double>(), j["goal"].at(1).get<double>());
  }
  c.goal_tolerance = j.value("goal_tolerance", c.goal_tolerance);
  if (j.contains("robot")) {
    const auto& r = j["robot"];
    if (r.contains("dims")) c.robot.dims = vec3_from_json(r["dims"]);
    c.robot.v_max = r.value("v_max", c.robot.v_max);
    c.robot.w_max = r.value("w_max", c.robot.w_max);
    c.robot.accel = r.value("accel", c.robot.accel);
    c.robot.w_accel = r.value("w_accel", c.robot.w_accel);
    c.robot.cam_height = r.value("cam_height", c.robot.cam_height);
    c.robot.kp = r.value("kp", c.robot.kp);
    c.robot.lookahead = r.value("lookahead", c.robot.lookahead);
  }
  if (j.contains("sensor")) {
    const auto& s = j["sensor"];
    c.sensor.width = s.value("width", c.sensor.width);
    c.sensor.height = s.value("height", c.sensor.height);
    c.sensor.hfov_deg = s.value("hfov_deg", c.sensor.hfov_deg);
    c.sensor.max_range = s.value("max_range", c.sensor.max_range);
    c.sensor.noise_sigma_per_m =
        s.value("noise_sigma_per_m", c.sensor.noise_sigma_per_m);
  }
  if (j.contains("timing")) {
    const auto& t = j["timing"];
    c.timing.dt = t.value("dt", c.timing.dt);
    c.timing.frame_period = t.value("frame_period", c.timing.frame_period);
    c.timing.displacement_period =
        t.value("displacement_period", c.timing.displacement_period);
    c.timing.timeout = t.value("timeout", c.timing.timeout);
  }
  if (j.contains("displacement")) {
    c.displacement_min = j["displacement"].value("min", c.displacement_min);
    c.displacement_max = j["displacement"].value("max", c.displacement_max);
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario " + path);
  out << scenario_to_json(config) << "\n";
}

void validate_scenario(const ScenarioConfig& config, const Catalog& catalog) {
  if (config.room.width <= 0.5 || config.room.depth <= 0.5) {
    throw std::runtime_error("room too small");
  }
  if (config.timing.dt <= 0.0 || config.timing.frame_period < config.timing.dt) {
    throw std::runtime_error("invalid timing");
  }
  for (const auto& o : config.obstacles) {
    if (!catalog.contains(o.catalog_id)) {
      throw std::runtime_error("obstacle references unknown catalog id " +
                               std::to_string(o.catalog_id));
    }
  }
  const WorldState world = build_world(config, catalog);
  const SceneComposite gt = world.ground_truth();
  const double z = config.robot.plane_z();
  const double radius = config.robot.radius();
  const Vec3 start(config.start.x, config.start.y, z);
  const Vec3 goal(config.goal.x(), config.goal.y(), z);
  if (gt.value(start, false) < radius) {
    throw std::runtime_error("start pose has insufficient clearance");
  }
  if (gt.value(goal, false) < radius) {
    throw std::runtime_error("goal position has insufficient clearance");
  }
}

ScenarioConfig generate_scenario(const GeneratorSpec& spec,
                                 const Catalog& catalog, std::uint64_t seed) {
  Rng rng(mix64(seed, 0x5eedc0de));
  ScenarioConfig config;
  config.seed = seed;
  config.room = spec.room;

  std::vector<int> ids;
  for (const auto& [id, s] : catalog.shapes()) ids.push_back(id);

  const double margin = spec.placement_margin;
  const Vec2 lo(-0.5 * spec.room.width + margin, -0.5 * spec.room.depth + margin);
  const Vec2 hi(0.5 * spec.room.width - margin, 0.5 * spec.room.depth - margin);

  // Obstacles: uniform interior placements clear of the walls; overlap among
  // obstacles is allowed.
  for (int i = 0; i < spec.obstacle_count; ++i) {
    for (int tries = 0; tries < 50; ++tries) {
      PlacedObstacle o;
      o.catalog_id = ids[rng.uniform_int(static_cast<int>(ids.size()))];
      o.pose.x = rng.uniform(lo.x(), hi.x());
      o.pose.y = rng.uniform(lo.y(), hi.y());
      o.pose.theta = rng.uniform(-M_PI, M_PI);
      const double r =
          0.5 * catalog.get(o.catalog_id).dims.head<2>().norm();
      if (o.pose.x - r < lo.x() - margin + 0.1 || o.pose.x + r > hi.x() + margin - 0.1 ||
          o.pose.y - r < lo.y() - margin + 0.1 || o.pose.y + r > hi.y() + margin - 0.1) {
        continue;
      }
      config.obstacles.push_back(o);
      break;
    }
  }

  // Start/goal pair with clearance and separation.
  const WorldState world = build_world(config, catalog);
  const SceneComposite gt = world.ground_truth();
  const double z = config.robot.plane_z();
  const double need = config.robot.radius() + 0.1;
  for (int tries = 0; tries < 400; ++tries) {
    const Vec2 s(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
    const Vec2 g(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
    if ((g - s).norm() < spec.min_start_goal_separation) continue;
    if (gt.value(Vec3(s.x(), s.y(), z), false) < need) continue;
    if (gt.value(Vec3(g.x(), g.y(), z), false) < need) continue;
    config.start = Pose2{s.x(), s.y(), std::atan2(g.y() - s.y(), g.x() - s.x())};
    config.goal = g;
    return config;
  }
  throw std::runtime_error("generate_scenario: no valid start/goal found");
}

}  // namespace sdfnav
