#include "sdfnav/episode.hpp"

#include <chrono>
#include <cmath>

#include "sdfnav/irrt_star.hpp"

namespace sdfnav {

namespace {

PlannerConfig planner_config_for(const ScenarioConfig& config, PlanMode mode) {
  PlannerConfig pc;
  pc.mode = mode;
  pc.robot_plane_z = config.robot.plane_z();
  return pc;
}

class TrajOptMethod final : public NavigationMethod {
 public:
  TrajOptMethod(PlanMode mode, const ScenarioConfig& config,
                const Catalog& catalog,
                std::shared_ptr<const FieldBank> baked_fields)
      : catalog_(catalog),
        planner_(planner_config_for(config, mode), catalog_,
                 std::move(baked_fields), build_static_scene(config),
                 RobotBodySdf::from_box(config.robot.dims),
                 Vec3(config.goal.x(), config.goal.y(),
                      config.robot.plane_z())) {}

  StepOutput plan(const StepInput& input) override {
    const PlanResult res = planner_.step(input.frame, input.boxes,
                                         input.robot.pose, input.sim_time);
    StepOutput out;
    out.trajectory = res.trajectory;
    out.plan_seconds = res.robot_stage_seconds + res.scene_stage_seconds;
    out.wall_ms = res.wall_ms;
    out.scene_invoked = res.scene_stage_invoked;
    out.robot_stage_collision = res.robot_stage_collision;
    out.degraded = res.degraded;
    out.alignments = res.alignments_run;
    out.cache_hits = res.cache_hits;
    out.mode = plan_mode_name(planner_.config().mode);
    return out;
  }

  const char* name() const override {
    return plan_mode_name(planner_.config().mode);
  }

 private:
  const Catalog& catalog_;
  DualModePlanner planner_;
};

class DwaMethod final : public NavigationMethod {
 public:
  DwaMethod(const ScenarioConfig& config)
      : goal_(config.goal.x(), config.goal.y(), config.robot.plane_z()) {
    cfg_.v_max = config.robot.v_max;
    cfg_.w_max = config.robot.w_max;
    cfg_.accel = config.robot.accel;
    cfg_.w_accel = config.robot.w_accel;
    cfg_.window_dt = config.timing.frame_period;
    cfg_.robot_radius = config.robot.radius();
    cfg_.goal_tolerance = config.goal_tolerance;
  }

  StepOutput plan(const StepInput& input) override {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t work = 0;
    // Keep wall and obstacle returns, drop floor pixels.
    PointCloud visible = depth_to_pointcloud(input.frame, 3);
    PointCloud obstacles;
    for (const auto& p : visible) {
      if (p.z() > 0.05) obstacles.push_back(p);
    }
    work += visible.size();
    const Vec3 robot_pos(input.robot.pose.x, input.robot.pose.y, 0.0);
    PointCloud with_memory = obstacles;
    for (const auto& p : memory_.query()) with_memory.push_back(p);

    StepOutput out;
    out.command = dwa_step(input.robot.pose, input.robot.v, input.robot.w,
                           with_memory, goal_, cfg_, &work);
    memory_.update(obstacles, robot_pos,
                   Frustum::from_frame(input.frame.pose, input.frame.intrinsics),
                   input.sim_time);
    out.plan_seconds = work * kSecondsPerWorkUnit;
    out.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    out.mode = "dwa";
    return out;
  }

  const char* name() const override { return "dwa"; }

 private:
  DwaConfig cfg_;
  Vec3 goal_;
  PcMemory memory_;
};

class IrrtMethod final : public NavigationMethod {
 public:
  IrrtMethod(const ScenarioConfig& config, std::uint64_t seed)
      : rng_(mix64(seed, 0x1247eeull)),
        goal_(config.goal.x(), config.goal.y()),
        plane_z_(config.robot.plane_z()) {
    cfg_.robot_radius = config.robot.radius();
    cfg_.goal_tolerance = config.goal_tolerance;
    cfg_.plane_z = plane_z_;
  }

  StepOutput plan(const StepInput& input) override {
    const auto t0 = std::chrono::steady_clock::now();
    StepOutput out;
    out.mode = "irrt";
    std::uint64_t work = 0;
    const WorldState& world = *input.world;
    const SceneComposite gt = world.ground_truth();
    const Vec2 start(input.robot.pose.x, input.robot.pose.y);
    const auto path = irrt_star_plan(gt, world.interior_lo(), world.interior_hi(),
                                     start, goal_, cfg_, rng_, &work);
    out.plan_seconds = work * kSecondsPerWorkUnit;
    if (path) {
      Trajectory traj;
      for (const auto& p : *path) {
        traj.waypoints.emplace_back(p.x(), p.y(), plane_z_);
      }
      out.trajectory = resample(traj, 0.1);
      last_ = out.trajectory;
    } else if (last_) {
      out.trajectory = last_;  // keep following the previous plan
    } else {
      out.command = VelocityCommand{0.0, 0.0};
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return out;
  }

  const char* name() const override { return "irrt"; }
  bool privileged() const override { return true; }

 private:
  IrrtConfig cfg_;
  Rng rng_;
  Vec2 goal_;
  double plane_z_;
  std::optional<Trajectory> last_;
};

}  // namespace

std::unique_ptr<NavigationMethod> make_method(
    const std::string& name, const ScenarioConfig& config,
    const Catalog& catalog, std::shared_ptr<const FieldBank> baked_fields,
    std::uint64_t seed) {
  if (name == "dual") {
    return std::make_unique<TrajOptMethod>(PlanMode::dual, config, catalog,
                                           std::move(baked_fields));
  }
  if (name == "robot") {
    return std::make_unique<TrajOptMethod>(PlanMode::robot_only, config,
                                           catalog, std::move(baked_fields));
  }
  if (name == "scene") {
    return std::make_unique<TrajOptMethod>(PlanMode::scene_only, config,
                                           catalog, std::move(baked_fields));
  }
  if (name == "dwa") return std::make_unique<DwaMethod>(config);
  if (name == "irrt") return std::make_unique<IrrtMethod>(config, seed);
  throw std::runtime_error("unknown method: " + name);
}

EpisodeMetrics compute_metrics(const EpisodeLog& log, const WorldState& initial,
                               double plane_z) {
  EpisodeMetrics m;
  m.density = obstacle_density(initial, plane_z);
  for (std::size_t i = 1; i < log.executed.size(); ++i) {
    m.trajectory_length += std::hypot(log.executed[i].x - log.executed[i - 1].x,
                                      log.executed[i].y - log.executed[i - 1].y);
  }
  for (const auto& f : log.frames) {
    m.plan_time += f.output.plan_seconds;
    if (f.output.scene_invoked) ++m.scene_stage_count;
  }
  return m;
}

EpisodeMetrics run_episode(const ScenarioConfig& config, const Catalog& catalog,
                           NavigationMethod& method, EpisodeLog* log) {
  const auto wall_start = std::chrono::steady_clock::now();
  WorldState world = build_world(config, catalog);
  const WorldState initial = world;
  const double plane_z = config.robot.plane_z();

  EpisodeLog local_log;
  EpisodeLog& lg = log ? *log : local_log;
  lg.room = config.room;
  for (const auto& m : world.movables) {
    lg.initial_movables.push_back(m.pose);
    lg.movable_specs.push_back(m.spec);
  }

  Rng episode_rng(mix64(config.seed, 0xd15f1aceull));
  Rng noise_rng(mix64(config.seed, 0x4015eull));

  RobotState robot;
  robot.pose = config.start;

  ControllerConfig ctrl;
  ctrl.kp = config.robot.kp;
  ctrl.lookahead = config.robot.lookahead;
  ctrl.v_max = config.robot.v_max;
  ctrl.w_max = config.robot.w_max;
  ctrl.goal_tolerance = config.goal_tolerance;

  const int steps_per_frame = std::max(
      1, static_cast<int>(std::round(config.timing.frame_period / config.timing.dt)));
  const int max_steps =
      static_cast<int>(std::ceil(config.timing.timeout / config.timing.dt));
  const CameraIntrinsics intr = config.sensor.intrinsics();

  Trajectory current_traj;
  VelocityCommand current_cmd{0.0, 0.0};
  bool follow_trajectory = true;
  int next_displacement = 1;

  EpisodeMetrics result;
  std::string fail_reason;
  bool done = false, success = false;

  for (int step = 0; step < max_steps && !done; ++step) {
    const double t = step * config.timing.dt;
    world.clock = t;

    if (t + 1e-9 >= next_displacement * config.timing.displacement_period) {
      lg.displacements.push_back(
          displace_obstacle(world, episode_rng, config, robot.pose));
      ++next_displacement;
    }

    if (step % steps_per_frame == 0) {
      const Mat4 cam_pose =
          camera_pose_on_robot(robot.pose, config.robot.cam_height);
      RenderResult render = render_scene(world.ground_truth(), cam_pose, intr);
      const auto boxes = gt_bounding_boxes(render, world);
      if (config.sensor.noise_sigma_per_m > 0.0) {
        add_depth_noise(render.frame, config.sensor.noise_sigma_per_m,
                        noise_rng);
      }
      StepInput input{render.frame, boxes, robot, t,
                      method.privileged() ? &world : nullptr};
      FrameRecord record;
      record.step = step;
      record.time = t;
      record.robot = robot.pose;
      for (const auto& m : world.movables) record.movable_poses.push_back(m.pose);
      try {
        record.output = method.plan(input);
      } catch (const std::exception& e) {
        fail_reason = "planner-error";
        lg.frames.push_back(record);
        done = true;
        break;
      }
      if (record.output.trajectory) {
        current_traj = *record.output.trajectory;
        follow_trajectory = true;
      } else if (record.output.command) {
        current_cmd = *record.output.command;
        follow_trajectory = false;
      }
      lg.frames.push_back(record);
    }

    robot = follow_trajectory
                ? controller_step(robot, current_traj, config.timing.dt, ctrl)
                : apply_command(robot, current_cmd, config.timing.dt, ctrl);
    lg.executed.push_back(robot.pose);

    if (footprint_in_collision(world.ground_truth(), robot.pose,
                               config.robot.dims)) {
      fail_reason = "collision";
      done = true;
      break;
    }
    if (std::hypot(robot.pose.x - config.goal.x(),
                   robot.pose.y - config.goal.y()) <= config.goal_tolerance) {
      success = true;
      done = true;
    }
  }
  if (!done) fail_reason = "timeout";

  lg.final_trajectory = current_traj;
  lg.wall_seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - wall_start)
                        .count();
  result = compute_metrics(lg, initial, plane_z);
  result.success = success;
  result.fail_reason = success ? "" : fail_reason;
  return result;
}

}  // namespace sdfnav
