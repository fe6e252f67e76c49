#include "sdfnav/planner.hpp"

#include <chrono>
#include <cmath>
#include <map>

namespace sdfnav {

const char* plan_mode_name(PlanMode m) {
  switch (m) {
    case PlanMode::dual: return "dual";
    case PlanMode::robot_only: return "robot";
    case PlanMode::scene_only: return "scene";
  }
  return "dual";
}

namespace {

// Union with 2 cm voxel dedup, fresh points win.
PointCloud merge_clouds(const PointCloud& fresh, const PointCloud& memory) {
  const double voxel = 0.02;
  auto key = [&](const Vec3& p) {
    return std::tuple<int, int, int>{static_cast<int>(std::floor(p.x() / voxel)),
                                     static_cast<int>(std::floor(p.y() / voxel)),
                                     static_cast<int>(std::floor(p.z() / voxel))};
  };
  std::map<std::tuple<int, int, int>, Vec3> cells;
  for (const auto& p : memory) cells[key(p)] = p;
  for (const auto& p : fresh) cells[key(p)] = p;
  PointCloud out;
  out.reserve(cells.size());
  for (const auto& [k, p] : cells) out.push_back(p);
  return out;
}

}  // namespace

DualModePlanner::DualModePlanner(PlannerConfig config, const Catalog& catalog,
                                 std::shared_ptr<const FieldBank> object_fields,
                                 std::shared_ptr<const StaticScene> statics,
                                 const RobotBodySdf& robot_body,
                                 const Vec3& goal)
    : config_(std::move(config)),
      catalog_(catalog),
      object_fields_(std::move(object_fields)),
      statics_(std::move(statics)),
      robot_body_(robot_body),
      body_grid_(OrientedGrid::over_box(robot_body.dims)),
      goal_(goal) {}

Trajectory DualModePlanner::robot_stage(const Trajectory& init,
                                        const PointCloud& points,
                                        std::uint64_t* work) {
  const PointCloud culled =
      points_near_trajectory(points, init, config_.robot_opt.d_traj);
  auto cost = [&](const Trajectory& t) {
    return robot_cost(t, culled, robot_body_, config_.robot_opt, work);
  };
  return optimize(init, cost, config_.robot_opt);
}

Trajectory DualModePlanner::scene_stage(
    const Trajectory& init, const std::vector<SceneInstance>& instances,
    std::uint64_t* work) {
  SceneComposite composite;
  composite.statics = statics_;
  composite.instances = instances;
  auto cost = [&](const Trajectory& t) {
    return scene_cost(t, composite, body_grid_, config_.scene_opt, work);
  };
  return optimize(init, cost, config_.scene_opt);
}

std::vector<SceneInstance> DualModePlanner::collect_instances(
    const PointCloud& object_points, const std::vector<BoundingBox2D>& boxes,
    const DepthFrame& frame, const Pose2& robot, double sim_time,
    PlanResult* result, std::uint64_t* work) {
  const SegmentedCloud segmented =
      assign_points_to_boxes(object_points, boxes, frame);
  const Vec3 robot_pos = robot.position3(config_.robot_plane_z);

  std::map<InstanceKey, SceneInstance> collected;
  for (const auto& [box, points] : segmented.segments) {
    if (static_cast<int>(points.size()) < config_.min_instance_points) continue;
    if (!catalog_.contains(box.catalog_id)) continue;
    const InstanceKey key{box.catalog_id, box.instance_index};

    Vec3 centroid = Vec3::Zero();
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());

    const ObsDecision decision =
        state_.obs_memory.observe(key, centroid, robot_pos, sim_time);
    AlignmentResult alignment;
    if (decision.cache_hit) {
      ++result->cache_hits;
      bool found = false;
      for (const auto& [k, entry] : state_.obs_memory.lookup()) {
        if (k == key) {
          alignment = entry.alignment;
          found = true;
          break;
        }
      }
      if (!found) continue;  // frozen and never cached
    } else if (decision.run_alignment) {
      const ShapeSpec& prior = catalog_.get(box.catalog_id);
      const CoarseEstimate coarse =
          coarse_translation_scale(points, prior.dims, statics_->floor_z);
      const Vec3 camera = frame.pose.topRightCorner<3, 1>();
      alignment =
          align_pointcloud(*object_fields_->field(box.catalog_id), points,
                           coarse, config_.alignment, work, &camera);
      ++result->alignments_run;
      ++state_.total_alignments;
      if (!alignment.converged) result->degraded = true;
      if (decision.memorize && alignment.converged) {
        state_.obs_memory.store(key, alignment, centroid, robot_pos, sim_time);
      }
    } else {
      continue;  // freeze zone, not cached: not considered
    }

    collected.emplace(key, make_instance(object_fields_->field(box.catalog_id),
                                         alignment.transform, alignment.gamma,
                                         key.first, key.second));
  }

  // Cached entries complete the instance set (out-of-view obstacles).
  for (const auto& [key, entry] : state_.obs_memory.lookup()) {
    if (collected.count(key)) continue;
    collected.emplace(key, make_instance(object_fields_->field(key.first),
                                         entry.alignment.transform,
                                         entry.alignment.gamma, key.first,
                                         key.second));
  }

  std::vector<SceneInstance> instances;
  instances.reserve(collected.size());
  for (auto& [key, inst] : collected) instances.push_back(std::move(inst));
  return instances;
}

PlanResult DualModePlanner::step(const DepthFrame& frame,
                                 const std::vector<BoundingBox2D>& boxes,
                                 const Pose2& robot, double sim_time) {
  const auto wall_start = std::chrono::steady_clock::now();
  PlanResult result;
  ++state_.steps;
  const Vec3 robot_pos = robot.position3(config_.robot_plane_z);

  std::uint64_t robot_work = 0, scene_work = 0;

  const PointCloud visible = depth_to_pointcloud(frame, config_.cloud_stride);
  PointCloud object_points = filter_background(visible, *statics_, config_.tau_bg);
  robot_work += visible.size();
  // Points are planned against on the robot plane.
  PointCloud merged = merge_clouds(object_points, state_.pc_memory.query());

  Trajectory init =
      rebase(state_.previous, robot_pos, goal_, config_.waypoint_spacing);

  Trajectory output;
  if (config_.mode != PlanMode::scene_only) {
    output = robot_stage(init, merged, &robot_work);
  } else {
    output = init;
  }
  // Execution resolution before the collision check: waypoint stretches must
  // not hide thin obstacles between sparse body checks.
  output = resample(output, config_.exec_spacing);

  state_.pc_memory.update(merged, robot_pos,
                          Frustum::from_frame(frame.pose, frame.intrinsics),
                          sim_time);

  bool need_scene = false;
  if (config_.mode == PlanMode::dual) {
    result.robot_stage_collision =
        in_collision(output, merged, robot_body_, &robot_work);
    need_scene = result.robot_stage_collision;
  } else if (config_.mode == PlanMode::scene_only) {
    need_scene = true;
  }

  if (need_scene) {
    result.scene_stage_invoked = true;
    ++state_.scene_invocations;
    const std::vector<SceneInstance> instances = collect_instances(
        object_points, boxes, frame, robot, sim_time, &result, &scene_work);
    output = resample(scene_stage(output, instances, &scene_work),
                      config_.exec_spacing);
  }
  state_.previous = output;

  result.trajectory = output;
  result.robot_stage_seconds = robot_work * config_.seconds_per_work_unit;
  result.scene_stage_seconds = scene_work * config_.seconds_per_work_unit;
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                wall_start)
          .count();
  return result;
}

}  // namespace sdfnav
