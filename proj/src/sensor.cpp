#include "sdfnav/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sdfnav {

RenderResult render_scene(const SceneComposite& gt, const Mat4& camera_pose,
                          const CameraIntrinsics& intrinsics) {
  RenderResult out;
  out.frame.pose = camera_pose;
  out.frame.intrinsics = intrinsics;
  out.frame.depth.assign(
      static_cast<std::size_t>(intrinsics.width) * intrinsics.height, 0.0f);
  out.instance_ids.assign(out.frame.depth.size(), -2);

  const Mat3 rot = camera_pose.topLeftCorner<3, 3>();
  const Vec3 origin = camera_pose.topRightCorner<3, 1>();
  constexpr double kHitEps = 1e-4;
  constexpr int kMaxSteps = 256;

  for (int v = 0; v < intrinsics.height; ++v) {
    for (int u = 0; u < intrinsics.width; ++u) {
      const Vec3 dir_opt = pixel_ray(intrinsics, u, v);
      const Vec3 dir = rot * dir_opt;
      const double axial = dir_opt.z();  // optical-axis component
      const double t_max = (intrinsics.max_range + 0.2) / axial;
      double t = 0.0;
      for (int step = 0; step < kMaxSteps; ++step) {
        const Vec3 p = origin + t * dir;
        const double d = gt.value(p);
        if (d < kHitEps) {
          const double depth = t * axial;
          if (depth > 0.0 && depth <= intrinsics.max_range) {
            out.frame.at(u, v) = static_cast<float>(depth);
            out.instance_ids[v * intrinsics.width + u] =
                static_cast<std::int16_t>(gt.sample(p).branch);
          }
          break;
        }
        t += d;
        if (t > t_max) break;
      }
    }
  }
  return out;
}

DepthFrame render_depth(const WorldState& world, const Mat4& camera_pose,
                        const CameraIntrinsics& intrinsics) {
  return render_scene(world.ground_truth(), camera_pose, intrinsics).frame;
}

void add_depth_noise(DepthFrame& frame, double sigma_per_m, Rng& rng) {
  if (sigma_per_m <= 0.0) return;
  for (auto& d : frame.depth) {
    if (d <= 0.0f) continue;
    const double noisy = d * (1.0 + sigma_per_m * rng.normal());
    d = static_cast<float>(std::max(1e-3, noisy));
  }
}

std::vector<BoundingBox2D> gt_bounding_boxes(const RenderResult& render,
                                             const WorldState& world,
                                             int min_pixels) {
  struct Extent {
    int u_min, v_min, u_max, v_max, count = 0;
  };
  std::map<int, Extent> extents;
  const auto& intr = render.frame.intrinsics;
  for (int v = 0; v < intr.height; ++v) {
    for (int u = 0; u < intr.width; ++u) {
      const int id = render.instance_ids[v * intr.width + u];
      if (id < 0) continue;
      auto [it, inserted] = extents.try_emplace(id, Extent{u, v, u, v, 0});
      auto& e = it->second;
      e.u_min = std::min(e.u_min, u);
      e.u_max = std::max(e.u_max, u);
      e.v_min = std::min(e.v_min, v);
      e.v_max = std::max(e.v_max, v);
      ++e.count;
    }
  }
  std::vector<BoundingBox2D> boxes;
  for (const auto& [id, e] : extents) {
    if (e.count < min_pixels) continue;
    if (id >= static_cast<int>(world.movables.size())) continue;
    BoundingBox2D box;
    box.u_min = e.u_min;
    box.v_min = e.v_min;
    box.u_max = e.u_max;
    box.v_max = e.v_max;
    box.catalog_id = world.movables[id].catalog_id;
    box.instance_index = world.movables[id].instance_index;
    boxes.push_back(box);
  }
  return boxes;
}

std::vector<BoundingBox2D> gt_bounding_boxes(const WorldState& world,
                                             const Mat4& camera_pose,
                                             const CameraIntrinsics& intrinsics,
                                             int min_pixels) {
  return gt_bounding_boxes(render_scene(world.ground_truth(), camera_pose, intrinsics),
                           world, min_pixels);
}

}  // namespace sdfnav
