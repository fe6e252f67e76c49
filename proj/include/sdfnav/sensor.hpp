#pragma once

#include <cstdint>
#include <vector>

#include "sdfnav/perception.hpp"
#include "sdfnav/world.hpp"

namespace sdfnav {

struct RenderResult {
  DepthFrame frame;
  std::vector<std::int16_t> instance_ids;  // per pixel; -1 static, -2 no hit
};

// Sphere-traced depth render against the ground-truth composite; depth is
// distance along the optical axis, 0 for no return within range.
RenderResult render_scene(const SceneComposite& gt, const Mat4& camera_pose,
                          const CameraIntrinsics& intrinsics);

DepthFrame render_depth(const WorldState& world, const Mat4& camera_pose,
                        const CameraIntrinsics& intrinsics);

void add_depth_noise(DepthFrame& frame, double sigma_per_m, Rng& rng);

// Ground-truth detector oracle: tight pixel boxes of movables with at least
// min_pixels visible.
std::vector<BoundingBox2D> gt_bounding_boxes(const RenderResult& render,
                                             const WorldState& world,
                                             int min_pixels = 50);
std::vector<BoundingBox2D> gt_bounding_boxes(const WorldState& world,
                                             const Mat4& camera_pose,
                                             const CameraIntrinsics& intrinsics,
                                             int min_pixels = 50);

}  // namespace sdfnav
