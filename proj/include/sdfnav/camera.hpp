#pragma once

#include <vector>

#include "sdfnav/geometry.hpp"

namespace sdfnav {

struct CameraIntrinsics {
  int width = 160;
  int height = 120;
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  double max_range = 4.0;

  static CameraIntrinsics from_fov(int width, int height, double hfov_rad,
                                   double max_range);
  bool valid() const {
    return width > 0 && height > 0 && fx > 0.0 && fy > 0.0 && cx >= 0.0 &&
           cx < width && cy >= 0.0 && cy < height;
  }
};

// Posed depth image. pose maps optical-frame points (x right, y down,
// z forward) to world. depth 0 or > max_range means no return.
struct DepthFrame {
  Mat4 pose = Mat4::Identity();
  CameraIntrinsics intrinsics;
  std::vector<float> depth;  // row-major height x width

  double at(int u, int v) const { return depth[v * intrinsics.width + u]; }
  float& at(int u, int v) { return depth[v * intrinsics.width + u]; }
};

// Optical->world pose for a camera at height cam_z on a robot at `robot`,
// looking along the robot heading.
Mat4 camera_pose_on_robot(const Pose2& robot, double cam_z);

// Ray direction of pixel (u, v) in the optical frame, unit length.
Vec3 pixel_ray(const CameraIntrinsics& intr, double u, double v);

// World point of pixel (u, v) at the given z-depth.
Vec3 backproject(const Mat4& pose, const CameraIntrinsics& intr, double u,
                 double v, double depth);

// Projects a world point; returns false when behind the camera. u/v may be
// outside the image.
bool project(const Mat4& pose, const CameraIntrinsics& intr, const Vec3& p,
             double* u, double* v, double* depth);

// Camera view frustum with a metric shrink margin against border flicker.
struct Frustum {
  Mat4 world_to_optical = Mat4::Identity();
  CameraIntrinsics intrinsics;
  double margin = 0.05;

  static Frustum from_frame(const Mat4& pose, const CameraIntrinsics& intr,
                            double margin = 0.05);
  bool contains(const Vec3& p) const;
};

}  // namespace sdfnav
