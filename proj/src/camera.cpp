#include "sdfnav/camera.hpp"

#include <cmath>

namespace sdfnav {

CameraIntrinsics CameraIntrinsics::from_fov(int width, int height,
                                            double hfov_rad,
                                            double max_range) {
  CameraIntrinsics intr;
  intr.width = width;
  intr.height = height;
  intr.fx = intr.fy = 0.5 * width / std::tan(0.5 * hfov_rad);
  intr.cx = 0.5 * width;
  intr.cy = 0.5 * height;
  intr.max_range = max_range;
  return intr;
}

Mat4 camera_pose_on_robot(const Pose2& robot, double cam_z) {
  // Optical axes in world: x -> right, y -> down, z -> heading.
  const double c = std::cos(robot.theta), s = std::sin(robot.theta);
  Mat4 m = Mat4::Identity();
  m.col(0).head<3>() = Vec3(s, -c, 0.0);
  m.col(1).head<3>() = Vec3(0.0, 0.0, -1.0);
  m.col(2).head<3>() = Vec3(c, s, 0.0);
  m.col(3).head<3>() = Vec3(robot.x, robot.y, cam_z);
  return m;
}

Vec3 pixel_ray(const CameraIntrinsics& intr, double u, double v) {
  return Vec3((u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy, 1.0)
      .normalized();
}

Vec3 backproject(const Mat4& pose, const CameraIntrinsics& intr, double u,
                 double v, double depth) {
  const Vec3 p_opt(depth * (u - intr.cx) / intr.fx,
                   depth * (v - intr.cy) / intr.fy, depth);
  return pose.topLeftCorner<3, 3>() * p_opt + pose.topRightCorner<3, 1>();
}

bool project(const Mat4& pose, const CameraIntrinsics& intr, const Vec3& p,
             double* u, double* v, double* depth) {
  const Vec3 p_opt = pose.topLeftCorner<3, 3>().transpose() *
                     (p - pose.topRightCorner<3, 1>());
  if (p_opt.z() <= 1e-9) return false;
  *u = intr.cx + intr.fx * p_opt.x() / p_opt.z();
  *v = intr.cy + intr.fy * p_opt.y() / p_opt.z();
  *depth = p_opt.z();
  return true;
}

Frustum Frustum::from_frame(const Mat4& pose, const CameraIntrinsics& intr,
                            double margin) {
  Frustum f;
  f.world_to_optical = pose.inverse();
  f.intrinsics = intr;
  f.margin = margin;
  return f;
}

bool Frustum::contains(const Vec3& p) const {
  const Vec3 q = world_to_optical.topLeftCorner<3, 3>() * p +
                 world_to_optical.topRightCorner<3, 1>();
  if (q.z() < margin || q.z() > intrinsics.max_range - margin) return false;
  const double mu = intrinsics.fx * margin / q.z();
  const double mv = intrinsics.fy * margin / q.z();
  const double u = intrinsics.cx + intrinsics.fx * q.x() / q.z();
  const double v = intrinsics.cy + intrinsics.fy * q.y() / q.z();
  return u >= mu && u <= intrinsics.width - 1 - mu && v >= mv &&
         v <= intrinsics.height - 1 - mv;
}

}  // namespace sdfnav
