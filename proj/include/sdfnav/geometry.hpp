#pragma once

#include <Eigen/Dense>

namespace sdfnav {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Wrap angle to (-pi, pi].
double wrap_angle(double a);

Mat3 yaw_matrix(double theta);

// Planar robot/obstacle pose, z-up world.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec3 position3(double z) const { return {x, y, z}; }
  Vec2 heading() const { return {std::cos(theta), std::sin(theta)}; }
};

// Homogeneous 4x4 transform with yaw-only rotation, translation and an
// optional homogeneous scale factor in the last row: [A b; 0 w]. Applying
// to a point computes (A p + b) / w, so uniform_scale(gamma) maps p to
// p / gamma. Composition is plain matrix product.
class Transform {
 public:
  Transform() { m_.setIdentity(); }
  explicit Transform(const Mat4& m) : m_(m) {}

  static Transform identity() { return Transform(); }
  static Transform translation(const Vec3& t);
  static Transform yaw_rotation(double theta);
  static Transform uniform_scale(double gamma);

  Transform operator*(const Transform& rhs) const {
    return Transform(m_ * rhs.m_);
  }

  Vec3 apply(const Vec3& p) const {
    const Vec3 q = m_.topLeftCorner<3, 3>() * p + m_.topRightCorner<3, 1>();
    return q / m_(3, 3);
  }

  // Jacobian of apply(), A / w.
  Mat3 point_jacobian() const { return m_.topLeftCorner<3, 3>() / m_(3, 3); }

  Mat3 rotation() const { return m_.topLeftCorner<3, 3>(); }
  double scale() const { return m_(3, 3); }
  double yaw() const { return std::atan2(m_(1, 0), m_(0, 0)); }

  Transform inverse() const { return Transform(m_.inverse().eval()); }
  const Mat4& matrix() const { return m_; }

 private:
  Mat4 m_;
};

// Standard world -> normalized-object-domain map H = R S T for an object at
// planar pose (center, yaw) with normalization scale gamma:
//   H p = R_z(-yaw) (p - center) / gamma.
Transform object_alignment_transform(const Vec3& center, double yaw,
                                     double gamma);

}  // namespace sdfnav
