#include "sdfnav/geometry.hpp"

#include <cmath>

namespace sdfnav {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

Mat3 yaw_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat3 r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Transform Transform::translation(const Vec3& t) {
  Mat4 m = Mat4::Identity();
  m.topRightCorner<3, 1>() = t;
  return Transform(m);
}

Transform Transform::yaw_rotation(double theta) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = yaw_matrix(theta);
  return Transform(m);
}

Transform Transform::uniform_scale(double gamma) {
  Mat4 m = Mat4::Identity();
  m(3, 3) = gamma;
  return Transform(m);
}

Transform object_alignment_transform(const Vec3& center, double yaw,
                                     double gamma) {
  return Transform::yaw_rotation(-yaw) * Transform::uniform_scale(gamma) *
         Transform::translation(-center);
}

}  // namespace sdfnav
