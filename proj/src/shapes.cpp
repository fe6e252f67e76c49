#include "sdfnav/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdfnav {

const char* shape_kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::box: return "box";
    case ShapeKind::sphere: return "sphere";
    case ShapeKind::cylinder: return "cylinder";
    case ShapeKind::rounded_box: return "rounded_box";
  }
  return "box";
}

ShapeKind shape_kind_from_name(const std::string& name) {
  if (name == "box") return ShapeKind::box;
  if (name == "sphere") return ShapeKind::sphere;
  if (name == "cylinder") return ShapeKind::cylinder;
  if (name == "rounded_box") return ShapeKind::rounded_box;
  throw std::runtime_error("unknown shape kind: " + name);
}

double ShapeSpec::max_dim() const {
  switch (kind) {
    case ShapeKind::sphere: return dims.x();
    case ShapeKind::cylinder: return std::max(dims.x(), dims.z());
    default: return dims.maxCoeff();
  }
}

double ShapeSpec::bounding_radius() const {
  switch (kind) {
    case ShapeKind::sphere: return 0.5 * dims.x();
    case ShapeKind::cylinder:
      return std::hypot(0.5 * dims.x(), 0.5 * dims.z());
    default: return 0.5 * dims.norm();
  }
}

double sdf_box(const Vec3& p, const Vec3& half_extents) {
  const Vec3 q = p.cwiseAbs() - half_extents;
  const Vec3 outside = q.cwiseMax(0.0);
  return outside.norm() + std::min(q.maxCoeff(), 0.0);
}

Vec3 sdf_box_gradient(const Vec3& p, const Vec3& half_extents) {
  const Vec3 q = p.cwiseAbs() - half_extents;
  const Vec3 outside = q.cwiseMax(0.0);
  const double out_norm = outside.norm();
  Vec3 g;
  if (out_norm > 0.0) {
    g = outside / out_norm;
  } else {
    // Interior: unit normal of the nearest face.
    int axis = 0;
    q.maxCoeff(&axis);
    g = Vec3::Zero();
    g[axis] = 1.0;
  }
  for (int i = 0; i < 3; ++i) {
    if (p[i] < 0.0) g[i] = -g[i];
  }
  return g;
}

double sdf_sphere(const Vec3& p, double radius) { return p.norm() - radius; }

namespace {

// Cylinder axis along z: treat (radial, axial) as a 2D box problem.
double sdf_cylinder(const Vec3& p, double radius, double half_height) {
  const double dr = std::hypot(p.x(), p.y()) - radius;
  const double dz = std::abs(p.z()) - half_height;
  const double ox = std::max(dr, 0.0), oz = std::max(dz, 0.0);
  return std::hypot(ox, oz) + std::min(std::max(dr, dz), 0.0);
}

Vec3 sdf_cylinder_gradient(const Vec3& p, double radius, double half_height) {
  const double rho = std::hypot(p.x(), p.y());
  Vec2 radial = rho > 1e-12 ? Vec2(p.x() / rho, p.y() / rho) : Vec2(1.0, 0.0);
  const double dr = rho - radius;
  const double dz = std::abs(p.z()) - half_height;
  const double ox = std::max(dr, 0.0), oz = std::max(dz, 0.0);
  double gr, gz;
  if (ox > 0.0 || oz > 0.0) {
    const double n = std::hypot(ox, oz);
    gr = ox / n;
    gz = oz / n;
  } else if (dr > dz) {
    gr = 1.0;
    gz = 0.0;
  } else {
    gr = 0.0;
    gz = 1.0;
  }
  return {gr * radial.x(), gr * radial.y(), p.z() < 0.0 ? -gz : gz};
}

}  // namespace

double shape_sdf(const ShapeSpec& spec, const Vec3& p) {
  switch (spec.kind) {
    case ShapeKind::box:
      return sdf_box(p, 0.5 * spec.dims);
    case ShapeKind::sphere:
      return sdf_sphere(p, 0.5 * spec.dims.x());
    case ShapeKind::cylinder:
      return sdf_cylinder(p, 0.5 * spec.dims.x(), 0.5 * spec.dims.z());
    case ShapeKind::rounded_box: {
      const Vec3 half = (0.5 * spec.dims).array() - spec.round_radius;
      return sdf_box(p, half.cwiseMax(1e-6)) - spec.round_radius;
    }
  }
  return 0.0;
}

Vec3 shape_sdf_gradient(const ShapeSpec& spec, const Vec3& p) {
  switch (spec.kind) {
    case ShapeKind::box:
      return sdf_box_gradient(p, 0.5 * spec.dims);
    case ShapeKind::sphere: {
      const double n = p.norm();
      return n > 1e-12 ? Vec3(p / n) : Vec3(1.0, 0.0, 0.0);
    }
    case ShapeKind::cylinder:
      return sdf_cylinder_gradient(p, 0.5 * spec.dims.x(), 0.5 * spec.dims.z());
    case ShapeKind::rounded_box: {
      const Vec3 half = (0.5 * spec.dims).array() - spec.round_radius;
      return sdf_box_gradient(p, half.cwiseMax(1e-6));
    }
  }
  return Vec3(1.0, 0.0, 0.0);
}

ShapeSpec normalized_shape(const ShapeSpec& spec) {
  ShapeSpec n = spec;
  const double gamma = spec.normalization_scale();
  n.dims /= gamma;
  n.round_radius /= gamma;
  return n;
}

double yaw_symmetry_period(const ShapeSpec& spec) {
  switch (spec.kind) {
    case ShapeKind::sphere:
    case ShapeKind::cylinder:
      return 0.0;
    default:
      return std::abs(spec.dims.x() - spec.dims.y()) < 1e-9 ? M_PI_2 : M_PI;
  }
}

namespace {

void sample_box_surface(const Vec3& half, int n, Rng& rng,
                        std::vector<Vec3>& out) {
  // Pick faces proportionally to area: axis pairs (yz, xz, xy).
  const double areas[3] = {half.y() * half.z(), half.x() * half.z(),
                           half.x() * half.y()};
  const double total = areas[0] + areas[1] + areas[2];
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform() * total;
    int axis = u < areas[0] ? 0 : (u < areas[0] + areas[1] ? 1 : 2);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    Vec3 p;
    p[axis] = sign * half[axis];
    const int a = (axis + 1) % 3, b = (axis + 2) % 3;
    p[a] = rng.uniform(-half[a], half[a]);
    p[b] = rng.uniform(-half[b], half[b]);
    out.push_back(p);
  }
}

}  // namespace

std::vector<Vec3> sample_surface(const ShapeSpec& spec, int n, Rng& rng) {
  std::vector<Vec3> out;
  out.reserve(n);
  switch (spec.kind) {
    case ShapeKind::box:
      sample_box_surface(0.5 * spec.dims, n, rng, out);
      break;
    case ShapeKind::sphere: {
      const double r = 0.5 * spec.dims.x();
      for (int i = 0; i < n; ++i) {
        Vec3 d(rng.normal(), rng.normal(), rng.normal());
        if (d.norm() < 1e-9) d = Vec3(1, 0, 0);
        out.push_back(r * d.normalized());
      }
      break;
    }
    case ShapeKind::cylinder: {
      const double r = 0.5 * spec.dims.x(), hz = 0.5 * spec.dims.z();
      const double side_area = 2.0 * M_PI * r * 2.0 * hz;
      const double cap_area = M_PI * r * r;
      const double total = side_area + 2.0 * cap_area;
      for (int i = 0; i < n; ++i) {
        const double u = rng.uniform() * total;
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        if (u < side_area) {
          out.emplace_back(r * std::cos(phi), r * std::sin(phi),
                           rng.uniform(-hz, hz));
        } else {
          const double rr = r * std::sqrt(rng.uniform());
          const double z = u < side_area + cap_area ? hz : -hz;
          out.emplace_back(rr * std::cos(phi), rr * std::sin(phi), z);
        }
      }
      break;
    }
    case ShapeKind::rounded_box: {
      // Sample the deflated box, then push out along the gradient.
      ShapeSpec inner = spec;
      inner.kind = ShapeKind::box;
      inner.dims = (spec.dims.array() - 2.0 * spec.round_radius).max(1e-6);
      sample_box_surface(0.5 * inner.dims, n, rng, out);
      for (auto& p : out) {
        p += spec.round_radius * sdf_box_gradient(p, 0.5 * inner.dims);
      }
      break;
    }
  }
  return out;
}

}  // namespace sdfnav
