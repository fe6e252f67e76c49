#pragma once

#include <string>
#include <vector>

#include "sdfnav/geometry.hpp"
#include "sdfnav/rng.hpp"

namespace sdfnav {

enum class ShapeKind { box, sphere, cylinder, rounded_box };

const char* shape_kind_name(ShapeKind k);
ShapeKind shape_kind_from_name(const std::string& name);

// Catalog shape, centered at the origin, z-up. dims are full extents in
// meters: boxes use all three, spheres use dims.x as diameter, cylinders use
// dims.x as diameter and dims.z as height. rounded boxes carry an edge
// radius on top of the box extents.
struct ShapeSpec {
  int id = -1;
  ShapeKind kind = ShapeKind::box;
  Vec3 dims = Vec3(1.0, 1.0, 1.0);
  double round_radius = 0.0;

  double max_dim() const;
  double bounding_radius() const;  // meters, from the center

  // DeepSDF-style normalization: gamma maps metric points into the
  // normalized domain (p / gamma) so the shape fits a radius-0.9 ball.
  double normalization_scale() const { return max_dim() / 1.8; }
};

// Exact Euclidean signed distance to the shape, meters.
double shape_sdf(const ShapeSpec& spec, const Vec3& p);
Vec3 shape_sdf_gradient(const ShapeSpec& spec, const Vec3& p);

double sdf_box(const Vec3& p, const Vec3& half_extents);
Vec3 sdf_box_gradient(const Vec3& p, const Vec3& half_extents);
double sdf_sphere(const Vec3& p, double radius);

// Shape rescaled so max_dim becomes 1.8 (its own normalized-domain geometry).
ShapeSpec normalized_shape(const ShapeSpec& spec);

// Yaw rotations leaving the shape invariant, as a period in radians:
// pi/2 for square boxes, pi otherwise, 0 for rotationally symmetric shapes.
double yaw_symmetry_period(const ShapeSpec& spec);

// Uniform-ish surface samples (area-weighted faces), used for synthetic
// observations and audits.
std::vector<Vec3> sample_surface(const ShapeSpec& spec, int n, Rng& rng);

}  // namespace sdfnav
