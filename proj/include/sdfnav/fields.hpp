#pragma once

#include <memory>
#include <vector>

#include "sdfnav/geometry.hpp"
#include "sdfnav/grid_sdf.hpp"
#include "sdfnav/shapes.hpp"

namespace sdfnav {

struct SdfSample {
  double value = 0.0;   // meters, world units
  Vec3 gradient = Vec3::Zero();
  int branch = -1;      // -1 static scene, otherwise instance index
};

// One interface over the object-level SDF backends: analytic catalog shapes
// and baked grids. Points are in the normalized object domain, values in
// normalized distance units.
class ObjectField {
 public:
  virtual ~ObjectField() = default;
  virtual double value(const Vec3& p) const = 0;
  virtual void value_and_gradient(const Vec3& p, double* v, Vec3* g) const = 0;
  // Conservative radius r such that value(p) >= |p| - r everywhere.
  virtual double cull_radius() const = 0;
};

class AnalyticShapeField final : public ObjectField {
 public:
  explicit AnalyticShapeField(const ShapeSpec& spec)
      : shape_(normalized_shape(spec)) {}
  double value(const Vec3& p) const override { return shape_sdf(shape_, p); }
  void value_and_gradient(const Vec3& p, double* v, Vec3* g) const override {
    *v = shape_sdf(shape_, p);
    *g = shape_sdf_gradient(shape_, p);
  }
  double cull_radius() const override { return shape_.bounding_radius(); }

 private:
  ShapeSpec shape_;
};

class GridField final : public ObjectField {
 public:
  explicit GridField(GridSdf grid) : grid_(std::move(grid)) {}
  double value(const Vec3& p) const override { return grid_eval(grid_, p); }
  void value_and_gradient(const Vec3& p, double* v, Vec3* g) const override {
    grid_eval_with_gradient(grid_, p, v, g);
  }
  // Domain diagonal plus the largest representable interior depth covers
  // interpolation undershoot.
  double cull_radius() const override { return 3.6; }
  const GridSdf& grid() const { return grid_; }

 private:
  GridSdf grid_;
};

// Metric shape instance for the static layout (walls, fixed furniture) and
// the ground-truth world: analytic SDF at a yaw-only pose.
struct PosedShape {
  ShapeSpec spec;
  Pose2 pose;
  double z_center = 0.0;

  Vec3 to_local(const Vec3& p) const {
    const Vec3 d = p - Vec3(pose.x, pose.y, z_center);
    const double c = std::cos(-pose.theta), s = std::sin(-pose.theta);
    return {c * d.x() - s * d.y(), s * d.x() + c * d.y(), d.z()};
  }
  double sdf(const Vec3& p) const { return shape_sdf(spec, to_local(p)); }
  Vec3 sdf_gradient(const Vec3& p) const {
    return yaw_matrix(pose.theta) * shape_sdf_gradient(spec, to_local(p));
  }
  Vec3 center() const { return {pose.x, pose.y, z_center}; }
};

// Analytic room field: floor plane z = floor_z plus wall/furniture solids,
// min-composed. include_floor=false gives the planar clearance field used
// for footprint/edge checks at robot height.
struct StaticScene {
  double floor_z = 0.0;
  std::vector<PosedShape> solids;

  double value(const Vec3& p, bool include_floor = true) const;
  SdfSample sample(const Vec3& p, bool include_floor = true) const;
};

struct SceneInstance {
  std::shared_ptr<const ObjectField> field;
  Transform world_to_object;  // H
  double scale = 1.0;         // gamma, normalized -> meters
  int catalog_id = -1;
  int instance_index = -1;
  // Derived, for culling.
  Vec3 world_center = Vec3::Zero();
  double world_cull_radius = 0.0;
};

SceneInstance make_instance(std::shared_ptr<const ObjectField> field,
                            const Transform& world_to_object, double scale,
                            int catalog_id = -1, int instance_index = -1);

// The full field of the visible scene: min over the static field and the
// gamma-rescaled object fields. Ties within 1e-9 keep the lowest branch
// (static first).
struct SceneComposite {
  std::shared_ptr<const StaticScene> statics;
  std::vector<SceneInstance> instances;

  double value(const Vec3& p, bool include_floor = true) const;
  SdfSample sample(const Vec3& p, bool include_floor = true) const;
};

}  // namespace sdfnav
