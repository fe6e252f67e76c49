#include "sdfnav/fields.hpp"

#include <cmath>
#include <limits>

namespace sdfnav {

namespace {
constexpr double kTieEps = 1e-9;
}

double StaticScene::value(const Vec3& p, bool include_floor) const {
  double best = std::numeric_limits<double>::infinity();
  if (include_floor) best = p.z() - floor_z;
  for (const auto& s : solids) {
    const double lb = (p - s.center()).norm() - s.spec.bounding_radius();
    if (lb >= best) continue;
    best = std::min(best, s.sdf(p));
  }
  return best;
}

SdfSample StaticScene::sample(const Vec3& p, bool include_floor) const {
  SdfSample out;
  out.branch = -1;
  int winner = -1;  // -1 floor, else solid index
  double best = std::numeric_limits<double>::infinity();
  if (include_floor) best = p.z() - floor_z;
  for (std::size_t i = 0; i < solids.size(); ++i) {
    const auto& s = solids[i];
    const double lb = (p - s.center()).norm() - s.spec.bounding_radius();
    if (lb >= best) continue;
    const double v = s.sdf(p);
    if (v < best - kTieEps) {
      best = v;
      winner = static_cast<int>(i);
    }
  }
  out.value = best;
  out.gradient = winner < 0 ? Vec3(0.0, 0.0, 1.0)
                            : solids[winner].sdf_gradient(p);
  return out;
}

SceneInstance make_instance(std::shared_ptr<const ObjectField> field,
                            const Transform& world_to_object, double scale,
                            int catalog_id, int instance_index) {
  SceneInstance inst;
  inst.world_to_object = world_to_object;
  inst.scale = scale;
  inst.catalog_id = catalog_id;
  inst.instance_index = instance_index;
  inst.world_center = world_to_object.inverse().apply(Vec3::Zero());
  inst.world_cull_radius = scale * field->cull_radius();
  inst.field = std::move(field);
  return inst;
}

double SceneComposite::value(const Vec3& p, bool include_floor) const {
  double best = statics ? statics->value(p, include_floor)
                        : std::numeric_limits<double>::infinity();
  for (const auto& inst : instances) {
    const double lb = (p - inst.world_center).norm() - inst.world_cull_radius;
    if (lb >= best) continue;
    const double v = inst.scale * inst.field->value(inst.world_to_object.apply(p));
    best = std::min(best, v);
  }
  return best;
}

SdfSample SceneComposite::sample(const Vec3& p, bool include_floor) const {
  SdfSample out;
  double best = std::numeric_limits<double>::infinity();
  Vec3 static_grad(0.0, 0.0, 1.0);
  if (statics) {
    const SdfSample s = statics->sample(p, include_floor);
    best = s.value;
    static_grad = s.gradient;
  }
  int winner = -1;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const double lb = (p - inst.world_center).norm() - inst.world_cull_radius;
    if (lb >= best) continue;
    const double v = inst.scale * inst.field->value(inst.world_to_object.apply(p));
    if (v < best - kTieEps) {
      best = v;
      winner = static_cast<int>(i);
    }
  }
  out.value = best;
  out.branch = winner;
  if (winner < 0) {
    out.gradient = static_grad;
  } else {
    // d/dp [gamma * f(H p)] = A^T grad f, A the rotation block of H.
    const auto& inst = instances[winner];
    double v;
    Vec3 g;
    inst.field->value_and_gradient(inst.world_to_object.apply(p), &v, &g);
    out.gradient = inst.world_to_object.rotation().transpose() * g;
  }
  return out;
}

}  // namespace sdfnav
