#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "sdfnav/catalog.hpp"
#include "sdfnav/fields.hpp"
#include "sdfnav/grid_sdf.hpp"
#include "sdfnav/rng.hpp"

using namespace sdfnav;

namespace {

ShapeSpec box_spec(double dx, double dy, double dz) {
  ShapeSpec s;
  s.kind = ShapeKind::box;
  s.dims = Vec3(dx, dy, dz);
  return s;
}

// Small composite used across the gradient tests: static floor + one wall
// box, one analytic object, one grid object.
SceneComposite test_scene() {
  auto statics = std::make_shared<StaticScene>();
  PosedShape wall;
  wall.spec = box_spec(0.2, 3.0, 1.0);
  wall.pose = Pose2{2.0, 0.0, 0.0};
  wall.z_center = 0.5;
  statics->solids.push_back(wall);

  SceneComposite scene;
  scene.statics = statics;

  ShapeSpec crate = box_spec(0.5, 0.4, 0.6);
  crate.id = 0;
  const double g1 = crate.normalization_scale();
  scene.instances.push_back(make_instance(
      std::make_shared<AnalyticShapeField>(crate),
      object_alignment_transform(Vec3(0.3, 0.5, 0.3), 0.4, g1), g1, 0, 0));

  ShapeSpec ball;
  ball.id = 1;
  ball.kind = ShapeKind::sphere;
  ball.dims = Vec3(0.4, 0.4, 0.4);
  const double g2 = ball.normalization_scale();
  scene.instances.push_back(make_instance(
      std::make_shared<GridField>(bake_catalog_grid(ball, 48)),
      object_alignment_transform(Vec3(-0.6, -0.2, 0.2), -1.1, g2), g2, 1, 0));
  return scene;
}

}  // namespace

TEST_CASE("box sdf matches hand values") {
  const Vec3 half(1.0, 1.0, 1.0);
  CHECK(sdf_box(Vec3(0, 0, 0), half) == doctest::Approx(-1.0));
  CHECK(sdf_box(Vec3(2, 0, 0), half) == doctest::Approx(1.0));
  CHECK(sdf_box(Vec3(2, 2, 0), half) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sphere sdf matches hand values") {
  CHECK(sdf_sphere(Vec3(0, 0, 0), 0.5) == doctest::Approx(-0.5));
  CHECK(sdf_sphere(Vec3(0.5, 0, 0), 0.5) == doctest::Approx(0.0));
  CHECK(sdf_sphere(Vec3(3, 4, 0), 1.0) == doctest::Approx(4.0));
}

TEST_CASE("analytic gradients are radial / face normals") {
  ShapeSpec sphere;
  sphere.kind = ShapeKind::sphere;
  sphere.dims = Vec3(2.0, 2.0, 2.0);
  CHECK((shape_sdf_gradient(sphere, Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm() ==
        doctest::Approx(0.0));
  // Interior point nearest to the +x face.
  const Vec3 g = sdf_box_gradient(Vec3(0.8, 0.1, -0.2), Vec3(1, 1, 1));
  CHECK((g - Vec3(1, 0, 0)).norm() == doctest::Approx(0.0));
}

TEST_CASE("analytic gradient matches finite differences on random points") {
  Rng rng(7);
  const ShapeSpec shapes[] = {
      box_spec(0.6, 0.4, 0.5),
      [] {
        ShapeSpec s;
        s.kind = ShapeKind::sphere;
        s.dims = Vec3(0.5, 0.5, 0.5);
        return s;
      }(),
      [] {
        ShapeSpec s;
        s.kind = ShapeKind::cylinder;
        s.dims = Vec3(0.4, 0.4, 0.7);
        return s;
      }(),
      [] {
        ShapeSpec s;
        s.kind = ShapeKind::rounded_box;
        s.dims = Vec3(0.5, 0.4, 0.35);
        s.round_radius = 0.06;
        return s;
      }()};
  int checked = 0;
  for (const auto& spec : shapes) {
    auto f = [&](const Vec3& p) { return shape_sdf(spec, p); };
    for (int i = 0; i < 400 && checked < 1000; ++i) {
      const Vec3 p(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8),
                   rng.uniform(-0.8, 0.8));
      const auto probe = oracles::fd_probe(f, p);
      if (!probe.smooth) continue;
      CHECK(oracles::relative_error(shape_sdf_gradient(spec, p),
                                    probe.gradient) < 1e-3);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("eikonal proxy holds off-surface for analytic backends") {
  Rng rng(11);
  const ShapeSpec spec = box_spec(0.5, 0.7, 0.4);
  auto f = [&](const Vec3& p) { return shape_sdf(spec, p); };
  int checked = 0;
  while (checked < 1000) {
    const Vec3 p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (!oracles::fd_probe(f, p).smooth) continue;
    const double n = shape_sdf_gradient(spec, p).norm();
    CHECK(n > 0.95);
    CHECK(n < 1.05);
    ++checked;
  }
}

TEST_CASE("transform applies R S T factors and preserves rigid distances") {
  const Transform t = object_alignment_transform(Vec3(1, 2, 0), 0.0, 2.0);
  // Scale factor gamma in the homogeneous row divides the point.
  const Vec3 mapped = t.apply(Vec3(1.5, 2.0, 0.0));
  CHECK(mapped.x() == doctest::Approx(0.25));
  CHECK(mapped.y() == doctest::Approx(0.0));

  Rng rng(3);
  const Transform rigid = Transform::translation(Vec3(0.3, -0.7, 0.2)) *
                          Transform::yaw_rotation(1.2);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Vec3 q(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    CHECK((rigid.apply(p) - rigid.apply(q)).norm() ==
          doctest::Approx((p - q).norm()));
  }

  // Composition is associative.
  const Transform a = Transform::yaw_rotation(0.5);
  const Transform b = Transform::uniform_scale(1.7);
  const Transform c = Transform::translation(Vec3(1, 0, 0));
  const Vec3 p(0.2, 0.4, 0.6);
  CHECK(((a * b) * c).apply(p) == (a * (b * c)).apply(p));
}

TEST_CASE("bake stores analytic node values; origin of unit-half box is -1") {
  const GridSdf g = bake_grid(box_spec(2.0, 2.0, 2.0), 64);
  CHECK(g.node_value(32, 32, 32) == doctest::Approx(-1.0));
  // Interpolation is exact at nodes.
  const Vec3 node = g.node_position(20, 40, 32);
  CHECK(grid_eval(g, node) ==
        doctest::Approx(sdf_box(node, Vec3(1, 1, 1))).epsilon(1e-6));
}

TEST_CASE("bake rejects too-coarse resolutions") {
  CHECK_THROWS_AS(bake_grid(box_spec(1, 1, 1), 4), std::invalid_argument);
}

TEST_CASE("grid midpoint query is the node mean") {
  const GridSdf g = bake_grid(box_spec(2.0, 2.0, 2.0), 16);
  const Vec3 a = g.node_position(3, 5, 7), b = g.node_position(4, 5, 7);
  const double expected = 0.5 * (g.node_value(3, 5, 7) + g.node_value(4, 5, 7));
  CHECK(grid_eval(g, 0.5 * (a + b)) == doctest::Approx(expected));
}

TEST_CASE("outside-domain queries extend conservatively") {
  // Unit-half box: boundary value straight out the +x face is 0.1, so half a
  // meter beyond the domain evaluates to 0.6.
  const GridSdf g = bake_grid(box_spec(2.0, 2.0, 2.0), 16);
  CHECK(grid_eval(g, Vec3(1.6, 0.0, 0.0)) == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("grid fidelity in the near-surface band at resolution 128") {
  const Catalog catalog = default_catalog();
  Rng rng(23);
  for (const auto& [id, spec] : catalog.shapes()) {
    const GridSdf g = bake_catalog_grid(spec, 128);
    const ShapeSpec norm = normalized_shape(spec);
    int tested = 0;
    double worst = 0.0;
    while (tested < 2000) {
      const Vec3 p(rng.uniform(-1.1, 1.1), rng.uniform(-1.1, 1.1),
                   rng.uniform(-1.1, 1.1));
      const double exact = shape_sdf(norm, p);
      if (std::abs(exact) >= 0.3) continue;
      worst = std::max(worst, std::abs(grid_eval(g, p) - exact));
      ++tested;
    }
    CHECK(worst <= 0.01);
  }
}

TEST_CASE("composite equals brute-force min over components") {
  const SceneComposite scene = test_scene();
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5),
                 rng.uniform(0.0, 1.2));
    const double composed = scene.value(p);
    const double brute = oracles::composite_min_brute(scene, p);
    CHECK(composed == doctest::Approx(brute).epsilon(1e-12));
    // Never above any individual branch.
    CHECK(composed <= p.z() + 1e-12);
  }
}

TEST_CASE("composite min picks the smaller branch and empty list is statics") {
  auto statics = std::make_shared<StaticScene>();
  SceneComposite scene;
  scene.statics = statics;
  CHECK(scene.value(Vec3(0, 0, 0.7)) == doctest::Approx(0.7));

  ShapeSpec crate = box_spec(0.5, 0.5, 0.5);
  const double gamma = crate.normalization_scale();
  scene.instances.push_back(make_instance(
      std::make_shared<AnalyticShapeField>(crate),
      object_alignment_transform(Vec3(0, 0, 0.85), 0.0, gamma), gamma));
  // Point 0.7 above floor, 0.2 m outside the closest face after offset.
  const SdfSample s = scene.sample(Vec3(0, 0, 0.5));
  CHECK(s.value == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(s.branch == 0);
}

TEST_CASE("tie-breaking keeps the lowest component index") {
  auto statics = std::make_shared<StaticScene>();
  SceneComposite scene;
  scene.statics = statics;
  ShapeSpec crate = box_spec(0.4, 0.4, 0.4);
  const double gamma = crate.normalization_scale();
  // Two identical instances: the first wins exact ties.
  for (int i = 0; i < 2; ++i) {
    scene.instances.push_back(make_instance(
        std::make_shared<AnalyticShapeField>(crate),
        object_alignment_transform(Vec3(0, 0, 0.2), 0.0, gamma), gamma, i, 0));
  }
  CHECK(scene.sample(Vec3(0.5, 0.0, 0.2), false).branch == 0);
  // The box bottom touches the floor: at that contact both branches read 0
  // and the static scene wins the tie.
  const SdfSample tie = scene.sample(Vec3(0, 0, 0), true);
  CHECK(tie.value == doctest::Approx(0.0));
  CHECK(tie.branch == -1);
}

TEST_CASE("composite gradient matches finite differences at non-tie points") {
  const SceneComposite scene = test_scene();
  auto f = [&](const Vec3& p) { return scene.value(p); };
  Rng rng(17);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 p(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                 rng.uniform(0.05, 1.2));
    const auto probe = oracles::fd_probe(f, p);
    if (!probe.smooth) continue;
    const SdfSample s = scene.sample(p);
    CHECK(oracles::relative_error(s.gradient, probe.gradient) < 1e-3);
    ++checked;
  }
}

TEST_CASE("grid blob round trip") {
  const GridSdf g = bake_catalog_grid(box_spec(0.5, 0.4, 0.3), 16);
  const auto path = std::filesystem::temp_directory_path() / "t_grid.sdfgrid";
  save_grid(g, path.string());
  const GridSdf loaded = load_grid(path.string());
  CHECK(loaded.resolution == g.resolution);
  CHECK(loaded.values == g.values);
  CHECK(loaded.lo == g.lo);
  std::filesystem::remove(path);
}

TEST_CASE("catalog text round trip and validation") {
  const Catalog catalog = default_catalog();
  CHECK(catalog.size() >= 10);
  const auto path = std::filesystem::temp_directory_path() / "t_catalog.txt";
  save_catalog(catalog, path.string());
  const Catalog loaded = load_catalog(path.string());
  CHECK(loaded.size() == catalog.size());
  for (const auto& [id, spec] : catalog.shapes()) {
    CHECK(loaded.get(id).kind == spec.kind);
    CHECK(loaded.get(id).dims == spec.dims);
  }
  std::filesystem::remove(path);

  ShapeSpec bad;
  bad.dims = Vec3(0.0, 1.0, 1.0);
  Catalog c;
  CHECK_THROWS(c.add(bad));
}
