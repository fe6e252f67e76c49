#include "sdfnav/trajopt.hpp"

#include <algorithm>
#include <cmath>

#include "sdfnav/adam.hpp"

namespace sdfnav {

RobotBodySdf RobotBodySdf::from_box(const Vec3& dims) {
  RobotBodySdf r;
  r.dims = dims;
  r.gamma = dims.maxCoeff() / 1.8;
  return r;
}

double RobotBodySdf::value(const Vec3& q) const {
  return sdf_box(q, 0.5 * dims / gamma);
}

Vec3 RobotBodySdf::gradient(const Vec3& q) const {
  return sdf_box_gradient(q, 0.5 * dims / gamma);
}

OrientedGrid OrientedGrid::over_box(const Vec3& dims, int nx, int ny, int nz) {
  OrientedGrid grid;
  grid.offsets.reserve(nx * ny * nz);
  auto coord = [](int i, int n, double extent) {
    return n > 1 ? -0.5 * extent + extent * i / (n - 1) : 0.0;
  };
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        grid.offsets.emplace_back(coord(ix, nx, dims.x()),
                                  coord(iy, ny, dims.y()),
                                  coord(iz, nz, dims.z()));
      }
    }
  }
  return grid;
}

namespace {

// lambda * mean squared segment length, with gradients on the interior.
void add_smoothness(const Trajectory& traj, double lambda, CostResult* out) {
  const int n = traj.size();
  if (n < 2) return;
  const double inv = 1.0 / (n - 1);
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const Vec3 d = traj.waypoints[i + 1] - traj.waypoints[i];
    acc += d.squaredNorm();
    if (i > 0) out->gradients[i] -= 2.0 * lambda * inv * d;
    if (i + 1 < n - 1) out->gradients[i + 1] += 2.0 * lambda * inv * d;
  }
  out->smoothness_term = lambda * acc * inv;
}

}  // namespace

// Body-grid evaluation stations every ~kStationSpacing of arc length, so a
// stretched segment cannot step over a thin obstacle unexamined.
namespace {
constexpr double kStationSpacing = 0.1;
}

CostResult scene_cost(const Trajectory& traj, const SceneComposite& scene,
                      const OrientedGrid& grid, const OptimizerConfig& cfg,
                      std::uint64_t* work_units,
                      const std::vector<double>* headings) {
  CostResult out;
  const int n = traj.size();
  out.gradients.assign(n, Vec3::Zero());
  if (n == 0) return out;
  const double k_inv = 1.0 / static_cast<double>(grid.offsets.size());

  struct Station {
    Vec3 position;
    int wp_a, wp_b;
    double t;  // lerp weight toward wp_b
    double heading;
  };
  std::vector<Station> stations;
  if (n == 1) {
    stations.push_back({traj.waypoints[0], 0, 0, 0.0,
                        headings ? (*headings)[0] : traj.heading(0)});
  } else {
    for (int i = 0; i + 1 < n; ++i) {
      const Vec3 a = traj.waypoints[i], b = traj.waypoints[i + 1];
      const double heading = headings ? (*headings)[i] : traj.heading(i);
      const int k = std::max(
          1, static_cast<int>(std::ceil((b - a).norm() / kStationSpacing)));
      for (int j = 0; j < k; ++j) {
        const double t = (j + 0.5) / k;
        stations.push_back({a + t * (b - a), i, i + 1, t, heading});
      }
    }
  }

  const double m_inv = 1.0 / static_cast<double>(stations.size());
  // One composite sample evaluates every component field.
  const std::size_t fields_per_sample =
      1 + (scene.statics ? scene.statics->solids.size() : 0) +
      scene.instances.size();
  for (const auto& st : stations) {
    const Mat3 rot = yaw_matrix(st.heading);
    double acc = 0.0;
    Vec3 grad = Vec3::Zero();
    for (const auto& offset : grid.offsets) {
      // The floor is drivable surface, not an obstacle to the body sweep.
      const SdfSample s =
          scene.sample(st.position + rot * offset, /*include_floor=*/false);
      if (s.value < cfg.zeta) {
        const double pen = std::exp(-s.value);
        acc += pen;
        grad -= pen * s.gradient;
      }
    }
    if (work_units) *work_units += grid.offsets.size() * fields_per_sample;
    out.collision_term += acc * k_inv * m_inv;
    const Vec3 g = grad * k_inv * m_inv;
    if (st.wp_a > 0 && st.wp_a + 1 < n) {
      out.gradients[st.wp_a] += (1.0 - st.t) * g;
    }
    if (st.wp_b > 0 && st.wp_b + 1 < n) out.gradients[st.wp_b] += st.t * g;
  }
  add_smoothness(traj, cfg.lambda, &out);
  out.gradients.front().setZero();
  out.gradients.back().setZero();
  out.cost = out.collision_term + out.smoothness_term;
  return out;
}

CostResult robot_cost(const Trajectory& traj, const PointCloud& points,
                      const RobotBodySdf& robot, const OptimizerConfig& cfg,
                      std::uint64_t* work_units,
                      const std::vector<double>* headings) {
  CostResult out;
  const int n = traj.size();
  out.gradients.assign(n, Vec3::Zero());
  if (n == 0) return out;
  if (!points.empty()) {
    const double norm = 1.0 / (static_cast<double>(n) * points.size());
    const double inv_gamma = 1.0 / robot.gamma;
    // Points beyond this radius cannot fall inside the safety margin.
    const double reach = robot.half_diagonal() + cfg.zeta + 1e-9;
    for (int i = 0; i < n; ++i) {
      const Mat3 rot =
          yaw_matrix(-(headings ? (*headings)[i] : traj.heading(i)));
      const bool free_wp = i > 0 && i + 1 < n;
      for (const auto& x : points) {
        const Vec3 d = x - traj.waypoints[i];
        if (d.norm() > reach) continue;
        const Vec3 q = rot * d * inv_gamma;
        const double v = robot.value(q);
        // The margin gates on meters (gamma-rescaled); the exponent keeps
        // the normalized value, which separates containment from mere
        // contact at body scale.
        if (robot.gamma * v >= cfg.zeta) continue;
        const Vec3 g = robot.gradient(q);
        const double pen = std::exp(-v) * norm;
        out.collision_term += pen;
        // dv/dw = -(A^T g)/gamma with A = R_z(-heading).
        if (free_wp) {
          out.gradients[i] += pen * (rot.transpose() * g) * inv_gamma;
        }
      }
      if (work_units) *work_units += points.size();
    }
  }
  add_smoothness(traj, cfg.lambda, &out);
  out.gradients.front().setZero();
  out.gradients.back().setZero();
  out.cost = out.collision_term + out.smoothness_term;
  return out;
}

Trajectory optimize(const Trajectory& traj, const CostFn& cost_fn,
                    const OptimizerConfig& cfg) {
  Trajectory current = traj;
  const int n = current.size();
  if (n <= 2 || cfg.iterations <= 0) return current;

  const int free_count = n - 2;
  Adam adam(2 * free_count, cfg.lr, cfg.beta1, cfg.beta2);
  std::vector<double> params(2 * free_count), grads(2 * free_count);
  for (int i = 0; i < free_count; ++i) {
    params[2 * i] = current.waypoints[i + 1].x();
    params[2 * i + 1] = current.waypoints[i + 1].y();
  }

  Trajectory best = current;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= cfg.iterations; ++it) {
    const CostResult res = cost_fn(current);
    if (res.cost < best_cost) {
      best_cost = res.cost;
      best = current;
    }
    if (it == cfg.iterations) break;
    for (int i = 0; i < free_count; ++i) {
      grads[2 * i] = res.gradients[i + 1].x();
      grads[2 * i + 1] = res.gradients[i + 1].y();
    }
    adam.step(params, grads);
    for (int i = 0; i < free_count; ++i) {
      // z stays pinned to the robot plane.
      current.waypoints[i + 1].x() = params[2 * i];
      current.waypoints[i + 1].y() = params[2 * i + 1];
    }
  }
  return best;
}

bool in_collision(const Trajectory& traj, const PointCloud& points,
                  const RobotBodySdf& robot, std::uint64_t* work_units) {
  const double reach = robot.half_diagonal() + 1e-9;
  const double inv_gamma = 1.0 / robot.gamma;
  for (int i = 0; i < traj.size(); ++i) {
    const Mat3 rot = yaw_matrix(-traj.heading(i));
    if (work_units) *work_units += points.size();
    for (const auto& x : points) {
      const Vec3 d = x - traj.waypoints[i];
      if (d.norm() > reach) continue;
      if (robot.value(rot * d * inv_gamma) <= 0.0) return true;
    }
  }
  return false;
}

PointCloud points_near_trajectory(const PointCloud& points,
                                  const Trajectory& traj, double d_traj) {
  PointCloud out;
  out.reserve(points.size());
  for (const auto& p : points) {
    for (const auto& w : traj.waypoints) {
      if ((p - w).norm() <= d_traj) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace sdfnav
