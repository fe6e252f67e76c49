#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sdfnav/fields.hpp"
#include "sdfnav/perception.hpp"
#include "sdfnav/trajectory.hpp"

namespace sdfnav {

struct OptimizerConfig {
  double lambda = 0.1;     // path-smoothing weight
  double zeta = 0.05;      // safety margin gating the collision term
  double lr = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  int iterations = 60;
  double d_traj = 0.5;     // point-cloud culling radius, meters
};

// Analytic SDF of the robot's bounding box in its normalized domain.
struct RobotBodySdf {
  Vec3 dims = Vec3(0.35, 0.35, 0.35);  // metric footprint x height
  double gamma = 0.35 / 1.8;

  static RobotBodySdf from_box(const Vec3& dims);
  double value(const Vec3& q) const;  // q in the normalized domain
  Vec3 gradient(const Vec3& q) const;
  double half_diagonal() const { return 0.5 * dims.norm(); }
};

// Lattice of body-frame sample offsets spanning the robot box.
struct OrientedGrid {
  std::vector<Vec3> offsets;
  static OrientedGrid over_box(const Vec3& dims, int nx = 5, int ny = 5,
                               int nz = 3);
};

struct CostResult {
  double cost = 0.0;
  double collision_term = 0.0;
  double smoothness_term = 0.0;
  std::vector<Vec3> gradients;  // per waypoint; endpoints zero
};

using CostFn = std::function<CostResult(const Trajectory&)>;

// Scene-composition cost: per body-grid sample, exp(-Omega) gated inside the
// safety margin, averaged per waypoint, plus smoothing. Headings are treated
// as constant per evaluation; pass `headings` to pin them explicitly
// (otherwise derived from the trajectory).
CostResult scene_cost(const Trajectory& traj, const SceneComposite& scene,
                      const OrientedGrid& grid, const OptimizerConfig& cfg,
                      std::uint64_t* work_units = nullptr,
                      const std::vector<double>* headings = nullptr);

// Robot-body cost: the double sum over waypoints and obstacle points of
// gated exp(-Omega_r(M_i x)), plus smoothing.
CostResult robot_cost(const Trajectory& traj, const PointCloud& points,
                      const RobotBodySdf& robot, const OptimizerConfig& cfg,
                      std::uint64_t* work_units = nullptr,
                      const std::vector<double>* headings = nullptr);

// Adam on the interior waypoints (x, y only); returns the best-cost iterate.
Trajectory optimize(const Trajectory& traj, const CostFn& cost_fn,
                    const OptimizerConfig& cfg);

// True iff some obstacle point falls inside the swept robot body.
bool in_collision(const Trajectory& traj, const PointCloud& points,
                  const RobotBodySdf& robot,
                  std::uint64_t* work_units = nullptr);

PointCloud points_near_trajectory(const PointCloud& points,
                                  const Trajectory& traj, double d_traj);

}  // namespace sdfnav
