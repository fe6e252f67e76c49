#pragma once

#include <string>
#include <vector>

#include "sdfnav/camera.hpp"
#include "sdfnav/fields.hpp"

namespace sdfnav {

using PointCloud = std::vector<Vec3>;

struct BoundingBox2D {
  int u_min = 0, v_min = 0, u_max = 0, v_max = 0;  // inclusive pixel bounds
  int catalog_id = -1;
  int instance_index = -1;

  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

struct SegmentedCloud {
  std::vector<std::pair<BoundingBox2D, PointCloud>> segments;
  PointCloud residual;
};

// Back-projects every stride-th valid pixel into the world frame.
PointCloud depth_to_pointcloud(const DepthFrame& frame, int stride = 1);

// Keeps points with static-scene SDF above the background threshold.
PointCloud filter_background(const PointCloud& cloud, const StaticScene& statics,
                             double tau_bg = 0.03);

// Assigns object points to detections: unambiguous containment first, then
// overlapping-box points nearest-first to the running 3D centroids (seeded
// from each box's median-depth member).
SegmentedCloud assign_points_to_boxes(const PointCloud& cloud,
                                      const std::vector<BoundingBox2D>& boxes,
                                      const DepthFrame& frame);

void dump_segmented_cloud(const SegmentedCloud& seg, const std::string& path);

// Coarse translation/scale prior: planar bounds center, raised off the floor
// by half the prior height, and gamma from the prior dims.
struct CoarseEstimate {
  Vec3 center = Vec3::Zero();
  double gamma = 1.0;
};
CoarseEstimate coarse_translation_scale(const PointCloud& points,
                                        const Vec3& prior_dims,
                                        double floor_z = 0.0);

// Band indicator: v inside (lo, hi) passes through, everything else is 0.
inline double band_clamp(double v, double lo, double hi) {
  return (v > lo && v < hi) ? v : 0.0;
}

struct AlignmentSchedule {
  int rounds = 5;
  int iterations_per_round = 40;
  int restarts = 8;        // seeded at k * 45 deg
  double lr = 0.05;
  double band_lo_start = -0.2, band_hi_start = 0.01;
  double band_lo_end = -0.05, band_hi_end = 0.005;
  int max_points = 160;    // working subsample
  double converge_tol = 0.02;
};

struct AlignmentResult {
  Transform transform;       // H = R S T, world -> normalized object domain
  double yaw = 0.0;          // estimated object yaw in world
  Vec3 object_center = Vec3::Zero();
  double gamma = 1.0;
  double mean_residual = 0.0;  // mean |band residual|, normalized units
  bool converged = false;
};

// Eq.-style band-clamped alignment over yaw and planar translation, with the
// coarse transform applied first and the band shrinking per round. When the
// sensor origin is known, poses that put observed points on away-facing
// surfaces are scored down (a single observed plane is otherwise ambiguous
// about which side the body lies on).
AlignmentResult align_pointcloud(const ObjectField& field,
                                 const PointCloud& points,
                                 const CoarseEstimate& coarse,
                                 const AlignmentSchedule& schedule,
                                 std::uint64_t* work_units = nullptr,
                                 const Vec3* view_origin = nullptr);

}  // namespace sdfnav
