#include "sdfnav/perception.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sdfnav/adam.hpp"

namespace sdfnav {

PointCloud depth_to_pointcloud(const DepthFrame& frame, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  PointCloud out;
  const auto& intr = frame.intrinsics;
  out.reserve((intr.width / stride) * (intr.height / stride));
  for (int v = 0; v < intr.height; v += stride) {
    for (int u = 0; u < intr.width; u += stride) {
      const double d = frame.at(u, v);
      if (d <= 0.0 || d > intr.max_range) continue;
      out.push_back(backproject(frame.pose, intr, u, v, d));
    }
  }
  return out;
}

PointCloud filter_background(const PointCloud& cloud, const StaticScene& statics,
                             double tau_bg) {
  PointCloud out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) {
    if (statics.value(p) > tau_bg) out.push_back(p);
  }
  return out;
}

SegmentedCloud assign_points_to_boxes(const PointCloud& cloud,
                                      const std::vector<BoundingBox2D>& boxes,
                                      const DepthFrame& frame) {
  SegmentedCloud seg;
  seg.segments.reserve(boxes.size());
  for (const auto& b : boxes) seg.segments.push_back({b, {}});

  struct Projected {
    std::vector<int> candidates;
    double depth = 0.0;
  };
  std::vector<Projected> proj(cloud.size());
  // Box membership by pixel containment.
  std::vector<std::vector<std::pair<double, int>>> members(boxes.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double u, v, d;
    if (!project(frame.pose, frame.intrinsics, cloud[i], &u, &v, &d)) continue;
    proj[i].depth = d;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      if (boxes[b].contains(u, v)) {
        proj[i].candidates.push_back(static_cast<int>(b));
        members[b].emplace_back(d, static_cast<int>(i));
      }
    }
  }

  // Seed each box centroid from its median-depth member.
  std::vector<Vec3> centroid(boxes.size(), Vec3::Zero());
  std::vector<Vec3> sum(boxes.size(), Vec3::Zero());
  std::vector<int> count(boxes.size(), 0);
  std::vector<bool> seeded(boxes.size(), false);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    if (members[b].empty()) continue;
    std::sort(members[b].begin(), members[b].end());
    centroid[b] = cloud[members[b][members[b].size() / 2].second];
    seeded[b] = true;
  }

  auto assign = [&](int point, int box) {
    seg.segments[box].second.push_back(cloud[point]);
    sum[box] += cloud[point];
    ++count[box];
    centroid[box] = sum[box] / count[box];
  };

  std::vector<int> ambiguous;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& cands = proj[i].candidates;
    if (cands.empty()) {
      seg.residual.push_back(cloud[i]);
    } else if (cands.size() == 1) {
      assign(static_cast<int>(i), cands[0]);
    } else {
      ambiguous.push_back(static_cast<int>(i));
    }
  }

  // Overlap region: nearest-first against the current centroids.
  std::vector<std::pair<double, int>> order;
  order.reserve(ambiguous.size());
  for (int i : ambiguous) {
    double best = std::numeric_limits<double>::infinity();
    for (int b : proj[i].candidates) {
      if (seeded[b]) best = std::min(best, (cloud[i] - centroid[b]).norm());
    }
    order.emplace_back(best, i);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [d0, i] : order) {
    int best_box = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int b : proj[i].candidates) {
      if (!seeded[b]) continue;
      const double d = (cloud[i] - centroid[b]).norm();
      if (d < best) {
        best = d;
        best_box = b;
      }
    }
    if (best_box < 0) {
      seg.residual.push_back(cloud[i]);
    } else {
      assign(i, best_box);
    }
  }
  return seg;
}

void dump_segmented_cloud(const SegmentedCloud& seg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t s = 0; s < seg.segments.size(); ++s) {
    for (const auto& p : seg.segments[s].second) {
      out << p.x() << " " << p.y() << " " << p.z() << " " << s << "\n";
    }
  }
  for (const auto& p : seg.residual) {
    out << p.x() << " " << p.y() << " " << p.z() << " -1\n";
  }
}

CoarseEstimate coarse_translation_scale(const PointCloud& points,
                                        const Vec3& prior_dims,
                                        double floor_z) {
  if (points.size() < 10) {
    throw std::invalid_argument("coarse_translation_scale: need >= 10 points");
  }
  Vec3 lo = points.front(), hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  CoarseEstimate est;
  const Vec3 mid = 0.5 * (lo + hi);
  // Single views are front-surface biased; the height prior pins z for
  // floor-resting objects.
  est.center = Vec3(mid.x(), mid.y(), floor_z + 0.5 * prior_dims.z());
  est.gamma = prior_dims.maxCoeff() / 1.8;
  return est;
}

namespace {

struct AlignRun {
  double theta = 0.0;
  Vec2 delta = Vec2::Zero();
  double residual = std::numeric_limits<double>::infinity();
};

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

AlignmentResult align_pointcloud(const ObjectField& field,
                                 const PointCloud& points,
                                 const CoarseEstimate& coarse,
                                 const AlignmentSchedule& schedule,
                                 std::uint64_t* work_units,
                                 const Vec3* view_origin) {
  // Voxel thinning first: depth clouds are markedly denser on near surfaces
  // and the residual mean would tilt toward them. Then a deterministic
  // stride keeps the per-frame cost bounded.
  PointCloud thinned;
  {
    const double voxel = 0.025;
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& p : points) {
      const auto key = std::make_tuple(static_cast<int>(std::floor(p.x() / voxel)),
                                       static_cast<int>(std::floor(p.y() / voxel)),
                                       static_cast<int>(std::floor(p.z() / voxel)));
      if (seen.insert(key).second) thinned.push_back(p);
    }
  }
  PointCloud pts;
  if (static_cast<int>(thinned.size()) > schedule.max_points) {
    const double step = static_cast<double>(thinned.size()) / schedule.max_points;
    for (int i = 0; i < schedule.max_points; ++i) {
      pts.push_back(thinned[static_cast<std::size_t>(i * step)]);
    }
  } else {
    pts = std::move(thinned);
  }
  const double inv_gamma = 1.0 / coarse.gamma;

  const double final_lo = schedule.band_lo_end;
  const double final_hi = schedule.band_hi_end;
  // Iterate selection: symmetric near-surface band, residual plus coverage
  // penalty, so sparse or one-sided fits never beat broad surface contact.
  constexpr double kSelectBand = 0.2;

  AlignRun best;
  double best_score = std::numeric_limits<double>::infinity();

  // One optimization pass over the subsample. squared=false applies the
  // signed band pull (the engulfing approach phase), squared=true the
  // zero-seeking refinement. Returns false when no point was in band.
  auto iterate = [&](std::vector<double>& params, double lo, double hi,
                     bool squared, Adam& adam) {
    const Mat3 rot = yaw_matrix(params[0]);
    std::vector<double> grads(3, 0.0);
    double select_abs = 0.0, final_abs = 0.0;
    int selected = 0, backfacing = 0, final_in_band = 0, in_band = 0;
    for (const auto& x : pts) {
      const Vec3 u =
          (x - coarse.center - Vec3(params[1], params[2], 0.0)) * inv_gamma;
      const Vec3 q = rot * u;
      double v;
      Vec3 g;
      field.value_and_gradient(q, &v, &g);
      const Vec3 world_normal = rot.transpose() * g;
      if (std::abs(v) < kSelectBand) {
        select_abs += std::abs(v);
        ++selected;
        if (view_origin && world_normal.dot(*view_origin - x) < 0.0) {
          ++backfacing;
        }
      }
      if (v > final_lo && v < final_hi) {
        final_abs += std::abs(v);
        ++final_in_band;
      }
      if (v <= lo || v >= hi) continue;
      ++in_band;
      const double s = squared ? 2.0 * v : 1.0;
      grads[0] += s * (g.x() * (-q.y()) + g.y() * q.x());
      grads[1] -= s * world_normal.x() * inv_gamma;
      grads[2] -= s * world_normal.y() * inv_gamma;
    }
    if (work_units) *work_units += pts.size();

    // Momentum can carry Adam out of the (narrow) final band, so the best
    // iterate is kept rather than the last.
    if (selected > 0) {
      const double coverage =
          static_cast<double>(selected) / static_cast<double>(pts.size());
      const double score = select_abs / selected + 0.3 * (1.0 - coverage) +
                           0.5 * backfacing / selected;
      if (score < best_score) {
        best_score = score;
        best.theta = params[0];
        best.delta = Vec2(params[1], params[2]);
        best.residual = final_in_band > 0
                            ? final_abs / final_in_band
                            : std::numeric_limits<double>::infinity();
      }
    }
    if (in_band == 0) return false;
    const double n = static_cast<double>(pts.size());
    for (auto& g : grads) g /= n;
    adam.step(params, grads);
    return true;
  };

  for (int restart = 0; restart < schedule.restarts; ++restart) {
    std::vector<double> params = {restart * (M_PI / 4.0), 0.0, 0.0};
    Adam adam(3, schedule.lr);
    for (int round = 0; round < schedule.rounds; ++round) {
      const double t =
          schedule.rounds > 1 ? static_cast<double>(round) / (schedule.rounds - 1)
                              : 0.0;
      const double lo = lerp(schedule.band_lo_start, schedule.band_lo_end, t);
      const double hi = lerp(schedule.band_hi_start, schedule.band_hi_end, t);
      // Shrinking bands need shrinking steps or Adam tunnels through them.
      adam.set_lr(schedule.lr * std::pow(0.55, round));
      for (int it = 0; it < schedule.iterations_per_round; ++it) {
        iterate(params, lo, hi, /*squared=*/false, adam);
      }
    }
    // Refinement: pull this restart's engulfed pose onto the zero level
    // set, wide band first so deeply swallowed clouds still give signal.
    Adam refine_adam(3, 0.015);
    const double refine_lo[3] = {-0.35, -0.15, -0.08};
    const double refine_hi[3] = {0.2, 0.1, 0.08};
    for (int round = 0; round < 3; ++round) {
      refine_adam.set_lr(0.015 * std::pow(0.5, round));
      for (int it = 0; it < 30; ++it) {
        iterate(params, refine_lo[round], refine_hi[round], /*squared=*/true,
                refine_adam);
      }
    }
    if (best_score < 0.003) break;  // fit is tight, skip remaining restarts
  }

  // Yaw commonly locks a sub-rotation off for boxy shapes; probe rotations
  // of the best pose with short refinements and keep whichever scores best.
  if (best_score < std::numeric_limits<double>::infinity()) {
    const AlignRun anchor = best;
    for (int k = 1; k < 8; ++k) {
      std::vector<double> params = {anchor.theta + k * M_PI_4, anchor.delta.x(),
                                    anchor.delta.y()};
      Adam adam(3, 0.01);
      for (int it = 0; it < 40; ++it) {
        if (!iterate(params, -0.2, 0.15, /*squared=*/true, adam)) break;
      }
    }
  }

  AlignmentResult result;
  result.gamma = coarse.gamma;
  result.object_center =
      coarse.center + Vec3(best.delta.x(), best.delta.y(), 0.0);
  result.yaw = wrap_angle(-best.theta);
  result.transform =
      object_alignment_transform(result.object_center, result.yaw, coarse.gamma);
  result.mean_residual = best.residual;
  // Converged fits also need most points near the metric zero level set.
  int sound = 0;
  for (const auto& x : pts) {
    const double v = coarse.gamma * field.value(result.transform.apply(x));
    if (v >= -0.1 && v <= 0.05) ++sound;
  }
  result.converged = best.residual <= schedule.converge_tol &&
                     sound >= static_cast<int>(0.8 * pts.size());
  return result;
}

}  // namespace sdfnav
