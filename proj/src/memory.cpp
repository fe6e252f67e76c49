#include "sdfnav/memory.hpp"

#include <cmath>

namespace sdfnav {

PcMemory::Key PcMemory::key_of(const Vec3& p) const {
  return {static_cast<int>(std::floor(p.x() / voxel_)),
          static_cast<int>(std::floor(p.y() / voxel_)),
          static_cast<int>(std::floor(p.z() / voxel_))};
}

void PcMemory::update(const PointCloud& fresh, const Vec3& robot_pos,
                      const Frustum& frustum, double now) {
  for (auto it = voxels_.begin(); it != voxels_.end();) {
    const Vec3& p = it->second.point;
    if ((p - robot_pos).norm() > radius_ || frustum.contains(p)) {
      it = voxels_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& p : fresh) {
    if ((p - robot_pos).norm() > radius_) continue;
    voxels_[key_of(p)] = Entry{p, now};
  }
}

PointCloud PcMemory::query() const {
  PointCloud out;
  out.reserve(voxels_.size());
  for (const auto& [key, entry] : voxels_) out.push_back(entry.point);
  return out;
}

Zone classify_zone(double distance) {
  if (distance <= 0.5) return Zone::freeze;
  if (distance <= 1.0) return Zone::update;
  return Zone::dynamic_zone;
}

ObsDecision ObsMemory::observe(const InstanceKey& key,
                               const Vec3& observed_centroid,
                               const Vec3& robot_pos, double now) {
  ObsDecision decision;
  const double d = (observed_centroid.head<2>() - robot_pos.head<2>()).norm();
  decision.zone = classify_zone(d);
  auto it = entries_.find(key);
  switch (decision.zone) {
    case Zone::freeze:
      // No new obstacle is considered this close; an existing cache entry
      // keeps serving.
      decision.cache_hit = it != entries_.end();
      break;
    case Zone::update:
      if (it != entries_.end() &&
          (it->second.observed_centroid - observed_centroid).norm() <=
              displacement_threshold_) {
        decision.cache_hit = true;
        it->second.last_seen = now;
      } else {
        decision.run_alignment = true;
        decision.memorize = true;
        if (it != entries_.end()) entries_.erase(it);  // displaced: stale
      }
      break;
    case Zone::dynamic_zone:
      decision.run_alignment = true;
      if (it != entries_.end()) entries_.erase(it);
      break;
  }
  return decision;
}

void ObsMemory::store(const InstanceKey& key, const AlignmentResult& alignment,
                      const Vec3& observed_centroid, const Vec3& robot_pos,
                      double now) {
  const double d = (observed_centroid.head<2>() - robot_pos.head<2>()).norm();
  if (classify_zone(d) != Zone::update) return;
  entries_[key] = Entry{alignment, observed_centroid, now};
}

std::vector<std::pair<InstanceKey, ObsMemory::Entry>> ObsMemory::lookup()
    const {
  return {entries_.begin(), entries_.end()};
}

}  // namespace sdfnav
