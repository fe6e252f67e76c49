#pragma once

#include <map>
#include <utility>

#include "sdfnav/camera.hpp"
#include "sdfnav/perception.hpp"

namespace sdfnav {

// Short-term persistence of out-of-view points within r_pc of the robot.
// Voxel-hashed at 2 cm so repeated observations do not grow the set.
class PcMemory {
 public:
  explicit PcMemory(double radius = 1.0, double voxel = 0.02)
      : radius_(radius), voxel_(voxel) {}

  // Drops retained points that re-entered the view frustum (the fresh frame
  // supersedes them) or drifted beyond r_pc, then inserts the new cloud.
  void update(const PointCloud& fresh, const Vec3& robot_pos,
              const Frustum& frustum, double now);

  PointCloud query() const;
  std::size_t size() const { return voxels_.size(); }
  double radius() const { return radius_; }

 private:
  struct Entry {
    Vec3 point;
    double last_seen;
  };
  using Key = std::tuple<int, int, int>;
  Key key_of(const Vec3& p) const;

  double radius_;
  double voxel_;
  std::map<Key, Entry> voxels_;  // ordered, so query order is deterministic
};

enum class Zone { freeze, update, dynamic_zone };

// Concentric regions around the robot: freeze <= 0.5 m, update (0.5, 1],
// dynamic beyond.
Zone classify_zone(double distance);

using InstanceKey = std::pair<int, int>;  // (catalog id, instance index)

struct ObsDecision {
  Zone zone = Zone::dynamic_zone;
  bool cache_hit = false;       // cached pose may be reused, skip alignment
  bool run_alignment = false;   // fresh alignment wanted
  bool memorize = false;        // a fresh result should be stored
};

// Cached obstacle poses for the scene pipeline, maintained per the zone
// rules. Entries exist only for instances last confirmed in the update zone.
class ObsMemory {
 public:
  struct Entry {
    AlignmentResult alignment;
    Vec3 observed_centroid = Vec3::Zero();
    double last_seen = 0.0;
  };

  // Query phase for one observed instance. Freeze: nothing new is
  // considered. Update: cached-and-undisplaced reuses the pose, otherwise a
  // realignment is requested. Dynamic: never memorized and stale entries for
  // the instance are evicted.
  ObsDecision observe(const InstanceKey& key, const Vec3& observed_centroid,
                      const Vec3& robot_pos, double now);

  // Commit phase after alignment; only update-zone observations are stored.
  void store(const InstanceKey& key, const AlignmentResult& alignment,
             const Vec3& observed_centroid, const Vec3& robot_pos, double now);

  std::vector<std::pair<InstanceKey, Entry>> lookup() const;
  std::size_t size() const { return entries_.size(); }
  void set_displacement_threshold(double d) { displacement_threshold_ = d; }

 private:
  std::map<InstanceKey, Entry> entries_;
  double displacement_threshold_ = 0.1;
};

}  // namespace sdfnav
