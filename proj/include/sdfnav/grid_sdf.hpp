#pragma once

#include <string>
#include <vector>

#include "sdfnav/geometry.hpp"
#include "sdfnav/shapes.hpp"

namespace sdfnav {

// Regular lattice of SDF samples over an axis-aligned normalized domain,
// the baked stand-in for a trained per-shape network. resolution counts
// cells per axis, so each axis stores resolution+1 node values.
struct GridSdf {
  Vec3 lo = Vec3(-1.1, -1.1, -1.1);
  Vec3 hi = Vec3(1.1, 1.1, 1.1);
  int resolution = 0;
  std::vector<float> values;  // x-fastest, (res+1)^3 nodes

  int nodes_per_axis() const { return resolution + 1; }
  Vec3 cell_size() const { return (hi - lo) / resolution; }

  std::size_t node_index(int ix, int iy, int iz) const {
    const std::size_t n = nodes_per_axis();
    return ix + n * (iy + n * iz);
  }
  double node_value(int ix, int iy, int iz) const {
    return values[node_index(ix, iy, iz)];
  }
  Vec3 node_position(int ix, int iy, int iz) const;
};

// Bakes the analytic SDF of the shape as given over [-1.1, 1.1]^3. Callers
// normalize catalog shapes first (see bake_catalog_grid).
GridSdf bake_grid(const ShapeSpec& shape, int resolution);

// bake_grid of the normalized shape, the offline-training analogue.
GridSdf bake_catalog_grid(const ShapeSpec& shape, int resolution);

// Trilinear interpolation inside the domain. Outside, the conservative
// extension: value at the clamped boundary point plus the distance to it.
double grid_eval(const GridSdf& g, const Vec3& p);
Vec3 grid_gradient(const GridSdf& g, const Vec3& p);
void grid_eval_with_gradient(const GridSdf& g, const Vec3& p, double* value,
                             Vec3* gradient);

// Flat binary blob with a small text header (bounds, resolution, endianness).
void save_grid(const GridSdf& g, const std::string& path);
GridSdf load_grid(const std::string& path);

}  // namespace sdfnav
