#include "sdfnav/grid_sdf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdfnav {

Vec3 GridSdf::node_position(int ix, int iy, int iz) const {
  const Vec3 cs = cell_size();
  return lo + Vec3(ix * cs.x(), iy * cs.y(), iz * cs.z());
}

GridSdf bake_grid(const ShapeSpec& shape, int resolution) {
  if (resolution < 8) {
    throw std::invalid_argument("bake_grid: resolution must be >= 8");
  }
  GridSdf g;
  g.resolution = resolution;
  const int n = g.nodes_per_axis();
  g.values.resize(static_cast<std::size_t>(n) * n * n);
  const Vec3 cs = g.cell_size();
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const Vec3 p = g.lo + Vec3(ix * cs.x(), iy * cs.y(), iz * cs.z());
        g.values[g.node_index(ix, iy, iz)] =
            static_cast<float>(shape_sdf(shape, p));
      }
    }
  }
  return g;
}

GridSdf bake_catalog_grid(const ShapeSpec& shape, int resolution) {
  return bake_grid(normalized_shape(shape), resolution);
}

namespace {

struct CellLookup {
  int ix, iy, iz;       // base node
  double fx, fy, fz;    // fractional position in the cell
  double c[8];          // corner values
};

inline CellLookup locate(const GridSdf& g, const Vec3& p) {
  CellLookup s;
  const Vec3 cs = g.cell_size();
  const int n = g.resolution;
  auto axis = [&](double v, double lo, double step, int* i, double* f) {
    double t = (v - lo) / step;
    int idx = static_cast<int>(std::floor(t));
    idx = std::clamp(idx, 0, n - 1);
    *i = idx;
    *f = t - idx;
  };
  axis(p.x(), g.lo.x(), cs.x(), &s.ix, &s.fx);
  axis(p.y(), g.lo.y(), cs.y(), &s.iy, &s.fy);
  axis(p.z(), g.lo.z(), cs.z(), &s.iz, &s.fz);
  const int na = g.nodes_per_axis();
  const float* base =
      g.values.data() + g.node_index(s.ix, s.iy, s.iz);
  const std::size_t sy = na, sz = static_cast<std::size_t>(na) * na;
  s.c[0] = base[0];
  s.c[1] = base[1];
  s.c[2] = base[sy];
  s.c[3] = base[sy + 1];
  s.c[4] = base[sz];
  s.c[5] = base[sz + 1];
  s.c[6] = base[sz + sy];
  s.c[7] = base[sz + sy + 1];
  return s;
}

inline double trilinear(const CellLookup& s) {
  const double c00 = s.c[0] * (1 - s.fx) + s.c[1] * s.fx;
  const double c10 = s.c[2] * (1 - s.fx) + s.c[3] * s.fx;
  const double c01 = s.c[4] * (1 - s.fx) + s.c[5] * s.fx;
  const double c11 = s.c[6] * (1 - s.fx) + s.c[7] * s.fx;
  const double c0 = c00 * (1 - s.fy) + c10 * s.fy;
  const double c1 = c01 * (1 - s.fy) + c11 * s.fy;
  return c0 * (1 - s.fz) + c1 * s.fz;
}

inline Vec3 trilinear_gradient(const GridSdf& g, const CellLookup& s) {
  const Vec3 cs = g.cell_size();
  const double gx =
      ((s.c[1] - s.c[0]) * (1 - s.fy) + (s.c[3] - s.c[2]) * s.fy) * (1 - s.fz) +
      ((s.c[5] - s.c[4]) * (1 - s.fy) + (s.c[7] - s.c[6]) * s.fy) * s.fz;
  const double gy =
      ((s.c[2] - s.c[0]) * (1 - s.fx) + (s.c[3] - s.c[1]) * s.fx) * (1 - s.fz) +
      ((s.c[6] - s.c[4]) * (1 - s.fx) + (s.c[7] - s.c[5]) * s.fx) * s.fz;
  const double gz =
      ((s.c[4] - s.c[0]) * (1 - s.fx) + (s.c[5] - s.c[1]) * s.fx) * (1 - s.fy) +
      ((s.c[6] - s.c[2]) * (1 - s.fx) + (s.c[7] - s.c[3]) * s.fx) * s.fy;
  return {gx / cs.x(), gy / cs.y(), gz / cs.z()};
}

}  // namespace

double grid_eval(const GridSdf& g, const Vec3& p) {
  const Vec3 q = p.cwiseMax(g.lo).cwiseMin(g.hi);
  const double outside = (p - q).norm();
  return trilinear(locate(g, q)) + outside;
}

void grid_eval_with_gradient(const GridSdf& g, const Vec3& p, double* value,
                             Vec3* gradient) {
  const Vec3 q = p.cwiseMax(g.lo).cwiseMin(g.hi);
  const Vec3 d = p - q;
  const double outside = d.norm();
  const CellLookup s = locate(g, q);
  *value = trilinear(s) + outside;
  Vec3 grad = trilinear_gradient(g, s);
  if (outside > 0.0) {
    // Clamped axes follow the outward direction, free axes keep the
    // boundary-value tangential derivative.
    for (int i = 0; i < 3; ++i) {
      if (d[i] != 0.0) grad[i] = d[i] / outside;
    }
  }
  *gradient = grad;
}

Vec3 grid_gradient(const GridSdf& g, const Vec3& p) {
  double v;
  Vec3 grad;
  grid_eval_with_gradient(g, p, &v, &grad);
  return grad;
}

void save_grid(const GridSdf& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_grid: cannot open " + path);
  const char* endian =
      std::endian::native == std::endian::little ? "little" : "big";
  out << "sdfgrid 1\n";
  out << "endian " << endian << "\n";
  out << "bounds " << g.lo.x() << " " << g.lo.y() << " " << g.lo.z() << " "
      << g.hi.x() << " " << g.hi.y() << " " << g.hi.z() << "\n";
  out << "cells " << g.resolution << "\n";
  out << "data\n";
  out.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(float)));
}

GridSdf load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_grid: cannot open " + path);
  GridSdf g;
  std::string line;
  std::string endian;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "sdfgrid") {
      int version = 0;
      ls >> version;
      if (version != 1) throw std::runtime_error("load_grid: bad version");
    } else if (key == "endian") {
      ls >> endian;
    } else if (key == "bounds") {
      ls >> g.lo.x() >> g.lo.y() >> g.lo.z() >> g.hi.x() >> g.hi.y() >>
          g.hi.z();
    } else if (key == "cells") {
      ls >> g.resolution;
    } else if (key == "data") {
      break;
    }
  }
  const char* native =
      std::endian::native == std::endian::little ? "little" : "big";
  if (endian != native) {
    throw std::runtime_error("load_grid: endianness mismatch");
  }
  if (g.resolution < 1) throw std::runtime_error("load_grid: missing header");
  const std::size_t n = g.nodes_per_axis();
  g.values.resize(n * n * n);
  in.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(g.values.size() * sizeof(float)));
  if (!in) throw std::runtime_error("load_grid: truncated data in " + path);
  return g;
}

}  // namespace sdfnav
