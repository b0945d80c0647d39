#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fftmech {

/// Regular periodic grid: `dim` axes, `points[a]` nodes and cell size
/// `lengths[a]` along axis `a`. Unused axis slots hold N=1, L=1.
///
/// Nodes are stored row-major with the last axis fastest, matching the
/// layout expected by the batched transforms.
struct GridShape {
  int dim = 3;
  std::array<int, 3> points = {1, 1, 1};
  std::array<double, 3> lengths = {1.0, 1.0, 1.0};

  std::size_t node_count() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points[a]);
    return n;
  }

  std::size_t node_index(const std::array<int, 3>& idx) const {
    std::size_t k = 0;
    for (int a = 0; a < dim; ++a) k = k * static_cast<std::size_t>(points[a]) + idx[a];
    return k;
  }

  std::array<int, 3> node_coords(std::size_t node) const {
    std::array<int, 3> idx = {0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(node % static_cast<std::size_t>(points[a]));
      node /= static_cast<std::size_t>(points[a]);
    }
    return idx;
  }

  void validate() const {
    if (dim != 2 && dim != 3) throw std::invalid_argument("grid dim must be 2 or 3");
    for (int a = 0; a < dim; ++a) {
      if (points[a] < 1)
        throw std::invalid_argument("grid points must be >= 1 (axis " + std::to_string(a) + ")");
      if (!(lengths[a] > 0.0))
        throw std::invalid_argument("grid lengths must be > 0 (axis " + std::to_string(a) + ")");
    }
  }

  bool operator==(const GridShape& o) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a) {
      if (points[a] != o.points[a] || lengths[a] != o.lengths[a]) return false;
    }
    return true;
  }
};

inline GridShape grid_2d(int nx, int ny, double lx = 1.0, double ly = 1.0) {
  GridShape s;
  s.dim = 2;
  s.points = {nx, ny, 1};
  s.lengths = {lx, ly, 1.0};
  s.validate();
  return s;
}

inline GridShape grid_3d(int nx, int ny, int nz, double lx = 1.0, double ly = 1.0,
                         double lz = 1.0) {
  GridShape s;
  s.dim = 3;
  s.points = {nx, ny, nz};
  s.lengths = {lx, ly, lz};
  s.validate();
  return s;
}

}  // namespace fftmech
