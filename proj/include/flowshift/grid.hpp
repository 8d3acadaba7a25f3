#pragma once

#include <cstddef>
#include <vector>

#include "flowshift/linalg.hpp"

namespace flowshift {

/// Axis-aligned rectangle in ℝᵈ.
struct Domain {
  Vec lo, hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(const Vec& x, double slack = 0.0) const;
  Vec center() const;
  void validate() const;  // lo < hi per axis, finite
};

/// Regular sample grid over a Domain, flat-indexed row-major (last axis
/// fastest). Resolution is the number of points per axis, at least 2.
struct Grid {
  Domain domain;
  std::vector<std::size_t> res;

  void validate() const;
  std::size_t dim() const { return domain.dim(); }
  std::size_t size() const;
  double step(std::size_t axis) const;
  Vec point(std::size_t flat) const;
  std::vector<std::size_t> coords(std::size_t flat) const;
  std::size_t flat(const std::vector<std::size_t>& c) const;

  /// True when the point touches no boundary layer of the grid.
  bool is_interior(std::size_t flat) const;
  /// Length of a cell diagonal — the grid's spatial resolution.
  double cell_diagonal() const;
  /// Flat index of the grid point nearest to x (clamped to the rectangle).
  std::size_t nearest(const Vec& x) const;
  /// Grid neighbors (±1 along each axis).
  std::vector<std::size_t> neighbors(std::size_t flat) const;
};

/// Visits every grid point exactly once such that consecutive entries are
/// grid-adjacent (serpentine sweep). Used for branch continuation.
std::vector<std::size_t> serpentine_order(const Grid& g);

Grid make_grid_1d(double lo, double hi, std::size_t n);
Grid make_grid_2d(double xlo, double xhi, double ylo, double yhi, std::size_t nx,
                  std::size_t ny);

}  // namespace flowshift
