#pragma once

#include <array>
#include <cstddef>

namespace dwp {

enum class Boundary {
  outflow,      // one-cell ghost ring copying the edge cells
  zero_margin,  // rho = rho*u = 0 forced in a band of `margin` cells
};

/// Uniform Cartesian grid of cubic cells. Axes beyond `dim` have one cell.
/// Cell storage is row-major: the last active axis varies fastest.
struct Grid {
  int dim = 1;
  std::array<int, 3> n{1, 1, 1};
  double h = 1.0;
  Boundary boundary = Boundary::zero_margin;
  int margin = 2;
  std::array<double, 3> origin{0.0, 0.0, 0.0};  // lower corner of cell (0,0,0)

  /// Validating constructor; throws Error(config) on a malformed grid.
  static Grid make(int dim, std::array<int, 3> n, double h,
                   Boundary boundary = Boundary::zero_margin, int margin = 2,
                   std::array<double, 3> origin = {0.0, 0.0, 0.0});

  /// 1D convenience: n cells on [x0, x0 + n*h].
  static Grid line(int n, double h, Boundary boundary = Boundary::zero_margin,
                   int margin = 2, double x0 = 0.0);

  void validate() const;

  std::size_t cells() const noexcept {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }

  std::size_t index(int i, int j = 0, int k = 0) const noexcept {
    return (static_cast<std::size_t>(i) * n[1] + j) * n[2] + k;
  }

  std::array<int, 3> coords(std::size_t idx) const noexcept {
    const int k = static_cast<int>(idx % n[2]);
    idx /= n[2];
    const int j = static_cast<int>(idx % n[1]);
    const int i = static_cast<int>(idx / n[1]);
    return {i, j, k};
  }

  /// Cell-center coordinate along `axis`.
  double center(int axis, int i) const noexcept {
    return origin[axis] + (i + 0.5) * h;
  }

  /// True if the cell lies within `margin` cells of any active face.
  bool in_margin(const std::array<int, 3>& c) const noexcept {
    for (int a = 0; a < dim; ++a) {
      if (c[a] < margin || c[a] >= n[a] - margin) return true;
    }
    return false;
  }

  /// Volume of one cell, h^dim.
  double cell_volume() const noexcept;

  bool operator==(const Grid&) const = default;
};

}  // namespace dwp
