#include "dwp/grid.hpp"

#include <cmath>
#include <string>

#include "dwp/errors.hpp"

namespace dwp {

Grid Grid::make(int dim, std::array<int, 3> n, double h, Boundary boundary,
                int margin, std::array<double, 3> origin) {
  Grid g;
  g.dim = dim;
  g.n = n;
  for (int a = dim; a < 3; ++a) g.n[a] = 1;
  g.h = h;
  g.boundary = boundary;
  g.margin = margin;
  g.origin = origin;
  g.validate();
  return g;
}

Grid Grid::line(int n, double h, Boundary boundary, int margin, double x0) {
  return make(1, {n, 1, 1}, h, boundary, margin, {x0, 0.0, 0.0});
}

void Grid::validate() const {
  if (dim < 1 || dim > 3) {
    throw Error(ErrorKind::config, "grid.dim must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::config, "grid.h must be positive");
  }
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 3) {
      throw Error(ErrorKind::config, "grid.n: every axis needs at least 3 cells");
    }
  }
  for (int a = dim; a < 3; ++a) {
    if (n[a] != 1) throw Error(ErrorKind::config, "grid.n: inactive axes must have one cell");
  }
  if (margin < 0) throw Error(ErrorKind::config, "grid.margin must be >= 0");
  if (boundary == Boundary::zero_margin) {
    for (int a = 0; a < dim; ++a) {
      if (2 * margin >= n[a]) {
        throw Error(ErrorKind::config, "grid.margin leaves no interior cells");
      }
    }
  }
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= h;
  return v;
}

}  // namespace dwp
