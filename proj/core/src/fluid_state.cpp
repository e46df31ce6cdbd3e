#include "dwp/fluid_state.hpp"

#include <algorithm>
#include <cmath>

#include "dwp/errors.hpp"

namespace dwp {

double vacuum_floor(double initial_max_rho) noexcept {
  return kVacuumRelative * std::max(1.0, initial_max_rho);
}

FluidState FluidState::zeros(const Grid& grid) {
  FluidState s;
  s.grid = grid;
  s.rho.assign(grid.cells(), 0.0);
  for (int a = 0; a < grid.dim; ++a) s.mom[a].assign(grid.cells(), 0.0);
  return s;
}

void FluidState::reset_floor() { floor = vacuum_floor(max_rho(*this)); }

void FluidState::validate() const {
  if (rho.size() != grid.cells()) {
    throw Error(ErrorKind::domain, "density field does not match grid");
  }
  for (int a = 0; a < 3; ++a) {
    const std::size_t want = a < grid.dim ? grid.cells() : 0;
    if (mom[a].size() != want) throw Error(ErrorKind::domain, "momentum field does not match grid");
  }
  for (double r : rho) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::domain, "density must be finite and nonnegative");
    }
  }
}

double max_rho(const FluidState& s) noexcept {
  double m = 0.0;
  for (double r : s.rho) m = std::max(m, r);
  return m;
}

}  // namespace dwp
