#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "dwp/grid.hpp"

namespace dwp {

/// Relative vacuum threshold: u is defined where rho > kVacuumRelative * max(1, initial max rho).
inline constexpr double kVacuumRelative = 1e-300;

double vacuum_floor(double initial_max_rho) noexcept;

/// Cell-averaged density and momentum density of one fluid.
///
/// `mom[a]` is allocated for the active axes only. Velocities are derived:
/// where rho <= floor the cell is vacuum, its velocity is undefined and
/// transport treats it as zero.
struct FluidState {
  Grid grid;
  std::vector<double> rho;
  std::array<std::vector<double>, 3> mom;
  double floor = kVacuumRelative;

  static FluidState zeros(const Grid& grid);

  std::size_t size() const noexcept { return rho.size(); }
  int dim() const noexcept { return grid.dim; }

  bool defined(std::size_t c) const noexcept { return rho[c] > floor; }

  /// Transport velocity: mom/rho, or 0 in vacuum.
  double velocity(int axis, std::size_t c) const noexcept {
    return defined(c) ? mom[axis][c] / rho[c] : 0.0;
  }

  std::optional<double> velocity_or_undefined(int axis, std::size_t c) const {
    if (!defined(c)) return std::nullopt;
    return mom[axis][c] / rho[c];
  }

  /// Resets the vacuum floor from the current maximum density.
  void reset_floor();

  /// Throws Error(domain) on negative or non-finite density, or size mismatch.
  void validate() const;
};

double max_rho(const FluidState& s) noexcept;

}  // namespace dwp
