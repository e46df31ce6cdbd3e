#pragma once

#include <array>

#include "dwp/background.hpp"
#include "dwp/fluid_state.hpp"

namespace dwp {

/// Conserved quantities and structure measures of one fluid at one time.
///
/// mass = a^3 h^dim sum(rho) and momentum = a^4 h^dim sum(rho u) are time
/// invariants of the transport subsystem when nothing crosses the boundary.
struct Diagnostics {
  double mass = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double max_rho = 0.0;
  double min_rho = 0.0;
  double contrast = 0.0;  // std(rho) / mean(rho), population std
};

/// Sums run in storage (row-major) order so results are reproducible bit for bit.
Diagnostics diagnostics(const FluidState& state, const Background& bg, double t);

}  // namespace dwp
