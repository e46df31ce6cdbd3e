#pragma once

#include <span>

#include "dwp/grid.hpp"

namespace dwp::gravity::detail {

/// out = A^{-1} in for A = -h^2 Lap (the scaled 3/5/7-point stencil), applied
/// with FFTW: sine transforms for zero Dirichlet ghosts, real Fourier
/// transforms for periodic grids (mean mode dropped). Plans are cached per
/// grid shape and built with FFTW_ESTIMATE so results are reproducible.
void apply_inverse(const Grid& grid, bool periodic, std::span<const double> in, std::span<double> out);

}  // namespace dwp::gravity::detail
