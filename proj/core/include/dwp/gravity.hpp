#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "dwp/fluid_state.hpp"
#include "dwp/grid.hpp"
#include "dwp/state_law.hpp"

namespace dwp::gravity {

enum class PoissonBoundary {
  dirichlet,  // phi = 0 in the ghost ring around the grid
  periodic,   // source mean removed, phi has zero mean
};

inline constexpr double kNewtonianFactor = 4.0 * std::numbers::pi;
inline constexpr double kRadiationFactor = 8.0 * std::numbers::pi;

struct GravityParams {
  double G = 1.0;
  double source_factor = kNewtonianFactor;
  double solver_tol = 1e-10;  // on ||residual|| / ||source||
  int max_iter = 20000;
  PoissonBoundary boundary = PoissonBoundary::dirichlet;
  bool preconditioned = true;  // fast-transform preconditioner for CG
};

struct Potential {
  Grid grid;
  std::vector<double> phi;
  int iterations = 0;
  double residual = 0.0;  // final ||Lap(phi) - source|| / ||source||
};

/// Standard 3/5/7-point Laplacian (Dirichlet ghosts are zero).
std::vector<double> laplacian(const Grid& grid, std::span<const double> phi,
                              PoissonBoundary boundary = PoissonBoundary::dirichlet);

/// Centered difference along `axis`, one-sided on the boundary ring
/// (periodic: centered with wrap-around).
std::vector<double> gradient(const Grid& grid, std::span<const double> f, int axis,
                             PoissonBoundary boundary = PoissonBoundary::dirichlet);

/// Solves Lap(phi) = source. 1D Dirichlet uses a direct tridiagonal solve,
/// everything else conjugate gradients (preconditioned by default). `guess` (optional) seeds CG.
/// Throws Error(solver) when the tolerance is not met within max_iter.
Potential solve_source(const Grid& grid, std::span<const double> source, const GravityParams& params,
                       std::span<const double> guess = {});

/// Lap(phi) = source_factor * G * a^2 * rho_total.
Potential solve_poisson(const Grid& grid, std::span<const double> rho_total, const GravityParams& params,
                        double a, std::span<const double> guess = {});

/// rho fixed; rho u += dt * (-(1/a) grad p - (rho/a) grad phi). grad p is taken
/// in face form: faces next to vacuum carry no pressure and a face never carries
/// more than twice its smaller side, so vacuum cells get no push, edge cells a
/// bounded one, and the total pressure force telescopes.
FluidState newtonian_kick(const FluidState& s, const Potential& phi, const StateLaw& law, double a, double dt,
                          PoissonBoundary boundary = PoissonBoundary::dirichlet);

/// rho fixed; u += dt * (-(c^2/(4a)) grad(rho)/rho - (1/a) grad phi) on
/// non-vacuum cells, then rho u = rho * u. Vacuum cells are left untouched.
FluidState relativistic_kick(const FluidState& s, const Potential& phi, double c_light, double a, double dt,
                             PoissonBoundary boundary = PoissonBoundary::dirichlet);

}  // namespace dwp::gravity
