#pragma once

#include <array>
#include <span>
#include <vector>

#include "dwp/background.hpp"
#include "dwp/fluid_state.hpp"

namespace dwp::transport {

/// Length of [0,1] ∩ [a,b], clamped to be nonnegative.
double overlap_L(double a, double b) noexcept;
/// Area of the unit square ∩ the unit square translated by (a,b).
double overlap_A(double a, double b) noexcept;
/// Volume of the unit cube ∩ the unit cube translated by (a,b,c).
double overlap_V(double a, double b, double c) noexcept;

/// Δt = r h. The admissible bound is r * max|effective speed| <= safety.
struct CflParams {
  double r = 1.0;
  double safety = 1.0;
};

/// Shifted-velocity variant: advection speeds U + c_shift, all nonnegative.
struct ShiftParams {
  double c_shift = 0.0;
  bool reindex_every_two = false;
};

/// Per-cell displacement in units of h, one vector per active axis.
struct Displacement {
  std::array<std::vector<double>, 3> cells;
};

/// Largest |u| over non-vacuum cells and active axes.
double max_speed(const FluidState& s) noexcept;

/// Largest r with r * speed_factor * max|u| <= safety (infinity for a fluid at rest).
double admissible_ratio(const FluidState& s, double speed_factor = 1.0, double safety = 1.0) noexcept;

/// Moves each field by the per-cell displacement and averages it back onto
/// the cells (gather form: every destination reads its 3^dim donor
/// neighborhood). Throws Error(cfl) if any |displacement| > 1.
std::vector<std::vector<double>> project(const Grid& grid, const Displacement& disp,
                                         std::span<const std::vector<double>* const> fields);

/// Forces rho = rho u = 0 in the margin band (zero_margin grids only).
void apply_boundary(FluidState& s);

/// Overlap update of rho and rho u, any dimension.
FluidState step(const FluidState& s, double r);
FluidState step_1d(const FluidState& s, double r);
FluidState step_2d(const FluidState& s, double r);
FluidState step_3d(const FluidState& s, double r);

/// Transport over [t_n, t_n + r h] in an expanding background: rho and rho u
/// decay by (a_n/a_{n+1})^3 and ^4, cells move by the comoving displacement of
/// speed_factor * u. speed_factor = 4/3 gives the relativistic transport.
FluidState step_expanding(const FluidState& s, const Background& bg, double t_n, double r,
                          double speed_factor = 1.0);
FluidState step_1d_expanding(const FluidState& s, const Background& bg, double t_n, double r);

/// One step of the shifted scheme. With reindex_every_two (r c = 1/2) the
/// cells are relabelled i -> i-1 after every odd `step_index`, so results
/// after an even number of steps line up with step().
FluidState step_shifted(const FluidState& s, const ShiftParams& shift, double r, long step_index);

/// Translates a state by a whole number of cells along axis 0 (content moves left for cells > 0).
FluidState translate_left(const FluidState& s, int cells);

/// Interface-flux scheme of Baraille, Bourdin, Dubois and Le Roux (1D),
/// kept as a comparison baseline. A zero velocity counts as positive and the
/// collision tie w = 0 takes the u > 0 branch.
FluidState leroux_step(const FluidState& s, double r);

/// step_1d followed by explicit centered diffusion of rho and rho u with
/// coefficient eps. Throws Error(cfl) unless eps * r / h <= 1/2.
FluidState viscosity_step(const FluidState& s, double eps, double r);

/// Contiguous block [lo, hi] grown greedily from the maximum until it holds
/// `fraction` of the total mass (1D fields).
struct PeakBlock {
  int lo = 0;
  int hi = -1;  // inclusive
  int peak = 0;
  double mass_fraction = 0.0;
  int cells() const noexcept { return hi - lo + 1; }
};
PeakBlock peak_block(std::span<const double> rho, double fraction = 0.99);

/// peak_block(rho, fraction).cells().
int peak_support(std::span<const double> rho, double fraction = 0.99);

}  // namespace dwp::transport
