#pragma once

#include <optional>

#include "dwp/background.hpp"

namespace dwp::riemann {

/// Two constant states separated by a discontinuity at x = 0.
struct RiemannData {
  double rho_l = 1.0;
  double u_l = 0.0;
  double rho_r = 1.0;
  double u_r = 0.0;
};

/// Delta shock rho = ... + alpha t delta(x - c t), rho u = ... + beta t delta(x - c t).
/// `physical` is false when alpha < 0 (expanding data, u_l < u_r).
struct DeltaWave {
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool physical = true;
};

/// Pointwise state of an exact solution. `u` is empty inside a vacuum.
struct PointState {
  double rho = 0.0;
  std::optional<double> u;
};

/// Fractions of the rho peak (lambda) and rho*u peak (mu) given to the cells
/// left and right of the interface.
///
/// lambda_l + lambda_r = 1 always. When c == 0 the momentum peak beta = c*alpha
/// vanishes while its left/right contributions do not; mu is then undefined
/// (NaN, mu_defined = false) and only mom_share_* carry the split.
struct SharingCoefficients {
  double lambda_l = 0.0;
  double lambda_r = 0.0;
  double mu_l = 0.0;
  double mu_r = 0.0;
  bool mu_defined = true;
  double mom_share_l = 0.0;  // mu_l * beta
  double mom_share_r = 0.0;  // mu_r * beta
};

/// Throws Error(domain) unless rho_l, rho_r > 0.
DeltaWave delta_wave(const RiemannData& d);

/// Exact solution for u_l < u_r: left state, vacuum, right state.
/// Throws Error(case_error) when u_l >= u_r.
PointState vacuum_fan(const RiemannData& d, double t, double x);

/// Three-wave side rule: each of the waves u_l, c, u_r gives its contribution
/// to the side it travels to; a wave of exactly zero speed contributes nothing.
/// Throws Error(degenerate) when u_l == u_r.
SharingCoefficients sharing(const RiemannData& d);

/// Vacuum fan in an expanding background: states decay as (a(0)/a)^3 and
/// (a(0)/a), edges sit at u * a(0) * integral of ds/a^2 over [0, t].
/// Equal to vacuum_fan bit for bit when the background is static.
PointState expanding_riemann(const RiemannData& d, const Background& bg, double t, double x);

}  // namespace dwp::riemann
