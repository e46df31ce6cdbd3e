#include "dwp/riemann.hpp"

#include <cmath>
#include <limits>

#include "dwp/errors.hpp"

namespace dwp::riemann {

namespace {

void require_positive_densities(const RiemannData& d) {
  if (!(d.rho_l > 0.0) || !(d.rho_r > 0.0) || !std::isfinite(d.rho_l) || !std::isfinite(d.rho_r)) {
    throw Error(ErrorKind::domain, "Riemann data needs rho_l > 0 and rho_r > 0");
  }
}

PointState fan_at(double rho_l, double u_l, double rho_r, double u_r,
                  double edge_l, double edge_r, double x) {
  if (x < edge_l) return {rho_l, u_l};
  if (x > edge_r) return {rho_r, u_r};
  return {0.0, std::nullopt};
}

// -1 left, +1 right, 0 on the interface.
int side(double speed) { return (speed > 0.0) - (speed < 0.0); }

}  // namespace

DeltaWave delta_wave(const RiemannData& d) {
  require_positive_densities(d);
  const double sl = std::sqrt(d.rho_l);
  const double sr = std::sqrt(d.rho_r);
  DeltaWave w;
  w.c = (sr * d.u_r + sl * d.u_l) / (sr + sl);
  w.alpha = -(sl * sr) * (d.u_r - d.u_l);
  w.beta = w.c * w.alpha;
  w.physical = !(w.alpha < 0.0);
  return w;
}

PointState vacuum_fan(const RiemannData& d, double t, double x) {
  if (!(d.u_l < d.u_r)) throw Error(ErrorKind::case_error, "vacuum fan needs u_l < u_r; use delta_wave");
  if (!(t > 0.0)) throw Error(ErrorKind::range, "vacuum fan needs t > 0");
  return fan_at(d.rho_l, d.u_l, d.rho_r, d.u_r, d.u_l * t, d.u_r * t, x);
}

SharingCoefficients sharing(const RiemannData& d) {
  require_positive_densities(d);
  if (d.u_l == d.u_r) throw Error(ErrorKind::degenerate, "u_l == u_r: no delta peak to share");

  const double sl = std::sqrt(d.rho_l);
  const double sr = std::sqrt(d.rho_r);
  const double du = d.u_l - d.u_r;  // alpha = sl*sr*du
  const double alpha = sl * sr * du;
  const double c = (sr * d.u_r + sl * d.u_l) / (sr + sl);
  const double beta = c * alpha;

  // lambda contributions, each simplified by one factor of sqrt(rho) so that
  // no term is formed as a difference of large products.
  const double lam_ul = sl * d.u_l / (sr * du);             // rho_l u_l / alpha
  const double lam_ur = -sr * d.u_r / (sl * du);            // -rho_r u_r / alpha
  const double lam_c = c * (sr - sl) * (sr + sl) / alpha;   // c (rho_r - rho_l) / alpha
  // rho*u contributions (mu * beta).
  const double mom_ul = d.rho_l * d.u_l * d.u_l;
  const double mom_ur = -d.rho_r * d.u_r * d.u_r;
  const double mom_c = c * (d.rho_r * d.u_r - d.rho_l * d.u_l);

  const int s_ul = side(d.u_l);
  const int s_ur = side(d.u_r);
  const int s_c = side(c);

  // Sum the contributions landing on `target`.
  auto gather = [&](int target, double a_ul, double a_c, double a_ur) {
    double sum = 0.0;
    if (s_ul == target) sum += a_ul;
    if (s_c == target) sum += a_c;
    if (s_ur == target) sum += a_ur;
    return sum;
  };
  const int n_left = (s_ul < 0) + (s_c < 0) + (s_ur < 0);
  const int n_right = (s_ul > 0) + (s_c > 0) + (s_ur > 0);

  // The contributions always add up to the full peak. Evaluating the side
  // that receives fewer waves and taking the complement for the other keeps
  // lambda inside [0, 1] up to rounding.
  SharingCoefficients sc;
  const bool left_direct = n_left <= n_right;
  if (left_direct) {
    sc.lambda_l = gather(-1, lam_ul, lam_c, lam_ur);
    sc.lambda_r = 1.0 - sc.lambda_l;
  } else {
    sc.lambda_r = gather(+1, lam_ul, lam_c, lam_ur);
    sc.lambda_l = 1.0 - sc.lambda_r;
  }

  if (left_direct) {
    sc.mom_share_l = gather(-1, mom_ul, mom_c, mom_ur);
    sc.mom_share_r = beta - sc.mom_share_l;
  } else {
    sc.mom_share_r = gather(+1, mom_ul, mom_c, mom_ur);
    sc.mom_share_l = beta - sc.mom_share_r;
  }

  if (c == 0.0) {
    sc.mu_defined = false;
    sc.mu_l = sc.mu_r = std::numeric_limits<double>::quiet_NaN();
    // Both waves u_l and u_r still carry momentum: rho_l u_l^2 = rho_r u_r^2 here.
    sc.mom_share_l = s_ul < 0 ? mom_ul : (s_ur < 0 ? mom_ur : 0.0);
    sc.mom_share_r = s_ur > 0 ? mom_ur : (s_ul > 0 ? mom_ul : 0.0);
  } else {
    // mu contributions are the lambda ones scaled by u/c; the c-wave term is
    // (rho_r u_r - rho_l u_l) / alpha.
    const double mu_ul = lam_ul * (d.u_l / c);
    const double mu_ur = lam_ur * (d.u_r / c);
    const double mu_c = (sr * sr * d.u_r - sl * sl * d.u_l) / alpha;
    if (left_direct) {
      sc.mu_l = gather(-1, mu_ul, mu_c, mu_ur);
      sc.mu_r = 1.0 - sc.mu_l;
    } else {
      sc.mu_r = gather(+1, mu_ul, mu_c, mu_ur);
      sc.mu_l = 1.0 - sc.mu_r;
    }
  }
  return sc;
}

PointState expanding_riemann(const RiemannData& d, const Background& bg, double t, double x) {
  if (!(d.u_l < d.u_r)) {
    throw Error(ErrorKind::case_error, "expanding Riemann solution needs u_l < u_r");
  }
  if (!(t > 0.0)) throw Error(ErrorKind::range, "expanding Riemann solution needs t > 0");
  const double a0 = bg.scale(0.0);
  const double a = bg.scale(t);
  const double integral = bg.inverse_square_integral(0.0, t);
  const double ratio = a0 / a;
  const double decay3 = ratio * ratio * ratio;
  return fan_at(d.rho_l * decay3, d.u_l * ratio, d.rho_r * decay3, d.u_r * ratio,
                d.u_l * a0 * integral, d.u_r * a0 * integral, x);
}

}  // namespace dwp::riemann

