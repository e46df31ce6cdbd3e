#pragma once

#include <vector>

namespace dwp {

/// Scale factor a(t) of the background universe. All families satisfy
/// a(0) = 1 (tabulated: a at the first sample), a > 0, nondecreasing.
class Background {
 public:
  enum class Kind { static_, power_law, tabulated };

  /// a(t) = 1.
  static Background make_static();
  /// a(t) = (1 + t/t0)^p with p >= 0, t0 > 0.
  static Background power_law(double p, double t0);
  /// Piecewise-linear interpolation through (times[i], scales[i]).
  static Background tabulated(std::vector<double> times, std::vector<double> scales);

  /// Power law hitting a(t_end) = factor; p > 0.
  static Background power_law_reaching(double factor, double t_end, double p = 1.0);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return p_; }
  double t0() const noexcept { return t0_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& scales() const noexcept { return scales_; }

  /// a(t); throws Error(range) for t < 0 or t outside a tabulated range.
  double scale(double t) const;
  /// H(t) = a'(t)/a(t) (right derivative at tabulated knots).
  double hubble(double t) const;
  /// Exact integral of ds / a(s)^2 over [t0, t1].
  double inverse_square_integral(double t0, double t1) const;

  bool operator==(const Background&) const = default;

 private:
  void check_time(double t) const;

  Kind kind_ = Kind::static_;
  double p_ = 0.0;
  double t0_ = 1.0;
  std::vector<double> times_;
  std::vector<double> scales_;
};

double scale_at(const Background& bg, double t);

/// a(t_n) * (1/a(t_n1)^2 + 1/a(t_n)^2) / 2: the trapezoid estimate of
/// a(t_n) * (integral of ds/a^2 over [t_n, t_n1]) / (t_n1 - t_n).
/// Exactly 1 for a static background.
double displacement_factor(const Background& bg, double t_n, double t_n1);

/// Comoving distance travelled in [t_n, t_n1] by a free stream of peculiar
/// velocity u0 at t_n (trapezoid rule).
double comoving_displacement(const Background& bg, double u0, double t_n, double t_n1);

}  // namespace dwp
