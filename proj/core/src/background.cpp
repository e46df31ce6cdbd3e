#include "dwp/background.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwp/errors.hpp"

namespace dwp {

Background Background::make_static() { return Background{}; }

Background Background::power_law(double p, double t0) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorKind::parameter, "power law exponent must be >= 0");
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw Error(ErrorKind::parameter, "power law t0 must be > 0");
  Background bg;
  bg.kind_ = Kind::power_law;
  bg.p_ = p;
  bg.t0_ = t0;
  return bg;
}

Background Background::power_law_reaching(double factor, double t_end, double p) {
  if (!(factor >= 1.0)) throw Error(ErrorKind::parameter, "expansion factor must be >= 1");
  if (!(t_end > 0.0)) throw Error(ErrorKind::parameter, "expansion end time must be > 0");
  if (factor == 1.0) return make_static();
  if (!(p > 0.0)) throw Error(ErrorKind::parameter, "power law exponent must be > 0");
  // (1 + T/t0)^p = factor
  const double t0 = t_end / (std::pow(factor, 1.0 / p) - 1.0);
  return power_law(p, t0);
}

Background Background::tabulated(std::vector<double> times, std::vector<double> scales) {
  if (times.size() < 2 || times.size() != scales.size()) {
    throw Error(ErrorKind::parameter, "tabulated background needs >= 2 (t, a) samples of equal length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(scales[i] > 0.0)) throw Error(ErrorKind::parameter, "tabulated scale factors must be > 0");
    if (i > 0) {
      if (!(times[i] > times[i - 1])) throw Error(ErrorKind::parameter, "tabulated times must increase");
      if (scales[i] < scales[i - 1]) throw Error(ErrorKind::parameter, "tabulated scale factors must be nondecreasing");
    }
  }
  if (times.front() > 0.0) throw Error(ErrorKind::parameter, "tabulated background must start at t <= 0");
  Background bg;
  bg.kind_ = Kind::tabulated;
  bg.times_ = std::move(times);
  bg.scales_ = std::move(scales);
  return bg;
}

void Background::check_time(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::range, "background queried at negative time");
  if (kind_ == Kind::tabulated && (t < times_.front() || t > times_.back())) {
    throw Error(ErrorKind::range, "time " + std::to_string(t) + " outside tabulated background range");
  }
}

namespace {

// Segment index s with times[s] <= t <= times[s+1].
std::size_t segment(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t s = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  return std::min(s, times.size() - 2);
}

}  // namespace

double Background::scale(double t) const {
  check_time(t);
  switch (kind_) {
    case Kind::static_:
      return 1.0;
    case Kind::power_law:
      return std::pow(1.0 + t / t0_, p_);
    case Kind::tabulated: {
      const std::size_t s = segment(times_, t);
      const double w = (t - times_[s]) / (times_[s + 1] - times_[s]);
      return scales_[s] + w * (scales_[s + 1] - scales_[s]);
    }
  }
  return 1.0;
}

double Background::hubble(double t) const {
  check_time(t);
  switch (kind_) {
    case Kind::static_:
      return 0.0;
    case Kind::power_law:
      return p_ / (t0_ + t);
    case Kind::tabulated: {
      const std::size_t s = segment(times_, t);
      const double slope = (scales_[s + 1] - scales_[s]) / (times_[s + 1] - times_[s]);
      return slope / scale(t);
    }
  }
  return 0.0;
}

double Background::inverse_square_integral(double t0, double t1) const {
  check_time(t0);
  check_time(t1);
  if (t1 < t0) return -inverse_square_integral(t1, t0);
  switch (kind_) {
    case Kind::static_:
      return t1 - t0;
    case Kind::power_law: {
      const double q = 1.0 - 2.0 * p_;
      const double x0 = 1.0 + t0 / t0_;
      const double x1 = 1.0 + t1 / t0_;
      if (std::abs(q) < 1e-14) return t0_ * std::log(x1 / x0);
      return t0_ / q * (std::pow(x1, q) - std::pow(x0, q));
    }
    case Kind::tabulated: {
      // a is linear on each segment: integral of ds/(a0 + k s)^2 = (1/a(s0) - 1/a(s1)) / k.
      double total = 0.0;
      double lo = t0;
      while (lo < t1) {
        const std::size_t s = segment(times_, lo);
        const double hi = std::min(t1, times_[s + 1]);
        const double a_lo = scale(lo);
        const double a_hi = scale(hi);
        if (a_hi == a_lo) {
          total += (hi - lo) / (a_lo * a_lo);
        } else {
          const double k = (scales_[s + 1] - scales_[s]) / (times_[s + 1] - times_[s]);
          total += (1.0 / a_lo - 1.0 / a_hi) / k;
        }
        if (hi <= lo) break;
        lo = hi;
      }
      return total;
    }
  }
  return t1 - t0;
}

double scale_at(const Background& bg, double t) { return bg.scale(t); }

double displacement_factor(const Background& bg, double t_n, double t_n1) {
  const double a0 = bg.scale(t_n);
  const double a1 = bg.scale(t_n1);
  return a0 * (0.5 * (1.0 / (a1 * a1) + 1.0 / (a0 * a0)));
}

double comoving_displacement(const Background& bg, double u0, double t_n, double t_n1) {
  if (!(t_n1 > t_n)) throw Error(ErrorKind::range, "comoving_displacement needs t_n1 > t_n");
  return u0 * (t_n1 - t_n) * displacement_factor(bg, t_n, t_n1);
}

}  // namespace dwp
