#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dwp/fluid_state.hpp"

namespace testing_util {

inline dwp::FluidState uniform_1d(int n, double rho, double u, dwp::Boundary b = dwp::Boundary::outflow,
                                  int margin = 0) {
  auto s = dwp::FluidState::zeros(dwp::Grid::line(n, 1.0, b, margin));
  for (int i = 0; i < n; ++i) {
    s.rho[i] = rho;
    s.mom[0][i] = rho * u;
  }
  return s;
}

inline dwp::FluidState from_fields(const dwp::Grid& g, const std::vector<double>& rho,
                                   const std::vector<std::vector<double>>& u) {
  auto s = dwp::FluidState::zeros(g);
  s.rho = rho;
  for (int a = 0; a < g.dim; ++a) {
    for (std::size_t c = 0; c < rho.size(); ++c) s.mom[a][c] = rho[c] * u[a][c];
  }
  return s;
}

/// Random rho in [lo, hi] and u in [-amp, amp] outside a zero margin.
inline dwp::FluidState random_state(const dwp::Grid& g, unsigned seed, double lo = 0.5, double hi = 1.5,
                                    double amp = 0.9) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> rho_d(lo, hi);
  std::uniform_real_distribution<double> u_d(-amp, amp);
  auto s = dwp::FluidState::zeros(g);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    if (g.boundary == dwp::Boundary::zero_margin && g.in_margin(g.coords(c))) continue;
    s.rho[c] = rho_d(gen);
    for (int a = 0; a < g.dim; ++a) s.mom[a][c] = s.rho[c] * u_d(gen);
  }
  return s;
}

inline double sum(const std::vector<double>& v) {
  double t = 0.0;
  for (double x : v) t += x;
  return t;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing_util
