#include "dwp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dwp {

Diagnostics diagnostics(const FluidState& state, const Background& bg, double t) {
  Diagnostics d;
  const std::size_t n = state.rho.size();
  if (n == 0) return d;

  // Welford running mean / variance in storage order.
  double sum = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    const double r = state.rho[c];
    sum += r;
    const double delta = r - mean;
    mean += delta / static_cast<double>(c + 1);
    m2 += delta * (r - mean);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }

  const double a = bg.scale(t);
  const double vol = state.grid.cell_volume();
  d.mass = a * a * a * vol * sum;
  for (int ax = 0; ax < state.grid.dim; ++ax) {
    double s = 0.0;
    for (double m : state.mom[ax]) s += m;
    d.momentum[ax] = a * a * a * a * vol * s;
  }
  d.max_rho = hi;
  d.min_rho = lo;
  const double var = m2 / static_cast<double>(n);
  d.contrast = mean > 0.0 ? std::sqrt(std::max(var, 0.0)) / mean : 0.0;
  return d;
}

}  // namespace dwp
