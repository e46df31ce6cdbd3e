#include "dwp/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dwp/errors.hpp"
#include "spectral.hpp"

namespace dwp::gravity {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void remove_mean(std::vector<double>& v) {
  if (v.empty()) return;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

// out = -Lap(phi) * h^2, i.e. the SPD (semi-definite when periodic) stencil matrix.
void apply_neg_stencil(const Grid& g, std::span<const double> phi, std::span<double> out, bool periodic) {
  const int nx = g.n[0], ny = g.n[1], nz = g.n[2];
  const std::size_t sx = static_cast<std::size_t>(ny) * nz, sy = nz;
  const double diag = 2.0 * g.dim;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const std::size_t c = g.index(i, j, k);
        double nb = 0.0;
        // axis 0
        if (i > 0) nb += phi[c - sx]; else if (periodic) nb += phi[c + (nx - 1) * sx];
        if (i < nx - 1) nb += phi[c + sx]; else if (periodic) nb += phi[c - (nx - 1) * sx];
        if (g.dim > 1) {
          if (j > 0) nb += phi[c - sy]; else if (periodic) nb += phi[c + (ny - 1) * sy];
          if (j < ny - 1) nb += phi[c + sy]; else if (periodic) nb += phi[c - (ny - 1) * sy];
        }
        if (g.dim > 2) {
          if (k > 0) nb += phi[c - 1]; else if (periodic) nb += phi[c + (nz - 1)];
          if (k < nz - 1) nb += phi[c + 1]; else if (periodic) nb += phi[c - (nz - 1)];
        }
        out[c] = diag * phi[c] - nb;
      }
    }
  }
}

std::vector<double> solve_tridiagonal(const Grid& g, std::span<const double> source) {
  // (phi[i-1] - 2 phi[i] + phi[i+1]) / h^2 = f[i], phi[-1] = phi[n] = 0
  const int n = g.n[0];
  const double h2 = g.h * g.h;
  std::vector<double> cp(n), dp(n), phi(n);
  double b = -2.0;
  cp[0] = 1.0 / b;
  dp[0] = source[0] * h2 / b;
  for (int i = 1; i < n; ++i) {
    const double m = -2.0 - cp[i - 1];
    cp[i] = 1.0 / m;
    dp[i] = (source[i] * h2 - dp[i - 1]) / m;
  }
  phi[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i) phi[i] = dp[i] - cp[i] * phi[i + 1];
  return phi;
}

double relative_residual(const Grid& g, std::span<const double> phi, std::span<const double> source,
                         PoissonBoundary bc) {
  const auto lap = laplacian(g, phi, bc);
  double num = 0.0;
  for (std::size_t i = 0; i < lap.size(); ++i) {
    const double d = lap[i] - source[i];
    num += d * d;
  }
  const double den = norm(source);
  return den > 0.0 ? std::sqrt(num) / den : std::sqrt(num);
}

}  // namespace

std::vector<double> laplacian(const Grid& grid, std::span<const double> phi, PoissonBoundary boundary) {
  std::vector<double> out(grid.cells());
  apply_neg_stencil(grid, phi, out, boundary == PoissonBoundary::periodic);
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  for (double& x : out) x *= -inv_h2;
  return out;
}

std::vector<double> gradient(const Grid& g, std::span<const double> f, int axis, PoissonBoundary boundary) {
  std::vector<double> out(g.cells(), 0.0);
  if (axis >= g.dim) return out;
  const bool periodic = boundary == PoissonBoundary::periodic;
  std::size_t stride = 1;
  for (int a = 2; a > axis; --a) stride *= static_cast<std::size_t>(g.n[a]);
  const int n = g.n[axis];
  const double inv_h = 1.0 / g.h;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const int i = g.coords(c)[axis];
    if (i > 0 && i < n - 1) {
      out[c] = (f[c + stride] - f[c - stride]) * (0.5 * inv_h);
    } else if (periodic) {
      const std::size_t up = i < n - 1 ? c + stride : c - (n - 1) * stride;
      const std::size_t dn = i > 0 ? c - stride : c + (n - 1) * stride;
      out[c] = (f[up] - f[dn]) * (0.5 * inv_h);
    } else if (i == 0) {
      out[c] = (f[c + stride] - f[c]) * inv_h;
    } else {
      out[c] = (f[c] - f[c - stride]) * inv_h;
    }
  }
  return out;
}

Potential solve_source(const Grid& g, std::span<const double> source, const GravityParams& params,
                       std::span<const double> guess) {
  if (source.size() != g.cells()) throw Error(ErrorKind::parameter, "Poisson source does not match grid");
  if (!(params.solver_tol > 0.0)) throw Error(ErrorKind::parameter, "solver_tol must be > 0");
  const bool periodic = params.boundary == PoissonBoundary::periodic;

  Potential pot;
  pot.grid = g;
  std::vector<double> f(source.begin(), source.end());
  if (periodic) remove_mean(f);

  const double f_norm = norm(f);
  if (f_norm == 0.0) {
    pot.phi.assign(g.cells(), 0.0);
    return pot;
  }

  if (g.dim == 1 && !periodic) {
    pot.phi = solve_tridiagonal(g, f);
    pot.residual = relative_residual(g, pot.phi, f, params.boundary);
    return pot;
  }

  // CG on A phi = b with A = -h^2 Lap, b = -h^2 f.
  const std::size_t n = g.cells();
  const double h2 = g.h * g.h;
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = -h2 * f[i];
  const double b_norm = norm(b);

  std::vector<double> x(n, 0.0);
  if (guess.size() == n) {
    x.assign(guess.begin(), guess.end());
    if (periodic) remove_mean(x);
  }
  // Preconditioned CG. The preconditioner inverts the same stencil with fast
  // transforms, so convergence normally takes one or two iterations; the
  // residual test below is the same either way.
  std::vector<double> r(n), z(n), p(n), ap(n);
  auto precondition = [&] {
    if (params.preconditioned) {
      detail::apply_inverse(g, periodic, r, z);
    } else {
      z = r;
    }
    if (periodic) remove_mean(z);
  };
  apply_neg_stencil(g, x, ap, periodic);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  if (periodic) remove_mean(r);
  precondition();
  p = z;
  double rz = dot(r, z);
  double rr = dot(r, r);
  const double target = params.solver_tol * b_norm;

  int it = 0;
  while (std::sqrt(rr) > target) {
    if (it >= params.max_iter) {
      std::ostringstream os;
      os << "Poisson solver did not converge in " << params.max_iter
         << " iterations (relative residual " << std::sqrt(rr) / b_norm << ")";
      throw Error(ErrorKind::solver, os.str());
    }
    apply_neg_stencil(g, p, ap, periodic);
    const double alpha = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    if (periodic) remove_mean(r);
    rr = dot(r, r);
    ++it;
    if (std::sqrt(rr) <= target) break;
    precondition();
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_new;
  }
  if (periodic) remove_mean(x);
  pot.phi = std::move(x);
  pot.iterations = it;
  pot.residual = std::sqrt(rr) / b_norm;
  return pot;
}

Potential solve_poisson(const Grid& g, std::span<const double> rho_total, const GravityParams& params,
                        double a, std::span<const double> guess) {
  if (rho_total.size() != g.cells()) throw Error(ErrorKind::parameter, "density does not match grid");
  for (double r : rho_total) {
    if (!(r >= 0.0)) throw Error(ErrorKind::domain, "Poisson source density must be >= 0");
  }
  const double k = params.source_factor * params.G * a * a;
  std::vector<double> source(rho_total.size());
  for (std::size_t i = 0; i < source.size(); ++i) source[i] = k * rho_total[i];
  return solve_source(g, source, params, guess);
}

namespace {

// Pressure force per unit volume in face form: -(p_{i+1/2} - p_{i-1/2}) / h
// with face values averaged from both sides and capped at twice the smaller
// side. The cap only acts where neighbours differ by more than a factor 3 and
// keeps thin cells at a vacuum edge from being blown away. A face touching a
// vacuum cell carries no pressure and a domain face is extrapolated linearly,
// so smooth interior data see the centered difference and the sum over cells
// telescopes.
std::vector<double> pressure_force(const FluidState& s, std::span<const double> p, int axis,
                                   PoissonBoundary boundary) {
  const Grid& g = s.grid;
  std::vector<double> out(g.cells(), 0.0);
  const bool periodic = boundary == PoissonBoundary::periodic;
  std::size_t stride = 1;
  for (int a = 2; a > axis; --a) stride *= static_cast<std::size_t>(g.n[a]);
  const int n = g.n[axis];
  auto face = [&](std::size_t lo, std::size_t hi) {
    if (!s.defined(lo) || !s.defined(hi)) return 0.0;
    return std::min(0.5 * (p[lo] + p[hi]), 2.0 * std::min(p[lo], p[hi]));
  };
  for (std::size_t c = 0; c < g.cells(); ++c) {
    if (!s.defined(c)) continue;
    const int i = g.coords(c)[axis];
    double up, dn;
    if (i < n - 1) {
      up = face(c, c + stride);
    } else if (periodic) {
      up = face(c, c - (n - 1) * stride);
    } else {
      up = n > 1 && s.defined(c - stride) ? 0.5 * (3.0 * p[c] - p[c - stride]) : p[c];
    }
    if (i > 0) {
      dn = face(c - stride, c);
    } else if (periodic) {
      dn = face(c + (n - 1) * stride, c);
    } else {
      dn = n > 1 && s.defined(c + stride) ? 0.5 * (3.0 * p[c] - p[c + stride]) : p[c];
    }
    out[c] = -(up - dn) / g.h;
  }
  return out;
}

}  // namespace

FluidState newtonian_kick(const FluidState& s, const Potential& phi, const StateLaw& law, double a, double dt,
                          PoissonBoundary boundary) {
  const Grid& g = s.grid;
  if (phi.phi.size() != g.cells()) throw Error(ErrorKind::parameter, "potential does not match grid");
  FluidState out = s;
  std::vector<double> p;
  const bool has_pressure = law.kind != StateLaw::Kind::pressureless;
  if (has_pressure) {
    p.resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) p[c] = law.pressure(s.rho[c]);
  }
  for (int ax = 0; ax < g.dim; ++ax) {
    const auto gphi = gradient(g, phi.phi, ax, boundary);
    std::vector<double> fp;
    if (has_pressure) fp = pressure_force(s, p, ax, boundary);
    for (std::size_t c = 0; c < s.size(); ++c) {
      double force = -(s.rho[c] / a) * gphi[c];
      if (has_pressure) force += fp[c] / a;
      out.mom[ax][c] += dt * force;
    }
  }
  return out;
}

FluidState relativistic_kick(const FluidState& s, const Potential& phi, double c_light, double a, double dt,
                             PoissonBoundary boundary) {
  const Grid& g = s.grid;
  if (phi.phi.size() != g.cells()) throw Error(ErrorKind::parameter, "potential does not match grid");
  FluidState out = s;
  const double pressure_coef = c_light * c_light / (4.0 * a);
  for (int ax = 0; ax < g.dim; ++ax) {
    const auto gphi = gradient(g, phi.phi, ax, boundary);
    const auto grho = gradient(g, s.rho, ax, boundary);
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (!s.defined(c)) continue;
      const double u = s.mom[ax][c] / s.rho[c];
      const double du = -pressure_coef * grho[c] / s.rho[c] - gphi[c] / a;
      out.mom[ax][c] = s.rho[c] * (u + dt * du);
    }
  }
  return out;
}

}  // namespace dwp::gravity
