#include "dwp/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "dwp/errors.hpp"

namespace dwp::transport {

double overlap_L(double a, double b) noexcept {
  return std::max(0.0, std::min(1.0, b) - std::max(0.0, a));
}

double overlap_A(double a, double b) noexcept {
  return overlap_L(a, 1.0 + a) * overlap_L(b, 1.0 + b);
}

double overlap_V(double a, double b, double c) noexcept {
  return overlap_L(a, 1.0 + a) * overlap_L(b, 1.0 + b) * overlap_L(c, 1.0 + c);
}

double max_speed(const FluidState& s) noexcept {
  double m = 0.0;
  for (int ax = 0; ax < s.dim(); ++ax) {
    for (std::size_t c = 0; c < s.size(); ++c) m = std::max(m, std::abs(s.velocity(ax, c)));
  }
  return m;
}

double admissible_ratio(const FluidState& s, double speed_factor, double safety) noexcept {
  const double v = max_speed(s) * std::abs(speed_factor);
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return safety / v;
}

namespace {

void require_positive_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::parameter, "CFL ratio r must be positive");
}

void require_dim(const FluidState& s, int dim, const char* name) {
  if (s.dim() != dim) {
    throw Error(ErrorKind::parameter, std::string(name) + " called on a " + std::to_string(s.dim()) + "D state");
  }
}

[[noreturn]] void cfl_violation(double value, std::size_t cell, int axis) {
  std::ostringstream os;
  os.precision(17);
  os << "CFL violated: |displacement| = " << value << " cells > 1 at cell " << cell << " axis " << axis;
  throw Error(ErrorKind::cfl, os.str());
}

// w[ax][3*cell + (k+1)]: share of donor `cell` landing in the cell at offset k along ax.
std::array<std::vector<double>, 3> donor_weights(const Grid& g, const Displacement& disp) {
  std::array<std::vector<double>, 3> w;
  const std::size_t n = g.cells();
  for (int ax = 0; ax < g.dim; ++ax) {
    const auto& d = disp.cells[ax];
    if (d.size() != n) throw Error(ErrorKind::parameter, "displacement field does not match grid");
    w[ax].resize(3 * n);
    for (std::size_t c = 0; c < n; ++c) {
      const double x = d[c];
      if (!(std::abs(x) <= 1.0)) cfl_violation(std::abs(x), c, ax);
      // destination at offset k sees the donor translated to [-k + x, 1 - k + x]
      w[ax][3 * c + 0] = overlap_L(1.0 + x, 2.0 + x);
      w[ax][3 * c + 1] = overlap_L(x, 1.0 + x);
      w[ax][3 * c + 2] = overlap_L(-1.0 + x, x);
    }
  }
  return w;
}

FluidState with_fields(const FluidState& like, std::vector<std::vector<double>>&& fields) {
  FluidState out;
  out.grid = like.grid;
  out.floor = like.floor;
  out.rho = std::move(fields[0]);
  for (int ax = 0; ax < like.dim(); ++ax) out.mom[ax] = std::move(fields[1 + ax]);
  return out;
}

// Scaled overlap update shared by every transport variant.
FluidState transport_update(const FluidState& s, const Displacement& disp, double rho_scale, double mom_scale) {
  std::vector<double> rho(s.rho.size());
  for (std::size_t c = 0; c < rho.size(); ++c) rho[c] = s.rho[c] * rho_scale;
  std::array<std::vector<double>, 3> mom;
  for (int ax = 0; ax < s.dim(); ++ax) {
    mom[ax].resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) mom[ax][c] = s.mom[ax][c] * mom_scale;
  }
  std::vector<const std::vector<double>*> fields{&rho};
  for (int ax = 0; ax < s.dim(); ++ax) fields.push_back(&mom[ax]);
  FluidState out = with_fields(s, project(s.grid, disp, fields));
  apply_boundary(out);
  return out;
}

Displacement velocity_displacement(const FluidState& s, double scale) {
  Displacement d;
  for (int ax = 0; ax < s.dim(); ++ax) {
    d.cells[ax].resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) d.cells[ax][c] = s.velocity(ax, c) * scale;
  }
  return d;
}

}  // namespace

std::vector<std::vector<double>> project(const Grid& g, const Displacement& disp,
                                         std::span<const std::vector<double>* const> fields) {
  const auto w = donor_weights(g, disp);
  const std::size_t nf = fields.size();
  std::vector<std::vector<double>> out(nf, std::vector<double>(g.cells(), 0.0));
  for (const auto* f : fields) {
    if (f->size() != g.cells()) throw Error(ErrorKind::parameter, "field does not match grid");
  }

  const bool ghost = g.boundary == Boundary::outflow;
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  for (int ax = 0; ax < g.dim; ++ax) {
    lo[ax] = -1;
    hi[ax] = 1;
  }

  std::vector<double> acc(nf);
  for (int i = 0; i < g.n[0]; ++i) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int k = 0; k < g.n[2]; ++k) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int oi = lo[0]; oi <= hi[0]; ++oi) {
          for (int oj = lo[1]; oj <= hi[1]; ++oj) {
            for (int ok = lo[2]; ok <= hi[2]; ++ok) {
              std::array<int, 3> src{i + oi, j + oj, k + ok};
              bool outside = false;
              for (int ax = 0; ax < g.dim; ++ax) {
                if (src[ax] < 0 || src[ax] >= g.n[ax]) {
                  outside = true;
                  src[ax] = std::clamp(src[ax], 0, g.n[ax] - 1);
                }
              }
              if (outside && !ghost) continue;
              const std::size_t c = g.index(src[0], src[1], src[2]);
              // donor at offset o sends to the cell at offset -o from itself
              double weight = w[0][3 * c + (1 - oi)];
              if (g.dim > 1) weight *= w[1][3 * c + (1 - oj)];
              if (g.dim > 2) weight *= w[2][3 * c + (1 - ok)];
              if (weight == 0.0) continue;
              for (std::size_t f = 0; f < nf; ++f) acc[f] += (*fields[f])[c] * weight;
            }
          }
        }
        const std::size_t dst = g.index(i, j, k);
        for (std::size_t f = 0; f < nf; ++f) out[f][dst] = acc[f];
      }
    }
  }
  return out;
}

void apply_boundary(FluidState& s) {
  const Grid& g = s.grid;
  if (g.boundary != Boundary::zero_margin || g.margin == 0) return;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (!g.in_margin(g.coords(c))) continue;
    s.rho[c] = 0.0;
    for (int ax = 0; ax < g.dim; ++ax) s.mom[ax][c] = 0.0;
  }
}

FluidState step(const FluidState& s, double r) {
  require_positive_ratio(r);
  return transport_update(s, velocity_displacement(s, r), 1.0, 1.0);
}

FluidState step_1d(const FluidState& s, double r) {
  require_dim(s, 1, "step_1d");
  return step(s, r);
}

FluidState step_2d(const FluidState& s, double r) {
  require_dim(s, 2, "step_2d");
  return step(s, r);
}

FluidState step_3d(const FluidState& s, double r) {
  require_dim(s, 3, "step_3d");
  return step(s, r);
}

FluidState step_expanding(const FluidState& s, const Background& bg, double t_n, double r,
                          double speed_factor) {
  require_positive_ratio(r);
  const double t_n1 = t_n + r * s.grid.h;
  const double ratio = bg.scale(t_n) / bg.scale(t_n1);
  const double decay3 = ratio * ratio * ratio;
  const double decay4 = decay3 * ratio;
  // comoving_displacement(u) / h = u * r * factor
  const double factor = displacement_factor(bg, t_n, t_n1);
  Displacement d;
  for (int ax = 0; ax < s.dim(); ++ax) {
    d.cells[ax].resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) {
      d.cells[ax][c] = s.velocity(ax, c) * r * factor * speed_factor;
    }
  }
  return transport_update(s, d, decay3, decay4);
}

FluidState step_1d_expanding(const FluidState& s, const Background& bg, double t_n, double r) {
  require_dim(s, 1, "step_1d_expanding");
  return step_expanding(s, bg, t_n, r);
}

FluidState translate_left(const FluidState& s, int cells) {
  const Grid& g = s.grid;
  FluidState out = FluidState::zeros(g);
  out.floor = s.floor;
  const std::size_t stride = static_cast<std::size_t>(g.n[1]) * g.n[2];
  for (int i = 0; i < g.n[0]; ++i) {
    int src = i + cells;
    if (src < 0 || src >= g.n[0]) {
      if (g.boundary != Boundary::outflow) continue;
      src = std::clamp(src, 0, g.n[0] - 1);
    }
    for (std::size_t t = 0; t < stride; ++t) {
      const std::size_t dst_c = static_cast<std::size_t>(i) * stride + t;
      const std::size_t src_c = static_cast<std::size_t>(src) * stride + t;
      out.rho[dst_c] = s.rho[src_c];
      for (int ax = 0; ax < g.dim; ++ax) out.mom[ax][dst_c] = s.mom[ax][src_c];
    }
  }
  apply_boundary(out);
  return out;
}

FluidState step_shifted(const FluidState& s, const ShiftParams& shift, double r, long step_index) {
  require_positive_ratio(r);
  if (!(shift.c_shift >= 0.0)) throw Error(ErrorKind::parameter, "shift speed must be >= 0");
  double min_u = std::numeric_limits<double>::infinity();
  for (int ax = 0; ax < s.dim(); ++ax) {
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (s.defined(c)) min_u = std::min(min_u, s.velocity(ax, c));
    }
  }
  if (min_u + shift.c_shift < 0.0) {
    throw Error(ErrorKind::parameter, "shift speed too small: some U + c < 0");
  }
  if (shift.reindex_every_two && std::abs(r * shift.c_shift - 0.5) > 1e-12) {
    throw Error(ErrorKind::parameter, "reindexing every two steps needs r * c_shift = 1/2");
  }
  Displacement d;
  for (int ax = 0; ax < s.dim(); ++ax) {
    d.cells[ax].resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) {
      d.cells[ax][c] = r * (s.velocity(ax, c) + shift.c_shift);
    }
  }
  FluidState out = transport_update(s, d, 1.0, 1.0);
  if (shift.reindex_every_two && step_index % 2 == 1) out = translate_left(out, 1);
  return out;
}

FluidState leroux_step(const FluidState& s, double r) {
  require_dim(s, 1, "leroux_step");
  require_positive_ratio(r);
  const Grid& g = s.grid;
  const int n = g.n[0];
  const bool ghost = g.boundary == Boundary::outflow;

  for (int i = 0; i < n; ++i) {
    const double v = std::abs(s.velocity(0, i)) * r;
    if (!(v <= 1.0)) cfl_violation(v, static_cast<std::size_t>(i), 0);
  }

  auto cell = [&](int i, double& rho, double& u) {
    if (i < 0 || i >= n) {
      if (!ghost) {
        rho = 0.0;
        u = 0.0;
        return;
      }
      i = std::clamp(i, 0, n - 1);
    }
    rho = s.rho[i];
    u = s.velocity(0, i);
  };

  // flux_rho[i] and flux_mom[i] belong to interface i - 1/2, i = 0..n.
  std::vector<double> flux_rho(n + 1);
  std::vector<double> flux_mom(n + 1);
  for (int f = 0; f <= n; ++f) {
    double ra, ua, rb, ub;
    cell(f - 1, ra, ua);
    cell(f, rb, ub);
    const bool pos_a = ua >= 0.0;
    const bool pos_b = ub >= 0.0;
    double rh = 0.0;
    double uh = 0.0;
    if (pos_a && pos_b) {
      rh = ra;
      uh = ua;
    } else if (pos_a && !pos_b) {
      const double w = std::sqrt(ra) * ua + std::sqrt(rb) * ub;
      if (w >= 0.0) {
        rh = ra;
        uh = ua;
      } else {
        rh = rb;
        uh = ub;
      }
    } else if (!pos_a && pos_b) {
      rh = 0.0;
      uh = 0.0;
    } else {
      rh = rb;
      uh = ub;
    }
    flux_rho[f] = rh * uh;
    flux_mom[f] = rh * uh * uh;
  }

  FluidState out = FluidState::zeros(g);
  out.floor = s.floor;
  for (int i = 0; i < n; ++i) {
    out.rho[i] = s.rho[i] - r * flux_rho[i + 1] + r * flux_rho[i];
    out.mom[0][i] = s.mom[0][i] - r * flux_mom[i + 1] + r * flux_mom[i];
  }
  apply_boundary(out);
  return out;
}

FluidState viscosity_step(const FluidState& s, double eps, double r) {
  require_dim(s, 1, "viscosity_step");
  if (!(eps >= 0.0)) throw Error(ErrorKind::parameter, "viscosity must be >= 0");
  const double nu = eps * r / s.grid.h;  // eps * dt / h^2
  if (!(nu <= 0.5)) {
    throw Error(ErrorKind::cfl, "explicit diffusion unstable: eps * dt / h^2 = " + std::to_string(nu) + " > 1/2");
  }
  FluidState out = step_1d(s, r);
  if (eps == 0.0) return out;

  const int n = s.grid.n[0];
  const bool ghost = s.grid.boundary == Boundary::outflow;
  auto diffuse = [&](std::vector<double>& f) {
    std::vector<double> next(f.size());
    for (int i = 0; i < n; ++i) {
      const double left = i > 0 ? f[i - 1] : (ghost ? f[0] : 0.0);
      const double right = i + 1 < n ? f[i + 1] : (ghost ? f[n - 1] : 0.0);
      next[i] = f[i] + nu * (right - 2.0 * f[i] + left);
    }
    f = std::move(next);
  };
  diffuse(out.rho);
  diffuse(out.mom[0]);
  apply_boundary(out);
  return out;
}

PeakBlock peak_block(std::span<const double> rho, double fraction) {
  PeakBlock block;
  if (rho.empty()) return block;
  const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (!(total > 0.0)) return block;
  const auto peak = std::max_element(rho.begin(), rho.end()) - rho.begin();
  long lo = peak;
  long hi = peak;  // inclusive
  double held = rho[peak];
  const long n = static_cast<long>(rho.size());
  while (held < fraction * total && (lo > 0 || hi < n - 1)) {
    const double left = lo > 0 ? rho[lo - 1] : -1.0;
    const double right = hi < n - 1 ? rho[hi + 1] : -1.0;
    if (right > left) {
      held += right;
      ++hi;
    } else {
      held += left;
      --lo;
    }
  }
  block.lo = static_cast<int>(lo);
  block.hi = static_cast<int>(hi);
  block.peak = static_cast<int>(peak);
  block.mass_fraction = held / total;
  return block;
}

int peak_support(std::span<const double> rho, double fraction) { return peak_block(rho, fraction).cells(); }

}  // namespace dwp::transport
