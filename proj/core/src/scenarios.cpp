#include "dwp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dwp/errors.hpp"
#include "dwp/rng.hpp"
#include "dwp/transport.hpp"

namespace dwp::scenarios {

namespace {

constexpr double kVacuum = 1e-300;

struct PresetInfo {
  Preset preset;
  const char* name;
  int dim;
};

constexpr PresetInfo kPresets[] = {
    {Preset::riemann_1d, "riemann_1d", 1},
    {Preset::dust_collision, "dust_collision", 1},
    {Preset::chertock_test4, "chertock_test4", 1},
    {Preset::gravity_static_1d, "gravity_static_1d", 1},
    {Preset::gravity_static_2d, "gravity_static_2d", 2},
    {Preset::newtonian_expanding_2d, "newtonian_expanding_2d", 2},
    {Preset::meszaros_freeze, "meszaros_freeze", 2},
    {Preset::jeans_sweep, "jeans_sweep", 2},
    {Preset::relativistic_2d, "relativistic_2d", 2},
    {Preset::multifluid_equivalence, "multifluid_equivalence", 2},
    {Preset::multifluid_decoupling, "multifluid_decoupling", 2},
    {Preset::expanding_riemann_delta, "expanding_riemann_delta", 1},
};

// True for cells that receive random data: outside the zero margin and the
// extra vacuum band.
bool filled(const Grid& g, std::size_t c, int band) {
  const auto ijk = g.coords(c);
  const int edge = (g.boundary == Boundary::zero_margin ? g.margin : 0) + band;
  for (int a = 0; a < g.dim; ++a) {
    if (ijk[a] < edge || ijk[a] >= g.n[a] - edge) return false;
  }
  return true;
}

// rho uniform in [rho_lo, rho_hi), each velocity component uniform in
// [-amp, amp). Variates are indexed by cell so the field does not depend
// on traversal order.
FluidState random_state(const Grid& g, const Knobs& k, std::uint64_t fluid) {
  FluidState s = FluidState::zeros(g);
  const CounterRng rho_rng(k.seed, 1 + 8 * fluid);
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (filled(g, c, k.vacuum_band)) s.rho[c] = rho_rng.uniform(c, k.rho_lo, k.rho_hi);
  }
  const double amp = fluid == 1 ? k.u_amp2 : k.u_amp;
  for (int a = 0; a < g.dim; ++a) {
    const CounterRng u_rng(k.seed, 2 + a + 8 * fluid);
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (s.rho[c] > 0.0) s.mom[a][c] = s.rho[c] * u_rng.uniform(c, -amp, amp);
    }
  }
  s.reset_floor();
  return s;
}

// Gaussian peaks at rest, centers drawn in the middle 60% of each axis and
// at least 0.2 of the domain apart (rejection sampling on the counter stream).
FluidState peak_state(const Grid& g, const Knobs& k, std::uint64_t fluid) {
  FluidState s = FluidState::zeros(g);
  const CounterRng pos(k.seed, 5 + 8 * fluid);
  std::vector<std::array<double, 3>> centers;
  const double min_sep = 0.2 * g.n[0] * g.h;
  std::uint64_t draw = 0;
  for (int attempt = 0; static_cast<int>(centers.size()) < k.peaks && attempt < 1000; ++attempt) {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) {
      const double lo = g.origin[a], len = g.n[a] * g.h;
      c[a] = pos.uniform(draw++, lo + 0.2 * len, lo + 0.8 * len);
    }
    bool clear = true;
    for (const auto& o : centers) {
      double d2 = 0.0;
      for (int a = 0; a < g.dim; ++a) d2 += (c[a] - o[a]) * (c[a] - o[a]);
      clear = clear && d2 >= min_sep * min_sep;
    }
    if (clear) centers.push_back(c);
  }
  const double inv = 1.0 / (2.0 * k.peak_width * k.peak_width);
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (!filled(g, c, k.vacuum_band)) continue;
    const auto ijk = g.coords(c);
    double v = 0.0;
    for (const auto& ctr : centers) {
      double d2 = 0.0;
      for (int a = 0; a < g.dim; ++a) {
        const double d = g.center(a, ijk[a]) - ctr[a];
        d2 += d * d;
      }
      v += std::exp(-d2 * inv);
    }
    s.rho[c] = v;
  }
  s.reset_floor();
  return s;
}

void scale_state(FluidState& s, double factor) {
  for (double& v : s.rho) v *= factor;
  for (int a = 0; a < s.dim(); ++a) {
    for (double& v : s.mom[a]) v *= factor;
  }
  s.reset_floor();
}

double total(const FluidState& s) {
  double m = 0.0;
  for (double v : s.rho) m += v;
  return m;
}

// Two fluids with masses in the ratio fraction : 1 - fraction, the total
// matching the nominal single-fluid random field.
void apportion(FluidState& first, FluidState& second, const Knobs& k) {
  if (!(k.fraction > 0.0 && k.fraction < 1.0)) {
    throw Error(ErrorKind::config, "fraction must lie strictly between 0 and 1");
  }
  const double nominal = 0.5 * (k.rho_lo + k.rho_hi);
  double cells = 0.0;
  for (std::size_t c = 0; c < first.size(); ++c) cells += filled(first.grid, c, k.vacuum_band) ? 1.0 : 0.0;
  const double target = nominal * cells;
  scale_state(first, k.fraction * target / total(first));
  scale_state(second, (1.0 - k.fraction) * target / total(second));
}

Fluid newtonian_fluid(std::string name, double kappa, FluidState s) {
  Fluid f;
  f.name = std::move(name);
  f.model = FluidModel::newtonian;
  f.law = kappa > 0.0 ? StateLaw::linear(kappa) : StateLaw::pressureless();
  f.state = std::move(s);
  return f;
}

Fluid radiation_fluid(std::string name, double c_light, FluidState s) {
  Fluid f;
  f.name = std::move(name);
  f.model = FluidModel::relativistic;
  f.law = StateLaw::radiation(c_light);
  f.state = std::move(s);
  return f;
}

FluidState riemann_state(const Grid& g, const riemann::RiemannData& d) {
  if (!(d.rho_l > 0.0 && d.rho_r > 0.0)) throw Error(ErrorKind::config, "riemann densities must be positive");
  FluidState s = FluidState::zeros(g);
  for (int i = 0; i < g.n[0]; ++i) {
    const bool left = g.center(0, i) < 0.0;
    s.rho[i] = left ? d.rho_l : d.rho_r;
    s.mom[0][i] = left ? d.rho_l * d.u_l : d.rho_r * d.u_r;
  }
  s.reset_floor();
  return s;
}

// Length of [lo, hi] ∩ [a, b].
double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

}  // namespace

FluidState random_field(const Grid& grid, const Knobs& knobs, std::uint64_t fluid) {
  return random_state(grid, knobs, fluid);
}
FluidState peak_field(const Grid& grid, const Knobs& knobs, std::uint64_t fluid) {
  return peak_state(grid, knobs, fluid);
}
FluidState riemann_field(const Grid& grid, const riemann::RiemannData& data) { return riemann_state(grid, data); }

Background expansion_background(const Knobs& k, const Grid& g) {
  if (k.expansion == 1.0) return Background::make_static();
  const double t_end = static_cast<double>(k.steps) * k.r * g.h;
  if (!(t_end > 0.0)) throw Error(ErrorKind::config, "an expanding preset needs steps > 0");
  return Background::power_law_reaching(k.expansion, t_end);
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = [] {
    std::vector<Preset> v;
    for (const auto& i : kPresets) v.push_back(i.preset);
    return v;
  }();
  return presets;
}

const char* to_string(Preset preset) noexcept {
  for (const auto& i : kPresets) {
    if (i.preset == preset) return i.name;
  }
  return "unknown";
}

Preset preset_from_string(std::string_view name) {
  for (const auto& i : kPresets) {
    if (name == i.name) return i.preset;
  }
  throw Error(ErrorKind::config, "preset: unknown preset '" + std::string(name) + "'");
}

int preset_dim(Preset preset) noexcept {
  for (const auto& i : kPresets) {
    if (i.preset == preset) return i.dim;
  }
  return 0;
}

ModelKind preset_model(Preset preset) noexcept {
  switch (preset) {
    case Preset::newtonian_expanding_2d:
    case Preset::meszaros_freeze:
    case Preset::jeans_sweep:
    case Preset::expanding_riemann_delta:
      return ModelKind::newtonian_expanding;
    case Preset::relativistic_2d:
      return ModelKind::relativistic_expanding;
    case Preset::multifluid_equivalence:
    case Preset::multifluid_decoupling:
      return ModelKind::multifluid;
    default:
      return ModelKind::pressureless_static_gravity;
  }
}

Knobs default_knobs(Preset preset) {
  Knobs k;
  switch (preset) {
    case Preset::riemann_1d:
      k.r = 0.5;
      k.steps = 50;
      break;
    case Preset::dust_collision:
      k.r = 1.0;
      k.steps = 300;
      break;
    case Preset::chertock_test4:
      k.r = 1.0;
      k.steps = 100;
      break;
    case Preset::gravity_static_1d:
      k.r = 0.25;
      k.steps = 400;
      k.G = 1.0;
      break;
    case Preset::gravity_static_2d:
      k.r = 0.5;
      k.steps = 100;
      k.G = 1.0;
      break;
    case Preset::newtonian_expanding_2d:
      k.r = 0.5;
      k.steps = 100;
      k.G = 1.0;
      k.expansion = 3.5;
      break;
    case Preset::meszaros_freeze:
      k.r = 0.5;
      k.steps = 100;
      k.G = 1.0;
      k.expansion = 128.0;
      k.structure_steps = 100;
      break;
    case Preset::jeans_sweep:
      // Explicit pressure kicks need a small r once kappa reaches 10.
      k.r = 0.02;
      k.steps = 100;
      k.G = 10.0;
      k.expansion = 3.5;
      k.kappa = 1.0;
      break;
    case Preset::relativistic_2d:
      k.r = 0.5;
      k.steps = 100;
      k.G = 1.0;
      k.expansion = 3.5;
      k.c_light = 0.01;
      break;
    case Preset::multifluid_equivalence:
      k.r = 0.1;
      k.steps = 100;
      k.G = 1.0;
      k.expansion = 3.5;
      k.c_light = 1.0;
      k.fraction = 0.5;
      k.u_amp2 = 0.0;
      break;
    case Preset::multifluid_decoupling:
      k.r = 0.2;
      k.steps = 100;
      k.G = 2.0;
      k.fraction = 0.8;
      k.u_amp2 = 0.1;
      break;
    case Preset::expanding_riemann_delta:
      k.r = 0.5;
      k.steps = 100;
      k.expansion = 3.5;
      k.riemann = {1.0, 1.0, 1.0, -1.0};
      break;
  }
  return k;
}

Grid default_grid(Preset preset) {
  switch (preset) {
    case Preset::riemann_1d:
    case Preset::expanding_riemann_delta:
      return Grid::line(200, 0.01, Boundary::outflow, 2, -1.0);
    case Preset::dust_collision:
      return Grid::line(450, 0.02, Boundary::zero_margin, 2, -4.5);
    case Preset::chertock_test4:
      return Grid::line(200, 0.01, Boundary::zero_margin, 2, 0.0);
    case Preset::gravity_static_1d:
      return Grid::line(400, 1.0 / 400.0, Boundary::zero_margin, 2, 0.0);
    case Preset::gravity_static_2d:
    case Preset::meszaros_freeze:
    case Preset::multifluid_decoupling:
      return Grid::make(2, {200, 200, 1}, 1.0 / 200.0, Boundary::zero_margin, 2);
    default:
      // Random fields with pressure run on outflow grids: a zero margin would
      // put a vacuum edge next to the data.
      return Grid::make(2, {200, 200, 1}, 1.0 / 200.0, Boundary::outflow, 2);
  }
}

Scenario generate(Preset preset) { return generate(preset, default_knobs(preset), default_grid(preset)); }

Scenario generate(Preset preset, const Knobs& knobs, const Grid& grid) {
  grid.validate();
  if (grid.dim != preset_dim(preset)) {
    throw Error(ErrorKind::config, std::string("grid.dim: preset ") + to_string(preset) + " needs a " +
                                       std::to_string(preset_dim(preset)) + "D grid");
  }
  if (knobs.steps < 0) throw Error(ErrorKind::config, "steps must be >= 0");
  if (!(knobs.r > 0.0)) throw Error(ErrorKind::config, "r must be positive");
  if (!(knobs.expansion >= 1.0)) throw Error(ErrorKind::config, "expansion must be >= 1");

  Scenario sc;
  sc.preset = preset;
  sc.knobs = knobs;
  sc.params.r = knobs.r;
  sc.params.G = knobs.G;
  sc.params.poisson = knobs.poisson;
  sc.params.solver_tol = knobs.solver_tol;
  RunState& run = sc.run;
  run.bg = Background::make_static();
  const Grid& g = grid;

  switch (preset) {
    case Preset::riemann_1d:
      run.model = ModelKind::pressureless_static_gravity;
      run.fluids.push_back(newtonian_fluid("dust", 0.0, riemann_state(g, knobs.riemann)));
      break;

    case Preset::expanding_riemann_delta:
      run.model = ModelKind::newtonian_expanding;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(newtonian_fluid("dust", 0.0, riemann_state(g, knobs.riemann)));
      break;

    case Preset::dust_collision: {
      // Two clouds of width 1/9 of the domain centered at +-1/4 of it,
      // moving toward each other at unit speed.
      run.model = ModelKind::pressureless_static_gravity;
      FluidState s = FluidState::zeros(g);
      const double len = g.n[0] * g.h;
      const double mid = g.origin[0] + 0.5 * len;
      const double width = len / 9.0;
      for (int i = 0; i < g.n[0]; ++i) {
        const double x = g.center(0, i) - mid;
        if (std::abs(x + 0.25 * len) < 0.5 * width) {
          s.rho[i] = 1.0;
          s.mom[0][i] = 1.0;
        } else if (std::abs(x - 0.25 * len) < 0.5 * width) {
          s.rho[i] = 1.0;
          s.mom[0][i] = -1.0;
        } else {
          s.rho[i] = kVacuum;
        }
      }
      s.reset_floor();
      transport::apply_boundary(s);
      run.fluids.push_back(newtonian_fluid("dust", 0.0, std::move(s)));
      break;
    }

    case Preset::chertock_test4: {
      // u0 = 1 - x sends every point of the cloud to x = 1 at t = 1, with the
      // velocity changing sign across a region of varying density.
      run.model = ModelKind::pressureless_static_gravity;
      FluidState s = FluidState::zeros(g);
      for (int i = 0; i < g.n[0]; ++i) {
        const double x = g.center(0, i);
        if (x >= 0.25 && x <= 1.75) {
          s.rho[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x);
          s.mom[0][i] = s.rho[i] * (1.0 - x);
        } else {
          s.rho[i] = kVacuum;
        }
      }
      s.reset_floor();
      transport::apply_boundary(s);
      run.fluids.push_back(newtonian_fluid("dust", 0.0, std::move(s)));
      break;
    }

    case Preset::gravity_static_1d:
    case Preset::gravity_static_2d:
      run.model = ModelKind::pressureless_static_gravity;
      run.fluids.push_back(newtonian_fluid("dust", 0.0, random_state(g, knobs, 0)));
      break;

    case Preset::newtonian_expanding_2d:
    case Preset::jeans_sweep:
      run.model = ModelKind::newtonian_expanding;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(newtonian_fluid("matter", knobs.kappa, random_state(g, knobs, 0)));
      break;

    case Preset::meszaros_freeze: {
      // Structure formed beforehand by a static gravity run on the same data.
      Knobs pre = knobs;
      pre.steps = knobs.structure_steps;
      Scenario seed_run = generate(Preset::gravity_static_2d, pre, g);
      RunPlan plan;
      plan.steps = knobs.structure_steps;
      plan.diagnostics_every = 0;
      RunState formed = dwp::run(std::move(seed_run.run), seed_run.params, plan);
      FluidState s = std::move(formed.fluids.front().state);
      s.reset_floor();
      run.model = ModelKind::newtonian_expanding;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(newtonian_fluid("matter", knobs.kappa, std::move(s)));
      break;
    }

    case Preset::relativistic_2d:
      run.model = ModelKind::relativistic_expanding;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(radiation_fluid("radiation", knobs.c_light, random_state(g, knobs, 0)));
      break;

    case Preset::multifluid_equivalence: {
      FluidState matter = random_state(g, knobs, 0);
      FluidState radiation = random_state(g, knobs, 1);
      apportion(matter, radiation, knobs);
      run.model = ModelKind::multifluid;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(newtonian_fluid("matter", knobs.kappa, std::move(matter)));
      run.fluids.push_back(radiation_fluid("radiation", knobs.c_light, std::move(radiation)));
      break;
    }

    case Preset::multifluid_decoupling: {
      FluidState dark = peak_state(g, knobs, 0);
      FluidState baryon = random_state(g, knobs, 1);
      apportion(dark, baryon, knobs);
      run.model = ModelKind::multifluid;
      run.bg = expansion_background(knobs, g);
      run.fluids.push_back(newtonian_fluid("dark", 0.0, std::move(dark)));
      run.fluids.push_back(newtonian_fluid("baryon", knobs.kappa, std::move(baryon)));
      break;
    }
  }

  validate(run);
  return sc;
}

Reference reference_solution(Preset preset, const Knobs& knobs, const Grid& grid, double t) {
  if (t < 0.0) throw Error(ErrorKind::range, "reference time must be >= 0");
  Reference ref;
  switch (preset) {
    case Preset::dust_collision: {
      // Equal clouds meet in the middle and stop there; the inner edges
      // touch after travelling (1/4 - 1/18) of the domain each.
      const double len = grid.n[0] * grid.h;
      ref.summary = {{"peak_x", grid.origin[0] + 0.5 * len},
                     {"peak_mass", 2.0 * len / 9.0},
                     {"contact_t", (0.25 - 1.0 / 18.0) * len}};
      return ref;
    }
    case Preset::chertock_test4:
      ref.summary = {{"collapse_x", 1.0}, {"collapse_t", 1.0}};
      return ref;
    case Preset::riemann_1d:
    case Preset::expanding_riemann_delta:
      break;
    default:
      throw Error(ErrorKind::unsupported, std::string("no reference solution for preset ") + to_string(preset));
  }
  if (grid.dim != 1) throw Error(ErrorKind::config, "riemann references are 1D");

  const riemann::RiemannData& d = knobs.riemann;
  const Background bg = preset == Preset::riemann_1d ? Background::make_static() : expansion_background(knobs, grid);
  const int n = grid.n[0];
  ref.rho.assign(n, 0.0);
  ref.u.assign(n, std::nullopt);

  if (d.u_l < d.u_r) {
    const double a0 = bg.scale(0.0), a = bg.scale(t);
    const double decay = std::pow(a0 / a, 3);
    const double reach = a0 * bg.inverse_square_integral(0.0, t);
    const double xl = d.u_l * reach, xr = d.u_r * reach;
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double lo = grid.origin[0] + i * grid.h, hi = lo + grid.h;
      ref.rho[i] = decay * (d.rho_l * overlap(lo, hi, -inf, xl) + d.rho_r * overlap(lo, hi, xr, inf)) / grid.h;
      ref.u[i] = riemann::expanding_riemann(d, bg, t, grid.center(0, i)).u;
    }
    return ref;
  }

  if (preset != Preset::riemann_1d) {
    throw Error(ErrorKind::unsupported, "compressive expanding data has no closed-form reference");
  }
  const riemann::DeltaWave w = riemann::delta_wave(d);
  const double xc = w.c * t;
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double lo = grid.origin[0] + i * grid.h, hi = lo + grid.h;
    ref.rho[i] = (d.rho_l * overlap(lo, hi, -inf, xc) + d.rho_r * overlap(lo, hi, xc, inf)) / grid.h;
    ref.u[i] = grid.center(0, i) < xc ? d.u_l : d.u_r;
    if (xc >= lo && xc < hi) {
      ref.rho[i] += w.alpha * t / grid.h;
      ref.u[i] = w.c;
    }
  }
  ref.summary = {{"peak_x", xc}, {"peak_mass", w.alpha * t}};
  return ref;
}

}  // namespace dwp::scenarios
