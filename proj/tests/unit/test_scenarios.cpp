#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dwp/errors.hpp"
#include "dwp/scenarios.hpp"
#include "dwp/transport.hpp"
#include "helpers.hpp"

using namespace dwp;
using namespace dwp::scenarios;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::io;
}

bool same_state(const RunState& a, const RunState& b) {
  if (a.fluids.size() != b.fluids.size()) return false;
  for (std::size_t f = 0; f < a.fluids.size(); ++f) {
    if (a.fluids[f].state.rho != b.fluids[f].state.rho) return false;
    for (int ax = 0; ax < 3; ++ax) {
      if (a.fluids[f].state.mom[ax] != b.fluids[f].state.mom[ax]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("preset names round-trip") {
  CHECK(all_presets().size() == 12);
  for (Preset p : all_presets()) CHECK(preset_from_string(to_string(p)) == p);
  CHECK(kind_of([] { preset_from_string("no_such_preset"); }) == ErrorKind::config);
  CHECK(preset_dim(Preset::dust_collision) == 1);
  CHECK(preset_dim(Preset::jeans_sweep) == 2);
  CHECK(preset_model(Preset::relativistic_2d) == ModelKind::relativistic_expanding);
}

TEST_CASE("every preset generates an admissible state") {
  for (Preset p : all_presets()) {
    CAPTURE(to_string(p));
    const auto sc = generate(p);
    CHECK_NOTHROW(validate(sc.run));
    for (const auto& f : sc.run.fluids) {
      for (double r : f.state.rho) CHECK_UNARY(r >= 0.0);
    }
    CHECK(admissible_ratio(sc.run) >= sc.knobs.r);
    CHECK(sc.params.r == sc.knobs.r);
    CHECK(sc.run.model == preset_model(p));
  }
}

TEST_CASE("generation is deterministic in the seed") {
  for (Preset p : {Preset::gravity_static_2d, Preset::multifluid_decoupling, Preset::relativistic_2d}) {
    auto k = default_knobs(p);
    const auto a = generate(p, k, default_grid(p));
    const auto b = generate(p, k, default_grid(p));
    CHECK(same_state(a.run, b.run));
    k.seed = 99;
    const auto c = generate(p, k, default_grid(p));
    CHECK_FALSE(same_state(a.run, c.run));
  }
}

TEST_CASE("random recipe ranges") {
  const auto sc = generate(Preset::gravity_static_1d);
  const auto& s = sc.run.fluids[0].state;
  const Grid& g = s.grid;
  double lo = 1e9, hi = -1e9, ulo = 1e9, uhi = -1e9;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    if (g.in_margin(g.coords(c))) {
      CHECK(s.rho[c] == 0.0);
      continue;
    }
    lo = std::min(lo, s.rho[c]);
    hi = std::max(hi, s.rho[c]);
    ulo = std::min(ulo, s.velocity(0, c));
    uhi = std::max(uhi, s.velocity(0, c));
  }
  CHECK(lo >= 0.9);
  CHECK(hi <= 1.1);
  CHECK(hi - lo > 0.15);
  CHECK(ulo >= -0.5);
  CHECK(uhi <= 0.5);
  CHECK(uhi - ulo > 0.8);
}

TEST_CASE("fluid streams are independent") {
  const Grid g = Grid::make(2, {20, 20, 1}, 0.05, Boundary::outflow, 0);
  auto k = default_knobs(Preset::gravity_static_2d);
  const auto a = random_field(g, k, 0);
  const auto b = random_field(g, k, 2);
  CHECK(a.rho != b.rho);
  k.u_amp2 = 0.0;
  const auto still = random_field(g, k, 1);
  for (double m : still.mom[0]) CHECK(m == 0.0);
}

TEST_CASE("dust collision clouds") {
  const auto sc = generate(Preset::dust_collision);
  const auto& s = sc.run.fluids[0].state;
  const Grid& g = s.grid;
  CHECK(g.n[0] == 450);
  CHECK(sc.knobs.r == 1.0);
  int left = 0, right = 0, vacuum = 0;
  for (int i = 0; i < g.n[0]; ++i) {
    if (s.rho[i] > 0.5) {
      (g.center(0, i) < g.origin[0] + 4.5 ? left : right) += 1;
      CHECK(s.velocity(0, i) == (g.center(0, i) < 0.0 ? 1.0 : -1.0));
    } else if (!g.in_margin({i, 0, 0})) {
      CHECK(s.rho[i] <= 1e-300);
      ++vacuum;
    }
  }
  CHECK(left == right);
  CHECK(left >= 49);
  CHECK(left <= 50);
  CHECK(vacuum > 300);
  const auto ref = reference_solution(Preset::dust_collision, sc.knobs, g, 6.0);
  CHECK(ref.summary.at("peak_x") == Approx(0.0));
}

TEST_CASE("chertock profile sends every point to x = 1 at t = 1") {
  const auto sc = generate(Preset::chertock_test4);
  const auto& s = sc.run.fluids[0].state;
  bool neg = false, pos = false;
  for (int i = 0; i < s.grid.n[0]; ++i) {
    if (!s.defined(i)) continue;
    const double x = s.grid.center(0, i);
    CHECK(x + s.velocity(0, i) == Approx(1.0));
    neg = neg || s.velocity(0, i) < 0.0;
    pos = pos || s.velocity(0, i) > 0.0;
  }
  CHECK(neg);
  CHECK(pos);
  const auto ref = reference_solution(Preset::chertock_test4, sc.knobs, s.grid, 1.0);
  CHECK(ref.summary.at("collapse_x") == 1.0);
  CHECK(ref.summary.at("collapse_t") == 1.0);
}

TEST_CASE("Riemann references") {
  const auto sc = generate(Preset::riemann_1d);
  const Grid& g = sc.run.grid();
  const auto& s = sc.run.fluids[0].state;
  CHECK(s.rho.front() == 1.0);
  CHECK(s.velocity(0, 0) == -1.0);
  CHECK(s.velocity(0, g.n[0] - 1) == 1.0);

  const double t = 0.3;
  const auto ref = reference_solution(Preset::riemann_1d, sc.knobs, g, t);
  for (int i = 0; i < g.n[0]; ++i) {
    const double x = g.center(0, i);
    // cell averages equal point values away from the fan edges
    if (std::abs(std::abs(x) - t) < g.h) continue;
    CHECK(ref.rho[i] == Approx(riemann::vacuum_fan(sc.knobs.riemann, t, x).rho).epsilon(1e-12));
  }

  auto k = sc.knobs;
  k.riemann = {1.0, 1.0, 2.0, -0.5};
  const auto col = reference_solution(Preset::riemann_1d, k, g, t);
  const auto w = riemann::delta_wave(k.riemann);
  CHECK(col.summary.at("peak_mass") == Approx(w.alpha * t));
  CHECK(col.summary.at("peak_x") == Approx(w.c * t));
  double extra = 0.0;
  for (int i = 0; i < g.n[0]; ++i) extra += col.rho[i] * g.h;
  // total = left and right states plus the peak
  CHECK(extra == Approx(1.0 * (1.0 + w.c * t) + 2.0 * (1.0 - w.c * t) + w.alpha * t));

  CHECK(kind_of([&] { reference_solution(Preset::gravity_static_2d, k, g, t); }) == ErrorKind::unsupported);
}

TEST_CASE("expanding vacuum reference") {
  auto k = default_knobs(Preset::expanding_riemann_delta);
  k.riemann = {1.0, -1.0, 1.0, 1.0};
  const Grid g = default_grid(Preset::expanding_riemann_delta);
  const double t = k.steps * k.r * g.h;
  const auto ref = reference_solution(Preset::expanding_riemann_delta, k, g, t);
  const auto bg = expansion_background(k, g);
  CHECK(bg.scale(t) == Approx(3.5));
  CHECK(ref.rho.front() == Approx(1.0 / (3.5 * 3.5 * 3.5)));
  CHECK(ref.rho[g.n[0] / 2] == 0.0);
}

TEST_CASE("incompatible grids are rejected") {
  const Grid two = Grid::make(2, {20, 20, 1}, 0.05);
  CHECK(kind_of([&] { generate(Preset::riemann_1d, default_knobs(Preset::riemann_1d), two); }) ==
        ErrorKind::config);
  CHECK(kind_of([] {
          generate(Preset::gravity_static_2d, default_knobs(Preset::gravity_static_2d), Grid::line(50, 0.1));
        }) == ErrorKind::config);
}

TEST_CASE("multifluid mass fractions") {
  const auto sc = generate(Preset::multifluid_decoupling);
  REQUIRE(sc.run.fluids.size() == 2);
  const double dark = testing_util::sum(sc.run.fluids[0].state.rho);
  const double baryon = testing_util::sum(sc.run.fluids[1].state.rho);
  CHECK(dark / (dark + baryon) == Approx(0.8).epsilon(1e-12));

  const auto eq = generate(Preset::multifluid_equivalence);
  CHECK(eq.run.fluids[1].model == FluidModel::relativistic);
  CHECK(eq.run.fluids[1].law.kind == StateLaw::Kind::radiation);
}

TEST_CASE("frozen structure preset starts from a formed structure") {
  const auto fresh = generate(Preset::gravity_static_2d);
  const auto frozen = generate(Preset::meszaros_freeze);
  const auto d0 = diagnostics(fresh.run.fluids[0].state, fresh.run.bg, 0.0);
  const auto d1 = diagnostics(frozen.run.fluids[0].state, frozen.run.bg, 0.0);
  CHECK(d1.max_rho > 2.0 * d0.max_rho);
  CHECK(frozen.run.bg.kind() == Background::Kind::power_law);
}

}  // TEST_SUITE
