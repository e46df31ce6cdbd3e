#include "dwp/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dwp/errors.hpp"
#include "dwp/transport.hpp"

namespace dwp {

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::pressureless_static_gravity: return "pressureless_static_gravity";
    case ModelKind::newtonian_expanding: return "newtonian_expanding";
    case ModelKind::relativistic_expanding: return "relativistic_expanding";
    case ModelKind::multifluid: return "multifluid";
  }
  return "unknown";
}

const char* to_string(FluidModel model) noexcept {
  return model == FluidModel::relativistic ? "relativistic" : "newtonian";
}

namespace {

constexpr double kRelativisticSpeed = 4.0 / 3.0;

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorKind::parameter, message);
}

double source_factor(const Fluid& f) {
  return f.model == FluidModel::relativistic ? gravity::kRadiationFactor : gravity::kNewtonianFactor;
}

bool kick_needed(const Fluid& f, bool gravity_on) {
  if (gravity_on) return true;
  return f.law.kind != StateLaw::Kind::pressureless;
}

// Sub-step (iii) of the relativistic splitting: u_t = (u . grad) u / (3a),
// i.e. each cell's velocity moved by (-u/2) dt / (3a) with rho unchanged.
FluidState relativistic_correction(const FluidState& s, double r, double a) {
  const int dim = s.dim();
  std::array<std::vector<double>, 3> vel;
  transport::Displacement disp;
  const double scale = -r / (6.0 * a);  // (-u/2) * (r h) / (3a) / h
  for (int ax = 0; ax < dim; ++ax) {
    vel[ax].resize(s.size());
    disp.cells[ax].resize(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) {
      vel[ax][c] = s.velocity(ax, c);
      disp.cells[ax][c] = vel[ax][c] * scale;
    }
  }
  std::vector<const std::vector<double>*> fields;
  for (int ax = 0; ax < dim; ++ax) fields.push_back(&vel[ax]);
  auto moved = transport::project(s.grid, disp, fields);
  FluidState out = s;
  for (int ax = 0; ax < dim; ++ax) {
    for (std::size_t c = 0; c < s.size(); ++c) out.mom[ax][c] = s.rho[c] * moved[ax][c];
  }
  transport::apply_boundary(out);
  return out;
}

// Shared splitting step for every model family.
RunState advance(RunState run, const ModelParams& params) {
  const Grid& grid = run.grid();
  const double dt = params.r * grid.h;
  const double t_n = run.t;
  const double t_n1 = t_n + dt;

  for (Fluid& f : run.fluids) {
    const double speed = f.model == FluidModel::relativistic ? kRelativisticSpeed : 1.0;
    f.state = transport::step_expanding(f.state, run.bg, t_n, params.r, speed);
  }

  const double a = run.bg.scale(t_n1);
  const bool gravity_on = params.G != 0.0;
  gravity::Potential pot;
  pot.grid = grid;
  if (gravity_on) {
    std::vector<double> source(grid.cells(), 0.0);
    const double a2 = a * a;
    if (params.source_mode == SourceMode::per_fluid) {
      for (const Fluid& f : run.fluids) {
        const double k = source_factor(f) * params.G * a2;
        for (std::size_t c = 0; c < source.size(); ++c) source[c] += k * f.state.rho[c];
      }
    } else {
      const double k = params.uniform_factor * params.G * a2;
      std::vector<double> total(grid.cells(), 0.0);
      for (const Fluid& f : run.fluids) {
        for (std::size_t c = 0; c < total.size(); ++c) total[c] += f.state.rho[c];
      }
      for (std::size_t c = 0; c < source.size(); ++c) source[c] = k * total[c];
    }
    gravity::GravityParams gp;
    gp.G = params.G;
    gp.solver_tol = params.solver_tol;
    gp.max_iter = params.max_iter;
    gp.boundary = params.poisson;
    gp.preconditioned = params.preconditioned;
    pot = gravity::solve_source(grid, source, gp, run.phi);
    run.phi = pot.phi;
  } else {
    pot.phi.assign(grid.cells(), 0.0);
  }

  for (Fluid& f : run.fluids) {
    if (f.model == FluidModel::relativistic) {
      f.state = gravity::relativistic_kick(f.state, pot, f.law.c_light, a, dt, params.poisson);
      f.state = relativistic_correction(f.state, params.r, a);
    } else if (kick_needed(f, gravity_on)) {
      f.state = gravity::newtonian_kick(f.state, pot, f.law, a, dt, params.poisson);
    }
  }

  run.t = t_n1;
  run.n += 1;
  return run;
}

}  // namespace

void validate(const RunState& run) {
  require(!run.fluids.empty(), "run has no fluids");
  const Grid& g = run.grid();
  for (const Fluid& f : run.fluids) {
    require(f.state.grid == g, "all fluids must share one grid");
    f.state.validate();
    if (f.model == FluidModel::relativistic) {
      require(f.law.kind == StateLaw::Kind::radiation, "relativistic fluids need the radiation state law");
    } else {
      require(f.law.kind != StateLaw::Kind::radiation, "Newtonian fluids take a pressureless or linear law");
    }
  }
  switch (run.model) {
    case ModelKind::pressureless_static_gravity:
      require(run.fluids.size() == 1, "static gravity model takes one fluid");
      require(run.fluids[0].model == FluidModel::newtonian &&
                  run.fluids[0].law.kind == StateLaw::Kind::pressureless,
              "static gravity model takes a pressureless fluid");
      require(run.bg.kind() == Background::Kind::static_, "static gravity model needs a static background");
      break;
    case ModelKind::newtonian_expanding:
      require(run.fluids.size() == 1, "Newtonian model takes one fluid");
      require(run.fluids[0].model == FluidModel::newtonian, "Newtonian model takes a Newtonian fluid");
      break;
    case ModelKind::relativistic_expanding:
      require(run.fluids.size() == 1, "relativistic model takes one fluid");
      require(run.fluids[0].model == FluidModel::relativistic, "relativistic model takes a radiation fluid");
      break;
    case ModelKind::multifluid:
      require(run.fluids.size() >= 2, "multifluid model takes at least two fluids");
      break;
  }
}

RunState step_static_gravity(RunState run, const ModelParams& params) {
  run.model = ModelKind::pressureless_static_gravity;
  validate(run);
  return advance(std::move(run), params);
}

RunState step_newtonian(RunState run, const ModelParams& params) {
  run.model = ModelKind::newtonian_expanding;
  validate(run);
  return advance(std::move(run), params);
}

RunState step_relativistic(RunState run, const ModelParams& params) {
  run.model = ModelKind::relativistic_expanding;
  validate(run);
  return advance(std::move(run), params);
}

RunState step_multifluid(RunState run, const ModelParams& params) {
  run.model = ModelKind::multifluid;
  validate(run);
  return advance(std::move(run), params);
}

RunState step(RunState run, const ModelParams& params) {
  switch (run.model) {
    case ModelKind::pressureless_static_gravity: return step_static_gravity(std::move(run), params);
    case ModelKind::newtonian_expanding: return step_newtonian(std::move(run), params);
    case ModelKind::relativistic_expanding: return step_relativistic(std::move(run), params);
    case ModelKind::multifluid: return step_multifluid(std::move(run), params);
  }
  return run;
}

HistoryRecord record(const RunState& run) {
  HistoryRecord rec;
  rec.n = run.n;
  rec.t = run.t;
  rec.a = run.bg.scale(run.t);
  for (const Fluid& f : run.fluids) rec.fluids.push_back(diagnostics(f.state, run.bg, run.t));
  return rec;
}

RunState run(RunState state, const ModelParams& params, const RunPlan& plan) {
  if (plan.steps < 0) throw Error(ErrorKind::parameter, "steps must be >= 0");
  validate(state);
  const long start = state.n;
  auto due = [&](long every, long done) {
    return every > 0 && (done % every == 0 || done == plan.steps);
  };
  if (plan.diagnostics_every > 0) state.history.push_back(record(state));
  if (plan.snapshot_every > 0 && plan.on_snapshot) plan.on_snapshot(state);

  for (long k = 1; k <= plan.steps; ++k) {
    try {
      state = step(state, params);
    } catch (...) {
      if (plan.on_abort) plan.on_abort(state);
      throw;
    }
    const long done = state.n - start;
    if (due(plan.diagnostics_every, done)) state.history.push_back(record(state));
    if (due(plan.snapshot_every, done) && plan.on_snapshot) plan.on_snapshot(state);
  }
  return state;
}

double admissible_ratio(const RunState& run, double safety) {
  double r = std::numeric_limits<double>::infinity();
  for (const Fluid& f : run.fluids) {
    const double speed = f.model == FluidModel::relativistic ? kRelativisticSpeed : 1.0;
    r = std::min(r, transport::admissible_ratio(f.state, speed, safety));
  }
  return r;
}

}  // namespace dwp
