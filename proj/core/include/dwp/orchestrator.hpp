#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dwp/background.hpp"
#include "dwp/diagnostics.hpp"
#include "dwp/fluid_state.hpp"
#include "dwp/gravity.hpp"
#include "dwp/state_law.hpp"

namespace dwp {

enum class ModelKind {
  pressureless_static_gravity,
  newtonian_expanding,
  relativistic_expanding,
  multifluid,
};

/// Dynamics of one fluid inside a mixture.
enum class FluidModel { newtonian, relativistic };

/// How a mixture feeds the shared Poisson equation.
enum class SourceMode {
  per_fluid,  // sum_i factor_i G a^2 rho_i, factor 4π (Newtonian) or 8π (radiation)
  uniform,    // uniform_factor G a^2 sum_i rho_i
};

const char* to_string(ModelKind kind) noexcept;
const char* to_string(FluidModel model) noexcept;

struct Fluid {
  std::string name = "fluid";
  FluidModel model = FluidModel::newtonian;
  StateLaw law;
  FluidState state;
};

struct ModelParams {
  double r = 1.0;
  double G = 0.0;
  gravity::PoissonBoundary poisson = gravity::PoissonBoundary::dirichlet;
  double solver_tol = 1e-10;
  int max_iter = 20000;
  bool preconditioned = true;
  SourceMode source_mode = SourceMode::per_fluid;
  double uniform_factor = gravity::kNewtonianFactor;
};

struct HistoryRecord {
  long n = 0;
  double t = 0.0;
  double a = 1.0;
  std::vector<Diagnostics> fluids;
};

/// All fluids share one grid and one background.
struct RunState {
  ModelKind model = ModelKind::pressureless_static_gravity;
  std::vector<Fluid> fluids;
  Background bg;
  double t = 0.0;
  long n = 0;
  std::vector<HistoryRecord> history;
  std::vector<double> phi;  // potential of the last gravity sub-step, empty if none

  const Grid& grid() const { return fluids.front().state.grid; }
  double scale() const { return bg.scale(t); }
};

/// Throws Error(parameter) when the fluids/model combination is inconsistent.
void validate(const RunState& run);

/// Transport, then Poisson solve (4π) and kick; a static background is required.
RunState step_static_gravity(RunState run, const ModelParams& params);
/// Expanding transport with the 3/4 decay factors, then 4π G a^2 Poisson and the
/// pressure + gravity kick with 1/a factors.
RunState step_newtonian(RunState run, const ModelParams& params);
/// (i) expanding transport at speed 4/3 u, (ii) 8π Poisson + relativistic kick,
/// (iii) each cell's velocity carried by (-u/2) dt / (3a), rho fixed.
RunState step_relativistic(RunState run, const ModelParams& params);
/// Independent per-fluid transport and pressure, one Poisson solve on the
/// combined source feeding every fluid's kick.
RunState step_multifluid(RunState run, const ModelParams& params);

/// Dispatches on run.model.
RunState step(RunState run, const ModelParams& params);

HistoryRecord record(const RunState& run);

struct RunPlan {
  long steps = 0;
  long diagnostics_every = 1;  // 0 disables history
  long snapshot_every = 0;     // 0 disables snapshots
  std::function<void(const RunState&)> on_snapshot;
  /// Receives the last valid state before a failing step's error is rethrown.
  std::function<void(const RunState&)> on_abort;
};

/// Advances plan.steps steps. History is recorded at n = 0, every
/// diagnostics_every steps and at the last step; snapshots likewise.
RunState run(RunState state, const ModelParams& params, const RunPlan& plan);

/// Largest r with every fluid's effective speed admissible (4/3 u for
/// relativistic fluids), times `safety`.
double admissible_ratio(const RunState& run, double safety = 1.0);

}  // namespace dwp
