#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dwp/scenarios.hpp"

namespace dwp::io {

/// Initial-condition recipe for one fluid of an explicit (preset-free) config.
struct FluidConfig {
  std::string name = "fluid";
  FluidModel model = FluidModel::newtonian;
  StateLaw::Kind law = StateLaw::Kind::pressureless;
  double kappa = 0.0;
  double c_light = 1.0;
  double fraction = 1.0;
  std::string init = "random";  // random | peaks | uniform | riemann
  double rho = 1.0;             // uniform init
  std::vector<double> u;        // uniform init, one entry per axis
};

struct BackgroundConfig {
  std::string kind = "auto";  // auto (from the expansion knob) | static | power_law | tabulated
  double p = 1.0;
  double t0 = 1.0;
  std::vector<double> times;
  std::vector<double> scales;
};

struct OutputPlan {
  long snapshot_every = 0;
  long diagnostics_every = 1;
  std::string out_dir;  // empty: command line, then DWP_OUT_DIR, then ./dwp_out
};

/// Fully resolved run description. Either `preset` is set (knobs and grid
/// override the preset defaults) or `model` and `fluids` describe the run.
struct ScenarioConfig {
  std::optional<scenarios::Preset> preset;
  ModelKind model = ModelKind::pressureless_static_gravity;
  Grid grid;
  scenarios::Knobs knobs;
  BackgroundConfig background;
  SourceMode source_mode = SourceMode::per_fluid;
  double uniform_factor = gravity::kNewtonianFactor;
  int max_iter = 20000;
  std::vector<FluidConfig> fluids;
  OutputPlan output;
};

/// Parses INI text ([section] / key = value, ';' or '#' comments, values may
/// be quoted). Missing keys take the preset or documented defaults.
/// Throws Error(config) naming the offending key on unknown keys, bad enums,
/// negative steps or mass fractions that do not sum to 1.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Writes every resolved key; parse_config(write_config(c)) reproduces c.
std::string write_config(const ScenarioConfig& config);

/// Builds the initial state. Throws Error(config) naming `scenario.r` when r
/// violates the CFL bound of the initial state.
scenarios::Scenario build_scenario(const ScenarioConfig& config);

}  // namespace dwp::io
