#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dwp/gravity.hpp"
#include "dwp/orchestrator.hpp"
#include "dwp/riemann.hpp"

namespace dwp::scenarios {

enum class Preset {
  riemann_1d,
  dust_collision,
  chertock_test4,
  gravity_static_1d,
  gravity_static_2d,
  newtonian_expanding_2d,
  meszaros_freeze,
  jeans_sweep,
  relativistic_2d,
  multifluid_equivalence,
  multifluid_decoupling,
  expanding_riemann_delta,
};

const std::vector<Preset>& all_presets();
const char* to_string(Preset preset) noexcept;
/// Throws Error(config) for an unknown name.
Preset preset_from_string(std::string_view name);
/// Grid dimension a preset is defined for.
int preset_dim(Preset preset) noexcept;
/// Model family a preset runs.
ModelKind preset_model(Preset preset) noexcept;

/// Tunable parameters of a preset. default_knobs() fills every field; a
/// config file or test overrides individual entries.
struct Knobs {
  std::uint64_t seed = 1;
  double r = 1.0;
  long steps = 100;
  double G = 0.0;
  double expansion = 1.0;  // a at t = steps * r * h (1: static background)
  double kappa = 0.0;      // linear pressure law p = kappa rho (0: pressureless)
  double c_light = 1.0;
  riemann::RiemannData riemann{1.0, -1.0, 1.0, 1.0};
  double rho_lo = 0.9;  // random density range
  double rho_hi = 1.1;
  double u_amp = 0.5;   // random velocity range [-u_amp, u_amp]
  double u_amp2 = 0.0;  // same for the second fluid of a mixture
  int vacuum_band = 0;  // empty cells between the margin and the random field
  long structure_steps = 0;  // length of the structure-forming pre-run
  double fraction = 0.5;     // mass fraction of the first fluid in a mixture
  int peaks = 4;             // dark-matter peaks (multifluid_decoupling)
  double peak_width = 0.05;  // Gaussian width of those peaks
  gravity::PoissonBoundary poisson = gravity::PoissonBoundary::dirichlet;
  double solver_tol = 1e-10;
};

struct Scenario {
  Preset preset = Preset::riemann_1d;
  Knobs knobs;
  RunState run;
  ModelParams params;
};

Knobs default_knobs(Preset preset);
Grid default_grid(Preset preset);

/// Builds the initial RunState and model parameters. Identical
/// (preset, knobs, grid) give bit-identical states.
/// Throws Error(config) when the grid does not fit the preset.
Scenario generate(Preset preset, const Knobs& knobs, const Grid& grid);
Scenario generate(Preset preset);

/// Field generators shared by the presets and explicit configs. `fluid`
/// selects independent random streams; fluid 1 takes its velocity amplitude
/// from u_amp2, every other index from u_amp.
FluidState random_field(const Grid& grid, const Knobs& knobs, std::uint64_t fluid);
FluidState peak_field(const Grid& grid, const Knobs& knobs, std::uint64_t fluid);
FluidState riemann_field(const Grid& grid, const riemann::RiemannData& data);
/// Background reaching a = knobs.expansion after knobs.steps steps (static when 1).
Background expansion_background(const Knobs& knobs, const Grid& grid);

/// Exact cell-averaged field and/or summary expectations at time t.
struct Reference {
  std::vector<double> rho;                // empty for summary-only references
  std::vector<std::optional<double>> u;   // cell-center velocity, empty inside a vacuum
  std::map<std::string, double> summary;
};

/// riemann_1d (both cases) and expanding_riemann_delta with u_l < u_r give
/// fields; dust_collision and chertock_test4 give summaries.
/// Throws Error(unsupported) for any other preset.
Reference reference_solution(Preset preset, const Knobs& knobs, const Grid& grid, double t);

}  // namespace dwp::scenarios
