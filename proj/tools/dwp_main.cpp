// dwp: run presets or explicit configs and write snapshots and diagnostics.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwp/errors.hpp"
#include "dwp/io/config.hpp"
#include "dwp/io/diagnostics_stream.hpp"
#include "dwp/io/snapshot.hpp"
#include "dwp/orchestrator.hpp"
#include "dwp/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

int report(const std::string& kind, const std::string& message) {
  nlohmann::json line = {{"error", kind}, {"message", message}};
  std::cerr << line.dump() << "\n";
  return 1;
}

std::string snapshot_name(long n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06ld.csv", n);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dwp::Error(dwp::ErrorKind::io, path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw dwp::Error(dwp::ErrorKind::io, path.string() + ": write failed");
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_flag,
            const std::optional<long>& seed, const std::optional<long>& steps) {
  dwp::io::ScenarioConfig cfg = dwp::io::load_config(config_path);
  if (seed) {
    if (*seed < 0) throw dwp::Error(dwp::ErrorKind::config, "--seed: must be >= 0");
    cfg.knobs.seed = static_cast<std::uint64_t>(*seed);
  }
  if (steps) {
    if (*steps < 0) throw dwp::Error(dwp::ErrorKind::config, "--steps: must be >= 0");
    cfg.knobs.steps = *steps;
  }

  fs::path out_dir = "dwp_out";
  if (out_flag) {
    out_dir = *out_flag;
  } else if (!cfg.output.out_dir.empty()) {
    out_dir = cfg.output.out_dir;
  } else if (const char* env = std::getenv("DWP_OUT_DIR"); env && *env) {
    out_dir = env;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw dwp::Error(dwp::ErrorKind::io, out_dir.string() + ": " + ec.message());

  dwp::scenarios::Scenario sc = dwp::io::build_scenario(cfg);
  dwp::io::ScenarioConfig echo = cfg;
  echo.output.out_dir.clear();
  write_text(out_dir / "config.ini", dwp::io::write_config(echo));

  dwp::RunPlan plan;
  plan.steps = cfg.knobs.steps;
  plan.diagnostics_every = cfg.output.diagnostics_every;
  plan.snapshot_every = cfg.output.snapshot_every;
  plan.on_snapshot = [&](const dwp::RunState& s) {
    dwp::io::write_snapshot(s, (out_dir / snapshot_name(s.n)).string());
  };
  plan.on_abort = [&](const dwp::RunState& s) {
    dwp::io::write_snapshot(s, (out_dir / "abort.csv").string());
    if (!s.history.empty()) {
      dwp::io::emit_diagnostics_stream(s.history, s.fluids, (out_dir / "diagnostics.jsonl").string());
    }
  };

  dwp::RunState final_state = dwp::run(std::move(sc.run), sc.params, plan);
  if (!final_state.history.empty()) {
    dwp::io::emit_diagnostics_stream(final_state.history, final_state.fluids,
                                     (out_dir / "diagnostics.jsonl").string());
  }
  dwp::io::write_snapshot(final_state, (out_dir / "final.csv").string());

  nlohmann::json done = {{"status", "ok"},         {"out_dir", out_dir.string()}, {"steps", final_state.n},
                         {"t", final_state.t},     {"a", final_state.scale()}};
  std::cout << done.dump() << "\n";
  return 0;
}

int cmd_check(const std::string& config_path) {
  const dwp::io::ScenarioConfig cfg = dwp::io::load_config(config_path);
  const dwp::scenarios::Scenario sc = dwp::io::build_scenario(cfg);
  const double limit = dwp::admissible_ratio(sc.run);
  nlohmann::json out = {{"status", "ok"},
                        {"model", dwp::to_string(sc.run.model)},
                        {"fluids", sc.run.fluids.size()},
                        {"cells", sc.run.grid().cells()},
                        {"steps", cfg.knobs.steps},
                        {"r", cfg.knobs.r},
                        {"cfl_limit", std::isfinite(limit) ? nlohmann::json(limit) : nlohmann::json("inf")}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_preset_list() {
  for (dwp::scenarios::Preset p : dwp::scenarios::all_presets()) {
    const dwp::Grid g = dwp::scenarios::default_grid(p);
    std::cout << dwp::scenarios::to_string(p) << "  " << g.dim << "D  " << dwp::to_string(dwp::scenarios::preset_model(p))
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta-wave projection solver for pressureless and self-gravitating fluids"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::string> out_dir;
  std::optional<long> seed;
  std::optional<long> steps;
  auto* run = app.add_subcommand("run", "Run a configuration");
  run->add_option("--config", run_config, "INI configuration file")->required();
  run->add_option("--out", out_dir, "Output directory (default: config, then $DWP_OUT_DIR, then ./dwp_out)");
  run->add_option("--seed", seed, "Override the random seed");
  run->add_option("--steps", steps, "Override the number of steps");

  std::string check_config;
  auto* check = app.add_subcommand("check", "Validate a configuration and report the CFL bound");
  check->add_option("--config", check_config, "INI configuration file")->required();

  auto* preset = app.add_subcommand("preset", "Preset utilities");
  preset->require_subcommand(1);
  auto* list = preset->add_subcommand("list", "List the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what());
  }

  try {
    if (*run) return cmd_run(run_config, out_dir, seed, steps);
    if (*check) return cmd_check(check_config);
    if (*list) return cmd_preset_list();
  } catch (const dwp::Error& e) {
    return report(dwp::to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report("internal", e.what());
  }
  return 1;
}
