#pragma once

#include <string>

#include "dwp/orchestrator.hpp"

namespace dwp::io {

/// What a snapshot file restores: fluids (grid, law, rho, mom, floor), t, n,
/// model and phi. The background itself is not stored; `a` is a(t) at write time.
struct Snapshot {
  RunState run;
  double a = 1.0;
};

/// Format: one JSON header line {t, n, a, model, grid, fluids, columns}, then
/// a CSV column line, then one row per cell in row-major order. Columns are
/// the cell indices, then per fluid rho, u per axis and mom per axis, then
/// phi when gravity is active. Undefined velocities are written as `nan`.
/// Every number uses 17 significant digits, so a read restores it exactly.
std::string format_snapshot(const RunState& run);
void write_snapshot(const RunState& run, const std::string& path);

/// Throws Error(io) naming the path on failure to read or parse.
Snapshot parse_snapshot(const std::string& text, const std::string& path = "<memory>");
Snapshot read_snapshot(const std::string& path);

}  // namespace dwp::io
