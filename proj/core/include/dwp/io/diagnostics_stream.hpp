#pragma once

#include <string>
#include <vector>

#include "dwp/orchestrator.hpp"

namespace dwp::io {

/// One JSON object per history record:
/// {"n", "t", "a", "fluids": [{"name", "mass", "momentum", "max_rho", "min_rho", "contrast"}]}.
std::string format_diagnostics(const std::vector<HistoryRecord>& history, const std::vector<Fluid>& fluids);

/// Throws Error(io) when history is empty or the file cannot be written.
void emit_diagnostics_stream(const std::vector<HistoryRecord>& history, const std::vector<Fluid>& fluids,
                             const std::string& path);

}  // namespace dwp::io
