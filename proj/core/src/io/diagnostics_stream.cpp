#include "dwp/io/diagnostics_stream.hpp"

#include <fstream>

#include <json.hpp>

#include "dwp/errors.hpp"

namespace dwp::io {

std::string format_diagnostics(const std::vector<HistoryRecord>& history, const std::vector<Fluid>& fluids) {
  std::string out;
  for (const HistoryRecord& rec : history) {
    nlohmann::json line = {{"n", rec.n}, {"t", rec.t}, {"a", rec.a}};
    nlohmann::json per = nlohmann::json::array();
    for (std::size_t i = 0; i < rec.fluids.size(); ++i) {
      const Diagnostics& d = rec.fluids[i];
      const int dim = i < fluids.size() ? fluids[i].state.dim() : 3;
      nlohmann::json mom = nlohmann::json::array();
      for (int a = 0; a < dim; ++a) mom.push_back(d.momentum[a]);
      per.push_back({{"name", i < fluids.size() ? fluids[i].name : "fluid" + std::to_string(i + 1)},
                     {"mass", d.mass},
                     {"momentum", mom},
                     {"max_rho", d.max_rho},
                     {"min_rho", d.min_rho},
                     {"contrast", d.contrast}});
    }
    line["fluids"] = per;
    out += line.dump();
    out += '\n';
  }
  return out;
}

void emit_diagnostics_stream(const std::vector<HistoryRecord>& history, const std::vector<Fluid>& fluids,
                             const std::string& path) {
  if (history.empty()) throw Error(ErrorKind::io, path + ": no diagnostics recorded");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, path + ": cannot open for writing");
  out << format_diagnostics(history, fluids);
  if (!out) throw Error(ErrorKind::io, path + ": write failed");
}

}  // namespace dwp::io
