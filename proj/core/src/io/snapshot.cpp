#include "dwp/io/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwp/errors.hpp"

namespace dwp::io {

using nlohmann::json;

namespace {

constexpr const char* kAxis[3] = {"x", "y", "z"};
constexpr const char* kIndex[3] = {"i", "j", "k"};

const char* law_name(StateLaw::Kind k) {
  switch (k) {
    case StateLaw::Kind::pressureless: return "pressureless";
    case StateLaw::Kind::linear: return "linear";
    case StateLaw::Kind::radiation: return "radiation";
  }
  return "?";
}

void append(std::string& out, double v) {
  char buf[40];
  const int n = std::isnan(v) ? std::snprintf(buf, sizeof buf, "nan") : std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, n);
}

json grid_json(const Grid& g) {
  return {{"dim", g.dim},
          {"n", {g.n[0], g.n[1], g.n[2]}},
          {"h", g.h},
          {"boundary", g.boundary == Boundary::outflow ? "outflow" : "zero_margin"},
          {"margin", g.margin},
          {"origin", {g.origin[0], g.origin[1], g.origin[2]}}};
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::io, path + ": " + what);
}

}  // namespace

std::string format_snapshot(const RunState& run) {
  const Grid& g = run.grid();
  const int dim = g.dim;
  std::vector<std::string> columns;
  for (int a = 0; a < dim; ++a) columns.push_back(kIndex[a]);
  json fluids = json::array();
  for (const Fluid& f : run.fluids) {
    columns.push_back("rho_" + f.name);
    for (int a = 0; a < dim; ++a) columns.push_back(std::string("u") + kAxis[a] + "_" + f.name);
    for (int a = 0; a < dim; ++a) columns.push_back(std::string("mom") + kAxis[a] + "_" + f.name);
    fluids.push_back({{"name", f.name},
                      {"model", to_string(f.model)},
                      {"law", law_name(f.law.kind)},
                      {"kappa", f.law.kappa},
                      {"c_light", f.law.c_light},
                      {"floor", f.state.floor}});
  }
  const bool with_phi = !run.phi.empty();
  if (with_phi) columns.push_back("phi");

  json header = {{"t", run.t},        {"n", run.n},           {"a", run.bg.scale(run.t)},
                 {"model", to_string(run.model)}, {"grid", grid_json(g)}, {"fluids", fluids},
                 {"columns", columns}};
  std::string out = header.dump();
  out += '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';

  for (std::size_t c = 0; c < g.cells(); ++c) {
    const auto ijk = g.coords(c);
    for (int a = 0; a < dim; ++a) {
      if (a) out += ',';
      out += std::to_string(ijk[a]);
    }
    for (const Fluid& f : run.fluids) {
      const FluidState& s = f.state;
      out += ',';
      append(out, s.rho[c]);
      for (int a = 0; a < dim; ++a) {
        out += ',';
        append(out, s.velocity_or_undefined(a, c).value_or(std::nan("")));
      }
      for (int a = 0; a < dim; ++a) {
        out += ',';
        append(out, s.mom[a][c]);
      }
    }
    if (with_phi) {
      out += ',';
      append(out, run.phi[c]);
    }
    out += '\n';
  }
  return out;
}

void write_snapshot(const RunState& run, const std::string& path) {
  const std::string text = format_snapshot(run);
  std::ofstream out(path, std::ios::binary);
  if (!out) bad(path, "cannot open for writing");
  out << text;
  if (!out) bad(path, "write failed");
}

Snapshot parse_snapshot(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) bad(path, "empty snapshot");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    bad(path, std::string("bad header: ") + e.what());
  }

  Snapshot snap;
  RunState& run = snap.run;
  Grid g;
  try {
    const json& jg = header.at("grid");
    g.dim = jg.at("dim").get<int>();
    for (int a = 0; a < 3; ++a) {
      g.n[a] = jg.at("n").at(a).get<int>();
      g.origin[a] = jg.at("origin").at(a).get<double>();
    }
    g.h = jg.at("h").get<double>();
    g.boundary = jg.at("boundary").get<std::string>() == "outflow" ? Boundary::outflow : Boundary::zero_margin;
    g.margin = jg.at("margin").get<int>();
    g.validate();

    run.t = header.at("t").get<double>();
    run.n = header.at("n").get<long>();
    snap.a = header.at("a").get<double>();
    const std::string model = header.at("model").get<std::string>();
    bool known = false;
    for (ModelKind m : {ModelKind::pressureless_static_gravity, ModelKind::newtonian_expanding,
                        ModelKind::relativistic_expanding, ModelKind::multifluid}) {
      if (model == to_string(m)) {
        run.model = m;
        known = true;
      }
    }
    if (!known) bad(path, "unknown model '" + model + "'");

    for (const json& jf : header.at("fluids")) {
      Fluid f;
      f.name = jf.at("name").get<std::string>();
      f.model = jf.at("model").get<std::string>() == "relativistic" ? FluidModel::relativistic : FluidModel::newtonian;
      const std::string law = jf.at("law").get<std::string>();
      f.law.kind = law == "linear" ? StateLaw::Kind::linear
                   : law == "radiation" ? StateLaw::Kind::radiation
                                        : StateLaw::Kind::pressureless;
      f.law.kappa = jf.at("kappa").get<double>();
      f.law.c_light = jf.at("c_light").get<double>();
      f.state = FluidState::zeros(g);
      f.state.floor = jf.at("floor").get<double>();
      run.fluids.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    bad(path, std::string("bad header: ") + e.what());
  } catch (const Error& e) {
    bad(path, e.what());
  }
  if (run.fluids.empty()) bad(path, "no fluids in header");

  const std::size_t per_fluid = 1 + 2 * static_cast<std::size_t>(g.dim);
  const std::size_t base = g.dim + per_fluid * run.fluids.size();
  const std::size_t ncols = header.at("columns").size();
  const bool with_phi = ncols == base + 1;
  if (!with_phi && ncols != base) bad(path, "column count does not match the fluids");
  if (with_phi) run.phi.assign(g.cells(), 0.0);

  if (!std::getline(in, line)) bad(path, "missing column line");
  std::vector<double> row(ncols);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    if (!std::getline(in, line)) bad(path, "expected " + std::to_string(g.cells()) + " rows, got " + std::to_string(c));
    const char* p = line.c_str();
    for (std::size_t k = 0; k < ncols; ++k) {
      char* end = nullptr;
      row[k] = std::strtod(p, &end);
      if (end == p) bad(path, "bad number in row " + std::to_string(c + 1));
      p = end;
      if (k + 1 < ncols) {
        if (*p != ',') bad(path, "short row " + std::to_string(c + 1));
        ++p;
      }
    }
    std::size_t k = g.dim;
    for (Fluid& f : run.fluids) {
      f.state.rho[c] = row[k];
      for (int a = 0; a < g.dim; ++a) f.state.mom[a][c] = row[k + 1 + g.dim + a];
      k += per_fluid;
    }
    if (with_phi) run.phi[c] = row[k];
  }
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path, "cannot open snapshot");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str(), path);
}

}  // namespace dwp::io
