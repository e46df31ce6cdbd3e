#include "dwp/io/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dwp/errors.hpp"
#include "dwp/transport.hpp"

namespace dwp::io {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::config, key + ": " + what);
}

std::string unquote(std::string v) {
  const auto b = v.find_first_not_of(" \t");
  const auto e = v.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  v = v.substr(b, e - b + 1);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

// Section view with typed getters; every key read is marked so leftovers can
// be reported as unknown.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return unquote(tree_->get<std::string>(key));
  }

  std::string str(const std::string& key, const std::string& fallback) {
    auto v = raw(key);
    return v ? *v : fallback;
  }

  double num(const std::string& key, double fallback) {
    auto v = raw(key);
    if (!v) return fallback;
    return parse_double(*v, key);
  }

  long integer(const std::string& key, long fallback) {
    auto v = raw(key);
    if (!v) return fallback;
    std::size_t pos = 0;
    long out = 0;
    try {
      out = std::stol(*v, &pos);
    } catch (const std::exception&) {
      fail(qualified(key), "expected an integer, got '" + *v + "'");
    }
    if (pos != v->size()) fail(qualified(key), "expected an integer, got '" + *v + "'");
    return out;
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    auto v = raw(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(unquote(item), key));
    return out;
  }

  void check_unknown() const {
    if (!tree_) return;
    for (const auto& [key, _] : *tree_) {
      if (!used_.count(key)) fail(qualified(key), "unknown key");
    }
  }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

 private:
  double parse_double(const std::string& v, const std::string& key) const {
    std::size_t pos = 0;
    double out = 0.0;
    try {
      out = std::stod(v, &pos);
    } catch (const std::exception&) {
      fail(qualified(key), "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(qualified(key), "expected a number, got '" + v + "'");
    return out;
  }

  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> used_;
};

template <class E>
E pick(const std::string& key, const std::string& value, const std::map<std::string, E>& options) {
  auto it = options.find(value);
  if (it != options.end()) return it->second;
  std::string names;
  for (const auto& [name, _] : options) names += (names.empty() ? "" : ", ") + name;
  fail(key, "invalid value '" + value + "' (expected one of " + names + ")");
}

template <class E>
std::string name_of(E value, const std::map<std::string, E>& options) {
  for (const auto& [name, v] : options) {
    if (v == value) return name;
  }
  return "?";
}

const std::map<std::string, ModelKind> kModels = {
    {"pressureless_static_gravity", ModelKind::pressureless_static_gravity},
    {"newtonian_expanding", ModelKind::newtonian_expanding},
    {"relativistic_expanding", ModelKind::relativistic_expanding},
    {"multifluid", ModelKind::multifluid},
};
const std::map<std::string, Boundary> kBoundaries = {{"outflow", Boundary::outflow},
                                                     {"zero_margin", Boundary::zero_margin}};
const std::map<std::string, gravity::PoissonBoundary> kPoisson = {
    {"dirichlet", gravity::PoissonBoundary::dirichlet}, {"periodic", gravity::PoissonBoundary::periodic}};
const std::map<std::string, SourceMode> kSourceModes = {{"per_fluid", SourceMode::per_fluid},
                                                        {"uniform", SourceMode::uniform}};
const std::map<std::string, FluidModel> kFluidModels = {{"newtonian", FluidModel::newtonian},
                                                        {"relativistic", FluidModel::relativistic}};
const std::map<std::string, StateLaw::Kind> kLaws = {{"pressureless", StateLaw::Kind::pressureless},
                                                     {"linear", StateLaw::Kind::linear},
                                                     {"radiation", StateLaw::Kind::radiation}};
const std::set<std::string> kInits = {"random", "peaks", "uniform", "riemann"};
const std::set<std::string> kBackgroundKinds = {"auto", "static", "power_law", "tabulated"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

void check_fraction_sum(const std::vector<FluidConfig>& fluids) {
  if (fluids.size() < 2) return;
  double sum = 0.0;
  for (const auto& f : fluids) sum += f.fraction;
  if (std::abs(sum - 1.0) > 1e-9) fail("fluid.fraction", "mass fractions sum to " + fmt(sum) + ", not 1");
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  // PropertyTree only knows full-line ';' comments: drop '#' lines and cut
  // trailing comments that follow whitespace outside of quotes.
  std::string cleaned;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t");
      if (b != std::string::npos && line[b] == '#') continue;
      char quote = 0;
      for (std::size_t i = b == std::string::npos ? line.size() : b + 1; i < line.size(); ++i) {
        const char ch = line[i];
        if (quote) {
          if (ch == quote) quote = 0;
        } else if (ch == '"' || ch == '\'') {
          quote = ch;
        } else if ((ch == '#' || ch == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
          line.resize(i);
          break;
        }
      }
      cleaned += line + "\n";
    }
  }
  pt::ptree tree;
  try {
    std::istringstream in(cleaned);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::config, std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  std::map<std::string, const pt::ptree*> sections;
  for (const auto& [name, sub] : tree) {
    if (sub.empty() && !sub.data().empty()) fail(name, "key outside of a section");
    sections[name] = &sub;
  }
  auto section = [&](const std::string& name) {
    auto it = sections.find(name);
    return Section(name, it == sections.end() ? nullptr : it->second);
  };

  ScenarioConfig c;
  Section sc = section("scenario");
  if (auto p = sc.raw("preset"); p && !p->empty()) {
    try {
      c.preset = scenarios::preset_from_string(*p);
    } catch (const Error&) {
      fail("scenario.preset", "unknown preset '" + *p + "'");
    }
  }
  if (c.preset) {
    c.knobs = scenarios::default_knobs(*c.preset);
    c.grid = scenarios::default_grid(*c.preset);
  }
  scenarios::Knobs& k = c.knobs;

  if (auto m = sc.raw("model")) c.model = pick("scenario.model", *m, kModels);
  const long seed = sc.integer("seed", static_cast<long>(k.seed));
  if (seed < 0) fail("scenario.seed", "must be >= 0");
  k.seed = static_cast<std::uint64_t>(seed);
  k.steps = sc.integer("steps", k.steps);
  if (k.steps < 0) fail("scenario.steps", "must be >= 0");
  k.r = sc.num("r", k.r);
  if (!(k.r > 0.0)) fail("scenario.r", "must be positive");

  Section gr = section("grid");
  {
    const int dim = static_cast<int>(gr.integer("dim", c.grid.dim));
    std::vector<double> n_default;
    for (int a = 0; a < dim && a < 3; ++a) n_default.push_back(c.grid.n[a]);
    const auto n = gr.list("n", n_default);
    const double h = gr.num("h", c.grid.h);
    const auto boundary = pick("grid.boundary", gr.str("boundary", name_of(c.grid.boundary, kBoundaries)), kBoundaries);
    const int margin = static_cast<int>(gr.integer("margin", c.grid.margin));
    std::vector<double> o_default;
    for (int a = 0; a < dim && a < 3; ++a) o_default.push_back(c.grid.origin[a]);
    const auto origin = gr.list("origin", o_default);
    if (dim < 1 || dim > 3) fail("grid.dim", "must be 1, 2 or 3");
    if (static_cast<int>(n.size()) != dim) fail("grid.n", "needs one count per axis");
    if (static_cast<int>(origin.size()) != dim) fail("grid.origin", "needs one coordinate per axis");
    if (margin < 0) fail("grid.margin", "must be >= 0");
    Grid g;
    g.dim = dim;
    for (int a = 0; a < dim; ++a) {
      if (n[a] != std::floor(n[a])) fail("grid.n", "counts must be integers");
      g.n[a] = static_cast<int>(n[a]);
      g.origin[a] = origin[a];
    }
    g.h = h;
    g.boundary = boundary;
    g.margin = margin;
    g.validate();
    c.grid = g;
  }

  Section bg = section("background");
  c.background.kind = bg.str("kind", c.background.kind);
  if (!kBackgroundKinds.count(c.background.kind)) {
    fail("background.kind", "invalid value '" + c.background.kind + "' (expected auto, static, power_law or tabulated)");
  }
  k.expansion = bg.num("expansion", k.expansion);
  if (!(k.expansion >= 1.0)) fail("background.expansion", "must be >= 1");
  c.background.p = bg.num("p", c.background.p);
  c.background.t0 = bg.num("t0", c.background.t0);
  c.background.times = bg.list("times", c.background.times);
  c.background.scales = bg.list("scales", c.background.scales);

  Section ph = section("physics");
  k.G = ph.num("G", k.G);
  if (k.G < 0.0) fail("physics.G", "must be >= 0");
  k.poisson = pick("physics.poisson_bc", ph.str("poisson_bc", name_of(k.poisson, kPoisson)), kPoisson);
  k.solver_tol = ph.num("solver_tol", k.solver_tol);
  if (!(k.solver_tol > 0.0)) fail("physics.solver_tol", "must be positive");
  c.max_iter = static_cast<int>(ph.integer("max_iter", c.max_iter));
  if (c.max_iter <= 0) fail("physics.max_iter", "must be positive");
  c.source_mode = pick("physics.source_mode", ph.str("source_mode", name_of(c.source_mode, kSourceModes)), kSourceModes);
  c.uniform_factor = ph.num("uniform_factor", c.uniform_factor);
  k.kappa = ph.num("kappa", k.kappa);
  if (k.kappa < 0.0) fail("physics.kappa", "must be >= 0");
  k.c_light = ph.num("c_light", k.c_light);
  if (!(k.c_light > 0.0)) fail("physics.c_light", "must be positive");

  Section in = section("init");
  k.rho_lo = in.num("rho_lo", k.rho_lo);
  k.rho_hi = in.num("rho_hi", k.rho_hi);
  if (!(k.rho_lo >= 0.0 && k.rho_hi >= k.rho_lo)) fail("init.rho_lo", "need 0 <= rho_lo <= rho_hi");
  k.u_amp = in.num("u_amp", k.u_amp);
  k.u_amp2 = in.num("u_amp2", k.u_amp2);
  k.vacuum_band = static_cast<int>(in.integer("vacuum_band", k.vacuum_band));
  if (k.vacuum_band < 0) fail("init.vacuum_band", "must be >= 0");
  k.structure_steps = in.integer("structure_steps", k.structure_steps);
  if (k.structure_steps < 0) fail("init.structure_steps", "must be >= 0");
  k.fraction = in.num("fraction", k.fraction);
  k.peaks = static_cast<int>(in.integer("peaks", k.peaks));
  if (k.peaks < 0) fail("init.peaks", "must be >= 0");
  k.peak_width = in.num("peak_width", k.peak_width);
  {
    const auto rd = in.list("riemann", {k.riemann.rho_l, k.riemann.u_l, k.riemann.rho_r, k.riemann.u_r});
    if (rd.size() != 4) fail("init.riemann", "expects rho_l, u_l, rho_r, u_r");
    k.riemann = {rd[0], rd[1], rd[2], rd[3]};
  }

  Section out = section("output");
  c.output.snapshot_every = out.integer("snapshot_every", c.output.snapshot_every);
  if (c.output.snapshot_every < 0) fail("output.snapshot_every", "must be >= 0");
  c.output.diagnostics_every = out.integer("diagnostics_every", c.output.diagnostics_every);
  if (c.output.diagnostics_every < 0) fail("output.diagnostics_every", "must be >= 0");
  c.output.out_dir = out.str("out_dir", c.output.out_dir);

  std::vector<Section> fluid_sections;
  for (int i = 1;; ++i) {
    const std::string name = "fluid" + std::to_string(i);
    if (!sections.count(name)) break;
    Section fs = section(name);
    FluidConfig f;
    f.name = fs.str("name", name);
    f.model = pick(name + ".model", fs.str("model", "newtonian"), kFluidModels);
    f.law = pick(name + ".law", fs.str("law", f.model == FluidModel::relativistic ? "radiation" : "pressureless"),
                 kLaws);
    f.kappa = fs.num("kappa", k.kappa);
    f.c_light = fs.num("c_light", k.c_light);
    f.fraction = fs.num("fraction", 1.0);
    if (!(f.fraction > 0.0 && f.fraction <= 1.0)) fail(name + ".fraction", "must lie in (0, 1]");
    f.init = fs.str("init", "random");
    if (!kInits.count(f.init)) fail(name + ".init", "invalid value '" + f.init + "' (expected random, peaks, uniform or riemann)");
    f.rho = fs.num("rho", f.rho);
    f.u = fs.list("u", std::vector<double>(c.grid.dim, 0.0));
    if (static_cast<int>(f.u.size()) != c.grid.dim) fail(name + ".u", "needs one component per axis");
    c.fluids.push_back(f);
    fluid_sections.push_back(std::move(fs));
  }

  static const std::set<std::string> known = {"scenario", "grid", "background", "physics", "init", "output"};
  for (const auto& [name, _] : sections) {
    if (!known.count(name) && name.rfind("fluid", 0) != 0) fail(name, "unknown section");
    if (name.rfind("fluid", 0) == 0) {
      bool listed = false;
      for (std::size_t i = 0; i < c.fluids.size(); ++i) listed |= name == "fluid" + std::to_string(i + 1);
      if (!listed) fail(name, "fluid sections must be numbered fluid1, fluid2, ... without gaps");
    }
  }
  for (Section* s : {&sc, &gr, &bg, &ph, &in, &out}) s->check_unknown();
  for (const auto& fs : fluid_sections) fs.check_unknown();

  if (c.preset) {
    if (!c.fluids.empty()) fail("fluid1", "a preset defines its own fluids");
    if (c.grid.dim != scenarios::preset_dim(*c.preset)) {
      fail("grid.dim", std::string("preset ") + scenarios::to_string(*c.preset) + " needs dim " +
                           std::to_string(scenarios::preset_dim(*c.preset)));
    }
    if (!sc.has("model")) c.model = scenarios::preset_model(*c.preset);
  } else {
    if (c.fluids.empty()) fail("scenario.preset", "give a preset or at least one [fluid1] section");
    check_fraction_sum(c.fluids);
    if (c.model == ModelKind::multifluid && c.fluids.size() < 2) fail("scenario.model", "multifluid needs two fluids");
    if (c.model != ModelKind::multifluid && c.fluids.size() != 1) {
      fail("scenario.model", "several fluids need model = multifluid");
    }
  }
  if (c.background.kind == "tabulated" &&
      (c.background.times.size() < 2 || c.background.times.size() != c.background.scales.size())) {
    fail("background.times", "tabulated backgrounds need matching times and scales (at least two)");
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const ScenarioConfig& c) {
  const scenarios::Knobs& k = c.knobs;
  std::ostringstream o;
  o << "[scenario]\n";
  if (c.preset) o << "preset = " << scenarios::to_string(*c.preset) << "\n";
  o << "model = " << name_of(c.model, kModels) << "\n";
  o << "seed = " << k.seed << "\n";
  o << "steps = " << k.steps << "\n";
  o << "r = " << fmt(k.r) << "\n\n";

  std::vector<double> n, origin;
  for (int a = 0; a < c.grid.dim; ++a) {
    n.push_back(c.grid.n[a]);
    origin.push_back(c.grid.origin[a]);
  }
  o << "[grid]\n";
  o << "dim = " << c.grid.dim << "\n";
  o << "n = " << fmt_list(n) << "\n";
  o << "h = " << fmt(c.grid.h) << "\n";
  o << "boundary = " << name_of(c.grid.boundary, kBoundaries) << "\n";
  o << "margin = " << c.grid.margin << "\n";
  o << "origin = " << fmt_list(origin) << "\n\n";

  o << "[background]\n";
  o << "kind = " << c.background.kind << "\n";
  o << "expansion = " << fmt(k.expansion) << "\n";
  o << "p = " << fmt(c.background.p) << "\n";
  o << "t0 = " << fmt(c.background.t0) << "\n";
  if (!c.background.times.empty()) o << "times = " << fmt_list(c.background.times) << "\n";
  if (!c.background.scales.empty()) o << "scales = " << fmt_list(c.background.scales) << "\n";
  o << "\n";

  o << "[physics]\n";
  o << "G = " << fmt(k.G) << "\n";
  o << "poisson_bc = " << name_of(k.poisson, kPoisson) << "\n";
  o << "solver_tol = " << fmt(k.solver_tol) << "\n";
  o << "max_iter = " << c.max_iter << "\n";
  o << "source_mode = " << name_of(c.source_mode, kSourceModes) << "\n";
  o << "uniform_factor = " << fmt(c.uniform_factor) << "\n";
  o << "kappa = " << fmt(k.kappa) << "\n";
  o << "c_light = " << fmt(k.c_light) << "\n\n";

  o << "[init]\n";
  o << "rho_lo = " << fmt(k.rho_lo) << "\n";
  o << "rho_hi = " << fmt(k.rho_hi) << "\n";
  o << "u_amp = " << fmt(k.u_amp) << "\n";
  o << "u_amp2 = " << fmt(k.u_amp2) << "\n";
  o << "vacuum_band = " << k.vacuum_band << "\n";
  o << "structure_steps = " << k.structure_steps << "\n";
  o << "fraction = " << fmt(k.fraction) << "\n";
  o << "peaks = " << k.peaks << "\n";
  o << "peak_width = " << fmt(k.peak_width) << "\n";
  o << "riemann = " << fmt_list({k.riemann.rho_l, k.riemann.u_l, k.riemann.rho_r, k.riemann.u_r}) << "\n\n";

  o << "[output]\n";
  o << "snapshot_every = " << c.output.snapshot_every << "\n";
  o << "diagnostics_every = " << c.output.diagnostics_every << "\n";
  if (!c.output.out_dir.empty()) o << "out_dir = " << c.output.out_dir << "\n";

  for (std::size_t i = 0; i < c.fluids.size(); ++i) {
    const FluidConfig& f = c.fluids[i];
    o << "\n[fluid" << i + 1 << "]\n";
    o << "name = " << f.name << "\n";
    o << "model = " << name_of(f.model, kFluidModels) << "\n";
    o << "law = " << name_of(f.law, kLaws) << "\n";
    o << "kappa = " << fmt(f.kappa) << "\n";
    o << "c_light = " << fmt(f.c_light) << "\n";
    o << "fraction = " << fmt(f.fraction) << "\n";
    o << "init = " << f.init << "\n";
    o << "rho = " << fmt(f.rho) << "\n";
    o << "u = " << fmt_list(f.u) << "\n";
  }
  return o.str();
}

namespace {

Background make_background(const ScenarioConfig& c) {
  const auto& b = c.background;
  if (b.kind == "static") return Background::make_static();
  if (b.kind == "power_law") return Background::power_law(b.p, b.t0);
  if (b.kind == "tabulated") return Background::tabulated(b.times, b.scales);
  return scenarios::expansion_background(c.knobs, c.grid);
}

StateLaw make_law(const FluidConfig& f) {
  switch (f.law) {
    case StateLaw::Kind::pressureless: return StateLaw::pressureless();
    case StateLaw::Kind::linear: return StateLaw::linear(f.kappa);
    case StateLaw::Kind::radiation: return StateLaw::radiation(f.c_light);
  }
  return {};
}

FluidState initial_field(const ScenarioConfig& c, const FluidConfig& f, std::uint64_t index) {
  if (f.init == "random") return scenarios::random_field(c.grid, c.knobs, index);
  if (f.init == "peaks") return scenarios::peak_field(c.grid, c.knobs, index);
  if (f.init == "riemann") {
    if (c.grid.dim != 1) fail("fluid" + std::to_string(index + 1) + ".init", "riemann data needs a 1D grid");
    return scenarios::riemann_field(c.grid, c.knobs.riemann);
  }
  FluidState s = FluidState::zeros(c.grid);
  for (std::size_t cell = 0; cell < s.size(); ++cell) {
    s.rho[cell] = f.rho;
    for (int a = 0; a < c.grid.dim; ++a) s.mom[a][cell] = f.rho * f.u[a];
  }
  s.reset_floor();
  transport::apply_boundary(s);
  return s;
}

}  // namespace

scenarios::Scenario build_scenario(const ScenarioConfig& c) {
  scenarios::Scenario sc;
  if (c.preset) {
    sc = scenarios::generate(*c.preset, c.knobs, c.grid);
    if (c.background.kind != "auto") sc.run.bg = make_background(c);
    sc.run.model = c.model;
  } else {
    sc.knobs = c.knobs;
    sc.run.model = c.model;
    sc.run.bg = make_background(c);
    std::vector<FluidState> fields;
    double total = 0.0;
    for (std::size_t i = 0; i < c.fluids.size(); ++i) {
      fields.push_back(initial_field(c, c.fluids[i], i));
      for (double v : fields.back().rho) total += v;
    }
    for (std::size_t i = 0; i < c.fluids.size(); ++i) {
      FluidState& s = fields[i];
      if (c.fluids.size() > 1) {
        double m = 0.0;
        for (double v : s.rho) m += v;
        const double factor = m > 0.0 ? c.fluids[i].fraction * total / m : 0.0;
        for (double& v : s.rho) v *= factor;
        for (int a = 0; a < s.dim(); ++a) {
          for (double& v : s.mom[a]) v *= factor;
        }
        s.reset_floor();
      }
      Fluid f;
      f.name = c.fluids[i].name;
      f.model = c.fluids[i].model;
      f.law = make_law(c.fluids[i]);
      f.state = std::move(s);
      sc.run.fluids.push_back(std::move(f));
    }
  }
  sc.params.r = c.knobs.r;
  sc.params.G = c.knobs.G;
  sc.params.poisson = c.knobs.poisson;
  sc.params.solver_tol = c.knobs.solver_tol;
  sc.params.max_iter = c.max_iter;
  sc.params.source_mode = c.source_mode;
  sc.params.uniform_factor = c.uniform_factor;
  try {
    validate(sc.run);
  } catch (const Error& e) {
    fail("scenario.model", e.what());
  }
  const double limit = admissible_ratio(sc.run);
  if (c.knobs.r > limit) fail("scenario.r", "r = " + fmt(c.knobs.r) + " exceeds the CFL bound " + fmt(limit));
  return sc;
}

}  // namespace dwp::io
