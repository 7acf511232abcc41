#include "cqed/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace cqed {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Config, path + ": " + msg);
}

// Reads keys from one object and rejects whatever was not consumed.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(key_path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key_path(key), "must be finite");
    return x;
  }

  double required_number(const std::string& key) {
    if (!has(key)) fail(key_path(key), "is required");
    return number(key, 0.0);
  }

  int integer(const std::string& key, int def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(key_path(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(key_path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  Block child(const std::string& key) {
    static const json empty = json::object();
    if (!has(key)) return Block(empty, key_path(key));
    return Block(j_.at(key), key_path(key));
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) fail(key_path(k), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const std::vector<Gauge> kAllGauges = {Gauge::PF,    Gauge::pA,         Gauge::AD,       Gauge::RAD,
                                       Gauge::RAD_k, Gauge::RAD_k_blwa, Gauge::pA_k_blwa};

GaugeBasis default_basis(Gauge g) {
  switch (g) {
    case Gauge::PF: return {{50, 200}, {{40, 100}, {50, 200}, {60, 400}}};
    case Gauge::pA: return {{100, 40}, {{80, 20}, {100, 40}, {128, 80}}};
    case Gauge::AD: return {{65, 20}, {{33, 10}, {65, 20}, {97, 40}}};
    case Gauge::RAD: return {{100, 20}, {{50, 10}, {100, 20}, {200, 40}}};
    case Gauge::RAD_k:
    case Gauge::RAD_k_blwa: return {{41, 10}, {{21, 5}, {41, 10}, {61, 20}}};
    case Gauge::pA_k_blwa: return {{41, 40}, {{21, 20}, {41, 40}, {61, 80}}};
  }
  return {};
}

Rung parse_rung(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    fail(path, "expected [n_basis, n_fock]");
  Rung r{v[0].get<int>(), v[1].get<int>()};
  if (r.n_basis < 1 || r.n_fock < 2) fail(path, "basis sizes must be n_basis >= 1 and n_fock >= 2");
  return r;
}

AxisRange parse_axis(Block b, AxisRange def) {
  AxisRange a = def;
  if (b.has("values")) {
    const json& v = b.raw("values");
    if (!v.is_array() || v.empty()) fail(b.key_path("values"), "expected a non-empty array of numbers");
    a.values.clear();
    for (const auto& x : v) {
      if (!x.is_number()) fail(b.key_path("values"), "expected numbers");
      a.values.push_back(x.get<double>());
    }
    for (size_t i = 1; i < a.values.size(); ++i)
      if (!(a.values[i] > a.values[i - 1])) fail(b.key_path("values"), "values must be strictly increasing");
  }
  a.min = b.number("min", def.min);
  a.max = b.number("max", def.max);
  a.points = b.integer("points", def.points);
  a.scale = b.string("scale", def.scale);
  if (a.scale != "linear" && a.scale != "log") fail(b.key_path("scale"), "expected \"linear\" or \"log\"");
  if (a.points < 1) fail(b.key_path("points"), "must be at least 1");
  if (a.max < a.min) fail(b.key_path("max"), "must not be below min");
  if (a.scale == "log" && !(a.min > 0.0)) fail(b.key_path("min"), "log axis needs a positive minimum");
  b.finish();
  return a;
}

json axis_json(const AxisRange& a) {
  json j = {{"min", a.min}, {"max", a.max}, {"points", a.points}, {"scale", a.scale}};
  if (!a.values.empty()) j["values"] = a.values;
  return j;
}

PotentialModel parse_model(Block& m, std::string& type, double mass) {
  type = m.string("type", "");
  PotentialModel model;
  if (type == "double_well") {
    model = DoubleWell{m.required_number("alpha"), m.required_number("beta")};
  } else if (type == "cosine") {
    model = Cosine{m.required_number("v0"), m.required_number("k0")};
  } else if (type == "erf_coulomb") {
    const double r0 = m.required_number("r0");
    const double a0 = m.required_number("a0");
    double Z;
    if (m.has("Z")) {
      Z = m.number("Z", 0.0);
      if (m.has("match_cosine_v0")) fail(m.key_path("match_cosine_v0"), "conflicts with Z; give one of them");
    } else if (m.has("match_cosine_v0")) {
      Z = erf_charge_matching_cosine(m.number("match_cosine_v0", 0.0), r0, a0);
    } else {
      fail(m.key_path("Z"), "give Z or match_cosine_v0");
    }
    model = PeriodicErfCoulomb{Z, r0, a0};
  } else if (type == "harmonic") {
    model = Harmonic{mass, m.required_number("omega")};
  } else if (type == "free") {
    model = Free{};
  } else {
    fail(m.key_path("type"), "unknown model type '" + type +
                                 "' (expected double_well, cosine, erf_coulomb, harmonic or free)");
  }
  try {
    validate(model);
  } catch (const Error& e) {
    fail(m.key_path("type"), e.what());
  }
  return model;
}

json model_json(const RunConfig& c) {
  json j = {{"type", c.model_type}, {"mass", c.problem.mass}, {"charge", c.problem.charge}};
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DoubleWell>) {
          j["alpha"] = m.alpha;
          j["beta"] = m.beta;
        } else if constexpr (std::is_same_v<T, Cosine>) {
          j["v0"] = m.v0;
          j["k0"] = m.k0;
        } else if constexpr (std::is_same_v<T, PeriodicErfCoulomb>) {
          j["Z"] = m.Z;
          j["r0"] = m.r0;
          j["a0"] = m.a0;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          j["omega"] = m.omega;
        }
      },
      c.problem.model);
  return j;
}

}  // namespace

std::vector<double> AxisRange::resolve() const {
  if (!values.empty()) return values;
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : double(i) / (points - 1);
    out[i] = scale == "log" ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  if (points > 1) out.back() = max;
  return out;
}

const GaugeBasis& RunConfig::basis_for(Gauge g) const {
  auto it = bases.find(g);
  if (it == bases.end()) throw Error(ErrorKind::Config, "no basis configured for gauge " + to_string(g));
  return it->second;
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  Block root(j, "");

  Block m = root.child("model");
  c.problem.mass = m.number("mass", 1.0);
  c.problem.charge = m.number("charge", -1.0);
  if (!(c.problem.mass > 0.0)) fail("model.mass", "must be positive");
  if (c.problem.charge == 0.0) fail("model.charge", "must be nonzero");
  c.problem.model = parse_model(m, c.model_type, c.problem.mass);
  m.finish();

  c.gauge = Gauge::RAD;
  if (root.has("gauge")) {
    try {
      c.gauge = parse_gauge(root.string("gauge", "rad"));
    } catch (const Error& e) {
      fail("gauge", e.what());
    }
  }

  Block cav = root.child("cavity");
  c.problem.omega_c = cav.number("omega_c", 1.0);
  if (!(c.problem.omega_c > 0.0)) fail("cavity.omega_c", "must be positive");
  c.problem.c = cav.number("c", 0.0);
  if (c.problem.c < 0.0) fail("cavity.c", "must be non-negative");
  c.gamma_over_omega = cav.number("gamma_over_omega", 0.0);
  if (c.gamma_over_omega < 0.0) fail("cavity.gamma_over_omega", "must be non-negative");
  try {
    c.problem.scaling = parse_coupling_scaling(cav.string("coupling_scaling", "fixed_A"));
  } catch (const Error& e) {
    fail("cavity.coupling_scaling", e.what());
  }
  cav.finish();

  Block b = root.child("basis");
  if (b.has("box_length")) {
    const json& v = b.raw("box_length");
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") fail("basis.box_length", "expected a positive number or \"auto\"");
    } else {
      c.problem.box_length = b.number("box_length", 0.0);
      if (!(*c.problem.box_length > 0.0)) fail("basis.box_length", "must be positive");
    }
  }
  c.problem.search_box = b.number("search_box", 8.0);
  c.problem.n_grid = b.integer("n_grid", 1024);
  c.problem.box_rule_grid = b.integer("box_rule_grid", 1200);
  c.problem.box_rule_margin = b.number("box_rule_margin", 4.0);
  c.problem.ring_cells = b.integer("ring_cells", 4);
  c.n_matter_states = b.integer("n_matter_states", 60);
  if (!(c.problem.search_box > 0.0)) fail("basis.search_box", "must be positive");
  if (c.problem.n_grid < 8) fail("basis.n_grid", "must be at least 8");
  if (c.problem.box_rule_grid < 8) fail("basis.box_rule_grid", "must be at least 8");
  if (c.problem.ring_cells < 1) fail("basis.ring_cells", "must be at least 1");
  if (c.n_matter_states < 1 || c.n_matter_states > c.problem.n_grid)
    fail("basis.n_matter_states", "must lie between 1 and n_grid");
  try {
    c.problem.blwa_op = parse_blwa_number_operator(b.string("blwa_number_operator", "coulomb"));
  } catch (const Error& e) {
    fail("basis.blwa_number_operator", e.what());
  }
  Block gauges = b.child("gauges");
  for (Gauge g : kAllGauges) {
    GaugeBasis gb = default_basis(g);
    const std::string name = to_string(g);
    if (gauges.has(name)) {
      Block gblk = gauges.child(name);
      if (gblk.has("rung")) gb.rung = parse_rung(gblk.raw("rung"), gblk.key_path("rung"));
      if (gblk.has("ladder")) {
        const json& l = gblk.raw("ladder");
        if (!l.is_array() || l.size() < 2) fail(gblk.key_path("ladder"), "expected at least two rungs");
        gb.ladder.clear();
        for (size_t i = 0; i < l.size(); ++i)
          gb.ladder.push_back(parse_rung(l[i], gblk.key_path("ladder") + "[" + std::to_string(i) + "]"));
        for (size_t i = 1; i < gb.ladder.size(); ++i)
          if (gb.ladder[i].n_basis <= gb.ladder[i - 1].n_basis || gb.ladder[i].n_fock <= gb.ladder[i - 1].n_fock)
            fail(gblk.key_path("ladder"), "rungs must increase in both sizes");
      }
      gblk.finish();
    }
    c.bases[g] = gb;
  }
  gauges.finish();
  b.finish();

  const bool periodic = is_periodic(c.problem.model);
  const double kb = periodic ? kPi / lattice_constant(c.problem.model) : 0.0;
  Block s = root.child("sweep");
  c.coupling = parse_axis(s.child("coupling"), AxisRange{{}, 1e-2, 1e2, 9, "log"});
  c.k = parse_axis(s.child("k"), AxisRange{{}, -kb, kb, periodic ? 41 : 1, "linear"});
  c.k_beta = parse_axis(s.child("k_beta"), c.k);
  c.k_point = s.number("k_point", 0.0);
  c.n_eigs = s.integer("n_eigs", 10);
  c.tolerance = s.number("tolerance", 1e-6);
  c.parallel = s.boolean("parallel", true);
  if (c.n_eigs < 1) fail("sweep.n_eigs", "must be at least 1");
  if (!(c.tolerance > 0.0)) fail("sweep.tolerance", "must be positive");
  s.finish();

  Block o = root.child("observables");
  c.photon_number = o.boolean("photon_number", false);
  c.problem.headroom_tol = o.number("headroom_tol", 1e-6);
  o.finish();

  Block out = root.child("output");
  c.output_directory = out.string("directory", "");
  c.eigenvectors = out.boolean("eigenvectors", false);
  c.wavefunctions = out.boolean("wavefunctions", false);
  c.problem.subtract_zero_point = out.boolean("subtract_zero_point", true);
  out.finish();

  root.finish();
  return c;
}

json to_json(const RunConfig& c) {
  json gauges = json::object();
  for (const auto& [g, gb] : c.bases) {
    json ladder = json::array();
    for (const auto& r : gb.ladder) ladder.push_back({r.n_basis, r.n_fock});
    gauges[to_string(g)] = {{"rung", {gb.rung.n_basis, gb.rung.n_fock}}, {"ladder", ladder}};
  }
  json basis = {{"search_box", c.problem.search_box},
                {"n_grid", c.problem.n_grid},
                {"box_rule_grid", c.problem.box_rule_grid},
                {"box_rule_margin", c.problem.box_rule_margin},
                {"ring_cells", c.problem.ring_cells},
                {"n_matter_states", c.n_matter_states},
                {"blwa_number_operator", to_string(c.problem.blwa_op)},
                {"gauges", gauges}};
  basis["box_length"] = c.problem.box_length ? json(*c.problem.box_length) : json("auto");
  return {{"model", model_json(c)},
          {"gauge", to_string(c.gauge)},
          {"cavity",
           {{"omega_c", c.problem.omega_c},
            {"c", c.problem.c},
            {"gamma_over_omega", c.gamma_over_omega},
            {"coupling_scaling", to_string(c.problem.scaling)}}},
          {"basis", basis},
          {"sweep",
           {{"coupling", axis_json(c.coupling)},
            {"k", axis_json(c.k)},
            {"k_beta", axis_json(c.k_beta)},
            {"k_point", c.k_point},
            {"n_eigs", c.n_eigs},
            {"tolerance", c.tolerance},
            {"parallel", c.parallel}}},
          {"observables",
           {{"photon_number", c.photon_number}, {"headroom_tol", c.problem.headroom_tol}}},
          {"output",
           {{"directory", c.output_directory},
            {"eigenvectors", c.eigenvectors},
            {"wavefunctions", c.wavefunctions},
            {"subtract_zero_point", c.problem.subtract_zero_point}}}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Config, "cannot open config file " + path.string());
  try {
    return json::parse(f, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

}  // namespace cqed
