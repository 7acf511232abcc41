#include "cqed/persist.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cqed {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorKind::Io, "number formatting failed");
  return std::string(buf, end);
}

namespace {

double observable_at(const std::vector<double>& v, long i) { return i < long(v.size()) ? v[i] : std::nan(""); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (long i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json point_axis(const AxisPoint& p) {
  json j = {{"gamma_over_omega", p.gamma_over_omega}, {"k", p.k}};
  if (p.k_beta) j["k_beta"] = *p.k_beta;
  return j;
}

}  // namespace

std::string spectrum_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "gamma_over_omega,eig_index,energy\n";
  for (const auto& p : r.points)
    for (long e = 0; e < p.reported.size(); ++e)
      os << format_number(p.point.gamma_over_omega) << ',' << e << ',' << format_number(p.reported(e)) << '\n';
  return os.str();
}

std::string dispersion_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "k,k_beta,band,energy,photon_number\n";
  for (const auto& p : r.points)
    for (long e = 0; e < p.reported.size(); ++e)
      os << format_number(p.point.k) << ',' << format_number(p.point.k_beta.value_or(p.point.k)) << ',' << e << ','
         << format_number(p.reported(e)) << ',' << format_number(observable_at(p.photon_number, e)) << '\n';
  return os.str();
}

std::string observables_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "gamma_over_omega,k,k_beta,eig_index,energy,photon_number,fock_excitation,top_population\n";
  for (const auto& p : r.points)
    for (long e = 0; e < p.reported.size(); ++e)
      os << format_number(p.point.gamma_over_omega) << ',' << format_number(p.point.k) << ','
         << format_number(p.point.k_beta.value_or(p.point.k)) << ',' << e << ',' << format_number(p.reported(e))
         << ',' << format_number(observable_at(p.photon_number, e)) << ','
         << format_number(observable_at(p.fock_excitation, e)) << ','
         << format_number(observable_at(p.top_population, e)) << '\n';
  return os.str();
}

std::string matter_energies_csv(const MatterSolution& sol) {
  std::ostringstream os;
  os << "index,energy\n";
  for (long i = 0; i < sol.energies.size(); ++i) os << i << ',' << format_number(sol.energies(i)) << '\n';
  return os.str();
}

std::string dipoles_csv(const MatterSolution& sol) {
  std::ostringstream os;
  os << "i,j,dipole\n";
  for (long i = 0; i < sol.dipoles.rows(); ++i)
    for (long j = 0; j < sol.dipoles.cols(); ++j) os << i << ',' << j << ',' << format_number(sol.dipoles(i, j)) << '\n';
  return os.str();
}

std::string convergence_csv(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "rung,n_basis,n_fock,dim,max_abs_delta,max_rel_delta,seconds,converged\n";
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    os << i << ',' << r.rung.n_basis << ',' << r.rung.n_fock << ',' << r.dim << ',' << format_number(r.max_abs_delta)
       << ',' << format_number(r.max_rel_delta) << ',' << format_number(r.seconds) << ','
       << (int(i) == t.converged_rung ? 1 : 0) << '\n';
  }
  return os.str();
}

json to_json(const SweepResult& r, bool with_vectors) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json j = point_axis(p.point);
    j["energies"] = vec_json(p.reported);
    j["raw_eigenvalues"] = vec_json(p.energies);
    j["zero_point"] = p.zero_point;
    j["dim"] = p.dim;
    j["max_residual"] = p.max_residual;
    if (p.box_length > 0.0) j["box_length"] = p.box_length;
    if (!p.photon_number.empty()) {
      j["photon_number"] = p.photon_number;
      j["fock_excitation"] = p.fock_excitation;
      j["top_population"] = p.top_population;
    }
    if (with_vectors && p.vectors.size()) {
      json re = json::array(), im = json::array();
      for (long c = 0; c < p.vectors.cols(); ++c) {
        json cr = json::array(), ci = json::array();
        for (long i = 0; i < p.vectors.rows(); ++i) {
          cr.push_back(p.vectors(i, c).real());
          ci.push_back(p.vectors(i, c).imag());
        }
        re.push_back(cr);
        im.push_back(ci);
      }
      j["eigenvectors"] = {{"real", re}, {"imag", im}};
    }
    pts.push_back(j);
  }
  return {{"axis", r.axis},
          {"gauge", to_string(r.gauge)},
          {"rung", {{"n_basis", r.rung.n_basis}, {"n_fock", r.rung.n_fock}}},
          {"points", pts}};
}

json to_json(const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n_basis", r.rung.n_basis},
                    {"n_fock", r.rung.n_fock},
                    {"dim", r.dim},
                    {"max_abs_delta", r.max_abs_delta},
                    {"max_rel_delta", r.max_rel_delta},
                    {"point_abs_delta", r.point_abs_delta},
                    {"seconds", r.seconds}});
  json j = {{"gauge", to_string(t.gauge)}, {"tolerance", t.tolerance}, {"rows", rows}, {"monotone", t.monotone}};
  j["converged_rung"] = t.converged_rung >= 0 ? json(t.converged_rung) : json(nullptr);
  return j;
}

json to_json(const MatterSolution& sol, bool with_wavefunctions) {
  json j = {{"energies", vec_json(sol.energies)},
            {"grid", {{"n_points", sol.grid.n_points}, {"box_length", sol.grid.box_length}}}};
  json d = json::array();
  for (long i = 0; i < sol.dipoles.rows(); ++i) d.push_back(vec_json(sol.dipoles.row(i).transpose()));
  j["dipoles"] = d;
  if (with_wavefunctions) {
    json w = json::array();
    for (long c = 0; c < sol.wavefunctions.cols(); ++c) w.push_back(vec_json(sol.wavefunctions.col(c)));
    j["x"] = vec_json(sol.grid.points());
    j["wavefunctions"] = w;
  }
  return j;
}

json result_envelope(const json& config, const SweepResult* sweep, const ConvergenceTable* conv, bool with_vectors) {
  json env = {{"schema_version", kSchemaVersion}, {"config", config}};
  json axis = json::array(), eig = json::array(), obs = json::array(), timings = json::object();
  const SweepResult* s = sweep ? sweep : (conv && !conv->sweeps.empty() ? &conv->sweeps.back() : nullptr);
  if (s) {
    const json body = to_json(*s, with_vectors);
    for (const auto& p : body["points"]) {
      json a = {{"gamma_over_omega", p["gamma_over_omega"]}, {"k", p["k"]}};
      if (p.contains("k_beta")) a["k_beta"] = p["k_beta"];
      axis.push_back(a);
      eig.push_back(p["energies"]);
      json o = json::object();
      for (const char* key : {"photon_number", "fock_excitation", "top_population", "eigenvectors"})
        if (p.contains(key)) o[key] = p[key];
      o["max_residual"] = p["max_residual"];
      o["dim"] = p["dim"];
      obs.push_back(o);
    }
    json per_point = json::array();
    for (const auto& p : s->points) per_point.push_back(p.seconds);
    timings["per_point_seconds"] = per_point;
    timings["total_seconds"] = s->seconds;
    env["gauge"] = to_string(s->gauge);
  }
  env["axis"] = axis;
  env["eigenvalues"] = eig;
  env["observables"] = obs;
  env["convergence"] = conv ? to_json(*conv) : json(nullptr);
  env["timings"] = timings;
  return env;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    f << body;
    if (!f) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot move output into " + path.string() + ": " + ec.message());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace cqed
