#include "cqed/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cqed/persist.hpp"

namespace cqed {

using nlohmann::json;

namespace {

bool k_resolved(Gauge g) { return g == Gauge::RAD_k || g == Gauge::RAD_k_blwa || g == Gauge::pA_k_blwa; }

AxisPoint point_at(const RunConfig& c, double gamma_over_omega) {
  AxisPoint p;
  p.gamma_over_omega = gamma_over_omega;
  if (k_resolved(c.gauge)) p.k = c.k_point;
  return p;
}

SweepSpec base_spec(const RunConfig& c) {
  SweepSpec s;
  s.gauge = c.gauge;
  s.rung = c.basis_for(c.gauge).rung;
  s.n_eigs = c.n_eigs;
  s.want_vectors = c.eigenvectors;
  s.photon_numbers = c.photon_number;
  s.exec = c.parallel ? Exec::Parallel : Exec::Serial;
  return s;
}

std::vector<AxisPoint> coupling_points(const RunConfig& c) {
  std::vector<AxisPoint> pts;
  for (double g : c.coupling.resolve()) pts.push_back(point_at(c, g));
  return pts;
}

std::vector<AxisPoint> k_points(const RunConfig& c) {
  std::vector<AxisPoint> pts;
  for (double k : c.k.resolve()) {
    AxisPoint p;
    p.gamma_over_omega = c.gamma_over_omega;
    p.k = k;
    pts.push_back(p);
  }
  return pts;
}

SweepResult run_sweep(const RunConfig& c, const SweepSpec& s) {
  return k_resolved(c.gauge) ? sweep_dispersion(c.problem, s) : sweep_coupling(c.problem, s);
}

void write_run_json(const std::filesystem::path& dir, const std::string& command, const RunConfig& c) {
  write_json(dir / "run.json", {{"schema_version", kSchemaVersion}, {"command", command}, {"config", to_json(c)}});
}

void write_sweep(const std::filesystem::path& dir, const RunConfig& c, const SweepResult& r, bool dispersion) {
  if (dispersion) {
    write_text(dir / "dispersion.csv", dispersion_csv(r));
  } else {
    write_text(dir / "spectrum.csv", spectrum_csv(r));
  }
  if (c.photon_number) write_text(dir / "observables.csv", observables_csv(r));
  write_json(dir / "result.json", result_envelope(to_json(c), &r, nullptr, c.eigenvectors));
}

void log_sweep(std::ostream& log, const SweepResult& r) {
  log << "gauge " << to_string(r.gauge) << ", rung (" << r.rung.n_basis << ", " << r.rung.n_fock << "), "
      << r.points.size() << " point(s), " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
  log.unsetf(std::ios::floatfield);
  if (!r.points.empty()) {
    const auto& p = r.points.front();
    log << "  first point: dim " << p.dim << ", lowest energy " << std::setprecision(12)
        << (p.reported.size() ? p.reported(0) : std::nan("")) << '\n';
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"matter-solve", "spectrum",    "sweep-coupling", "dispersion",
                                                 "dispersion2d", "convergence", "photon-number",  "replay"};
  return names;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidBasis:
    case ErrorKind::Unsupported:
      return 2;
    case ErrorKind::Numeric:
    case ErrorKind::Singularity:
    case ErrorKind::NonHermitian:
    case ErrorKind::DimensionMismatch:
      return 3;
    case ErrorKind::Io:
      return 1;
  }
  return 1;
}

std::string resolve_output_directory(const std::optional<std::string>& flag, const std::string& configured) {
  if (flag && !flag->empty()) return *flag;
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("CQED_OUTPUT_DIR"); env && *env) return env;
  return "cqed_out";
}

std::filesystem::path execute_command(const CommandOptions& opt, std::ostream& log) {
  std::string command = opt.command;
  RunConfig c;
  if (command == "replay") {
    const json run = read_json_file(opt.config);
    if (!run.is_object() || !run.contains("command") || !run.contains("config") || !run["command"].is_string())
      throw Error(ErrorKind::Config, opt.config.string() + ": not a run record (needs command and config)");
    command = run["command"].get<std::string>();
    if (command == "replay") throw Error(ErrorKind::Config, "a run record cannot replay itself");
    c = parse_config(run["config"]);
  } else {
    bool known = false;
    for (const auto& n : command_names()) known = known || n == command;
    if (!known) throw Error(ErrorKind::Config, "unknown command '" + command + "'");
    c = load_config(opt.config);
  }
  if (opt.gauge) c.gauge = parse_gauge(*opt.gauge);
  if (opt.eigvecs) c.eigenvectors = true;
  c.output_directory = resolve_output_directory(opt.out, c.output_directory);
  const std::filesystem::path dir = c.output_directory;

  log << command << ": model " << c.model_type << ", output " << dir.string() << '\n';
  if (command == "matter-solve") {
    const auto sol = c.problem.matter(c.n_matter_states);
    write_text(dir / "matter_energies.csv", matter_energies_csv(*sol));
    write_text(dir / "dipoles.csv", dipoles_csv(*sol));
    json mj = to_json(*sol, c.wavefunctions);
    mj["schema_version"] = kSchemaVersion;
    write_json(dir / "matter.json", mj);
    log << "  " << sol->energies.size() << " states, E0 = " << std::setprecision(12) << sol->energies(0) << '\n';
  } else if (command == "spectrum") {
    SweepSpec s = base_spec(c);
    s.points = {point_at(c, c.gamma_over_omega)};
    const SweepResult r = run_sweep(c, s);
    write_sweep(dir, c, r, false);
    log_sweep(log, r);
  } else if (command == "sweep-coupling") {
    SweepSpec s = base_spec(c);
    s.points = coupling_points(c);
    const SweepResult r = run_sweep(c, s);
    write_sweep(dir, c, r, false);
    log_sweep(log, r);
  } else if (command == "dispersion" || command == "dispersion2d") {
    if (!k_resolved(c.gauge))
      throw Error(ErrorKind::Unsupported, command + " needs a k-resolved gauge (rad-k, rad-k-blwa or pa-k-blwa)");
    SweepSpec s = base_spec(c);
    if (command == "dispersion") {
      s.points = k_points(c);
    } else {
      for (double kb : c.k_beta.resolve())
        for (AxisPoint p : k_points(c)) {
          p.k_beta = kb;
          s.points.push_back(p);
        }
    }
    const SweepResult r = sweep_dispersion(c.problem, s);
    write_sweep(dir, c, r, true);
    if (command == "dispersion2d") {
      SweepResult diag = r;
      diag.points.clear();
      for (const auto& p : r.points)
        if (std::abs(p.point.k - p.point.k_beta.value_or(p.point.k)) <= 1e-12 * (1.0 + std::abs(p.point.k)))
          diag.points.push_back(p);
      write_text(dir / "cross_section.csv", dispersion_csv(diag));
    }
    log_sweep(log, r);
  } else if (command == "convergence") {
    SweepSpec s = base_spec(c);
    s.points = coupling_points(c);
    const ConvergenceTable t = convergence_study(c.problem, s, c.basis_for(c.gauge).ladder, c.tolerance);
    write_text(dir / "convergence.csv", convergence_csv(t));
    write_text(dir / "spectrum.csv", spectrum_csv(t.sweeps.back()));
    write_json(dir / "result.json", result_envelope(to_json(c), nullptr, &t, false));
    log << "  rung        max|dE|      max rel      seconds\n";
    for (size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      std::ostringstream line;
      line << "  (" << row.rung.n_basis << ", " << row.rung.n_fock << ")" << std::scientific << std::setprecision(3)
           << "  " << row.max_abs_delta << "  " << row.max_rel_delta << "  " << std::fixed << std::setprecision(2)
           << row.seconds << (int(i) == t.converged_rung ? "  converged" : "")
           << (i + 1 == t.rows.size() ? "  reference" : "");
      log << line.str() << '\n';
    }
    if (!t.monotone) log << "  warning: deviations do not decrease monotonically up the ladder\n";
  } else if (command == "photon-number") {
    c.photon_number = true;
    SweepSpec s = base_spec(c);
    const bool disp = k_resolved(c.gauge);
    s.points = disp ? k_points(c) : coupling_points(c);
    const SweepResult r = run_sweep(c, s);
    write_sweep(dir, c, r, disp);
    log_sweep(log, r);
  }
  write_run_json(dir, command, c);
  return dir;
}

int run_command(const CommandOptions& opt, std::ostream& log, std::ostream& err) {
  try {
    execute_command(opt, log);
    return 0;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cqed
