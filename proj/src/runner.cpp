#include "cqed/runner.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>

namespace cqed {

namespace {

double wall_now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

bool is_k_resolved(Gauge g) { return g == Gauge::RAD_k || g == Gauge::RAD_k_blwa || g == Gauge::pA_k_blwa; }

std::string describe(const AxisPoint& pt) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "gamma/omega=%.6g, k=%.6g", pt.gamma_over_omega, pt.k);
  std::string s = buf;
  if (pt.k_beta) {
    std::snprintf(buf, sizeof buf, ", k_beta=%.6g", *pt.k_beta);
    s += buf;
  }
  return s;
}

void check_axis(const std::vector<AxisPoint>& pts) {
  auto key = [](const AxisPoint& p) {
    return std::array<double, 3>{p.gamma_over_omega, p.k_beta.value_or(p.k), p.k};
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!std::isfinite(p.gamma_over_omega) || !std::isfinite(p.k) || (p.k_beta && !std::isfinite(*p.k_beta)))
      throw Error(ErrorKind::InvalidArgument, "axis value is not finite at " + describe(p));
    if (i > 0 && key(pts[i]) < key(pts[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "axis is not sorted at " + describe(p));
  }
}

}  // namespace

std::shared_ptr<const MatterSolution> Problem::matter(int n_states) const {
  std::lock_guard<std::mutex> lock(*matter_mutex_);
  if (!matter_ || matter_->energies.size() < n_states) {
    const RealGrid grid(n_grid, search_box);
    if (n_states > n_grid) throw Error(ErrorKind::InvalidBasis, "more matter states requested than grid points");
    matter_ = std::make_shared<const MatterSolution>(
        matter_eigenstates(dvr_hamiltonian(grid, model, mass), n_states, grid));
  }
  return matter_;
}

double resolved_box_length(const Problem& p, Gauge g, double gamma_over_omega, int n_levels) {
  if (p.box_length) {
    if (!(*p.box_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "box length must be positive");
    return *p.box_length;
  }
  if (is_periodic(p.model)) return p.ring_cells * lattice_constant(p.model);
  double mass = p.mass;
  double margin = 0.0;
  if (is_rad_family(g)) {
    const RadFrame fr = make_rad_frame(p.omega_c, gamma_over_omega * p.omega_c, p.mass);
    mass = fr.m_eff;
    margin = 2.0 * p.box_rule_margin * fr.xi * std::sqrt(fr.Omega / 2.0);
  }
  return localization_width(p.model, mass, n_levels + 2, p.search_box, p.box_rule_grid) + margin;
}

GaugeHamiltonian build_hamiltonian(const Problem& p, Gauge g, const AxisPoint& pt, const Rung& rung, int n_levels,
                                   Exec exec) {
  const double w = p.omega_c;
  const double gamma = pt.gamma_over_omega * w;
  if (gamma < 0.0) throw Error(ErrorKind::InvalidArgument, "coupling must be non-negative");
  if (!is_k_resolved(g) && (pt.k != 0.0 || pt.k_beta))
    throw Error(ErrorKind::InvalidArgument, "gauge " + to_string(g) + " has no crystal momentum axis");
  switch (g) {
    case Gauge::PF: {
      const double A0 = vector_potential_for_gamma(w, gamma, p.charge, p.mass);
      return build_pf(*p.matter(rung.n_basis), w, A0, rung.n_basis, rung.n_fock, PfStorage::Auto, exec);
    }
    case Gauge::pA: {
      const double A0 = vector_potential_for_gamma(w, gamma, p.charge, p.mass);
      const double L = resolved_box_length(p, g, pt.gamma_over_omega, n_levels);
      return build_pa_lwa(p.model, L, rung.n_basis, p.mass, p.charge, w, A0, rung.n_fock, exec);
    }
    case Gauge::AD:
      return build_ad_cosine(p.model, p.ring_cells, rung.n_basis, p.mass, w, gamma, rung.n_fock);
    case Gauge::RAD: {
      const double L = resolved_box_length(p, g, pt.gamma_over_omega, n_levels);
      return build_rad_single(p.model, L, rung.n_basis, p.mass, w, gamma, rung.n_fock, exec);
    }
    case Gauge::RAD_k:
    case Gauge::RAD_k_blwa:
    case Gauge::pA_k_blwa: {
      const auto ctx = KResolvedContext::make(pt.k, lattice_constant(p.model), rung.n_basis, rung.n_fock, pt.k_beta);
      const CavitySettings cav{w, p.c, gamma, p.scaling};
      if (g == Gauge::RAD_k) return build_rad_k(p.model, ctx, cav, p.mass, exec);
      if (g == Gauge::RAD_k_blwa) return build_rad_k_blwa(p.model, ctx, cav, p.mass, p.blwa_op, exec);
      return build_pa_k_blwa_exact(p.model, ctx, cav, p.mass, p.charge);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown gauge");
}

std::vector<AxisPoint> log_coupling_axis(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw Error(ErrorKind::InvalidArgument, "bad logarithmic coupling axis");
  std::vector<AxisPoint> out(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : double(i) / (n - 1);
    out[i].gamma_over_omega = lo * std::pow(hi / lo, t);
  }
  if (n > 1) out.back().gamma_over_omega = hi;
  return out;
}

std::vector<AxisPoint> k_axis(double k_lo, double k_hi, int n, double gamma_over_omega) {
  if (n < 1 || k_hi < k_lo) throw Error(ErrorKind::InvalidArgument, "bad crystal momentum axis");
  std::vector<AxisPoint> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].gamma_over_omega = gamma_over_omega;
    out[i].k = n == 1 ? k_lo : k_lo + (k_hi - k_lo) * i / (n - 1);
  }
  return out;
}

SweepResult run_points(const Problem& p, const SweepSpec& spec) {
  if (spec.rung.n_basis < 1 || spec.rung.n_fock < 2) throw Error(ErrorKind::InvalidBasis, "basis rung is too small");
  if (spec.n_eigs < 1) throw Error(ErrorKind::InvalidArgument, "n_eigs must be positive");
  SweepResult res;
  res.gauge = spec.gauge;
  res.rung = spec.rung;
  res.axis = "coupling";
  check_axis(spec.points);
  res.points.resize(spec.points.size());
  if (spec.gauge == Gauge::PF) p.matter(spec.rung.n_basis);

  const double t0 = wall_now();
  const bool need_vectors = spec.want_vectors || spec.photon_numbers;
  const long n = long(spec.points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (spec.exec == Exec::Parallel && n > 1)
  for (long i = 0; i < n; ++i) {
    try {
      const double t = wall_now();
      PointResult& out = res.points[i];
      out.point = spec.points[i];
      const GaugeHamiltonian H = build_hamiltonian(p, spec.gauge, out.point, spec.rung, spec.n_eigs, spec.exec);
      const SpectrumResult s = H.solve(spec.n_eigs, need_vectors);
      out.energies = s.values;
      out.zero_point = H.zero_point;
      out.reported = p.subtract_zero_point ? Vec(s.values.array() - H.zero_point) : s.values;
      out.dim = H.dim();
      auto it = H.params.find("box_length");
      out.box_length = it != H.params.end() ? it->second : 0.0;
      out.max_residual = s.residuals.size() ? s.residuals.maxCoeff() : 0.0;
      if (spec.photon_numbers) {
        const bool coulomb = H.gauge != Gauge::PF && H.gauge != Gauge::AD && H.basis.fock_dims.size() == 1;
        for (long c = 0; c < s.vectors.cols(); ++c) {
          const CVec v = s.vectors.col(c);
          out.fock_excitation.push_back(fock_excitation(v, H));
          if (coulomb) {
            const PhotonNumber pn = coulomb_photon_number(v, H, p.headroom_tol);
            out.photon_number.push_back(pn.value);
            out.top_population.push_back(pn.top_population);
          } else {
            out.photon_number.push_back(std::nan(""));
            const Vec pop = photon_populations(v, H.basis)[0];
            out.top_population.push_back(pop.tail(2).sum());
          }
        }
      }
      if (spec.want_vectors) out.vectors = s.vectors;
      out.seconds = wall_now() - t;
    } catch (const Error& e) {
#pragma omp critical(cqed_runner_failure)
      if (!failure)
        failure = std::make_exception_ptr(Error(e.kind(), std::string(e.what()) + " (at " + describe(spec.points[i]) + ")"));
    } catch (...) {
#pragma omp critical(cqed_runner_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  res.seconds = wall_now() - t0;
  return res;
}

SweepResult sweep_coupling(const Problem& p, const SweepSpec& spec) {
  for (const auto& pt : spec.points)
    if (pt.k != 0.0 || pt.k_beta) throw Error(ErrorKind::InvalidArgument, "coupling sweeps run at k = 0");
  SweepResult r = run_points(p, spec);
  r.axis = "coupling";
  return r;
}

SweepResult sweep_dispersion(const Problem& p, const SweepSpec& spec) {
  if (!is_k_resolved(spec.gauge))
    throw Error(ErrorKind::InvalidArgument, "dispersion needs a k-resolved gauge, got " + to_string(spec.gauge));
  bool two_d = false;
  for (const auto& pt : spec.points) two_d = two_d || pt.k_beta.has_value();
  SweepResult r = run_points(p, spec);
  r.axis = two_d ? "k_kbeta" : "k";
  return r;
}

ConvergenceTable convergence_study(const Problem& p, const SweepSpec& spec, const std::vector<Rung>& ladder,
                                   double tolerance) {
  if (ladder.size() < 2) throw Error(ErrorKind::InvalidArgument, "convergence needs at least two rungs");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i].n_basis <= ladder[i - 1].n_basis || ladder[i].n_fock <= ladder[i - 1].n_fock)
      throw Error(ErrorKind::InvalidArgument, "basis ladder must increase in both sizes from rung to rung");
  ConvergenceTable tab;
  tab.gauge = spec.gauge;
  tab.tolerance = tolerance;
  for (const Rung& r : ladder) {
    SweepSpec s = spec;
    s.rung = r;
    s.want_vectors = false;
    s.photon_numbers = false;
    tab.sweeps.push_back(run_points(p, s));
  }
  const SweepResult& ref = tab.sweeps.back();
  for (size_t i = 0; i < ladder.size(); ++i) {
    const SweepResult& sw = tab.sweeps[i];
    ConvergenceRow row;
    row.rung = ladder[i];
    row.seconds = sw.seconds;
    for (size_t j = 0; j < sw.points.size(); ++j) {
      const Vec& a = sw.points[j].energies;
      const Vec& b = ref.points[j].energies;
      row.dim = std::max(row.dim, sw.points[j].dim);
      const long m = std::min(a.size(), b.size());
      double point_delta = 0.0;
      for (long e = 0; e < m; ++e) {
        const double d = std::abs(a(e) - b(e));
        point_delta = std::max(point_delta, d);
        row.max_abs_delta = std::max(row.max_abs_delta, d);
        row.max_rel_delta = std::max(row.max_rel_delta, d / std::max(std::abs(b(e)), 1e-300));
      }
      row.point_abs_delta.push_back(point_delta);
    }
    tab.rows.push_back(row);
  }
  for (size_t i = 0; i + 1 < tab.rows.size(); ++i) {
    if (tab.converged_rung < 0 && tab.rows[i].max_rel_delta <= tolerance) tab.converged_rung = int(i);
    if (i > 0 && tab.rows[i].max_abs_delta > tab.rows[i - 1].max_abs_delta * (1.0 + 1e-9) + 1e-14)
      tab.monotone = false;
  }
  return tab;
}

}  // namespace cqed
