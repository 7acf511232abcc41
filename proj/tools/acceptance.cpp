// Evaluates every acceptance criterion and prints one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cqed/config.hpp"
#include "cqed/runner.hpp"

using namespace cqed;

namespace {

#ifndef CQED_CONFIG_DIR
#define CQED_CONFIG_DIR "configs"
#endif

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

double now() { return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count(); }

std::string fmt(const char* f, double x) {
  char b[64];
  std::snprintf(b, sizeof b, f, x);
  return b;
}

std::string sci(double x) { return fmt("%.2e", x); }

double max_rel(const Vec& a, const Vec& b, long n) {
  double d = 0.0;
  for (long i = 0; i < std::min({n, a.size(), b.size()}); ++i) d = std::max(d, std::abs(a(i) - b(i)) / std::abs(b(i)));
  return d;
}

double max_abs(const Vec& a, const Vec& b, long n) {
  double d = 0.0;
  for (long i = 0; i < std::min({n, a.size(), b.size()}); ++i) d = std::max(d, std::abs(a(i) - b(i)));
  return d;
}

RunConfig config(const std::string& name) { return load_config(std::string(CQED_CONFIG_DIR) + "/" + name + ".json"); }

Vec lowest(std::vector<double> v, long n) {
  std::sort(v.begin(), v.end());
  Vec out(std::min<long>(n, long(v.size())));
  for (long i = 0; i < out.size(); ++i) out(i) = v[i];
  return out;
}

// Every product energy E_i + Omega (n + 1/2).
Vec product_spectrum(const Vec& matter, double Omega, int n_fock, long n) {
  std::vector<double> all;
  for (long i = 0; i < matter.size(); ++i)
    for (int f = 0; f < n_fock; ++f) all.push_back(matter(i) + Omega * (f + 0.5));
  return lowest(all, n);
}

Vec eigenvalues(const HermitianMatrix& h) { return eig_hermitian(h, false, -1).values; }

// Bloch Hamiltonian (k + G)^2 / 2m + v(G - G') from the unit-cell coefficients.
Vec bloch_energies(const PotentialModel& model, double k, int n_bands, double mass) {
  const double b = 2.0 * kPi / lattice_constant(model);
  const int nmax = (n_bands - 1) / 2;
  CMat h = CMat::Zero(n_bands, n_bands);
  for (int i = 0; i < n_bands; ++i) {
    const double K = k + (i - nmax) * b;
    h(i, i) = K * K / (2.0 * mass);
    for (int j = 0; j < n_bands; ++j)
      if (j != i) h(i, j) = unit_cell_fourier_coeff(model, (i - j) * b);
  }
  return eigenvalues(HermitianMatrix(h));
}

// ---------------------------------------------------------------------------

Outcome bogoliubov_check() {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> logw(std::log(0.1), std::log(10.0)), ratio(0.0, 1.0);
  const int nf = 60, keep = (nf + 2) / 3;
  double worst_omega = 0.0, worst_norm = 0.0, worst_matrix = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const double w = std::exp(logw(rng));
    const double g = ratio(rng) * w;
    const BogoliubovResult r = bogoliubov(w, g);
    worst_omega = std::max(worst_omega, std::abs(r.Omega - std::sqrt(w * w + 2 * g * g)) / r.Omega);
    worst_norm = std::max(worst_norm, std::abs(r.u * r.u - r.v * r.v - 1.0));
    const Mat a = fock_real(FockBasis(nf, w), FockOp::Lower);
    const Mat I = Mat::Identity(nf, nf);
    const Mat b = r.u * a + r.v * a.transpose();
    const Mat lhs = kHbar * r.Omega * (b.transpose() * b + 0.5 * I);
    const Mat rhs = kHbar * w * (a.transpose() * a + 0.5 * I) + (kHbar * g * g / (2 * w)) * quadrature_square(nf);
    const double scale = rhs.topLeftCorner(keep, keep).norm();
    worst_matrix = std::max(worst_matrix, (lhs - rhs).topLeftCorner(keep, keep).norm() / scale);
  }
  Outcome o;
  o.pass = worst_omega <= 1e-12 && worst_norm <= 1e-12 && worst_matrix <= 1e-8;
  o.detail = "Omega rel " + sci(worst_omega) + ", |u^2-v^2-1| " + sci(worst_norm) + ", matrix identity rel " +
             sci(worst_matrix) + " over 100 draws";
  return o;
}

Outcome zero_coupling_check() {
  std::ostringstream detail;
  double worst = 0.0;
  auto note = [&](const std::string& name, double d) {
    worst = std::max(worst, d);
    detail << name << ' ' << sci(d) << "; ";
  };
  const long n = 20;
  const RunConfig shallow = config("shallow_well");
  const Problem& p = shallow.problem;
  const double w = p.omega_c;

  {
    const auto sol = p.matter(20);
    const GaugeHamiltonian H = build_pf(*sol, w, 0.0, 20, 12);
    note("pf", max_abs(H.solve(n, false).values, product_spectrum(sol->energies.head(20), w, 12, n), n));
  }
  const double L = 6.0;
  const Vec em = eigenvalues(k_space_matter_hamiltonian(p.model, L, 64, p.mass));
  note("pa", max_abs(build_pa_lwa(p.model, L, 64, p.mass, p.charge, w, 0.0, 10).solve(n, false).values,
                     product_spectrum(em, w, 10, n), n));
  note("rad", max_abs(build_rad_single(p.model, L, 64, p.mass, w, 0.0, 10).solve(n, false).values,
                      product_spectrum(em, w, 10, n), n));
  {
    NormalModeSet nm = normal_mode_transform({CavityMode{w, 0.0, {1.0}}, CavityMode{1.7 * w, 0.0, {1.0}}},
                                             {p.charge}, {p.mass});
    const GaugeHamiltonian H = build_rad_multimode(p.model, L, 48, p.mass, nm, {6, 5});
    const Vec em48 = eigenvalues(k_space_matter_hamiltonian(p.model, L, 48, p.mass));
    std::vector<double> all;
    for (long i = 0; i < em48.size(); ++i)
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 5; ++b) all.push_back(em48(i) + w * (a + 0.5) + 1.7 * w * (b + 0.5));
    note("rad-multimode", max_abs(H.solve(n, false).values, lowest(all, n), n));
  }

  const RunConfig cos = config("cosine");
  {
    const Problem& q = cos.problem;
    const RealGrid ring(33, q.ring_cells * lattice_constant(q.model));
    const Vec ed = eigenvalues(periodic_dvr_hamiltonian(ring, q.model, q.mass));
    note("ad", max_abs(build_ad_cosine(q.model, q.ring_cells, 33, q.mass, q.omega_c, 0.0, 10).solve(n, false).values,
                       product_spectrum(ed, q.omega_c, 10, n), n));
  }

  const RunConfig erf = config("erf_lattice");
  const Problem& e = erf.problem;
  const double k = 0.3 * kPi / lattice_constant(e.model), kb = 0.5 * kPi / lattice_constant(e.model);
  const int nb = 21, nf = 6;
  const CavitySettings cav{e.omega_c, e.c, 0.0, e.scaling};
  {
    const auto ctx = KResolvedContext::make(k, lattice_constant(e.model), nb, nf);
    note("rad-k", max_abs(build_rad_k(e.model, ctx, cav, e.mass).solve(n, false).values,
                          product_spectrum(bloch_energies(e.model, k, nb, e.mass), cav.omega_at(k), nf, n), n));
  }
  {
    // With the photon momentum absorbed, n photons shift the matter momentum by n k_beta.
    const auto ctx = KResolvedContext::make(k, lattice_constant(e.model), nb, nf, kb);
    std::vector<double> all;
    for (int f = 0; f < nf; ++f) {
      const Vec eb = bloch_energies(e.model, k - f * kb, nb, e.mass);
      for (long i = 0; i < eb.size(); ++i) all.push_back(eb(i) + cav.omega_at(kb) * (f + 0.5));
    }
    const Vec expect = lowest(all, n);
    note("rad-k-blwa", max_abs(build_rad_k_blwa(e.model, ctx, cav, e.mass).solve(n, false).values, expect, n));
    note("pa-k-blwa",
         max_abs(build_pa_k_blwa_exact(e.model, ctx, cav, e.mass, e.charge).solve(n, false).values, expect, n));
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = "max deviation " + sci(worst) + " (" + detail.str() + "lowest 20 levels)";
  return o;
}

Outcome gauge_invariance_check() {
  RunConfig cfg = config("shallow_well");
  const Problem& p = cfg.problem;
  double worst = 0.0;
  std::ostringstream d;
  for (double r : {0.1, 0.5, 1.0}) {
    AxisPoint pt;
    pt.gamma_over_omega = r;
    const Vec rad = build_hamiltonian(p, Gauge::RAD, pt, {128, 40}, 8, Exec::Parallel).solve(8, false).values;
    const Vec pf = build_hamiltonian(p, Gauge::PF, pt, {60, 400}, 8, Exec::Parallel).solve(8, false).values;
    const double dev = max_rel(pf, rad, 8);
    worst = std::max(worst, dev);
    d << "g/w=" << r << ": " << sci(dev) << "; ";
  }
  return {worst <= 1e-4, "RAD(128,40) vs PF(60,400), lowest 8: max rel " + sci(worst) + " (" + d.str() + ")"};
}

Outcome efficiency_check() {
  std::ostringstream d;
  bool pass = true;
  const auto axis = log_coupling_axis(1e-2, 1e2, 9);
  auto rad_study = [&](const std::string& cfgname, Rung lo, Rung hi, int n_eigs) {
    RunConfig cfg = config(cfgname);
    SweepSpec s;
    s.gauge = Gauge::RAD;
    s.points = axis;
    s.n_eigs = n_eigs;
    return convergence_study(cfg.problem, s, {lo, hi}, 1e-6);
  };
  const ConvergenceTable steep = rad_study("steep_well", {100, 20}, {200, 40}, 10);
  const bool steep_ok = steep.rows[0].max_rel_delta <= 1e-6;
  d << "steep RAD(100,20) vs (200,40): " << sci(steep.rows[0].max_rel_delta) << (steep_ok ? "" : " FAIL") << "; ";
  const ConvergenceTable shallow = rad_study("shallow_well", {100, 5}, {200, 10}, 10);
  const bool shallow_ok = shallow.rows[0].max_rel_delta <= 1e-6;
  d << "shallow RAD(100,5) vs (200,10): " << sci(shallow.rows[0].max_rel_delta) << (shallow_ok ? "" : " FAIL")
    << "; ";
  pass = steep_ok && shallow_ok;

  // PF at (50, 200) against the converged RAD reference for gamma/omega >= 1.
  RunConfig cfg = config("steep_well");
  const SweepResult& ref = steep.sweeps.back();
  bool pf_fails_everywhere = true;
  std::ostringstream per;
  for (size_t i = 0; i < axis.size(); ++i) {
    if (axis[i].gamma_over_omega < 1.0 - 1e-12) continue;
    const Vec pf = build_hamiltonian(cfg.problem, Gauge::PF, axis[i], {50, 200}, 10).solve(10, false).values;
    const double dev = max_rel(pf, ref.points[i].energies, 10);
    per << "g/w=" << fmt("%.3g", axis[i].gamma_over_omega) << ": " << sci(dev) << "; ";
    pf_fails_everywhere = pf_fails_everywhere && dev > 1e-6;
  }
  d << "PF(50,200) vs RAD(200,40) at g/w>=1 (must exceed 1e-6): " << per.str();
  pass = pass && pf_fails_everywhere;
  return {pass, d.str()};
}

Outcome ad_rad_check() {
  RunConfig cfg = config("cosine");
  const Problem& p = cfg.problem;
  double worst = 0.0;
  for (double r : {0.1, 1.0, 10.0}) {
    AxisPoint pt;
    pt.gamma_over_omega = r;
    const Vec ad = build_hamiltonian(p, Gauge::AD, pt, {65, 20}, 10).solve(10, false).values;
    const Vec rad = build_hamiltonian(p, Gauge::RAD, pt, {65, 20}, 10).solve(10, false).values;
    worst = std::max(worst, max_rel(ad, rad, 10));
  }
  return {worst <= 1e-6, "cosine ring, lowest 10 at g/w in {0.1,1,10}: max rel " + sci(worst)};
}

Outcome erf_dispersion_check() {
  RunConfig cfg = config("erf_lattice");
  const double a0 = lattice_constant(cfg.problem.model);
  const std::vector<double> couplings = {0.2, 1.0, 10.0, 100.0};
  std::ostringstream d;
  double worst = 0.0;
  std::vector<double> widths;
  for (double r : couplings) {
    SweepSpec s;
    s.gauge = Gauge::RAD_k;
    s.n_eigs = 40;
    s.points = k_axis(-kPi / a0, kPi / a0, 11, r);
    s.points.back().k = kPi / a0 * (1.0 - 1e-12);  // the zone edge folds onto -pi/a0
    const ConvergenceTable t = convergence_study(cfg.problem, s, {{101, 5}, {151, 9}}, 1e-6);
    worst = std::max(worst, t.rows[0].max_rel_delta);
    double lo = 1e300, hi = -1e300;
    for (const auto& pt : t.sweeps[0].points) {
      lo = std::min(lo, pt.reported(0));
      hi = std::max(hi, pt.reported(0));
    }
    widths.push_back(hi - lo);
    d << "g/w=" << r << ": rel " << sci(t.rows[0].max_rel_delta) << ", width " << fmt("%.4g", hi - lo) << "; ";
  }
  bool flattening = true;
  for (size_t i = 1; i < widths.size(); ++i) flattening = flattening && widths[i] < widths[i - 1];
  d << (flattening ? "bandwidth decreasing" : "bandwidth NOT decreasing");
  return {worst <= 1e-6 && flattening, "(101,5) vs (151,9), 40 bands, 11 k: max rel " + sci(worst) + " (" + d.str() + ")"};
}

Outcome blwa_check() {
  RunConfig cfg = config("erf_lattice");
  const Problem& p = cfg.problem;
  const double a0 = lattice_constant(p.model);
  std::ostringstream d;

  double worst = 0.0;
  const CavitySettings cav{p.omega_c, p.c, 0.25 * p.omega_c, p.scaling};
  for (double fk : {-0.2, -0.1, 0.0, 0.1, 0.2})
    for (double fb : {-0.2, -0.1, 0.0, 0.1, 0.2}) {
      const double k = fk * kPi / a0, kb = fb * kPi / a0;
      const Vec rad =
          build_rad_k_blwa(p.model, KResolvedContext::make(k, a0, 7, 5, kb), cav, p.mass, p.blwa_op).solve(5, false).values;
      const Vec pa = build_pa_k_blwa_exact(p.model, KResolvedContext::make(k, a0, 11, 14, kb), cav, p.mass, p.charge)
                         .solve(5, false)
                         .values;
      worst = std::max(worst, max_rel(rad, pa, 5));
    }
  const bool agree = worst <= 1e-3;
  d << "g/w=0.25 RAD(7,5) vs p.A(11,14), lowest 5, |k|,|k_beta|<=0.2pi/a0: max rel " << sci(worst);

  // Zero coupling: diagonal (K - k_beta n)^2 / 2m + w (n + 1/2) in both gauges.
  const CavitySettings cav0{p.omega_c, p.c, 0.0, p.scaling};
  double diag = 0.0;
  const double k = 0.13 * kPi / a0, kb = 0.37 * kPi / a0;
  for (int which = 0; which < 2; ++which) {
    const auto ctx = KResolvedContext::make(k, a0, 7, 5, kb);
    const GaugeHamiltonian H = which == 0 ? build_rad_k_blwa(p.model, ctx, cav0, p.mass, p.blwa_op)
                                          : build_pa_k_blwa_exact(p.model, ctx, cav0, p.mass, p.charge);
    const CMat h = H.dense();
    const Vec K = ctx.momenta();
    const double wk = cav0.omega_at(kb);
    for (int i = 0; i < 7; ++i)
      for (int n = 0; n < 5; ++n) {
        const double o = K(i) - kb * n;
        const double expect = o * o / (2.0 * p.mass) + wk * (n + 0.5);
        diag = std::max(diag, std::abs(h(i * 5 + n, i * 5 + n) - expect));
      }
  }
  const bool diag_ok = diag <= 1e-10;
  d << "; zero-coupling diagonal " << sci(diag);

  // Diagonalization time at the two dimensions.
  const auto ctx_r = KResolvedContext::make(0.1 * kPi / a0, a0, 7, 5, 0.15 * kPi / a0);
  const auto ctx_p = KResolvedContext::make(0.1 * kPi / a0, a0, 11, 14, 0.15 * kPi / a0);
  const GaugeHamiltonian hr = build_rad_k_blwa(p.model, ctx_r, cav, p.mass, p.blwa_op);
  const GaugeHamiltonian hp = build_pa_k_blwa_exact(p.model, ctx_p, cav, p.mass, p.charge);
  const HermitianMatrix mr(hr.dense()), mp(hp.dense());
  auto time_it = [](const HermitianMatrix& m, int reps) {
    const double t = now();
    double sink = 0.0;
    for (int i = 0; i < reps; ++i) sink += eig_hermitian(m, false, -1).values(0);
    return (now() - t) / reps + 0.0 * sink;
  };
  time_it(mr, 50);
  time_it(mp, 5);
  const double tr = time_it(mr, 2000), tp = time_it(mp, 200);
  const double speedup = tp / tr;
  d << "; dim " << hr.dim() << " vs " << hp.dim() << ", full diagonalization speedup " << fmt("%.1f", speedup) << "x";
  return {agree && diag_ok && speedup >= 20.0, d.str()};
}

Outcome momentum_check() {
  RunConfig cfg = config("erf_lattice");
  const Problem& p = cfg.problem;
  const double a0 = lattice_constant(p.model), b = 2.0 * kPi / a0;
  const double k1 = 0.17 * kPi / a0, k2 = -0.41 * kPi / a0, kb = 0.23 * kPi / a0;
  const int nb = 9, nf = 8;
  std::vector<double> momenta;
  for (double k : {k1, k2})
    for (int i = 0; i < nb; ++i) momenta.push_back(k + (i - (nb - 1) / 2) * b);
  const CavitySettings cav{p.omega_c, p.c, 0.5 * p.omega_c, p.scaling};
  const GaugeHamiltonian H = build_pa_blwa_momentum_set(p.model, momenta, kb, nf, cav, p.mass, p.charge);
  const CMat h = H.dense();
  // Total momentum label per basis state.
  const long half = long(nb) * nf;
  Vec P(h.rows());
  for (long i = 0; i < h.rows(); ++i) P(i) = i < half ? k1 : k2;
  const CMat comm = h * P.asDiagonal() - P.asDiagonal() * h;
  const double cn = comm.norm();
  // Super-block spectrum equals the union of the two separate blocks.
  std::vector<double> parts;
  for (double k : {k1, k2}) {
    const Vec e =
        build_pa_k_blwa_exact(p.model, KResolvedContext::make(k, a0, nb, nf, kb), cav, p.mass, p.charge).solve(-1, false).values;
    parts.insert(parts.end(), e.data(), e.data() + e.size());
  }
  const Vec all = H.solve(-1, false).values;
  const double sd = max_abs(all, lowest(parts, all.size()), all.size());
  return {cn <= 1e-10 && sd <= 1e-10,
          "two-k super-block: commutator norm " + sci(cn) + ", spectrum vs separate blocks " + sci(sd)};
}

Outcome photon_number_check() {
  RunConfig cfg = config("erf_lattice");
  const Problem& p = cfg.problem;
  const double a0 = lattice_constant(p.model);
  std::ostringstream d;

  // Growth of the lowest-band Coulomb photon number.
  auto max_lowest = [&](double r) {
    SweepSpec s;
    s.gauge = Gauge::RAD_k;
    s.rung = {101, 5};
    s.n_eigs = 1;
    s.photon_numbers = true;
    s.points = k_axis(-kPi / a0, kPi / a0, 21, r);
    s.points.back().k = kPi / a0 * (1.0 - 1e-12);
    const SweepResult res = run_points(p, s);
    double m = 0.0, top = 0.0;
    for (const auto& pt : res.points) {
      m = std::max(m, pt.photon_number[0]);
      top = std::max(top, pt.top_population[0]);
    }
    return std::pair<double, double>{m, top};
  };
  const auto [n1, top1] = max_lowest(1.0);
  const auto [n100, top100] = max_lowest(100.0);
  const double growth = n100 / n1;
  const bool grows = growth >= 100.0;
  d << "lowest band max <a+a>: " << fmt("%.4g", n1) << " at g/w=1, " << fmt("%.4g", n100) << " at g/w=100 (x"
    << fmt("%.3g", growth) << ", top Fock population " << sci(std::max(top1, top100)) << ")";

  // Oracle for the unitary chain: at zero photon momentum the boosted RAD and the
  // boosted p.A are the same Hamiltonian in two gauges. RAD runs at 5 Fock states.
  // The k_beta = k pairing also carries the boost approximation and is reported only.
  double worst = 0.0, worst_e = 0.0, boosted = 0.0;
  for (double r : {0.1, 0.25}) {
    const CavitySettings cav{p.omega_c, p.c, r * p.omega_c, p.scaling};
    for (double fk : {0.0, 0.1, 0.2, 0.5}) {
      const double k = fk * kPi / a0;
      for (bool zero_beta : {true, false}) {
        const std::optional<double> kb = zero_beta ? std::optional<double>(0.0) : std::nullopt;
        const GaugeHamiltonian hr =
            build_rad_k_blwa(p.model, KResolvedContext::make(k, a0, 11, zero_beta ? 5 : 9, kb), cav, p.mass, p.blwa_op);
        const GaugeHamiltonian hp =
            build_pa_k_blwa_exact(p.model, KResolvedContext::make(k, a0, 11, 20, kb), cav, p.mass, p.charge);
        const SpectrumResult sr = hr.solve(5, true), sp = hp.solve(5, true);
        double dev = 0.0;
        for (int i = 0; i < 5; ++i) {
          const double nr = coulomb_photon_number(sr.vectors.col(i), hr).value;
          const double np = coulomb_photon_number(sp.vectors.col(i), hp).value;
          dev = std::max(dev, std::abs(nr - np) / std::max(np, 1e-12));
        }
        if (zero_beta) {
          worst = std::max(worst, dev);
          worst_e = std::max(worst_e, max_rel(sr.values, sp.values, 5));
        } else {
          boosted = std::max(boosted, dev);
        }
      }
    }
  }
  const bool oracle = worst <= 0.05;
  d << "; exact-gauge oracle at g/w<=0.25, k_beta=0, lowest 5, k/(pi/a0) in {0,0.1,0.2,0.5}, RAD 5 Fock vs p.A 20 Fock: "
    << "max rel " << sci(worst) << " (energies " << sci(worst_e) << "); with k_beta=k (boost approximation included): "
    << sci(boosted);
  return {grows && oracle, d.str()};
}

Outcome fourier_check() {
  std::ostringstream d;
  // Shift theorem on a grid spanning whole cells.
  const RunConfig erf = config("erf_lattice");
  const PotentialModel& m = erf.problem.model;
  const RealGrid g(256, 4.0 * lattice_constant(m));
  const int shift = 7;
  const double s = shift * g.dx();
  Vec v = sample(m, g), vs(g.n_points);
  for (int i = 0; i < g.n_points; ++i) vs(i) = v((i - shift + g.n_points) % g.n_points);
  const FourierTable f = potential_fourier_dense(v, g), fs = potential_fourier_dense(vs, g);
  double shift_err = 0.0, scale = 0.0;
  for (long j = 0; j < f.K.size(); ++j) {
    shift_err = std::max(shift_err, std::abs(fs.values(j) - std::polar(1.0, f.K(j) * s) * f.values(j)));
    scale = std::max(scale, std::abs(f.values(j)));
  }
  shift_err /= scale;
  d << "shift theorem " << sci(shift_err);

  // Bloch reconstruction improves with the number of harmonics.
  std::vector<double> xs;
  for (int i = 0; i < 97; ++i) xs.push_back(-0.5 + i / 96.0);
  bool monotone = true;
  double prev = 1e300;
  std::string seq;
  for (int n : {1, 2, 4, 8, 16}) {
    const double e = bloch_reconstruction_check(m, n, xs);
    monotone = monotone && e <= prev * (1.0 + 1e-12);
    prev = e;
    seq += (seq.empty() ? "" : " ") + sci(e);
  }
  d << "; Bloch reconstruction " << (monotone ? "monotone" : "NOT monotone") << " for 1,2,4,8,16 terms: " << seq;

  // Parseval on the dense grid.
  const RunConfig shallow = config("shallow_well");
  const RealGrid gw(512, 6.0);
  const Vec w = sample(shallow.problem.model, gw);
  const FourierTable fw = potential_fourier_dense(w, gw);
  const double dK = 2.0 * kPi / gw.box_length;
  const double lhs = w.squaredNorm() * gw.dx();
  const double rhs = 2.0 * kPi * dK * fw.values.squaredNorm();
  const double parseval = std::abs(lhs - rhs) / lhs;
  d << "; Parseval " << sci(parseval);
  return {shift_err <= 1e-10 && monotone && parseval <= 1e-8, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool strict = false, list = false;
  std::string only;
  app.add_flag("--strict", strict, "exit nonzero when any criterion fails");
  app.add_option("--only", only, "run criteria whose name contains this text");
  app.add_flag("--list", list, "list criterion names");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"bogoliubov", 1.0, bogoliubov_check},
      {"zero-coupling-factorization", 10.0, zero_coupling_check},
      {"gauge-invariance", 300.0, gauge_invariance_check},
      {"rad-efficiency", 900.0, efficiency_check},
      {"ad-rad-equivalence", 120.0, ad_rad_check},
      {"periodic-dispersion-convergence", 1200.0, erf_dispersion_check},
      {"beyond-lwa-benchmark", 600.0, blwa_check},
      {"momentum-conservation", 60.0, momentum_check},
      {"photon-number", 600.0, photon_number_check},
      {"fourier-bloch", 10.0, fourier_check},
  };
  if (list) {
    for (const auto& c : criteria) std::cout << c.name << '\n';
    return 0;
  }
  int failed = 0, run = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && c.name.find(only) == std::string::npos) continue;
    ++run;
    const double t = now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = now() - t;
    const bool in_budget = secs <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failed += !pass;
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << fmt("%.1f", secs) << " s, budget "
              << fmt("%.0f", c.budget_seconds) << " s" << (in_budget ? "" : ", over budget") << "]" << std::endl;
  }
  std::cout << (run - failed) << "/" << run << " criteria passed" << std::endl;
  return strict && failed ? 1 : 0;
}
