#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cqed/hamiltonians.hpp"
#include "cqed/observables.hpp"

namespace cqed {

// Everything needed to build any gauge for one physical system.
struct Problem {
  PotentialModel model = Free{};
  double mass = 1.0;
  double charge = -1.0;

  double omega_c = 1.0;  // resolved cavity frequency at k = 0
  double c = 0.0;
  CouplingScaling scaling = CouplingScaling::FixedA;

  // Dense-K box; nullopt selects the per-coupling localization rule.
  std::optional<double> box_length;
  double search_box = 8.0;     // DVR box for the matter problem and the box rule
  int n_grid = 1024;           // DVR points for the matter problem
  int box_rule_grid = 1200;    // DVR points for the box rule
  double box_rule_margin = 4.0;  // photon-displacement widths added on each side

  int ring_cells = 4;  // AD / RAD ring for trigonometric models
  BlwaNumberOperator blwa_op = BlwaNumberOperator::Coulomb;
  double headroom_tol = 1e-6;
  bool subtract_zero_point = true;

  // At least n_states matter eigenstates for PF, cached and shared across threads.
  std::shared_ptr<const MatterSolution> matter(int n_states) const;

 private:
  mutable std::shared_ptr<const MatterSolution> matter_;
  mutable std::shared_ptr<std::mutex> matter_mutex_ = std::make_shared<std::mutex>();
};

// Basis size per gauge: matter count (n_K, n_bands, n_matter or ring points) and Fock count.
struct Rung {
  int n_basis = 0;
  int n_fock = 0;
};

struct AxisPoint {
  double gamma_over_omega = 0.0;
  double k = 0.0;
  std::optional<double> k_beta;
};

// Box length used for a dense-K gauge at a given coupling.
double resolved_box_length(const Problem& p, Gauge g, double gamma_over_omega, int n_levels);

GaugeHamiltonian build_hamiltonian(const Problem& p, Gauge g, const AxisPoint& pt, const Rung& rung, int n_levels,
                                   Exec exec = Exec::Serial);

struct SweepSpec {
  Gauge gauge = Gauge::RAD;
  std::vector<AxisPoint> points;
  Rung rung;
  int n_eigs = 10;
  bool want_vectors = false;
  bool photon_numbers = false;
  Exec exec = Exec::Parallel;
};

struct PointResult {
  AxisPoint point;
  Vec energies;  // raw eigenvalues
  Vec reported;  // energies with the zero point removed if requested
  double zero_point = 0.0;
  std::vector<double> photon_number;
  std::vector<double> fock_excitation;
  std::vector<double> top_population;
  CMat vectors;
  long dim = 0;
  double box_length = 0.0;
  double max_residual = 0.0;
  double seconds = 0.0;
};

struct SweepResult {
  std::string axis;  // "coupling", "k" or "k_kbeta"
  Gauge gauge = Gauge::RAD;
  Rung rung;
  std::vector<PointResult> points;
  double seconds = 0.0;
};

std::vector<AxisPoint> log_coupling_axis(double lo, double hi, int n);
std::vector<AxisPoint> k_axis(double k_lo, double k_hi, int n, double gamma_over_omega);

SweepResult run_points(const Problem& p, const SweepSpec& spec);
SweepResult sweep_coupling(const Problem& p, const SweepSpec& spec);
SweepResult sweep_dispersion(const Problem& p, const SweepSpec& spec);

// Deviations of the raw eigenvalues from the last rung.
struct ConvergenceRow {
  Rung rung;
  long dim = 0;
  double max_abs_delta = 0.0;
  double max_rel_delta = 0.0;
  std::vector<double> point_abs_delta;  // per axis point
  double seconds = 0.0;
};

struct ConvergenceTable {
  Gauge gauge = Gauge::RAD;
  std::vector<ConvergenceRow> rows;  // last row is the reference
  double tolerance = 1e-6;
  int converged_rung = -1;  // smallest rung within tolerance, -1 if none
  bool monotone = true;
  std::vector<SweepResult> sweeps;
};

ConvergenceTable convergence_study(const Problem& p, const SweepSpec& spec, const std::vector<Rung>& ladder,
                                   double tolerance);

}  // namespace cqed
