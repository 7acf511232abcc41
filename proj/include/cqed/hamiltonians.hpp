#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqed/common.hpp"
#include "cqed/linalg.hpp"
#include "cqed/matter.hpp"
#include "cqed/operators.hpp"
#include "cqed/transforms.hpp"

namespace cqed {

enum class Gauge { PF, pA, AD, RAD, RAD_k, RAD_k_blwa, pA_k_blwa };

std::string to_string(Gauge g);
// Command-line names: pf, pa, ad, rad, rad-k, rad-k-blwa, pa-k-blwa.
Gauge parse_gauge(const std::string& s);
bool is_rad_family(Gauge g);

// Photonic frame of a single dressed mode.
struct RadFrame {
  double omega = 1.0;
  double gamma = 0.0;
  double Omega = 1.0;
  double u = 1.0, v = 0.0;
  double xi = 0.0;
  double m_eff = 1.0;
};

RadFrame make_rad_frame(double omega, double gamma, double mass);

// Beyond-LWA number operator inside the boosted kinetic term.
enum class BlwaNumberOperator { Coulomb, Bogoliubov };
BlwaNumberOperator parse_blwa_number_operator(const std::string& s);
std::string to_string(BlwaNumberOperator op);

// One parity sector of a banded problem; full_index maps sector rows to the
// matter-major joint index.
struct BandedSector {
  BandedSymmetric band;
  std::vector<long> full_index;
};

struct GaugeHamiltonian {
  Gauge gauge = Gauge::RAD;
  std::optional<HermitianMatrix> matrix;
  std::vector<BandedSector> banded;
  JointBasis basis;
  std::map<std::string, double> params;
  Vec momenta;  // plane-wave momentum of each matter index (K-basis gauges)
  RadFrame frame;
  std::optional<SignedPermutation> symmetry;
  double zero_point = 0.0;
  double k_beta = 0.0;
  // The stored matrix is D^dag H D with D = diag(i^n) on the photon factor.
  bool photon_rephased = false;

  long dim() const { return basis.total(); }
  // Lowest n_eigs eigenpairs; vectors are returned in the plain Fock basis.
  SpectrumResult solve(int n_eigs, bool want_vectors, bool use_symmetry = true) const;
  // Dense matrix in the plain Fock basis.
  CMat dense() const;
};

enum class PfStorage { Auto, Dense, Banded };

// H = E + w(d^dag d + 1/2) + w A0 mu (d + d^dag) + w A0^2 mu^2
GaugeHamiltonian build_pf(const MatterSolution& sol, double omega_c, double A0, int n_matter, int n_fock,
                          PfStorage storage = PfStorage::Auto, Exec exec = Exec::Parallel);

// Kinetic plus box-Galerkin potential on the dense K grid.
HermitianMatrix k_space_matter_hamiltonian(const PotentialModel& model, double box_length, int n_K, double mass);

GaugeHamiltonian build_pa_lwa(const PotentialModel& model, double box_length, int n_K, double mass, double charge,
                              double omega, double A0, int n_fock, Exec exec = Exec::Parallel);

GaugeHamiltonian build_rad_single(const PotentialModel& model, double box_length, int n_K, double mass, double omega,
                                  double gamma, int n_fock, Exec exec = Exec::Parallel);

// Up to eight modes with full tensor Fock spaces.
GaugeHamiltonian build_rad_multimode(const PotentialModel& model, double box_length, int n_K, double mass,
                                     const NormalModeSet& nm, const std::vector<int>& n_focks,
                                     Exec exec = Exec::Parallel);

// Ring of n_cells lattice constants with odd n_points.
GaugeHamiltonian build_ad_cosine(const PotentialModel& model, int n_cells, int n_points, double mass, double omega,
                                 double gamma, int n_fock);

struct KResolvedContext {
  double k = 0.0;
  double k_beta = 0.0;
  int n_bands = 1;  // odd
  int n_fock = 2;
  double a0 = 1.0;

  // Folds k into (-pi/a0, pi/a0]; k_beta defaults to the folded k.
  static KResolvedContext make(double k, double a0, int n_bands, int n_fock,
                               std::optional<double> k_beta = std::nullopt);
  int n_max() const { return (n_bands - 1) / 2; }
  Vec momenta() const;
};

double fold_to_bz(double k, double a0);

struct CavitySettings {
  double omega_c = 1.0;
  double c = 0.0;
  double gamma0 = 0.0;
  CouplingScaling scaling = CouplingScaling::FixedA;

  double omega_at(double k_beta) const { return cavity_dispersion(omega_c, c, k_beta); }
  double gamma_at(double k_beta) const { return coupling_at(gamma0, omega_c, omega_at(k_beta), scaling); }
};

GaugeHamiltonian build_rad_k(const PotentialModel& model, const KResolvedContext& ctx, const CavitySettings& cav,
                             double mass, Exec exec = Exec::Parallel);

GaugeHamiltonian build_rad_k_blwa(const PotentialModel& model, const KResolvedContext& ctx,
                                  const CavitySettings& cav, double mass,
                                  BlwaNumberOperator number_op = BlwaNumberOperator::Coulomb,
                                  Exec exec = Exec::Parallel);

GaugeHamiltonian build_pa_k_blwa_exact(const PotentialModel& model, const KResolvedContext& ctx,
                                       const CavitySettings& cav, double mass, double charge);

// Exact boosted Coulomb-gauge matrix on an arbitrary plane-wave set. Hopping
// is present only between momenta that differ by a reciprocal lattice vector.
GaugeHamiltonian build_pa_blwa_momentum_set(const PotentialModel& model, const std::vector<double>& momenta,
                                            double k_beta, int n_fock, const CavitySettings& cav, double mass,
                                            double charge);

// Closed-form image of the Coulomb-gauge a^dag a in the RAD frame for one
// plane-wave block with momentum K (plain Fock basis of frequency Omega).
CMat coulomb_number_block(const RadFrame& frame, double K, int n_fock);
// The Bogoliubov-only rewrite (u^2+v^2) b^dag b + uv (b^2 + b^dag^2) + v^2.
Mat bogoliubov_number_block(const RadFrame& frame, int n_fock);

}  // namespace cqed
