#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cqed/common.hpp"
#include "cqed/linalg.hpp"

namespace cqed {

struct RealGrid {
  int n_points = 0;
  double box_length = 0.0;

  RealGrid() = default;
  RealGrid(int n, double L);
  double dx() const { return box_length / n_points; }
  // Symmetric about 0.
  double x(int i) const { return (i - 0.5 * (n_points - 1)) * dx(); }
  Vec points() const;
};

struct ReciprocalGrid {
  enum class Mode { DenseK, LatticeKappa };
  Mode mode = Mode::DenseK;
  // dense-K
  int n_points = 0;
  double box_length = 0.0;
  // lattice-kappa
  double a0 = 0.0;
  int n_max = 0;
  double k = 0.0;

  static ReciprocalGrid dense(int n, double L);
  static ReciprocalGrid dual_of(const RealGrid& g) { return dense(g.n_points, g.box_length); }
  static ReciprocalGrid lattice(double a0, int n_max, double k);

  int size() const;
  double spacing() const;
  // Dense grid: (i - (n-1)/2) dK, the same centering as RealGrid.
  // Lattice grid: k + (i - n_max) 2 pi / a0.
  double value(int i) const;
  Vec values() const;
};

struct DoubleWell {
  double alpha = 0.0, beta = 0.0;  // V = -alpha x^2 + beta x^4
};
struct Cosine {
  double v0 = 0.0, k0 = 0.0;  // V = v0 cos(k0 x)
};
struct PeriodicErfCoulomb {
  double Z = 0.0, r0 = 0.0, a0 = 0.0;
};
struct Harmonic {
  double mass = 1.0, omega = 1.0;  // V = m w^2 x^2 / 2
};
struct Free {};

using PotentialModel = std::variant<DoubleWell, Cosine, PeriodicErfCoulomb, Harmonic, Free>;

void validate(const PotentialModel& model);
std::string model_name(const PotentialModel& model);
bool is_periodic(const PotentialModel& model);
// Lattice constant of a periodic model.
double lattice_constant(const PotentialModel& model);
// V(-x) = V(x).
bool is_inversion_symmetric(const PotentialModel& model);

double sample(const PotentialModel& model, double x);
Vec sample(const PotentialModel& model, const RealGrid& grid);

// Exponential integral E1 = Gamma(0, t), t > 0.
double expint_e1(double t);

// Z such that |v(2 pi / a0)| = |v0| / 2, i.e. the first harmonic equals that of v0 cos(2 pi x / a0).
double erf_charge_matching_cosine(double v0, double r0, double a0);

// Analytic unit-cell coefficient v(kappa); kappa must be a reciprocal lattice vector.
cplx unit_cell_fourier_coeff(const PotentialModel& model, double kappa);

// Largest |n| with |v(n 2pi/a0)| >= rel_cut * max |v|.
int significant_harmonics(const PotentialModel& model, double rel_cut = 1e-14, int hard_limit = 100000);

// max |sum_{|n| <= n_terms} v(n b) e^{i n b x} - V(x)| over the samples.
double bloch_reconstruction_check(const PotentialModel& model, int n_terms, const std::vector<double>& xs);

// Colbert-Miller sinc DVR on a box (vanishing at the ends).
Mat dvr_kinetic(const RealGrid& grid, double mass);
HermitianMatrix dvr_hamiltonian(const RealGrid& grid, const PotentialModel& model, double mass);

// Periodic sinc DVR on a ring of length L with odd n_points; the exact
// Fourier dual of the K grid j 2pi/L, |j| <= (n-1)/2.
Mat periodic_dvr_kinetic(const RealGrid& grid, double mass);
HermitianMatrix periodic_dvr_hamiltonian(const RealGrid& grid, const PotentialModel& model, double mass);

struct MatterSolution {
  Vec energies;
  Mat wavefunctions;  // grid x n_states, sum |psi|^2 dx = 1
  Mat dipoles;        // n_states x n_states
  RealGrid grid;
};

MatterSolution matter_eigenstates(const HermitianMatrix& h, int n_states, const RealGrid& grid);

// mu_ij = charge * sum_x psi_i(x) x psi_j(x) dx
Mat dipole_matrix(const MatterSolution& sol, const RealGrid& grid, double charge = -1.0);

// Parity (+1/-1) of each state of a symmetric-potential solution, 0 if neither.
std::vector<int> state_parities(const MatterSolution& sol, double tol = 1e-6);

struct FourierTable {
  Vec K;
  CVec values;
};

// V(K) = (1/2pi) sum_x V(x) e^{iKx} dx on the dual grid K = j dK, j = -n/2 .. n/2 - 1 (n even)
// or -(n-1)/2 .. (n-1)/2 (n odd).
FourierTable potential_fourier_dense(const Vec& samples, const RealGrid& grid);
FourierTable potential_fourier_dense(const PotentialModel& model, const RealGrid& grid);

// Galerkin coefficients c_d = (1/L) int_{-L/2}^{L/2} V(x) e^{i d dK x} dx for
// d = -(n_K - 1) .. n_K - 1, stored at index d + n_K - 1. Lattice-periodic
// models whose period divides L use the analytic v(-d dK).
CVec box_coefficients(const PotentialModel& model, double box_length, int n_K);

// Twice the largest |x| at which any of the lowest n_levels states of the sinc
// DVR on [-search_box/2, search_box/2] exceeds tol times its own maximum.
double localization_width(const PotentialModel& model, double mass, int n_levels, double search_box, int n_grid,
                          double tol = 1e-8);

}  // namespace cqed
