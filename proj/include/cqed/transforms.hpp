#pragma once

#include <string>
#include <vector>

#include "cqed/common.hpp"

namespace cqed {

struct CavityMode {
  double omega = 1.0;
  double A0 = 0.0;
  std::vector<double> polarization{1.0};  // the particle moves along component 0
  double k_beta = 0.0;
};

void validate(const CavityMode& mode);

// gamma_b = |A_b| sqrt((w_b / hbar) sum_j z_j^2 / m_j)
std::vector<double> coupling_gamma(const std::vector<CavityMode>& modes, const std::vector<double>& charges,
                                   const std::vector<double>& masses);

// Inverse of coupling_gamma for one mode and one particle.
double vector_potential_for_gamma(double omega, double gamma, double charge, double mass);

struct BogoliubovResult {
  double Omega = 0.0;
  double u = 1.0, v = 0.0;
  double zpe_shift = 0.0;
};

BogoliubovResult bogoliubov(double omega, double gamma);

struct NormalModeSet {
  Vec Omegas;
  Mat o_matrix;  // rows: normal modes, columns: bare modes
  Vec A_alpha;   // linear coupling of q_alpha to the particle momentum
  Mat xi;        // particles x normal modes
  Mat g_matrix;
};

// Single particle in 1D: charges/masses hold one entry per particle.
NormalModeSet normal_mode_transform(const std::vector<CavityMode>& modes, const std::vector<double>& charges,
                                    const std::vector<double>& masses);

// xi = sqrt(2/m) gamma / Omega^2
double effective_xi_single(double omega, double gamma, double mass);
// xi sqrt(Omega / 2): photon-displacement amplitude in units of the zero-point width.
double effective_xi_amplitude(double omega, double gamma, double mass);

double effective_mass(double mass, double omega, double gamma);
// 1/m_eff = 1/m - sum_alpha Omega_alpha^2 xi_alpha^2 for particle 0.
double effective_mass(double mass, const NormalModeSet& nm);

double cavity_dispersion(double omega_c, double c, double k);

enum class CouplingScaling { FixedA, FixedGamma };
CouplingScaling parse_coupling_scaling(const std::string& s);
std::string to_string(CouplingScaling s);

// gamma_k at frequency omega_k given gamma_0 at omega_0.
double coupling_at(double gamma0, double omega0, double omega_k, CouplingScaling scaling);

}  // namespace cqed
