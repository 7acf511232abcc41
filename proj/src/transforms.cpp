#include "cqed/transforms.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cqed {

void validate(const CavityMode& mode) {
  if (!(mode.omega > 0.0) || !std::isfinite(mode.omega))
    throw Error(ErrorKind::InvalidArgument, "mode frequency must be positive");
  double n2 = 0.0;
  for (double e : mode.polarization) n2 += e * e;
  if (std::abs(n2 - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "polarization must be a unit vector");
  if (!std::isfinite(mode.A0)) throw Error(ErrorKind::InvalidArgument, "vector potential must be finite");
}

std::vector<double> coupling_gamma(const std::vector<CavityMode>& modes, const std::vector<double>& charges,
                                   const std::vector<double>& masses) {
  if (charges.size() != masses.size()) throw Error(ErrorKind::DimensionMismatch, "one charge per mass required");
  double s = 0.0;
  for (size_t j = 0; j < masses.size(); ++j) {
    if (!(masses[j] > 0.0)) throw Error(ErrorKind::InvalidArgument, "masses must be positive");
    s += charges[j] * charges[j] / masses[j];
  }
  std::vector<double> g;
  for (const auto& m : modes) {
    validate(m);
    g.push_back(std::abs(m.A0) * std::sqrt(m.omega / kHbar * s));
  }
  return g;
}

double vector_potential_for_gamma(double omega, double gamma, double charge, double mass) {
  if (charge == 0.0) throw Error(ErrorKind::InvalidArgument, "charge must be nonzero");
  return gamma * std::sqrt(kHbar * mass / omega) / std::abs(charge);
}

BogoliubovResult bogoliubov(double omega, double gamma) {
  if (!(omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "frequency must be positive");
  BogoliubovResult r;
  r.Omega = std::sqrt(omega * omega + 2.0 * gamma * gamma);
  const double s = std::sqrt(r.Omega / omega);
  r.u = 0.5 * (s + 1.0 / s);
  r.v = 0.5 * (s - 1.0 / s);
  r.zpe_shift = 0.5 * kHbar * (r.Omega - omega);
  return r;
}

NormalModeSet normal_mode_transform(const std::vector<CavityMode>& modes, const std::vector<double>& charges,
                                    const std::vector<double>& masses) {
  if (modes.empty()) throw Error(ErrorKind::InvalidArgument, "at least one mode required");
  const int nb = int(modes.size());
  const std::vector<double> gam = coupling_gamma(modes, charges, masses);
  NormalModeSet nm;
  nm.g_matrix = Mat::Zero(nb, nb);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      if (modes[a].polarization.size() != modes[b].polarization.size())
        throw Error(ErrorKind::DimensionMismatch, "polarizations of different dimension");
      double dot = 0.0;
      for (size_t i = 0; i < modes[a].polarization.size(); ++i) dot += modes[a].polarization[i] * modes[b].polarization[i];
      nm.g_matrix(a, b) = (a == b ? modes[a].omega * modes[a].omega : 0.0) + 2.0 * gam[a] * gam[b] * dot;
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(nm.g_matrix);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "g-matrix eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::InvalidArgument, "g-matrix is not positive definite");
  nm.Omegas = es.eigenvalues().cwiseSqrt();
  nm.o_matrix = es.eigenvectors().transpose();
  // Linear term -(z/m) p sum_b A_b sqrt(2 w_b) e_b,x q_b, rotated to q_alpha.
  const int np = int(masses.size());
  nm.A_alpha = Vec::Zero(nb);
  nm.xi = Mat::Zero(np, nb);
  for (int j = 0; j < np; ++j)
    for (int al = 0; al < nb; ++al) {
      double c = 0.0;
      for (int b = 0; b < nb; ++b)
        c += nm.o_matrix(al, b) * (charges[j] / masses[j]) * modes[b].A0 * std::sqrt(2.0 * modes[b].omega / kHbar) *
             modes[b].polarization[0];
      if (j == 0) nm.A_alpha(al) = c;
      nm.xi(j, al) = c / (nm.Omegas(al) * nm.Omegas(al));
    }
  return nm;
}

double effective_xi_single(double omega, double gamma, double mass) {
  if (!(omega > 0 && mass > 0)) throw Error(ErrorKind::InvalidArgument, "omega and mass must be positive");
  const double O2 = omega * omega + 2.0 * gamma * gamma;
  return std::sqrt(2.0 / mass) * gamma / O2;
}

double effective_xi_amplitude(double omega, double gamma, double mass) {
  const double Om = std::sqrt(omega * omega + 2.0 * gamma * gamma);
  return effective_xi_single(omega, gamma, mass) * std::sqrt(Om / 2.0);
}

double effective_mass(double mass, double omega, double gamma) {
  if (!(omega > 0 && mass > 0)) throw Error(ErrorKind::InvalidArgument, "omega and mass must be positive");
  return mass * (1.0 + 2.0 * gamma * gamma / (omega * omega));
}

double effective_mass(double mass, const NormalModeSet& nm) {
  double inv = 1.0 / mass;
  for (long a = 0; a < nm.Omegas.size(); ++a) inv -= std::pow(nm.Omegas(a) * nm.xi(0, a), 2);
  if (!(inv > 0.0)) throw Error(ErrorKind::Numeric, "effective inverse mass is not positive: " + std::to_string(inv));
  return 1.0 / inv;
}

double cavity_dispersion(double omega_c, double c, double k) {
  if (!(omega_c > 0) || c < 0) throw Error(ErrorKind::InvalidArgument, "need omega_c > 0 and c >= 0");
  return std::sqrt(omega_c * omega_c + c * c * k * k);
}

CouplingScaling parse_coupling_scaling(const std::string& s) {
  if (s == "fixed_A") return CouplingScaling::FixedA;
  if (s == "fixed_gamma") return CouplingScaling::FixedGamma;
  throw Error(ErrorKind::Config, "unknown coupling_scaling '" + s + "' (expected fixed_A or fixed_gamma)");
}

std::string to_string(CouplingScaling s) { return s == CouplingScaling::FixedA ? "fixed_A" : "fixed_gamma"; }

double coupling_at(double gamma0, double omega0, double omega_k, CouplingScaling scaling) {
  if (scaling == CouplingScaling::FixedGamma) return gamma0;
  return gamma0 * std::sqrt(omega_k / omega0);
}

}  // namespace cqed
