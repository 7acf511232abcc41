#include "cqed/observables.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cqed {

std::vector<Vec> photon_populations(const CVec& state, const JointBasis& basis) {
  if (state.size() != basis.total()) throw Error(ErrorKind::DimensionMismatch, "state does not match the basis");
  std::vector<Vec> pops;
  for (int d : basis.fock_dims) pops.push_back(Vec::Zero(d));
  std::vector<int> occ;
  for (long idx = 0; idx < basis.total(); ++idx) {
    basis.decompose(idx, occ);
    const double p = std::norm(state(idx));
    for (size_t a = 0; a < occ.size(); ++a) pops[a](occ[a]) += p;
  }
  return pops;
}

double fock_excitation(const CVec& state, const GaugeHamiltonian& H) {
  if (state.size() == 0) throw Error(ErrorKind::InvalidArgument, "no eigenvector supplied");
  double n = 0.0;
  for (const Vec& p : photon_populations(state, H.basis))
    for (long k = 0; k < p.size(); ++k) n += k * p(k);
  return n;
}

PhotonNumber coulomb_photon_number(const CVec& state, const GaugeHamiltonian& H, double headroom_tol,
                                   bool enforce_headroom) {
  if (state.size() == 0) throw Error(ErrorKind::InvalidArgument, "no eigenvector supplied");
  if (H.basis.fock_dims.size() != 1)
    throw Error(ErrorKind::Unsupported, "Coulomb photon number is implemented for a single mode");
  PhotonNumber out;
  const int nf = H.basis.fock_dims[0];
  const Vec pop = photon_populations(state, H.basis)[0];
  out.top_population = pop(nf - 1) + (nf >= 2 ? pop(nf - 2) : 0.0);
  out.headroom_ok = out.top_population <= headroom_tol;
  if (enforce_headroom && !out.headroom_ok)
    throw Error(ErrorKind::Numeric, "photon truncation visible: top two Fock levels hold " +
                                        std::to_string(out.top_population));
  switch (H.gauge) {
    case Gauge::pA:
    case Gauge::pA_k_blwa:
      out.value = fock_excitation(state, H);
      return out;
    case Gauge::RAD:
    case Gauge::RAD_k:
    case Gauge::RAD_k_blwa:
      break;
    default:
      throw Error(ErrorKind::Unsupported, "Coulomb photon number is not defined for gauge " + to_string(H.gauge));
  }
  if (H.momenta.size() != H.basis.matter_dim)
    throw Error(ErrorKind::InvalidArgument, "Hamiltonian carries no plane-wave momenta");
  double n = 0.0;
  for (int i = 0; i < H.basis.matter_dim; ++i) {
    const CVec psi = state.segment(long(i) * nf, nf);
    if (psi.squaredNorm() == 0.0) continue;
    n += std::real(psi.dot(coulomb_number_block(H.frame, H.momenta(i), nf) * psi));
  }
  out.value = n;
  return out;
}

CMat coulomb_chain_unitary(const RadFrame& frame, double K, int n_fock) {
  const FockBasis fb(n_fock, frame.Omega);
  Eigen::SelfAdjointEigenSolver<CMat> es(fock_operator(fb, FockOp::Momentum));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "momentum eigendecomposition failed");
  CVec ph(n_fock);
  for (int j = 0; j < n_fock; ++j) ph(j) = std::polar(1.0, -frame.xi * K * es.eigenvalues()(j));
  CMat shift = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  CVec rot(n_fock);
  for (int n = 0; n < n_fock; ++n) rot(n) = std::polar(1.0, -0.5 * kPi * n);
  return shift * rot.asDiagonal();
}

std::vector<PhotonNumber> photon_character(const SpectrumResult& spec, const GaugeHamiltonian& H,
                                           double headroom_tol) {
  if (!spec.has_vectors()) throw Error(ErrorKind::InvalidArgument, "photon character needs eigenvectors");
  std::vector<PhotonNumber> out;
  for (long c = 0; c < spec.vectors.cols(); ++c)
    out.push_back(coulomb_photon_number(spec.vectors.col(c), H, headroom_tol));
  return out;
}

}  // namespace cqed
