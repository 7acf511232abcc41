#pragma once

#include <map>
#include <string>
#include <vector>

#include "cqed/hamiltonians.hpp"

namespace cqed {

struct ObservableReport {
  int state = 0;
  double energy = 0.0;
  std::map<std::string, double> values;
  std::string gauge;
};

// Occupation of each photon level (summed over matter and other modes), one
// vector per mode.
std::vector<Vec> photon_populations(const CVec& state, const JointBasis& basis);

// <N> of the native ladder of the Hamiltonian (d^dag d, b^dag b or a^dag a).
double fock_excitation(const CVec& state, const GaugeHamiltonian& H);

struct PhotonNumber {
  double value = 0.0;
  // Population of the two highest Fock levels.
  double top_population = 0.0;
  bool headroom_ok = true;
};

// Coulomb-gauge <a^dag a>. RAD-family states use the per-K closed form of the
// rotated number operator; p.A states evaluate a^dag a directly.
// Throws when the top two Fock levels hold more than headroom_tol and
// enforce_headroom is set.
PhotonNumber coulomb_photon_number(const CVec& state, const GaugeHamiltonian& H, double headroom_tol = 1e-6,
                                   bool enforce_headroom = false);

// The unitary W_K = exp(-i xi K p_c) exp(-i pi/2 b^dag b) on a truncated Fock space.
// coulomb_number_block(K) = W_K^dag a^dag a W_K with a = u b - v b^dag.
CMat coulomb_chain_unitary(const RadFrame& frame, double K, int n_fock);

// Coulomb photon number of every column of a spectrum.
std::vector<PhotonNumber> photon_character(const SpectrumResult& spec, const GaugeHamiltonian& H,
                                           double headroom_tol = 1e-6);

}  // namespace cqed
