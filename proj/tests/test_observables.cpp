#include "doctest.h"

#include <cmath>

#include "cqed/observables.hpp"

using namespace cqed;

namespace {

const PotentialModel kShallow = DoubleWell{3.0, 3.85};

}  // namespace

TEST_CASE("photon populations sum to one") {
  const GaugeHamiltonian h = build_rad_single(kShallow, 6.0, 30, 1.0, 3.137, 2.0, 8);
  const SpectrumResult s = h.solve(4, true);
  for (int c = 0; c < 4; ++c) {
    const auto pops = photon_populations(s.vectors.col(c), h.basis);
    REQUIRE(pops.size() == 1);
    CHECK(pops[0].sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pops[0].minCoeff() >= 0.0);
  }
}

TEST_CASE("no photons without coupling") {
  const GaugeHamiltonian h = build_rad_single(kShallow, 6.0, 30, 1.0, 3.137, 0.0, 6);
  const SpectrumResult s = h.solve(2, true);
  for (const PhotonNumber& p : photon_character(s, h)) CHECK(std::abs(p.value) < 1e-14);
}

TEST_CASE("Coulomb photon number from the RAD frame matches direct p.A evaluation") {
  const double w = 3.137, gamma = 0.8 * w;
  const GaugeHamiltonian rad = build_rad_single(kShallow, 6.0, 64, 1.0, w, gamma, 24);
  const double A0 = vector_potential_for_gamma(w, gamma, -1.0, 1.0);
  const GaugeHamiltonian pa = build_pa_lwa(kShallow, 6.0, 64, 1.0, -1.0, w, A0, 80);
  const SpectrumResult sr = rad.solve(4, true), sp = pa.solve(4, true);
  for (int c = 0; c < 4; ++c) {
    const double nr = coulomb_photon_number(sr.vectors.col(c), rad).value;
    const double np = coulomb_photon_number(sp.vectors.col(c), pa).value;
    CHECK(np == doctest::Approx(fock_excitation(sp.vectors.col(c), pa)).epsilon(1e-12));
    CHECK(nr == doctest::Approx(np).epsilon(1e-6));
    CHECK(nr > 0.0);
  }
}

TEST_CASE("rotated number operator is the conjugated Coulomb number operator") {
  const RadFrame f = make_rad_frame(2.0, 1.1, 1.0);
  const int big = 70, n = 10;
  const double K = 0.9;
  const CMat W = coulomb_chain_unitary(f, K, big);
  CHECK((W.adjoint() * W - CMat::Identity(big, big)).topLeftCorner(n, n).norm() < 1e-12);
  // a = u b - v b^dag in the b basis
  CMat b = CMat::Zero(big, big);
  for (int j = 1; j < big; ++j) b(j - 1, j) = std::sqrt(double(j));
  const CMat a = f.u * b - f.v * b.adjoint();
  const CMat num = W.adjoint() * (a.adjoint() * a) * W;
  CHECK((num.topLeftCorner(n, n) - coulomb_number_block(f, K, n)).norm() < 1e-10);
  // Positive semidefinite.
  Eigen::SelfAdjointEigenSolver<CMat> es(coulomb_number_block(f, K, 30));
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("headroom enforcement") {
  const GaugeHamiltonian h = build_rad_single(kShallow, 6.0, 20, 1.0, 3.137, 30.0, 2);
  const SpectrumResult s = h.solve(1, true);
  const PhotonNumber p = coulomb_photon_number(s.vectors.col(0), h, 1e-12);
  CHECK_FALSE(p.headroom_ok);
  CHECK_THROWS_AS(coulomb_photon_number(s.vectors.col(0), h, 1e-12, true), Error);
}
