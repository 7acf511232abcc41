#include "doctest.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cqed/hamiltonians.hpp"

using namespace cqed;

namespace {

// Normal-mode frequencies of (p - c q)^2/2m + m w0^2 x^2/2 + (pi^2 + w^2 q^2)/2.
std::pair<double, double> polariton_frequencies(double m, double w0, double w, double gamma) {
  const double c2 = 2.0 * m * gamma * gamma, c = std::sqrt(c2);
  Mat M = Mat::Zero(4, 4);  // (x, q, p, pi)
  M(0, 0) = m * w0 * w0;
  M(1, 1) = c2 / m + w * w;
  M(1, 2) = M(2, 1) = -c / m;
  M(2, 2) = 1.0 / m;
  M(3, 3) = 1.0;
  Mat J = Mat::Zero(4, 4);
  J.topRightCorner(2, 2) = Mat::Identity(2, 2);
  J.bottomLeftCorner(2, 2) = -Mat::Identity(2, 2);
  Eigen::EigenSolver<Mat> es(J * M);
  std::vector<double> nu;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i).imag() > 0) nu.push_back(es.eigenvalues()(i).imag());
  std::sort(nu.begin(), nu.end());
  return {nu[0], nu[1]};
}

std::vector<double> oscillator_levels(double n1, double n2, int count) {
  std::vector<double> e;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) e.push_back(n1 * (a + 0.5) + n2 * (b + 0.5));
  std::sort(e.begin(), e.end());
  e.resize(count);
  return e;
}

const PotentialModel kShallow = DoubleWell{3.0, 3.85};

}  // namespace

TEST_CASE("gauge names round trip") {
  for (Gauge g : {Gauge::PF, Gauge::pA, Gauge::AD, Gauge::RAD, Gauge::RAD_k, Gauge::RAD_k_blwa, Gauge::pA_k_blwa})
    CHECK(parse_gauge(to_string(g)) == g);
  CHECK_THROWS_AS(parse_gauge("coulomb"), Error);
  CHECK(is_rad_family(Gauge::RAD_k_blwa));
  CHECK_FALSE(is_rad_family(Gauge::PF));
}

TEST_CASE("harmonic particle in a cavity: RAD and PF against the normal modes") {
  const double m = 1.0, w0 = 1.0, w = 1.3, r = 0.5;
  const double gamma = r * w;
  const auto [n1, n2] = polariton_frequencies(m, w0, w, gamma);
  const std::vector<double> expect = oscillator_levels(n1, n2, 5);
  const Harmonic model{m, w0};

  const Vec rad = build_rad_single(model, 18.0, 96, m, w, gamma, 24).solve(5, false).values;
  for (int i = 0; i < 5; ++i) CHECK(rad(i) == doctest::Approx(expect[i]).epsilon(1e-8));

  const RealGrid grid(256, 20.0);
  const MatterSolution sol = matter_eigenstates(dvr_hamiltonian(grid, model, m), 30, grid);
  const double A0 = vector_potential_for_gamma(w, gamma, -1.0, m);
  const Vec pf = build_pf(sol, w, A0, 30, 60).solve(5, false).values;
  for (int i = 0; i < 5; ++i) CHECK(pf(i) == doctest::Approx(expect[i]).epsilon(1e-8));
}

TEST_CASE("RAD and p.A agree within the same plane-wave basis") {
  const double w = 3.137, gamma = 0.5 * w;
  const Vec rad = build_rad_single(kShallow, 6.0, 64, 1.0, w, gamma, 24).solve(6, false).values;
  const double A0 = vector_potential_for_gamma(w, gamma, -1.0, 1.0);
  const Vec pa = build_pa_lwa(kShallow, 6.0, 64, 1.0, -1.0, w, A0, 60).solve(6, false).values;
  for (int i = 0; i < 6; ++i) CHECK(rad(i) == doctest::Approx(pa(i)).epsilon(1e-8));
}

TEST_CASE("PF banded and dense storage agree") {
  const RealGrid grid(400, 6.0);
  const MatterSolution sol = matter_eigenstates(dvr_hamiltonian(grid, kShallow, 1.0), 12, grid);
  const double A0 = vector_potential_for_gamma(3.137, 3.137, -1.0, 1.0);
  const GaugeHamiltonian dense = build_pf(sol, 3.137, A0, 12, 40, PfStorage::Dense);
  const GaugeHamiltonian banded = build_pf(sol, 3.137, A0, 12, 40, PfStorage::Banded);
  CHECK(dense.matrix.has_value());
  CHECK_FALSE(banded.banded.empty());
  const SpectrumResult a = dense.solve(8, true), b = banded.solve(8, true);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(b.residuals.maxCoeff() < 1e-8);
  // Same states up to phase.
  for (int c = 0; c < 8; ++c) CHECK(std::abs(a.vectors.col(c).dot(b.vectors.col(c))) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("real form and parity sectors leave the RAD spectrum unchanged") {
  const GaugeHamiltonian h = build_rad_single(kShallow, 6.0, 40, 1.0, 3.137, 2.0, 10);
  REQUIRE(h.matrix.has_value());
  CHECK(h.matrix->is_real());
  CHECK(h.photon_rephased);
  CHECK(h.symmetry.has_value());
  const Vec split = h.solve(10, false, true).values;
  const Vec full = h.solve(10, false, false).values;
  CHECK((split - full).cwiseAbs().maxCoeff() < 1e-11);
  const CMat d = h.dense();
  CHECK(max_asymmetry(d) < 1e-12);
  Eigen::SelfAdjointEigenSolver<CMat> es(d);
  CHECK((es.eigenvalues().head(10) - full).cwiseAbs().maxCoeff() < 1e-10);
  // Eigenvectors are returned in the plain Fock basis.
  const SpectrumResult s = h.solve(3, true);
  for (int c = 0; c < 3; ++c) CHECK((d * s.vectors.col(c) - s.values(c) * s.vectors.col(c)).norm() < 1e-9);
}

TEST_CASE("one-mode multimode builder equals the single-mode builder") {
  const double w = 3.137, gamma = 1.2;
  const double A0 = vector_potential_for_gamma(w, gamma, -1.0, 1.0);
  const NormalModeSet nm = normal_mode_transform({CavityMode{w, A0, {1.0}}}, {-1.0}, {1.0});
  const Vec multi = build_rad_multimode(kShallow, 6.0, 40, 1.0, nm, {10}).solve(8, false).values;
  const Vec single = build_rad_single(kShallow, 6.0, 40, 1.0, w, gamma, 10).solve(8, false).values;
  CHECK((multi - single).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("AD and RAD agree on a cosine ring") {
  const Cosine c{-1.0, 2.0 * kPi};
  const Vec ad = build_ad_cosine(c, 3, 33, 1.0, 2.0, 1.5, 12).solve(8, false).values;
  const Vec rad = build_rad_single(c, 3.0, 33, 1.0, 2.0, 1.5, 12).solve(8, false).values;
  CHECK((ad - rad).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("unsupported model and gauge combinations are refused") {
  const PeriodicErfCoulomb erf{44.0, 5.0, 1.0};
  CHECK_THROWS_AS(build_ad_cosine(erf, 2, 33, 1.0, 1.0, 0.5, 4), Error);
  const auto ctx = KResolvedContext::make(0.0, 1.0, 5, 3);
  CHECK_THROWS_AS(build_rad_k(kShallow, ctx, CavitySettings{1.0, 0.0, 0.5}, 1.0), Error);
  try {
    build_ad_cosine(erf, 2, 33, 1.0, 1.0, 0.5, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("crystal momentum folding") {
  const auto ctx = KResolvedContext::make(1.2 * kPi, 1.0, 5, 3);
  CHECK(ctx.k == doctest::Approx(-0.8 * kPi));
  CHECK(ctx.k_beta == doctest::Approx(-0.8 * kPi));
  CHECK(fold_to_bz(kPi, 1.0) == doctest::Approx(kPi));
  CHECK_THROWS_AS(KResolvedContext::make(0.0, 1.0, 4, 3), Error);
  const Vec K = KResolvedContext::make(0.1, 1.0, 3, 2).momenta();
  CHECK(K(0) == doctest::Approx(0.1 - 2 * kPi));
  CHECK(K(2) == doctest::Approx(0.1 + 2 * kPi));
}

TEST_CASE("boosted RAD at zero photon momentum equals the long-wavelength RAD") {
  const Cosine c{-5.0, 2.0 * kPi};
  const CavitySettings cav{kPi * kPi, 5.0, 0.6 * kPi * kPi};
  const auto ctx = KResolvedContext::make(0.3, 1.0, 9, 8, 0.0);
  const Vec lwa = build_rad_k(c, KResolvedContext::make(0.3, 1.0, 9, 8, 0.0), cav, 1.0).solve(10, false).values;
  const Vec blwa = build_rad_k_blwa(c, ctx, cav, 1.0).solve(10, false).values;
  CHECK((lwa - blwa).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Coulomb number block reduces to the Bogoliubov block at K = 0") {
  const RadFrame f = make_rad_frame(2.0, 1.3, 1.0);
  const CMat a = coulomb_number_block(f, 0.0, 12);
  const Mat b = bogoliubov_number_block(f, 12);
  CHECK((a - b.cast<cplx>()).norm() < 1e-13);
  const CMat k = coulomb_number_block(f, 2.5, 12);
  CHECK(max_asymmetry(k) < 1e-13);
}

TEST_CASE("momentum-set p.A builder couples only lattice-separated momenta") {
  const Cosine c{-5.0, 2.0 * kPi};
  const CavitySettings cav{kPi * kPi, 5.0, 0.5 * kPi * kPi};
  const std::vector<double> momenta = {0.1, 0.1 + 2 * kPi, 0.4, 0.4 - 2 * kPi};
  const GaugeHamiltonian h = build_pa_blwa_momentum_set(c, momenta, 0.2, 4, cav, 1.0, -1.0);
  const CMat d = h.dense();
  CHECK(d.block(0, 8, 8, 8).norm() == 0.0);
  CHECK(d.block(0, 4, 4, 4).norm() > 0.0);
  CHECK(d.block(8, 12, 4, 4).norm() > 0.0);
}
