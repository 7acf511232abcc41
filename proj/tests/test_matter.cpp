#include "doctest.h"

#include <cmath>

#include "cqed/matter.hpp"

using namespace cqed;

namespace {

// E1 by its convergent series, independent of the library routine.
double e1_series(double x) {
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    sum += term / k;
  }
  return -0.57721566490153286 - std::log(x) - sum;
}

// Real-space lattice sum of -(Z a0 / 2pi) erf(r0 r) / r, referenced to x = 0.
double erf_lattice_difference(const PeriodicErfCoulomb& m, double x) {
  auto f = [&](double r) {
    const double pref = -m.Z * m.a0 / (2.0 * kPi);
    if (std::abs(r) < 1e-12) return pref * 2.0 * m.r0 / std::sqrt(kPi);
    return pref * std::erf(m.r0 * std::abs(r)) / std::abs(r);
  };
  double s = f(x) - f(0.0);
  for (int n = 1; n <= 200000; ++n)
    s += (f(x - n * m.a0) - f(-n * m.a0)) + (f(x + n * m.a0) - f(n * m.a0));
  return s;
}

}  // namespace

TEST_CASE("grids are centred and validated") {
  const RealGrid g(10, 5.0);
  CHECK(g.x(0) == doctest::Approx(-2.25));
  CHECK(g.x(9) == doctest::Approx(2.25));
  CHECK_THROWS_AS(RealGrid(4, 1.0), Error);
  const auto lat = ReciprocalGrid::lattice(1.0, 2, 0.5);
  CHECK(lat.size() == 5);
  CHECK(lat.value(0) == doctest::Approx(0.5 - 4.0 * kPi));
  CHECK_THROWS_AS(ReciprocalGrid::lattice(1.0, 2, 4.0), Error);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate(DoubleWell{-1.0, 1.0}), Error);
  CHECK_THROWS_AS(validate(Cosine{1.0, 0.0}), Error);
  CHECK_THROWS_AS(validate(PeriodicErfCoulomb{1.0, 0.0, 1.0}), Error);
  CHECK(is_periodic(Cosine{1.0, 2.0}));
  CHECK_FALSE(is_periodic(DoubleWell{1.0, 1.0}));
  CHECK(lattice_constant(Cosine{1.0, 2.0 * kPi}) == doctest::Approx(1.0));
}

TEST_CASE("exponential integral") {
  CHECK(expint_e1(0.5) == doctest::Approx(0.5597735947761608).epsilon(1e-14));
  CHECK(expint_e1(1.0) == doctest::Approx(0.2193839343955205).epsilon(1e-14));
  CHECK(expint_e1(1e-3) == doctest::Approx(e1_series(1e-3)).epsilon(1e-13));
  CHECK(expint_e1(2.0) == doctest::Approx(e1_series(2.0)).epsilon(1e-12));
  CHECK(expint_e1(1e4) == 0.0);
}

TEST_CASE("erf charge matched to the reference cosine") {
  const double Z = erf_charge_matching_cosine(-10.0, 5.0, 1.0);
  CHECK(Z == doctest::Approx(44.17304306753945).epsilon(1e-13));
  const PeriodicErfCoulomb m{Z, 5.0, 1.0};
  CHECK(std::abs(unit_cell_fourier_coeff(m, 2.0 * kPi)) == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(unit_cell_fourier_coeff(m, 4.0 * kPi).real() == doctest::Approx(-0.6256047735078678).epsilon(1e-12));
  CHECK_THROWS_AS(unit_cell_fourier_coeff(m, 0.0), Error);
}

TEST_CASE("erf samples match a real-space lattice sum") {
  const PeriodicErfCoulomb m{erf_charge_matching_cosine(-10.0, 5.0, 1.0), 5.0, 1.0};
  for (double x : {0.1, 0.25, 0.5}) {
    const double series = sample(m, x) - sample(m, 0.0);
    CHECK(series == doctest::Approx(erf_lattice_difference(m, x)).epsilon(1e-8));
  }
}

TEST_CASE("cosine coefficients and harmonics") {
  const Cosine c{-2.0, 2.0 * kPi};
  CHECK(unit_cell_fourier_coeff(c, 2.0 * kPi).real() == doctest::Approx(-1.0));
  CHECK(std::abs(unit_cell_fourier_coeff(c, 4.0 * kPi)) == 0.0);
  CHECK(significant_harmonics(c) == 1);
  CHECK(significant_harmonics(PeriodicErfCoulomb{44.0, 5.0, 1.0}, 1e-10) > 3);
}

TEST_CASE("sinc DVR reproduces the harmonic oscillator") {
  const RealGrid g(256, 20.0);
  const Harmonic h{1.0, 1.0};
  const MatterSolution s = matter_eigenstates(dvr_hamiltonian(g, h, 1.0), 8, g);
  for (int n = 0; n < 8; ++n) CHECK(s.energies(n) == doctest::Approx(n + 0.5).epsilon(1e-10));
  // <0|x|1> = 1/sqrt(2) for m = w = 1, times the charge
  CHECK(std::abs(s.dipoles(0, 1)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(std::abs(s.dipoles(0, 0)) < 1e-10);
  CHECK((s.dipoles - s.dipoles.transpose()).norm() < 1e-12);
  const Vec psi = s.wavefunctions.col(0);
  CHECK(psi.squaredNorm() * g.dx() == doctest::Approx(1.0));
}

TEST_CASE("double well states alternate in parity") {
  const RealGrid g(512, 6.0);
  const MatterSolution s = matter_eigenstates(dvr_hamiltonian(g, DoubleWell{3.0, 3.85}, 1.0), 6, g);
  const std::vector<int> par = state_parities(s);
  for (int n = 0; n < 6; ++n) CHECK(par[n] == (n % 2 == 0 ? 1 : -1));
  CHECK(s.energies(1) - s.energies(0) > 0.0);
}

TEST_CASE("periodic DVR kinetic energy is the exact plane-wave spectrum") {
  const RealGrid g(21, 3.0);
  Mat t = periodic_dvr_kinetic(g, 2.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(t);
  std::vector<double> expect;
  for (int j = -10; j <= 10; ++j) expect.push_back(std::pow(2.0 * kPi * j / 3.0, 2) / 4.0);
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 21; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(expect[i]).epsilon(1e-11));
  CHECK_THROWS_AS(periodic_dvr_kinetic(RealGrid(20, 3.0), 1.0), Error);
}

TEST_CASE("dense Fourier table of a cosine") {
  const RealGrid g(64, 4.0);
  const FourierTable f = potential_fourier_dense(Cosine{3.0, 2.0 * kPi}, g);
  double peak = 0.0;
  for (long j = 0; j < f.K.size(); ++j) {
    if (std::abs(std::abs(f.K(j)) - 2.0 * kPi) < 1e-9) {
      CHECK(std::abs(f.values(j) - cplx(3.0 * 4.0 / (4.0 * kPi), 0)) < 1e-12);
      peak += 1;
    } else {
      CHECK(std::abs(f.values(j)) < 1e-12);
    }
  }
  CHECK(peak == 2);
}

TEST_CASE("box coefficients of the double well") {
  const DoubleWell m{3.0, 3.85};
  const int nK = 10;
  const CVec c = box_coefficients(m, 6.0, nK);
  CHECK(c.size() == 2 * nK - 1);
  CHECK(c(nK - 1).real() == doctest::Approx(53.37).epsilon(1e-12));
  CHECK(c(nK).real() == doctest::Approx(-44.08198297180646).epsilon(1e-11));
  CHECK(c(nK - 2).real() == doctest::Approx(-44.08198297180646).epsilon(1e-11));
  CHECK(c(nK + 2).real() == doctest::Approx(-12.486612190641148).epsilon(1e-11));
  CHECK(c.imag().cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("box coefficients of a periodic model are the lattice coefficients") {
  const Cosine m{-1.5, 2.0 * kPi};
  const CVec c = box_coefficients(m, 4.0, 9);  // d dK = 2 pi at d = 4
  CHECK(c(8 + 4).real() == doctest::Approx(-0.75));
  CHECK(c(8 - 4).real() == doctest::Approx(-0.75));
  CHECK(std::abs(c(8 + 1)) < 1e-15);
}

TEST_CASE("localization width shrinks with mass") {
  const DoubleWell m{50.0, 95.0};
  const double w1 = localization_width(m, 1.0, 6, 8.0, 800);
  const double w2 = localization_width(m, 20.0, 6, 8.0, 800);
  CHECK(w1 > w2);
  CHECK(w1 < 8.0);
  CHECK(w2 > 0.5);
}
