#include "doctest.h"

#include <random>

#include "cqed/linalg.hpp"

using namespace cqed;

namespace {

CMat random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("hermitian matrix rejects asymmetric input") {
  Mat m = Mat::Identity(3, 3);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
  CMat c = CMat::Identity(2, 2);
  c(0, 1) = cplx(0, 1);
  c(1, 0) = cplx(0, 1);
  CHECK_THROWS_AS(HermitianMatrix{c}, Error);
}

TEST_CASE("eigensolver matches Eigen on a random complex matrix") {
  const CMat a = random_hermitian(40, 7);
  const SpectrumResult r = eig_hermitian(HermitianMatrix(a), true, 12);
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  CHECK((r.values - es.eigenvalues().head(12)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(r.residuals.maxCoeff() < 1e-10);
  for (int c = 0; c < 12; ++c) {
    Eigen::Index imax;
    r.vectors.col(c).cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(r.vectors(imax, c).imag()) < 1e-14);
    CHECK(r.vectors(imax, c).real() > 0.0);
  }
}

TEST_CASE("symmetry split reproduces the unsplit spectrum") {
  // Mirror symmetric real matrix.
  const int n = 20;
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  Mat s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) s(n - 1 - i, i) = 1.0;
  const Mat sym = (a + s * a * s) / 2.0;
  SignedPermutation p;
  for (int i = 0; i < n; ++i) {
    p.perm.push_back(n - 1 - i);
    p.sign.push_back(1.0);
  }
  const SpectrumResult full = eig_hermitian(HermitianMatrix(sym), true, 8);
  const SpectrumResult split = eig_symmetric_split(HermitianMatrix(sym), p, true, 8);
  CHECK((full.values - split.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(split.residuals.maxCoeff() < 1e-10);
  // A matrix without the symmetry is refused.
  CHECK_THROWS_AS(eig_symmetric_split(HermitianMatrix(Mat(a)), p, false, 4), Error);
}

TEST_CASE("banded solver agrees with the dense one") {
  const long n = 60;
  const int kd = 4;
  BandedSymmetric b(n, kd);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (long j = 0; j < n; ++j)
    for (long i = j; i <= std::min(n - 1, j + kd); ++i) b.at(i, j) = i == j ? 0.3 * i + u(rng) : u(rng);
  const SpectrumResult rb = eig_banded(b, true, 10);
  const SpectrumResult rd = eig_hermitian(HermitianMatrix(b.to_dense()), false, 10);
  CHECK((rb.values - rd.values).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(rb.residuals.maxCoeff() < 1e-9);
}
