#include "doctest.h"

#include <cmath>

#include "cqed/operators.hpp"

using namespace cqed;

TEST_CASE("fock basis rejects bad sizes and frequencies") {
  CHECK_THROWS_AS(FockBasis(1, 1.0), Error);
  CHECK_THROWS_AS(FockBasis(4, 0.0), Error);
  CHECK_THROWS_AS(FockBasis(4, std::nan("")), Error);
  CHECK_NOTHROW(FockBasis(2, 0.3));
}

TEST_CASE("ladder matrix elements") {
  const FockBasis fb(6, 2.0);
  const Mat a = fock_real(fb, FockOp::Lower);
  for (int n = 1; n < 6; ++n) CHECK(a(n - 1, n) == doctest::Approx(std::sqrt(double(n))).epsilon(1e-15));
  CHECK((fock_real(fb, FockOp::Raise) - a.transpose()).norm() == 0.0);
  const Mat N = fock_real(fb, FockOp::Number);
  for (int n = 0; n < 6; ++n) CHECK(N(n, n) == n);
  CHECK_THROWS_AS(fock_real(fb, FockOp::Momentum), Error);
}

TEST_CASE("position and momentum carry the frequency scaling") {
  const double w = 3.0;
  const FockBasis fb(8, w);
  const CMat q = fock_operator(fb, FockOp::Position);
  const CMat p = fock_operator(fb, FockOp::Momentum);
  CHECK(std::abs(q(0, 1) - cplx(std::sqrt(1.0 / (2 * w)), 0)) < 1e-15);
  CHECK(std::abs(p(1, 0) - cplx(0, std::sqrt(w / 2))) < 1e-15);
  // [q, p] = i away from the truncation edge
  const CMat c = q * p - p * q;
  for (int n = 0; n < 7; ++n) CHECK(std::abs(c(n, n) - cplx(0, 1)) < 1e-12);
}

TEST_CASE("exact quadrature square differs from the truncated product only on the top level") {
  const int n = 7;
  const Mat a = fock_real(FockBasis(n, 1.0), FockOp::Lower);
  const Mat x = a + a.transpose();
  const Mat exact = quadrature_square(n);
  const Mat prod = x * x;
  CHECK((exact - prod).topLeftCorner(n - 1, n - 1).norm() < 1e-14);
  CHECK(exact(n - 1, n - 1) == doctest::Approx(2.0 * (n - 1) + 1.0));
  CHECK(prod(n - 1, n - 1) == doctest::Approx(double(n - 1)));
}

TEST_CASE("phase exponential is unitary and additive") {
  const FockBasis fb(12, 1.7);
  const CMat u1 = phase_exponential(fb, 0.4), u2 = phase_exponential(fb, -1.1), u3 = phase_exponential(fb, -0.7);
  CHECK((u1.adjoint() * u1 - CMat::Identity(12, 12)).norm() < 1e-12);
  CHECK((u1 * u2 - u3).norm() < 1e-12);
  CHECK((phase_exponential(fb, 0.0) - CMat::Identity(12, 12)).norm() < 1e-12);
}

TEST_CASE("phase exponential agrees with the power series of exp(-i theta q)") {
  const FockBasis fb(10, 2.3);
  const double theta = 0.35;
  const CMat q = fock_operator(fb, FockOp::Position);
  CMat term = CMat::Identity(10, 10), sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * (cplx(0, -theta) * q) / double(k);
    sum += term;
  }
  CHECK((phase_exponential(fb, theta) - sum).norm() < 1e-12);
}

TEST_CASE("photon rephasing makes the phase exponential real") {
  const FockBasis fb(9, 1.0);
  const CVec d = photon_phases(9);
  const CMat u = phase_exponential(fb, 0.8);
  const CMat r = d.asDiagonal().inverse() * u * d.asDiagonal();
  CHECK(r.imag().norm() < 1e-12);
  CHECK((rephase_real(u) - r.real()).norm() < 1e-14);
  CHECK_THROWS_AS(rephase_real(cplx(0, 1) * CMat::Identity(9, 9)), Error);
}

TEST_CASE("joint basis indexing round trip") {
  const JointBasis jb(3, {4, 2});
  CHECK(jb.total() == 24);
  std::vector<int> occ;
  for (long idx = 0; idx < jb.total(); ++idx) {
    jb.decompose(idx, occ);
    CHECK(jb.index(int(idx / 8), occ) == idx);
  }
  CHECK_THROWS_AS(JointBasis(0, {3}), Error);
}

TEST_CASE("kron and tensor_embed agree") {
  const JointBasis jb(2, {3});
  CMat m(2, 2);
  m << 1, cplx(0, 2), cplx(0, -2), 3;
  const CMat a = fock_operator(FockBasis(3, 1.0), FockOp::Lower);
  const CMat full = kron(m, a);
  const CMat e = tensor_embed(m, {a}, jb);
  CHECK((full - e).norm() < 1e-15);
  CHECK((tensor_embed(std::nullopt, {a}, jb) - kron(CMat(CMat::Identity(2, 2)), a)).norm() < 1e-15);
}
