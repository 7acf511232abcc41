#pragma once

#include <variant>
#include <vector>

#include "cqed/common.hpp"

namespace cqed {

// Dense Hermitian matrix, real symmetric when possible.
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(Mat m);
  explicit HermitianMatrix(CMat m);

  long dim() const;
  bool is_real() const { return std::holds_alternative<Mat>(data_); }
  const Mat& real() const;
  const CMat& complex() const;
  CMat to_complex() const;
  // max |H - H^dag| measured at construction.
  double asymmetry() const { return asym_; }

 private:
  std::variant<Mat, CMat> data_;
  double asym_ = 0.0;
};

double max_asymmetry(const Mat& m);
double max_asymmetry(const CMat& m);

struct SpectrumResult {
  Vec values;
  CMat vectors;  // columns; empty unless requested
  Vec residuals;  // ||Hv - lambda v||_inf per vector
  bool has_vectors() const { return vectors.cols() > 0; }
};

// Rotates every column so its largest-magnitude component is real positive.
void normalize_phases(CMat& vectors);

// Lowest n_eigs eigenpairs (all when n_eigs <= 0). Vectors carry a fixed phase:
// the largest-magnitude component is real positive.
SpectrumResult eig_hermitian(const HermitianMatrix& h, bool want_vectors, int n_eigs = -1);

// P e_b = sign[b] e_{perm[b]}, an involution commuting with H.
struct SignedPermutation {
  std::vector<long> perm;
  std::vector<double> sign;
  void validate(long dim) const;
};

// Solves the two symmetry sectors separately and merges them.
SpectrumResult eig_symmetric_split(const HermitianMatrix& h, const SignedPermutation& p, bool want_vectors,
                                   int n_eigs);

// Lower band storage: ab(i - j, j) = H(i, j) for j <= i <= j + kd.
struct BandedSymmetric {
  long n = 0;
  int kd = 0;
  Mat ab;
  BandedSymmetric() = default;
  BandedSymmetric(long n_, int kd_);
  double& at(long i, long j);
  double get(long i, long j) const;
  Mat to_dense() const;
};

// dsbevx for the eigenvalues; vectors (if requested) by banded inverse iteration.
SpectrumResult eig_banded(const BandedSymmetric& b, bool want_vectors, int n_eigs);

}  // namespace cqed
