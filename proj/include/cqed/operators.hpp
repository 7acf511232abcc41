#pragma once

#include <optional>
#include <vector>

#include "cqed/common.hpp"

namespace cqed {

struct FockBasis {
  int n_fock = 2;
  double omega = 1.0;

  FockBasis() = default;
  FockBasis(int n, double w);
};

enum class FockOp { Lower, Raise, Position, Momentum, Number };

// Number-basis matrix of the requested ladder operator.
// q = sqrt(hbar/2w)(b + b^dag), p = i sqrt(hbar w/2)(b^dag - b).
CMat fock_operator(const FockBasis& basis, FockOp kind);

// Real matrices for everything except the momentum.
Mat fock_real(const FockBasis& basis, FockOp kind);

// Exact (b + b^dag)^2 restricted to the truncated space, not the product of
// truncated factors (they differ on the top level only).
Mat quadrature_square(int n_fock);

// exp(-i theta q) for many theta values from one eigendecomposition of q.
class PhaseExponential {
 public:
  explicit PhaseExponential(const FockBasis& basis);

  CMat operator()(double theta) const;

  // D^dag exp(-i theta q) D with D = diag(i^n); real for every theta.
  Mat rephased(double theta) const;

  const FockBasis& basis() const { return basis_; }

 private:
  FockBasis basis_;
  Vec evals_;
  Mat evecs_;
};

CMat phase_exponential(const FockBasis& basis, double theta);

// Conjugation by D = diag(i^n) on the photon factor. Throws if the result is
// not real to 1e-12 (relative to the largest entry).
Mat rephase_real(const CMat& op);

// i^n for n = 0..n-1.
CVec photon_phases(int n_fock);

struct JointBasis {
  int matter_dim = 0;
  std::vector<int> fock_dims;

  JointBasis() = default;
  JointBasis(int matter, std::vector<int> fock);

  long photon_dim() const;
  long total() const;
  long index(int matter, const std::vector<int>& photon) const;
  // Inverse of index(): returns matter index and fills photon occupation.
  int decompose(long idx, std::vector<int>& photon) const;
};

// Kronecker product, first factor slowest.
CMat kron(const CMat& a, const CMat& b);
Mat kron(const Mat& a, const Mat& b);

// Embeds matter and photon factors in matter-major, photon-minor order.
// A missing factor is the identity of the matching dimension.
CMat tensor_embed(const std::optional<CMat>& op_matter,
                  const std::vector<std::optional<CMat>>& op_photon,
                  const JointBasis& joint);

}  // namespace cqed
