#include "cqed/operators.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace cqed {

FockBasis::FockBasis(int n, double w) : n_fock(n), omega(w) {
  if (n < 2) throw Error(ErrorKind::InvalidBasis, "n_fock must be >= 2, got " + std::to_string(n));
  if (!(w > 0.0) || !std::isfinite(w))
    throw Error(ErrorKind::InvalidBasis, "Fock frequency must be positive and finite");
}

static void check_basis(const FockBasis& b) {
  if (b.n_fock < 2) throw Error(ErrorKind::InvalidBasis, "n_fock must be >= 2");
  if (!(b.omega > 0.0)) throw Error(ErrorKind::InvalidBasis, "Fock frequency must be positive");
}

Mat fock_real(const FockBasis& basis, FockOp kind) {
  check_basis(basis);
  const int n = basis.n_fock;
  Mat m = Mat::Zero(n, n);
  switch (kind) {
    case FockOp::Lower:
      for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(double(k));
      break;
    case FockOp::Raise:
      for (int k = 1; k < n; ++k) m(k, k - 1) = std::sqrt(double(k));
      break;
    case FockOp::Position: {
      const double s = std::sqrt(kHbar / (2.0 * basis.omega));
      for (int k = 1; k < n; ++k) m(k - 1, k) = m(k, k - 1) = s * std::sqrt(double(k));
      break;
    }
    case FockOp::Number:
      for (int k = 0; k < n; ++k) m(k, k) = k;
      break;
    case FockOp::Momentum:
      throw Error(ErrorKind::InvalidArgument, "momentum operator is imaginary; use fock_operator");
  }
  return m;
}

CMat fock_operator(const FockBasis& basis, FockOp kind) {
  check_basis(basis);
  if (kind != FockOp::Momentum) return fock_real(basis, kind).cast<cplx>();
  const int n = basis.n_fock;
  const double s = std::sqrt(kHbar * basis.omega / 2.0);
  CMat m = CMat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    m(k, k - 1) = cplx(0.0, s * std::sqrt(double(k)));
    m(k - 1, k) = cplx(0.0, -s * std::sqrt(double(k)));
  }
  return m;
}

Mat quadrature_square(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidBasis, "n_fock must be >= 2");
  Mat m = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = 2.0 * k + 1.0;
  for (int k = 0; k + 2 < n; ++k) m(k, k + 2) = m(k + 2, k) = std::sqrt(double(k + 1) * double(k + 2));
  return m;
}

PhaseExponential::PhaseExponential(const FockBasis& basis) : basis_(basis) {
  check_basis(basis);
  Eigen::SelfAdjointEigenSolver<Mat> es(fock_real(basis, FockOp::Position));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "position operator eigendecomposition failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

CMat PhaseExponential::operator()(double theta) const {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "phase angle must be finite");
  const int n = basis_.n_fock;
  CVec ph(n);
  for (int j = 0; j < n; ++j) ph(j) = std::polar(1.0, -theta * evals_(j));
  CMat left = evecs_.cast<cplx>() * ph.asDiagonal();
  return left * evecs_.transpose().cast<cplx>();
}

Mat PhaseExponential::rephased(double theta) const { return rephase_real((*this)(theta)); }

CMat phase_exponential(const FockBasis& basis, double theta) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::shared_ptr<PhaseExponential>> cache;
  std::shared_ptr<PhaseExponential> pe;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(basis.n_fock, basis.omega);
    auto it = cache.find(key);
    if (it == cache.end()) {
      if (cache.size() > 64) cache.clear();
      pe = std::make_shared<PhaseExponential>(basis);
      cache.emplace(key, pe);
    } else {
      pe = it->second;
    }
  }
  return (*pe)(theta);
}

CVec photon_phases(int n) {
  static const cplx pow_i[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  CVec d(n);
  for (int k = 0; k < n; ++k) d(k) = pow_i[k % 4];
  return d;
}

Mat rephase_real(const CMat& op) {
  const int n = static_cast<int>(op.rows());
  CVec d = photon_phases(n);
  CMat r = d.conjugate().asDiagonal() * op * d.asDiagonal();
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  const double im = r.imag().cwiseAbs().maxCoeff();
  if (im > 1e-12 * scale)
    throw Error(ErrorKind::Numeric, "rephased photon operator is not real (imag " + std::to_string(im) + ")");
  return r.real();
}

JointBasis::JointBasis(int matter, std::vector<int> fock) : matter_dim(matter), fock_dims(std::move(fock)) {
  if (matter < 1) throw Error(ErrorKind::InvalidBasis, "matter dimension must be positive");
  for (int d : fock_dims)
    if (d < 1) throw Error(ErrorKind::InvalidBasis, "photon dimension must be positive");
}

long JointBasis::photon_dim() const {
  long p = 1;
  for (int d : fock_dims) p *= d;
  return p;
}

long JointBasis::total() const { return matter_dim * photon_dim(); }

long JointBasis::index(int matter, const std::vector<int>& photon) const {
  if (photon.size() != fock_dims.size()) throw Error(ErrorKind::DimensionMismatch, "photon index rank");
  if (matter < 0 || matter >= matter_dim) throw Error(ErrorKind::InvalidArgument, "matter index out of range");
  long idx = matter;
  for (size_t a = 0; a < fock_dims.size(); ++a) {
    if (photon[a] < 0 || photon[a] >= fock_dims[a]) throw Error(ErrorKind::InvalidArgument, "photon index out of range");
    idx = idx * fock_dims[a] + photon[a];
  }
  return idx;
}

int JointBasis::decompose(long idx, std::vector<int>& photon) const {
  if (idx < 0 || idx >= total()) throw Error(ErrorKind::InvalidArgument, "joint index out of range");
  photon.assign(fock_dims.size(), 0);
  for (size_t a = fock_dims.size(); a-- > 0;) {
    photon[a] = static_cast<int>(idx % fock_dims[a]);
    idx /= fock_dims[a];
  }
  return static_cast<int>(idx);
}

template <class M>
static M kron_impl(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat kron(const CMat& a, const CMat& b) { return kron_impl(a, b); }
Mat kron(const Mat& a, const Mat& b) { return kron_impl(a, b); }

CMat tensor_embed(const std::optional<CMat>& op_matter, const std::vector<std::optional<CMat>>& op_photon,
                  const JointBasis& joint) {
  if (op_photon.size() != joint.fock_dims.size())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(joint.fock_dims.size()) +
                                                  " photon factors, got " + std::to_string(op_photon.size()));
  auto factor = [](const std::optional<CMat>& op, int dim, const char* what) -> CMat {
    if (!op) return CMat::Identity(dim, dim);
    if (op->rows() != dim || op->cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + " factor is " + std::to_string(op->rows()) + "x" +
                                                    std::to_string(op->cols()) + ", expected " + std::to_string(dim));
    return *op;
  };
  CMat out = factor(op_matter, joint.matter_dim, "matter");
  for (size_t a = 0; a < op_photon.size(); ++a) out = kron(out, factor(op_photon[a], joint.fock_dims[a], "photon"));
  return out;
}

}  // namespace cqed
