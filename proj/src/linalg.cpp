#include "cqed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace cqed {

double max_asymmetry(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double max_asymmetry(const CMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

static void reject_asymmetric(double asym) {
  if (!(asym <= HermitianMatrix::kTolerance))
    throw Error(ErrorKind::NonHermitian, "matrix is not Hermitian: max|H - H^dag| = " + std::to_string(asym));
}

HermitianMatrix::HermitianMatrix(Mat m) {
  asym_ = m.size() ? max_asymmetry(m) : 0.0;
  reject_asymmetric(asym_);
  data_ = std::move(m);
}

HermitianMatrix::HermitianMatrix(CMat m) {
  asym_ = m.size() ? max_asymmetry(m) : 0.0;
  reject_asymmetric(asym_);
  data_ = std::move(m);
}

long HermitianMatrix::dim() const {
  return std::visit([](const auto& m) { return long(m.rows()); }, data_);
}

const Mat& HermitianMatrix::real() const {
  if (!is_real()) throw Error(ErrorKind::InvalidArgument, "matrix is complex");
  return std::get<Mat>(data_);
}

const CMat& HermitianMatrix::complex() const {
  if (is_real()) throw Error(ErrorKind::InvalidArgument, "matrix is real");
  return std::get<CMat>(data_);
}

CMat HermitianMatrix::to_complex() const {
  if (is_real()) return real().cast<cplx>();
  return complex();
}

void normalize_phases(CMat& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index imax = 0;
    v.col(c).cwiseAbs().maxCoeff(&imax);
    cplx z = v(imax, c);
    if (std::abs(z) > 0) v.col(c) *= std::conj(z) / std::abs(z);
  }
}

namespace {

void fix_phase(CMat& v) { normalize_phases(v); }

void check_residuals(const SpectrumResult& r) {
  for (Eigen::Index i = 0; i < r.residuals.size(); ++i) {
    double tol = 1e-9 * (1.0 + std::abs(r.values(i)));
    if (!(r.residuals(i) <= tol))
      throw Error(ErrorKind::Numeric, "eigenpair " + std::to_string(i) + " residual " +
                                          std::to_string(r.residuals(i)) + " exceeds " + std::to_string(tol));
  }
}

int clamp_count(int n_eigs, long n) { return (n_eigs <= 0 || n_eigs > n) ? int(n) : n_eigs; }

SpectrumResult eig_real(Mat a, bool want, int n_eigs) {
  const lapack_int n = lapack_int(a.rows());
  const lapack_int iu = clamp_count(n_eigs, n);
  Vec diag = a.diagonal();
  Vec w(n);
  Mat z(want ? n : 1, want ? iu : 1);
  std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, iu));
  lapack_int m = 0;
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, want ? 'V' : 'N', iu == n ? 'A' : 'I', 'L', n, a.data(), n,
                                   0.0, 0.0, 1, iu, 0.0, &m, w.data(), z.data(), want ? n : 1, isuppz.data());
  if (info != 0) throw Error(ErrorKind::Numeric, "dsyevr failed, info = " + std::to_string(info));
  if (m < iu) throw Error(ErrorKind::Numeric, "dsyevr returned too few eigenvalues");
  SpectrumResult r;
  r.values = w.head(iu);
  if (want) {
    a.diagonal() = diag;  // dsyevr with 'L' leaves the strict upper triangle untouched
    Mat hz = a.selfadjointView<Eigen::Upper>() * z;
    r.residuals.resize(iu);
    for (lapack_int i = 0; i < iu; ++i) r.residuals(i) = (hz.col(i) - r.values(i) * z.col(i)).cwiseAbs().maxCoeff();
    r.vectors = z.cast<cplx>();
    fix_phase(r.vectors);
    check_residuals(r);
  }
  return r;
}

SpectrumResult eig_complex(CMat a, bool want, int n_eigs) {
  const lapack_int n = lapack_int(a.rows());
  const lapack_int iu = clamp_count(n_eigs, n);
  CVec diag = a.diagonal();
  Vec w(n);
  CMat z(want ? n : 1, want ? iu : 1);
  std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, iu));
  lapack_int m = 0;
  lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, want ? 'V' : 'N', iu == n ? 'A' : 'I', 'L', n, a.data(), n,
                                   0.0, 0.0, 1, iu, 0.0, &m, w.data(), z.data(), want ? n : 1, isuppz.data());
  if (info != 0) throw Error(ErrorKind::Numeric, "zheevr failed, info = " + std::to_string(info));
  if (m < iu) throw Error(ErrorKind::Numeric, "zheevr returned too few eigenvalues");
  SpectrumResult r;
  r.values = w.head(iu);
  if (want) {
    a.diagonal() = diag;
    CMat hz = a.selfadjointView<Eigen::Upper>() * z;
    r.residuals.resize(iu);
    for (lapack_int i = 0; i < iu; ++i) r.residuals(i) = (hz.col(i) - r.values(i) * z.col(i)).cwiseAbs().maxCoeff();
    r.vectors = std::move(z);
    fix_phase(r.vectors);
    check_residuals(r);
  }
  return r;
}

}  // namespace

SpectrumResult eig_hermitian(const HermitianMatrix& h, bool want_vectors, int n_eigs) {
  if (h.dim() == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  if (h.is_real()) return eig_real(h.real(), want_vectors, n_eigs);
  return eig_complex(h.complex(), want_vectors, n_eigs);
}

void SignedPermutation::validate(long dim) const {
  if (long(perm.size()) != dim || long(sign.size()) != dim)
    throw Error(ErrorKind::DimensionMismatch, "symmetry size does not match matrix dimension");
  for (long a = 0; a < dim; ++a) {
    long b = perm[a];
    if (b < 0 || b >= dim || perm[b] != a) throw Error(ErrorKind::InvalidArgument, "symmetry is not an involution");
    if (std::abs(std::abs(sign[a]) - 1.0) > 0 || sign[a] * sign[b] != 1.0)
      throw Error(ErrorKind::InvalidArgument, "symmetry signs must be +-1 and consistent");
  }
}

namespace {

struct SectorVector {
  long i0, i1;  // i1 < 0 for a fixed point
  double c0, c1;
};

std::vector<SectorVector> sector_basis(const SignedPermutation& p, double sigma) {
  std::vector<SectorVector> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (long a = 0; a < long(p.perm.size()); ++a) {
    long b = p.perm[a];
    if (b == a) {
      if (sigma * p.sign[a] > 0) out.push_back({a, -1, 1.0, 0.0});
    } else if (b > a) {
      out.push_back({a, b, r, sigma * p.sign[a] * r});
    }
  }
  return out;
}

template <class M>
M project(const M& h, const std::vector<SectorVector>& basis) {
  const long d = long(basis.size());
  M out(d, d);
  for (long j = 0; j < d; ++j) {
    const auto& vj = basis[j];
    for (long i = 0; i < d; ++i) {
      const auto& vi = basis[i];
      auto s = vi.c0 * vj.c0 * h(vi.i0, vj.i0);
      if (vj.i1 >= 0) s += vi.c0 * vj.c1 * h(vi.i0, vj.i1);
      if (vi.i1 >= 0) {
        s += vi.c1 * vj.c0 * h(vi.i1, vj.i0);
        if (vj.i1 >= 0) s += vi.c1 * vj.c1 * h(vi.i1, vj.i1);
      }
      out(i, j) = s;
    }
  }
  // exact symmetry despite rounding in the four-term sums
  M sym = (out + out.adjoint()) * 0.5;
  return sym;
}

template <class M>
double symmetry_defect(const M& h, const SignedPermutation& p) {
  double worst = 0.0;
  const long n = h.rows();
  for (long b = 0; b < n; ++b)
    for (long a = 0; a < n; ++a)
      worst = std::max(worst, std::abs(p.sign[a] * p.sign[b] * h(p.perm[a], p.perm[b]) - h(a, b)));
  return worst;
}

}  // namespace

SpectrumResult eig_symmetric_split(const HermitianMatrix& h, const SignedPermutation& p, bool want_vectors,
                                   int n_eigs) {
  const long n = h.dim();
  p.validate(n);
  const double defect = h.is_real() ? symmetry_defect(h.real(), p) : symmetry_defect(h.complex(), p);
  const double scale = h.is_real() ? h.real().cwiseAbs().maxCoeff() : h.complex().cwiseAbs().maxCoeff();
  if (defect > 1e-10 * std::max(1.0, scale))
    throw Error(ErrorKind::InvalidArgument, "matrix does not commute with the declared symmetry (defect " +
                                                std::to_string(defect) + ")");
  const int want_n = clamp_count(n_eigs, n);

  struct Part {
    std::vector<SectorVector> basis;
    SpectrumResult res;
  };
  std::vector<Part> parts;
  for (double sigma : {1.0, -1.0}) {
    Part part;
    part.basis = sector_basis(p, sigma);
    if (part.basis.empty()) continue;
    const int k = std::min<long>(want_n, long(part.basis.size()));
    if (h.is_real())
      part.res = eig_hermitian(HermitianMatrix(project(h.real(), part.basis)), want_vectors, k);
    else
      part.res = eig_hermitian(HermitianMatrix(project(h.complex(), part.basis)), want_vectors, k);
    parts.push_back(std::move(part));
  }

  struct Ref {
    double value;
    int part;
    long col;
  };
  std::vector<Ref> refs;
  for (int s = 0; s < int(parts.size()); ++s)
    for (long c = 0; c < parts[s].res.values.size(); ++c) refs.push_back({parts[s].res.values(c), s, c});
  std::stable_sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) { return a.value < b.value; });
  refs.resize(std::min<size_t>(refs.size(), size_t(want_n)));

  SpectrumResult out;
  out.values.resize(long(refs.size()));
  for (size_t i = 0; i < refs.size(); ++i) out.values(long(i)) = refs[i].value;
  if (want_vectors) {
    out.vectors = CMat::Zero(n, long(refs.size()));
    for (size_t i = 0; i < refs.size(); ++i) {
      const Part& part = parts[refs[i].part];
      for (long a = 0; a < long(part.basis.size()); ++a) {
        const auto& v = part.basis[a];
        cplx c = part.res.vectors(a, refs[i].col);
        out.vectors(v.i0, long(i)) += v.c0 * c;
        if (v.i1 >= 0) out.vectors(v.i1, long(i)) += v.c1 * c;
      }
    }
    fix_phase(out.vectors);
    CMat hv = h.is_real() ? CMat(h.real() * out.vectors) : CMat(h.complex() * out.vectors);
    out.residuals.resize(out.values.size());
    for (long i = 0; i < out.values.size(); ++i)
      out.residuals(i) = (hv.col(i) - out.values(i) * out.vectors.col(i)).cwiseAbs().maxCoeff();
    check_residuals(out);
  }
  return out;
}

BandedSymmetric::BandedSymmetric(long n_, int kd_) : n(n_), kd(kd_), ab(Mat::Zero(kd_ + 1, n_)) {
  if (n_ < 1 || kd_ < 0 || kd_ >= n_) throw Error(ErrorKind::InvalidArgument, "invalid band dimensions");
}

double& BandedSymmetric::at(long i, long j) {
  if (i < j) std::swap(i, j);
  if (i - j > kd) throw Error(ErrorKind::InvalidArgument, "element outside the band");
  return ab(i - j, j);
}

double BandedSymmetric::get(long i, long j) const {
  if (i < j) std::swap(i, j);
  if (i - j > kd) return 0.0;
  return ab(i - j, j);
}

Mat BandedSymmetric::to_dense() const {
  Mat d = Mat::Zero(n, n);
  for (long j = 0; j < n; ++j)
    for (long i = j; i <= std::min(n - 1, j + kd); ++i) d(i, j) = d(j, i) = ab(i - j, j);
  return d;
}

namespace {

Vec band_matvec(const BandedSymmetric& b, const Vec& x) {
  Vec y = Vec::Zero(b.n);
  for (long j = 0; j < b.n; ++j) {
    y(j) += b.ab(0, j) * x(j);
    const long top = std::min(b.n - 1, j + b.kd);
    for (long i = j + 1; i <= top; ++i) {
      const double h = b.ab(i - j, j);
      y(i) += h * x(j);
      y(j) += h * x(i);
    }
  }
  return y;
}

}  // namespace

SpectrumResult eig_banded(const BandedSymmetric& b, bool want_vectors, int n_eigs) {
  const lapack_int n = lapack_int(b.n);
  const lapack_int kd = b.kd;
  const lapack_int iu = clamp_count(n_eigs, n);
  Mat ab = b.ab;
  double q_dummy = 0.0, z_dummy = 0.0;
  Vec w(n);
  std::vector<lapack_int> ifail(n);
  lapack_int m = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'L', n, kd, ab.data(), kd + 1, &q_dummy, 1, 0.0, 0.0,
                                   1, iu, abstol, &m, w.data(), &z_dummy, 1, ifail.data());
  if (info != 0) throw Error(ErrorKind::Numeric, "dsbevx failed, info = " + std::to_string(info));
  if (m < iu) throw Error(ErrorKind::Numeric, "dsbevx returned too few eigenvalues");
  SpectrumResult r;
  r.values = w.head(iu);
  if (!want_vectors) return r;

  // Inverse iteration on the general band LU of H - shift.
  const lapack_int ldab = 3 * kd + 1;
  Mat vecs(n, iu);
  r.residuals.resize(iu);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (lapack_int e = 0; e < iu; ++e) {
    const double lam = r.values(e);
    const double shift = lam + 1e-13 * (1.0 + std::abs(lam));
    Mat lu = Mat::Zero(ldab, n);
    for (lapack_int j = 0; j < n; ++j) {
      const lapack_int lo = std::max<lapack_int>(0, j - kd), hi = std::min<lapack_int>(n - 1, j + kd);
      for (lapack_int i = lo; i <= hi; ++i) lu(2 * kd + i - j, j) = b.get(i, j) - (i == j ? shift : 0.0);
    }
    std::vector<lapack_int> ipiv(n);
    info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, lu.data(), ldab, ipiv.data());
    if (info < 0) throw Error(ErrorKind::Numeric, "dgbtrf failed, info = " + std::to_string(info));
    if (info > 0) lu(2 * kd, info - 1) = 1e-300;  // exactly singular pivot: the shift hit an eigenvalue
    Vec x(n);
    for (lapack_int i = 0; i < n; ++i) x(i) = uni(rng);
    x.normalize();
    double res = 0.0;
    for (int it = 0; it < 12; ++it) {
      info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, 1, lu.data(), ldab, ipiv.data(), x.data(), n);
      if (info != 0) throw Error(ErrorKind::Numeric, "dgbtrs failed");
      for (lapack_int p = 0; p < e; ++p)
        if (std::abs(r.values(p) - lam) < 1e-8 * (1.0 + std::abs(lam))) x -= vecs.col(p).dot(x) * vecs.col(p);
      x.normalize();
      res = (band_matvec(b, x) - lam * x).cwiseAbs().maxCoeff();
      if (it >= 2 && res <= 1e-10 * (1.0 + std::abs(lam))) break;
    }
    vecs.col(e) = x;
    r.residuals(e) = res;
  }
  r.vectors = vecs.cast<cplx>();
  fix_phase(r.vectors);
  check_residuals(r);
  return r;
}

}  // namespace cqed
