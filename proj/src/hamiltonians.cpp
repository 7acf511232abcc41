#include "cqed/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cqed {

std::string to_string(Gauge g) {
  switch (g) {
    case Gauge::PF: return "pf";
    case Gauge::pA: return "pa";
    case Gauge::AD: return "ad";
    case Gauge::RAD: return "rad";
    case Gauge::RAD_k: return "rad-k";
    case Gauge::RAD_k_blwa: return "rad-k-blwa";
    case Gauge::pA_k_blwa: return "pa-k-blwa";
  }
  return "?";
}

Gauge parse_gauge(const std::string& s) {
  for (Gauge g : {Gauge::PF, Gauge::pA, Gauge::AD, Gauge::RAD, Gauge::RAD_k, Gauge::RAD_k_blwa, Gauge::pA_k_blwa})
    if (to_string(g) == s) return g;
  throw Error(ErrorKind::Config, "unknown gauge '" + s + "' (expected pf, pa, ad, rad, rad-k, rad-k-blwa, pa-k-blwa)");
}

bool is_rad_family(Gauge g) { return g == Gauge::RAD || g == Gauge::RAD_k || g == Gauge::RAD_k_blwa; }

RadFrame make_rad_frame(double omega, double gamma, double mass) {
  RadFrame f;
  BogoliubovResult b = bogoliubov(omega, gamma);
  f.omega = omega;
  f.gamma = gamma;
  f.Omega = b.Omega;
  f.u = b.u;
  f.v = b.v;
  f.xi = effective_xi_single(omega, gamma, mass);
  f.m_eff = effective_mass(mass, omega, gamma);
  return f;
}

BlwaNumberOperator parse_blwa_number_operator(const std::string& s) {
  if (s == "coulomb") return BlwaNumberOperator::Coulomb;
  if (s == "bogoliubov") return BlwaNumberOperator::Bogoliubov;
  throw Error(ErrorKind::Config, "unknown number operator '" + s + "' (expected coulomb or bogoliubov)");
}

std::string to_string(BlwaNumberOperator op) { return op == BlwaNumberOperator::Coulomb ? "coulomb" : "bogoliubov"; }

namespace {

// i^(total photon number) for every joint index.
CVec joint_photon_phases(const JointBasis& basis) {
  static const cplx pow_i[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  CVec d(basis.total());
  std::vector<int> occ;
  for (long idx = 0; idx < basis.total(); ++idx) {
    basis.decompose(idx, occ);
    int s = 0;
    for (int n : occ) s += n;
    d(idx) = pow_i[s % 4];
  }
  return d;
}

// (i, n) -> (mirror(i), n) with sign (-1)^(total photon number).
SignedPermutation mirror_parity(const JointBasis& basis) {
  SignedPermutation p;
  const long P = basis.photon_dim();
  p.perm.resize(basis.total());
  p.sign.resize(basis.total());
  std::vector<int> occ;
  for (long idx = 0; idx < basis.total(); ++idx) {
    const int i = basis.decompose(idx, occ);
    int s = 0;
    for (int n : occ) s += n;
    p.perm[idx] = long(basis.matter_dim - 1 - i) * P + idx % P;
    p.sign[idx] = (s % 2) ? -1.0 : 1.0;
  }
  return p;
}

Mat number_op(int n) { return fock_real(FockBasis(n, 1.0), FockOp::Number); }
Mat lower_op(int n) { return fock_real(FockBasis(n, 1.0), FockOp::Lower); }
Mat quad_op(int n) {  // b + b^dag
  Mat b = lower_op(n);
  return b + b.transpose();
}

}  // namespace

SpectrumResult GaugeHamiltonian::solve(int n_eigs, bool want_vectors, bool use_symmetry) const {
  SpectrumResult r;
  if (!banded.empty()) {
    std::vector<SpectrumResult> parts;
    for (const auto& s : banded) parts.push_back(eig_banded(s.band, want_vectors, std::min<long>(n_eigs, s.band.n)));
    struct Ref {
      double e;
      int s;
      long c;
    };
    std::vector<Ref> refs;
    for (int s = 0; s < int(parts.size()); ++s)
      for (long c = 0; c < parts[s].values.size(); ++c) refs.push_back({parts[s].values(c), s, c});
    std::stable_sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) { return a.e < b.e; });
    const long keep = std::min<long>(long(refs.size()), n_eigs <= 0 ? long(refs.size()) : n_eigs);
    r.values.resize(keep);
    if (want_vectors) {
      r.vectors = CMat::Zero(dim(), keep);
      r.residuals.resize(keep);
    }
    for (long q = 0; q < keep; ++q) {
      r.values(q) = refs[q].e;
      if (want_vectors) {
        const auto& idx = banded[refs[q].s].full_index;
        for (size_t a = 0; a < idx.size(); ++a) r.vectors(idx[a], q) = parts[refs[q].s].vectors(long(a), refs[q].c);
        r.residuals(q) = parts[refs[q].s].residuals(refs[q].c);
      }
    }
    if (want_vectors) normalize_phases(r.vectors);
    return r;
  }
  if (!matrix) throw Error(ErrorKind::InvalidArgument, "Hamiltonian has no matrix");
  if (symmetry && use_symmetry)
    r = eig_symmetric_split(*matrix, *symmetry, want_vectors, n_eigs);
  else
    r = eig_hermitian(*matrix, want_vectors, n_eigs);
  if (want_vectors && photon_rephased) {
    r.vectors = joint_photon_phases(basis).asDiagonal() * r.vectors;
    normalize_phases(r.vectors);
  }
  return r;
}

CMat GaugeHamiltonian::dense() const {
  if (!banded.empty()) {
    CMat h = CMat::Zero(dim(), dim());
    for (const auto& s : banded) {
      Mat d = s.band.to_dense();
      for (size_t a = 0; a < s.full_index.size(); ++a)
        for (size_t b = 0; b < s.full_index.size(); ++b) h(s.full_index[a], s.full_index[b]) = d(long(a), long(b));
    }
    return h;
  }
  if (!matrix) throw Error(ErrorKind::InvalidArgument, "Hamiltonian has no matrix");
  CMat h = matrix->to_complex();
  if (photon_rephased) {
    CVec d = joint_photon_phases(basis);
    h = d.asDiagonal() * h * d.conjugate().asDiagonal();
  }
  return h;
}

GaugeHamiltonian build_pf(const MatterSolution& sol, double omega_c, double A0, int n_matter, int n_fock,
                          PfStorage storage, Exec exec) {
  if (n_matter < 1 || n_matter > sol.energies.size())
    throw Error(ErrorKind::InvalidBasis, "n_matter = " + std::to_string(n_matter) + " exceeds the " +
                                             std::to_string(sol.energies.size()) + " available matter states");
  if (sol.dipoles.rows() < n_matter || sol.dipoles.cols() < n_matter)
    throw Error(ErrorKind::InvalidArgument, "matter solution carries no dipole matrix");
  FockBasis fb(n_fock, omega_c);
  GaugeHamiltonian H;
  H.gauge = Gauge::PF;
  H.basis = JointBasis(n_matter, {n_fock});
  H.params = {{"omega_c", omega_c}, {"A0", A0}, {"n_matter", n_matter}, {"n_fock", n_fock}};
  H.frame.omega = H.frame.Omega = omega_c;
  H.zero_point = 0.5 * kHbar * omega_c;

  const Vec E = sol.energies.head(n_matter);
  const Mat mu = sol.dipoles.topLeftCorner(n_matter, n_matter);
  const Mat lin = omega_c * A0 * mu;
  const Mat dse = (omega_c / kHbar) * A0 * A0 * (mu * mu);
  const Mat dse_sym = 0.5 * (dse + dse.transpose());

  std::vector<int> par = state_parities(sol);
  par.resize(n_matter);
  const bool has_parity = std::none_of(par.begin(), par.end(), [](int p) { return p == 0; });

  const long dim = long(n_matter) * n_fock;
  const bool banded = storage == PfStorage::Banded || (storage == PfStorage::Auto && dim > 6000);
  if (!banded) {
    Mat h = Mat::Zero(dim, dim);
    const Mat X = quad_op(n_fock);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (int i = 0; i < n_matter; ++i)
      for (int j = 0; j < n_matter; ++j) {
        Mat blk = lin(i, j) * X;
        blk.diagonal().array() += dse_sym(i, j);
        if (i == j)
          for (int n = 0; n < n_fock; ++n) blk(n, n) += E(i) + kHbar * omega_c * (n + 0.5);
        h.block(long(i) * n_fock, long(j) * n_fock, n_fock, n_fock) = blk;
      }
    h = 0.5 * (h + h.transpose()).eval();
    H.matrix = HermitianMatrix(std::move(h));
    if (has_parity) {
      SignedPermutation p;
      p.perm.resize(dim);
      p.sign.resize(dim);
      for (long idx = 0; idx < dim; ++idx) {
        p.perm[idx] = idx;
        p.sign[idx] = par[idx / n_fock] * (((idx % n_fock) % 2) ? -1.0 : 1.0);
      }
      H.symmetry = std::move(p);
    }
    return H;
  }

  // Photon-major banded sectors.
  std::vector<double> sigmas = has_parity ? std::vector<double>{1.0, -1.0} : std::vector<double>{0.0};
  for (double sigma : sigmas) {
    auto in_sector = [&](int i, int n) { return sigma == 0.0 || par[i] * ((n % 2) ? -1.0 : 1.0) == sigma; };
    std::vector<long> start(n_fock + 1, 0);
    std::vector<std::vector<int>> members(n_fock);
    for (int n = 0; n < n_fock; ++n) {
      for (int i = 0; i < n_matter; ++i)
        if (in_sector(i, n)) members[n].push_back(i);
      start[n + 1] = start[n] + long(members[n].size());
    }
    const long ns = start[n_fock];
    if (ns == 0) continue;
    long kd = 0;
    for (int n = 0; n < n_fock; ++n) {
      kd = std::max(kd, start[n + 1] - 1 - start[n]);
      if (n + 1 < n_fock) kd = std::max(kd, start[n + 2] - 1 - start[n]);
    }
    kd = std::min(kd, ns - 1);
    BandedSector sec{BandedSymmetric(ns, int(kd)), std::vector<long>(ns)};
    for (int n = 0; n < n_fock; ++n) {
      const auto& mn = members[n];
      for (size_t a = 0; a < mn.size(); ++a) {
        const long ra = start[n] + long(a);
        sec.full_index[ra] = long(mn[a]) * n_fock + n;
        for (size_t b = 0; b <= a; ++b) {
          double val = dse_sym(mn[a], mn[b]);
          if (a == b) val += E(mn[a]) + kHbar * omega_c * (n + 0.5);
          sec.band.at(ra, start[n] + long(b)) = val;
        }
        if (n + 1 < n_fock) {
          const auto& mu1 = members[n + 1];
          for (size_t c = 0; c < mu1.size(); ++c)
            sec.band.at(start[n + 1] + long(c), ra) = lin(mu1[c], mn[a]) * std::sqrt(double(n + 1));
        }
      }
    }
    H.banded.push_back(std::move(sec));
  }
  return H;
}

HermitianMatrix k_space_matter_hamiltonian(const PotentialModel& model, double box_length, int n_K, double mass) {
  CVec c = box_coefficients(model, box_length, n_K);
  ReciprocalGrid g = ReciprocalGrid::dense(n_K, box_length);
  CMat h(n_K, n_K);
  for (int i = 0; i < n_K; ++i)
    for (int j = 0; j < n_K; ++j) h(i, j) = c(j - i + n_K - 1);
  for (int i = 0; i < n_K; ++i) h(i, i) += kHbar * kHbar * g.value(i) * g.value(i) / (2.0 * mass);
  h = 0.5 * (h + h.adjoint()).eval();
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) return HermitianMatrix(Mat(h.real()));
  return HermitianMatrix(std::move(h));
}

namespace {

bool coefficients_real(const CVec& c) { return c.imag().cwiseAbs().maxCoeff() == 0.0; }

bool coefficients_even(const CVec& c) {
  const long n = c.size();
  for (long i = 0; i < n; ++i)
    if (c(i) != c(n - 1 - i)) return false;
  return true;
}

// Assembles sum_d c_d |K_i><K_{i+d}| (x) B_d + diag blocks for a K-basis Hamiltonian.
// B_d for d >= 0 are supplied; d < 0 blocks are adjoints.
template <class M>
M assemble_toeplitz(int n_K, long nf, const std::vector<M>& upper, const std::vector<M>& diag_extra, Exec exec) {
  M h = M::Zero(long(n_K) * nf, long(n_K) * nf);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int i = 0; i < n_K; ++i)
    for (int j = i; j < n_K; ++j) {
      if (j == i) {
        M blk = upper[0] + diag_extra[i];
        M sym = (blk + blk.adjoint()) * 0.5;
        h.block(long(i) * nf, long(i) * nf, nf, nf) = sym;
      } else if (upper[j - i].size()) {
        h.block(long(i) * nf, long(j) * nf, nf, nf) = upper[j - i];
        h.block(long(j) * nf, long(i) * nf, nf, nf) = upper[j - i].adjoint();
      }
    }
  return h;
}

}  // namespace

GaugeHamiltonian build_pa_lwa(const PotentialModel& model, double box_length, int n_K, double mass, double charge,
                              double omega, double A0, int n_fock, Exec exec) {
  FockBasis fb(n_fock, omega);
  const CVec c = box_coefficients(model, box_length, n_K);
  const ReciprocalGrid g = ReciprocalGrid::dense(n_K, box_length);
  GaugeHamiltonian H;
  H.gauge = Gauge::pA;
  H.basis = JointBasis(n_K, {n_fock});
  H.momenta = g.values();
  const double gamma = A0 * std::abs(charge) * std::sqrt(omega / (kHbar * mass));
  H.params = {{"omega", omega}, {"A0", A0}, {"gamma", gamma}, {"box_length", box_length}, {"n_K", n_K}, {"n_fock", n_fock}};
  H.frame.omega = H.frame.Omega = omega;
  H.frame.gamma = gamma;
  H.frame.m_eff = mass;
  H.zero_point = 0.5 * kHbar * omega;

  const Mat X = quad_op(n_fock);
  const Mat X2 = quadrature_square(n_fock);
  const Mat N = number_op(n_fock);
  const Mat I = Mat::Identity(n_fock, n_fock);
  // -(z p A / m) X + (z^2 A^2 / 2m) X^2 + w(N + 1/2)
  std::vector<Mat> diag(n_K);
  for (int i = 0; i < n_K; ++i) {
    const double K = H.momenta(i);
    diag[i] = (kHbar * kHbar * K * K / (2.0 * mass)) * I - (charge * kHbar * K * A0 / mass) * X +
              (charge * charge * A0 * A0 / (2.0 * mass)) * X2 + kHbar * omega * (N + 0.5 * I);
  }
  if (coefficients_real(c)) {
    std::vector<Mat> up(n_K);
    for (int d = 0; d < n_K; ++d) up[d] = c(d + n_K - 1).real() * I;
    H.matrix = HermitianMatrix(assemble_toeplitz<Mat>(n_K, n_fock, up, diag, exec));
  } else {
    std::vector<CMat> up(n_K), dg(n_K);
    for (int d = 0; d < n_K; ++d) up[d] = c(d + n_K - 1) * I.cast<cplx>();
    for (int i = 0; i < n_K; ++i) dg[i] = diag[i].cast<cplx>();
    H.matrix = HermitianMatrix(assemble_toeplitz<CMat>(n_K, n_fock, up, dg, exec));
  }
  if (coefficients_even(c)) H.symmetry = mirror_parity(H.basis);
  return H;
}

GaugeHamiltonian build_rad_single(const PotentialModel& model, double box_length, int n_K, double mass, double omega,
                                  double gamma, int n_fock, Exec exec) {
  const RadFrame fr = make_rad_frame(omega, gamma, mass);
  const FockBasis fb(n_fock, fr.Omega);
  const PhaseExponential pe(fb);
  const CVec c = box_coefficients(model, box_length, n_K);
  const ReciprocalGrid g = ReciprocalGrid::dense(n_K, box_length);
  const double dK = g.spacing();

  GaugeHamiltonian H;
  H.gauge = Gauge::RAD;
  H.basis = JointBasis(n_K, {n_fock});
  H.momenta = g.values();
  H.frame = fr;
  H.params = {{"omega", omega}, {"gamma", gamma}, {"Omega", fr.Omega}, {"xi", fr.xi}, {"m_eff", fr.m_eff},
              {"box_length", box_length}, {"n_K", n_K}, {"n_fock", n_fock}};
  H.zero_point = 0.5 * kHbar * fr.Omega;

  const Mat N = number_op(n_fock);
  const Mat I = Mat::Identity(n_fock, n_fock);
  std::vector<Mat> diag(n_K);
  for (int i = 0; i < n_K; ++i) {
    const double K = H.momenta(i);
    diag[i] = (kHbar * kHbar * K * K / (2.0 * fr.m_eff)) * I + kHbar * fr.Omega * (N + 0.5 * I);
  }
  // |K><K'| (x) c(K'-K) exp(+i (K'-K) xi Omega q)
  if (coefficients_real(c)) {
    std::vector<Mat> up(n_K);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int d = 0; d < n_K; ++d) {
      const double cd = c(d + n_K - 1).real();
      up[d] = cd == 0.0 ? Mat::Zero(n_fock, n_fock) : Mat(cd * pe.rephased(-d * dK * fr.xi * fr.Omega));
    }
    H.matrix = HermitianMatrix(assemble_toeplitz<Mat>(n_K, n_fock, up, diag, exec));
    H.photon_rephased = true;
  } else {
    std::vector<CMat> up(n_K), dg(n_K);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int d = 0; d < n_K; ++d) up[d] = c(d + n_K - 1) * pe(-d * dK * fr.xi * fr.Omega);
    for (int i = 0; i < n_K; ++i) dg[i] = diag[i].cast<cplx>();
    H.matrix = HermitianMatrix(assemble_toeplitz<CMat>(n_K, n_fock, up, dg, exec));
  }
  if (coefficients_even(c)) H.symmetry = mirror_parity(H.basis);
  return H;
}

GaugeHamiltonian build_rad_multimode(const PotentialModel& model, double box_length, int n_K, double mass,
                                     const NormalModeSet& nm, const std::vector<int>& n_focks, Exec exec) {
  const int nmodes = int(nm.Omegas.size());
  if (nmodes > 8) throw Error(ErrorKind::Unsupported, "multimode RAD supports at most 8 modes");
  if (int(n_focks.size()) != nmodes) throw Error(ErrorKind::DimensionMismatch, "one Fock size per normal mode required");
  const double m_eff = effective_mass(mass, nm);
  std::vector<PhaseExponential> pes;
  for (int a = 0; a < nmodes; ++a) pes.emplace_back(FockBasis(n_focks[a], nm.Omegas(a)));
  const CVec c = box_coefficients(model, box_length, n_K);
  const ReciprocalGrid g = ReciprocalGrid::dense(n_K, box_length);
  const double dK = g.spacing();

  GaugeHamiltonian H;
  H.gauge = Gauge::RAD;
  H.basis = JointBasis(n_K, n_focks);
  H.momenta = g.values();
  H.frame.m_eff = m_eff;
  H.frame.Omega = nm.Omegas(0);
  H.params = {{"m_eff", m_eff}, {"n_modes", nmodes}, {"box_length", box_length}, {"n_K", n_K}};
  for (int a = 0; a < nmodes; ++a) H.zero_point += 0.5 * kHbar * nm.Omegas(a);
  const long P = H.basis.photon_dim();

  CMat photon_energy = CMat::Zero(P, P);
  for (int a = 0; a < nmodes; ++a) {
    std::vector<std::optional<CMat>> ops(nmodes);
    ops[a] = (kHbar * nm.Omegas(a) * (number_op(n_focks[a]) + 0.5 * Mat::Identity(n_focks[a], n_focks[a]))).cast<cplx>();
    photon_energy += tensor_embed(std::nullopt, ops, JointBasis(1, n_focks));
  }
  std::vector<CMat> up(n_K), dg(n_K);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int d = 0; d < n_K; ++d) {
    const cplx cd = c(d + n_K - 1);
    if (cd == cplx(0.0, 0.0)) {
      up[d] = CMat::Zero(P, P);
      continue;
    }
    CMat ph = pes[0](-d * dK * nm.xi(0, 0) * nm.Omegas(0));
    for (int a = 1; a < nmodes; ++a) ph = kron(ph, pes[a](-d * dK * nm.xi(0, a) * nm.Omegas(a)));
    up[d] = cd * ph;
  }
  for (int i = 0; i < n_K; ++i) {
    const double K = H.momenta(i);
    dg[i] = photon_energy + CMat::Identity(P, P) * (kHbar * kHbar * K * K / (2.0 * m_eff));
  }
  H.matrix = HermitianMatrix(assemble_toeplitz<CMat>(n_K, P, up, dg, exec));
  if (coefficients_even(c)) H.symmetry = mirror_parity(H.basis);
  return H;
}

GaugeHamiltonian build_ad_cosine(const PotentialModel& model, int n_cells, int n_points, double mass, double omega,
                                 double gamma, int n_fock) {
  const Cosine* cm = std::get_if<Cosine>(&model);
  if (!cm)
    throw Error(ErrorKind::Unsupported,
                "the AD Hamiltonian needs a trigonometric potential; " + model_name(model) + " is not supported");
  if (n_cells < 1) throw Error(ErrorKind::InvalidArgument, "ring needs at least one cell");
  const RadFrame fr = make_rad_frame(omega, gamma, mass);
  const RealGrid grid(n_points, n_cells * lattice_constant(model));
  const FockBasis fb(n_fock, fr.Omega);

  Eigen::SelfAdjointEigenSolver<CMat> es(fock_operator(fb, FockOp::Momentum));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "momentum eigendecomposition failed");
  const Vec lam = es.eigenvalues();
  const CMat& U = es.eigenvectors();
  CVec cosv(n_fock), sinv(n_fock);
  for (int j = 0; j < n_fock; ++j) {
    cosv(j) = std::cos(cm->k0 * fr.xi * lam(j));
    sinv(j) = std::sin(cm->k0 * fr.xi * lam(j));
  }
  const Mat C = rephase_real(U * cosv.asDiagonal() * U.adjoint());
  const Mat S = rephase_real(U * sinv.asDiagonal() * U.adjoint());
  const Mat T = periodic_dvr_kinetic(grid, fr.m_eff);
  const Mat N = number_op(n_fock);
  const Mat I = Mat::Identity(n_fock, n_fock);

  GaugeHamiltonian H;
  H.gauge = Gauge::AD;
  H.basis = JointBasis(n_points, {n_fock});
  H.frame = fr;
  H.params = {{"omega", omega}, {"gamma", gamma}, {"Omega", fr.Omega}, {"xi", fr.xi}, {"m_eff", fr.m_eff},
              {"ring_length", grid.box_length}, {"n_points", n_points}, {"n_fock", n_fock}};
  H.zero_point = 0.5 * kHbar * fr.Omega;
  const long nf = n_fock;
  Mat h = Mat::Zero(long(n_points) * nf, long(n_points) * nf);
  for (int i = 0; i < n_points; ++i) {
    for (int j = 0; j < n_points; ++j)
      if (i != j) h.block(i * nf, j * nf, nf, nf) = T(i, j) * I;
    const double x = grid.x(i);
    Mat blk = T(i, i) * I + cm->v0 * (std::cos(cm->k0 * x) * C - std::sin(cm->k0 * x) * S) + kHbar * fr.Omega * (N + 0.5 * I);
    h.block(i * nf, i * nf, nf, nf) = 0.5 * (blk + blk.transpose());
  }
  H.matrix = HermitianMatrix(std::move(h));
  H.photon_rephased = true;
  H.symmetry = mirror_parity(H.basis);
  return H;
}

double fold_to_bz(double k, double a0) {
  const double G = 2.0 * kPi / a0;
  double x = std::fmod(k + kPi / a0, G);
  if (x <= 1e-14 * G) x += G;
  return x - kPi / a0;
}

KResolvedContext KResolvedContext::make(double k, double a0, int n_bands, int n_fock, std::optional<double> k_beta) {
  if (!(a0 > 0)) throw Error(ErrorKind::InvalidArgument, "lattice constant must be positive");
  if (n_bands < 1 || n_bands % 2 == 0)
    throw Error(ErrorKind::InvalidBasis, "n_bands must be odd so the kappa range is symmetric");
  if (n_fock < 2) throw Error(ErrorKind::InvalidBasis, "n_fock must be >= 2");
  if (!std::isfinite(k)) throw Error(ErrorKind::InvalidArgument, "k must be finite");
  KResolvedContext c;
  c.a0 = a0;
  c.k = fold_to_bz(k, a0);
  c.k_beta = k_beta ? *k_beta : c.k;
  c.n_bands = n_bands;
  c.n_fock = n_fock;
  return c;
}

Vec KResolvedContext::momenta() const {
  Vec m(n_bands);
  for (int i = 0; i < n_bands; ++i) m(i) = k + (i - n_max()) * 2.0 * kPi / a0;
  return m;
}

namespace {

// v(n b) for n = 0 .. n_max with the magnitude cutoff applied; v(0) = 0.
std::vector<cplx> lattice_hoppings(const PotentialModel& model, int n_max) {
  if (!is_periodic(model)) throw Error(ErrorKind::Unsupported, model_name(model) + " is not periodic");
  const double G = 2.0 * kPi / lattice_constant(model);
  std::vector<cplx> v(n_max + 1, cplx(0.0, 0.0));
  double vmax = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    v[n] = unit_cell_fourier_coeff(model, n * G);
    vmax = std::max(vmax, std::abs(v[n]));
  }
  for (int n = 1; n <= n_max; ++n)
    if (std::abs(v[n]) < 1e-14 * vmax) v[n] = 0.0;
  return v;
}

// Off-diagonal RAD blocks for kappa difference d >= 1 (index d): v(-d G) exp(+i d G xi Omega q), rephased.
std::vector<Mat> rad_k_hopping_blocks(const PotentialModel& model, const KResolvedContext& ctx, const RadFrame& fr,
                                      Exec exec) {
  const int nb = ctx.n_bands;
  const std::vector<cplx> v = lattice_hoppings(model, nb - 1);
  for (const cplx& z : v)
    if (z.imag() != 0.0) throw Error(ErrorKind::Unsupported, "complex lattice coefficients are not supported");
  const PhaseExponential pe(FockBasis(ctx.n_fock, fr.Omega));
  const double G = 2.0 * kPi / ctx.a0;
  std::vector<Mat> up(nb);
  up[0] = Mat::Zero(ctx.n_fock, ctx.n_fock);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int d = 1; d < nb; ++d) {
    // v is even for the supported models, so v(-dG) = v(dG)
    const double vd = v[d].real();
    up[d] = vd == 0.0 ? Mat(Mat::Zero(ctx.n_fock, ctx.n_fock)) : Mat(vd * pe.rephased(-d * G * fr.xi * fr.Omega));
  }
  return up;
}

bool at_gamma_point(double k) { return std::abs(k) < 1e-14; }

}  // namespace

GaugeHamiltonian build_rad_k(const PotentialModel& model, const KResolvedContext& ctx, const CavitySettings& cav,
                             double mass, Exec exec) {
  if (!is_periodic(model)) throw Error(ErrorKind::Unsupported, "k-resolved RAD needs a periodic model");
  const double wk = cav.omega_at(ctx.k_beta);
  const RadFrame fr = make_rad_frame(wk, cav.gamma_at(ctx.k_beta), mass);
  GaugeHamiltonian H;
  H.gauge = Gauge::RAD_k;
  H.basis = JointBasis(ctx.n_bands, {ctx.n_fock});
  H.momenta = ctx.momenta();
  H.frame = fr;
  H.k_beta = ctx.k_beta;
  H.params = {{"k", ctx.k}, {"k_beta", ctx.k_beta}, {"omega_k", wk}, {"gamma_k", fr.gamma}, {"Omega", fr.Omega},
              {"xi", fr.xi}, {"m_eff", fr.m_eff}, {"n_bands", ctx.n_bands}, {"n_fock", ctx.n_fock}};
  H.zero_point = 0.5 * kHbar * fr.Omega;
  const int nf = ctx.n_fock;
  const Mat N = number_op(nf);
  const Mat I = Mat::Identity(nf, nf);
  std::vector<Mat> diag(ctx.n_bands);
  for (int i = 0; i < ctx.n_bands; ++i) {
    const double K = H.momenta(i);
    diag[i] = (kHbar * kHbar * K * K / (2.0 * fr.m_eff)) * I + kHbar * fr.Omega * (N + 0.5 * I);
  }
  H.matrix = HermitianMatrix(assemble_toeplitz<Mat>(ctx.n_bands, nf, rad_k_hopping_blocks(model, ctx, fr, exec), diag, exec));
  H.photon_rephased = true;
  if (at_gamma_point(ctx.k)) H.symmetry = mirror_parity(H.basis);
  return H;
}

CMat coulomb_number_block(const RadFrame& f, double K, int n_fock) {
  const Mat b = lower_op(n_fock);
  const Mat bd = b.transpose();
  const Mat N = number_op(n_fock);
  const Mat I = Mat::Identity(n_fock, n_fock);
  const double beta = std::sqrt(f.Omega / 2.0) * f.xi * K;
  const double w = (f.u - f.v) * (f.u - f.v);
  CMat out = ((f.u * f.u + f.v * f.v) * N + f.u * f.v * (b * b + bd * bd) + (beta * beta * w + f.v * f.v) * I).cast<cplx>();
  out += cplx(0.0, beta * w) * (bd - b).cast<cplx>();
  return out;
}

Mat bogoliubov_number_block(const RadFrame& f, int n_fock) {
  const Mat b = lower_op(n_fock);
  const Mat bd = b.transpose();
  return (f.u * f.u + f.v * f.v) * number_op(n_fock) + f.u * f.v * (b * b + bd * bd) +
         f.v * f.v * Mat::Identity(n_fock, n_fock);
}

GaugeHamiltonian build_rad_k_blwa(const PotentialModel& model, const KResolvedContext& ctx,
                                  const CavitySettings& cav, double mass, BlwaNumberOperator number_op_kind,
                                  Exec exec) {
  if (!is_periodic(model)) throw Error(ErrorKind::Unsupported, "k-resolved RAD needs a periodic model");
  const double wk = cav.omega_at(ctx.k_beta);
  const RadFrame fr = make_rad_frame(wk, cav.gamma_at(ctx.k_beta), mass);
  GaugeHamiltonian H;
  H.gauge = Gauge::RAD_k_blwa;
  H.basis = JointBasis(ctx.n_bands, {ctx.n_fock});
  H.momenta = ctx.momenta();
  H.frame = fr;
  H.k_beta = ctx.k_beta;
  H.params = {{"k", ctx.k}, {"k_beta", ctx.k_beta}, {"omega_k", wk}, {"gamma_k", fr.gamma}, {"Omega", fr.Omega},
              {"xi", fr.xi}, {"m_eff", fr.m_eff}, {"n_bands", ctx.n_bands}, {"n_fock", ctx.n_fock}};
  H.zero_point = 0.5 * kHbar * fr.Omega;
  const int nf = ctx.n_fock;
  const CMat N = number_op(nf).cast<cplx>();
  const CMat I = CMat::Identity(nf, nf);
  std::vector<Mat> diag(ctx.n_bands);
  for (int i = 0; i < ctx.n_bands; ++i) {
    const double K = H.momenta(i);
    const CMat Nk = number_op_kind == BlwaNumberOperator::Coulomb ? coulomb_number_block(fr, K, nf)
                                                                  : bogoliubov_number_block(fr, nf).cast<cplx>();
    const CMat O = kHbar * K * I - kHbar * ctx.k_beta * Nk;
    CMat blk = (O * O) / (2.0 * fr.m_eff) + kHbar * fr.Omega * (N + 0.5 * I);
    diag[i] = rephase_real(0.5 * (blk + blk.adjoint()));
  }
  H.matrix = HermitianMatrix(assemble_toeplitz<Mat>(ctx.n_bands, nf, rad_k_hopping_blocks(model, ctx, fr, exec), diag, exec));
  H.photon_rephased = true;
  H.params["blwa_number_operator"] = number_op_kind == BlwaNumberOperator::Coulomb ? 0.0 : 1.0;
  if (at_gamma_point(ctx.k) && at_gamma_point(ctx.k_beta)) H.symmetry = mirror_parity(H.basis);
  return H;
}

GaugeHamiltonian build_pa_blwa_momentum_set(const PotentialModel& model, const std::vector<double>& momenta,
                                            double k_beta, int n_fock, const CavitySettings& cav, double mass,
                                            double charge) {
  if (!is_periodic(model)) throw Error(ErrorKind::Unsupported, "boosted p.A needs a periodic model");
  if (momenta.empty()) throw Error(ErrorKind::InvalidBasis, "empty momentum set");
  const double wk = cav.omega_at(k_beta);
  const double gk = cav.gamma_at(k_beta);
  const double A = vector_potential_for_gamma(wk, gk, charge, mass);
  const double G = 2.0 * kPi / lattice_constant(model);
  const int nK = int(momenta.size());

  long max_sep = 0;
  for (int i = 0; i < nK; ++i)
    for (int j = 0; j < nK; ++j) max_sep = std::max(max_sep, std::lround(std::abs(momenta[i] - momenta[j]) / G));
  const std::vector<cplx> v = lattice_hoppings(model, int(std::max<long>(1, max_sep)));

  GaugeHamiltonian H;
  H.gauge = Gauge::pA_k_blwa;
  H.basis = JointBasis(nK, {n_fock});
  H.momenta = Eigen::Map<const Vec>(momenta.data(), nK);
  H.k_beta = k_beta;
  H.frame.omega = H.frame.Omega = wk;
  H.frame.gamma = gk;
  H.frame.m_eff = mass;
  H.params = {{"k_beta", k_beta}, {"omega_k", wk}, {"gamma_k", gk}, {"A", A}, {"n_fock", n_fock}};
  H.zero_point = 0.5 * kHbar * wk;

  const Mat X = quad_op(n_fock);
  const Mat X2 = quadrature_square(n_fock);
  const Mat N = number_op(n_fock);
  const Mat I = Mat::Identity(n_fock, n_fock);
  const double zA = charge * A;
  const long nf = n_fock;
  Mat h = Mat::Zero(nK * nf, nK * nf);
  for (int i = 0; i < nK; ++i) {
    const double K = kHbar * momenta[i];
    const double kb = kHbar * k_beta;
    // (K - zA X - kb N)^2 with the exact X^2
    Mat O2 = K * K * I + zA * zA * X2 + kb * kb * (N * N) - 2.0 * K * zA * X - 2.0 * K * kb * N + zA * kb * (X * N + N * X);
    Mat blk = O2 / (2.0 * mass) + kHbar * wk * (N + 0.5 * I);
    h.block(i * nf, i * nf, nf, nf) = 0.5 * (blk + blk.transpose());
    for (int j = 0; j < nK; ++j) {
      if (j == i) continue;
      const double q = (momenta[i] - momenta[j]) / G;
      const long n = std::lround(q);
      if (std::abs(q - double(n)) > 1e-9 || n == 0) continue;  // different crystal momentum: no coupling
      h.block(i * nf, j * nf, nf, nf) = v[std::abs(n)].real() * I;
    }
  }
  H.matrix = HermitianMatrix(std::move(h));
  bool mirrored = true;
  for (int i = 0; i < nK; ++i) mirrored = mirrored && std::abs(momenta[i] + momenta[nK - 1 - i]) < 1e-12;
  if (mirrored && at_gamma_point(k_beta)) H.symmetry = mirror_parity(H.basis);
  return H;
}

GaugeHamiltonian build_pa_k_blwa_exact(const PotentialModel& model, const KResolvedContext& ctx,
                                       const CavitySettings& cav, double mass, double charge) {
  Vec m = ctx.momenta();
  GaugeHamiltonian H =
      build_pa_blwa_momentum_set(model, std::vector<double>(m.data(), m.data() + m.size()), ctx.k_beta, ctx.n_fock, cav,
                                 mass, charge);
  H.params["k"] = ctx.k;
  H.params["n_bands"] = ctx.n_bands;
  return H;
}

}  // namespace cqed
