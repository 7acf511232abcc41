#include "cqed/matter.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

namespace cqed {

RealGrid::RealGrid(int n, double L) : n_points(n), box_length(L) {
  if (n < 8) throw Error(ErrorKind::InvalidBasis, "real-space grid needs at least 8 points, got " + std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidBasis, "box length must be positive");
}

Vec RealGrid::points() const {
  Vec x(n_points);
  for (int i = 0; i < n_points; ++i) x(i) = this->x(i);
  return x;
}

ReciprocalGrid ReciprocalGrid::dense(int n, double L) {
  if (n < 1) throw Error(ErrorKind::InvalidBasis, "K grid needs at least one point");
  if (!(L > 0.0)) throw Error(ErrorKind::InvalidBasis, "box length must be positive");
  ReciprocalGrid g;
  g.mode = Mode::DenseK;
  g.n_points = n;
  g.box_length = L;
  return g;
}

ReciprocalGrid ReciprocalGrid::lattice(double a0, int n_max, double k) {
  if (!(a0 > 0.0)) throw Error(ErrorKind::InvalidBasis, "lattice constant must be positive");
  if (n_max < 0) throw Error(ErrorKind::InvalidBasis, "kappa range must be non-negative");
  if (!(k > -kPi / a0 - 1e-12 && k <= kPi / a0 + 1e-12))
    throw Error(ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " lies outside the first Brillouin zone");
  ReciprocalGrid g;
  g.mode = Mode::LatticeKappa;
  g.a0 = a0;
  g.n_max = n_max;
  g.k = k;
  return g;
}

int ReciprocalGrid::size() const { return mode == Mode::DenseK ? n_points : 2 * n_max + 1; }

double ReciprocalGrid::spacing() const { return mode == Mode::DenseK ? 2.0 * kPi / box_length : 2.0 * kPi / a0; }

double ReciprocalGrid::value(int i) const {
  if (mode == Mode::DenseK) return (i - 0.5 * (n_points - 1)) * spacing();
  return k + (i - n_max) * spacing();
}

Vec ReciprocalGrid::values() const {
  Vec v(size());
  for (int i = 0; i < size(); ++i) v(i) = value(i);
  return v;
}

void validate(const PotentialModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DoubleWell>) {
          if (!(m.alpha > 0 && m.beta > 0))
            throw Error(ErrorKind::InvalidArgument, "double well needs alpha > 0 and beta > 0");
        } else if constexpr (std::is_same_v<T, Cosine>) {
          if (!(m.k0 > 0)) throw Error(ErrorKind::InvalidArgument, "cosine wavevector must be positive");
        } else if constexpr (std::is_same_v<T, PeriodicErfCoulomb>) {
          if (!(m.r0 > 0 && m.a0 > 0)) throw Error(ErrorKind::InvalidArgument, "erf model needs r0 > 0 and a0 > 0");
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          if (!(m.mass > 0 && m.omega > 0)) throw Error(ErrorKind::InvalidArgument, "harmonic model needs m, w > 0");
        }
      },
      model);
}

std::string model_name(const PotentialModel& model) {
  static const char* names[] = {"double_well", "cosine", "erf_coulomb", "harmonic", "free"};
  return names[model.index()];
}

bool is_periodic(const PotentialModel& model) {
  return std::holds_alternative<Cosine>(model) || std::holds_alternative<PeriodicErfCoulomb>(model);
}

double lattice_constant(const PotentialModel& model) {
  if (auto* c = std::get_if<Cosine>(&model)) return 2.0 * kPi / c->k0;
  if (auto* e = std::get_if<PeriodicErfCoulomb>(&model)) return e->a0;
  throw Error(ErrorKind::Unsupported, model_name(model) + " is not periodic");
}

bool is_inversion_symmetric(const PotentialModel&) { return true; }

double expint_e1(double t) {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
  if (!(t > 0.0)) throw Error(ErrorKind::Singularity, "E1 is singular at t = " + std::to_string(t));
  gsl_sf_result r;
  int status = gsl_sf_expint_E1_e(t, &r);
  if (status == GSL_EUNDRFLW) return 0.0;
  if (status != GSL_SUCCESS) throw Error(ErrorKind::Numeric, std::string("E1 failed: ") + gsl_strerror(status));
  return r.val;
}

double erf_charge_matching_cosine(double v0, double r0, double a0) {
  const double b = 2.0 * kPi / a0;
  return std::abs(v0 / 2.0) * 2.0 * kPi / expint_e1(std::pow(b / (2.0 * r0), 2));
}

static bool on_lattice(double kappa, double b, long& n) {
  const double q = kappa / b;
  n = std::lround(q);
  return std::abs(q - double(n)) < 1e-9;
}

cplx unit_cell_fourier_coeff(const PotentialModel& model, double kappa) {
  if (auto* c = std::get_if<Cosine>(&model)) {
    long n;
    if (!on_lattice(kappa, c->k0, n))
      throw Error(ErrorKind::InvalidArgument, "kappa is not a reciprocal lattice vector");
    return (std::abs(n) == 1) ? cplx(c->v0 / 2.0, 0.0) : cplx(0.0, 0.0);
  }
  if (auto* e = std::get_if<PeriodicErfCoulomb>(&model)) {
    long n;
    if (!on_lattice(kappa, 2.0 * kPi / e->a0, n))
      throw Error(ErrorKind::InvalidArgument, "kappa is not a reciprocal lattice vector");
    if (n == 0) throw Error(ErrorKind::Singularity, "erf-Coulomb coefficient is singular at kappa = 0");
    return cplx(-(e->Z / (2.0 * kPi)) * expint_e1(std::pow(kappa / (2.0 * e->r0), 2)), 0.0);
  }
  throw Error(ErrorKind::Unsupported, model_name(model) + " has no unit-cell Fourier coefficients");
}

static cplx lattice_coeff_or_zero(const PotentialModel& model, long n) {
  if (n == 0) return cplx(0.0, 0.0);  // zero cell average for both periodic models
  return unit_cell_fourier_coeff(model, n * 2.0 * kPi / lattice_constant(model));
}

int significant_harmonics(const PotentialModel& model, double rel_cut, int hard_limit) {
  if (std::holds_alternative<Cosine>(model)) return 1;
  if (!std::holds_alternative<PeriodicErfCoulomb>(model))
    throw Error(ErrorKind::Unsupported, model_name(model) + " is not periodic");
  const double first = std::abs(lattice_coeff_or_zero(model, 1));
  int n = 1;
  while (n < hard_limit && std::abs(lattice_coeff_or_zero(model, n + 1)) >= rel_cut * first) ++n;
  return n;
}

namespace {

// Fourier-series evaluation of a periodic model at x, |n| <= n_terms.
double periodic_series(const PotentialModel& model, int n_terms, double x) {
  const double b = 2.0 * kPi / lattice_constant(model);
  double s = 0.0;
  for (int n = n_terms; n >= 1; --n) s += 2.0 * std::real(lattice_coeff_or_zero(model, n) * std::polar(1.0, n * b * x));
  return s;
}

}  // namespace

double sample(const PotentialModel& model, double x) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DoubleWell>) {
          const double x2 = x * x;
          return -m.alpha * x2 + m.beta * x2 * x2;
        } else if constexpr (std::is_same_v<T, Cosine>) {
          return m.v0 * std::cos(m.k0 * x);
        } else if constexpr (std::is_same_v<T, PeriodicErfCoulomb>) {
          return periodic_series(model, significant_harmonics(model, 1e-17), x);
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return 0.5 * m.mass * m.omega * m.omega * x * x;
        } else {
          return 0.0;
        }
      },
      model);
}

Vec sample(const PotentialModel& model, const RealGrid& grid) {
  Vec v(grid.n_points);
  if (std::holds_alternative<PeriodicErfCoulomb>(model)) {
    const int nt = significant_harmonics(model, 1e-17);
    for (int i = 0; i < grid.n_points; ++i) v(i) = periodic_series(model, nt, grid.x(i));
  } else {
    for (int i = 0; i < grid.n_points; ++i) v(i) = sample(model, grid.x(i));
  }
  for (int i = 0; i < grid.n_points; ++i)
    if (!std::isfinite(v(i)))
      throw Error(ErrorKind::InvalidArgument, "non-finite potential sample at grid index " + std::to_string(i));
  return v;
}

double bloch_reconstruction_check(const PotentialModel& model, int n_terms, const std::vector<double>& xs) {
  if (!is_periodic(model)) throw Error(ErrorKind::Unsupported, model_name(model) + " is not periodic");
  if (n_terms < 0) throw Error(ErrorKind::InvalidArgument, "n_terms must be non-negative");
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(periodic_series(model, n_terms, x) - sample(model, x)));
  return worst;
}

Mat dvr_kinetic(const RealGrid& grid, double mass) {
  if (!(mass > 0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  const int n = grid.n_points;
  const double pref = kHbar * kHbar / (mass * grid.dx() * grid.dx());
  Mat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = i - j;
      t(i, j) = d == 0 ? pref * kPi * kPi / 6.0 : pref * ((d % 2) ? -1.0 : 1.0) / double(d * d);
    }
  return t;
}

HermitianMatrix dvr_hamiltonian(const RealGrid& grid, const PotentialModel& model, double mass) {
  Mat h = dvr_kinetic(grid, mass);
  h.diagonal() += sample(model, grid);
  return HermitianMatrix(std::move(h));
}

Mat periodic_dvr_kinetic(const RealGrid& grid, double mass) {
  if (!(mass > 0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  const int n = grid.n_points;
  if (n % 2 == 0) throw Error(ErrorKind::InvalidBasis, "periodic DVR needs an odd number of points");
  const int half = (n - 1) / 2;
  const double dk = 2.0 * kPi / grid.box_length;
  const double pref = kHbar * kHbar * dk * dk / (2.0 * mass);
  Mat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = i - j;
      if (d == 0) {
        t(i, j) = pref * half * (half + 1) / 3.0;
      } else {
        const double s = std::sin(kPi * d / n);
        t(i, j) = pref * ((d % 2) ? -1.0 : 1.0) * std::cos(kPi * d / n) / (2.0 * s * s);
      }
    }
  return t;
}

HermitianMatrix periodic_dvr_hamiltonian(const RealGrid& grid, const PotentialModel& model, double mass) {
  Mat h = periodic_dvr_kinetic(grid, mass);
  h.diagonal() += sample(model, grid);
  return HermitianMatrix(std::move(h));
}

MatterSolution matter_eigenstates(const HermitianMatrix& h, int n_states, const RealGrid& grid) {
  if (n_states < 1 || n_states > h.dim())
    throw Error(ErrorKind::InvalidArgument, "requested " + std::to_string(n_states) + " states from a dimension-" +
                                                std::to_string(h.dim()) + " matrix");
  if (h.dim() != grid.n_points) throw Error(ErrorKind::DimensionMismatch, "grid does not match the Hamiltonian");
  SpectrumResult r = eig_hermitian(h, true, n_states);
  MatterSolution sol;
  sol.grid = grid;
  sol.energies = r.values;
  Mat v = r.vectors.real();
  // Deterministic re-orthogonalization inside degenerate clusters, in index order.
  for (int i = 1; i < n_states; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(sol.energies(i) - sol.energies(j)) < 1e-10 * (1.0 + std::abs(sol.energies(i)))) {
        v.col(i) -= v.col(j).dot(v.col(i)) * v.col(j);
        v.col(i).normalize();
      }
  for (int i = 0; i < n_states; ++i) {
    Eigen::Index imax;
    v.col(i).cwiseAbs().maxCoeff(&imax);
    if (v(imax, i) < 0) v.col(i) *= -1.0;
  }
  sol.wavefunctions = v / std::sqrt(grid.dx());
  sol.dipoles = dipole_matrix(sol, grid);
  return sol;
}

Mat dipole_matrix(const MatterSolution& sol, const RealGrid& grid, double charge) {
  if (sol.wavefunctions.rows() != grid.n_points)
    throw Error(ErrorKind::DimensionMismatch, "wavefunctions do not match the grid");
  Vec xw = grid.points() * grid.dx();
  Mat mu = charge * sol.wavefunctions.transpose() * xw.asDiagonal() * sol.wavefunctions;
  return (mu + mu.transpose()) * 0.5;
}

std::vector<int> state_parities(const MatterSolution& sol, double tol) {
  std::vector<int> out;
  const long n = sol.wavefunctions.rows();
  for (long s = 0; s < sol.wavefunctions.cols(); ++s) {
    Vec f = sol.wavefunctions.col(s);
    Vec r = f.reverse();
    const double scale = f.cwiseAbs().maxCoeff();
    if ((f - r).cwiseAbs().maxCoeff() <= tol * scale)
      out.push_back(1);
    else if ((f + r).cwiseAbs().maxCoeff() <= tol * scale)
      out.push_back(-1);
    else
      out.push_back(0);
  }
  (void)n;
  return out;
}

FourierTable potential_fourier_dense(const Vec& samples, const RealGrid& grid) {
  const int n = grid.n_points;
  if (samples.size() != n) throw Error(ErrorKind::DimensionMismatch, "sample count does not match the grid");
  CVec in = samples.cast<cplx>();
  CVec out(n);
  {
    static std::mutex plan_mutex;  // FFTW planning is not thread-safe
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(plan_mutex);
      plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()),
                              FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  const int jmin = -(n / 2);
  const double dk = 2.0 * kPi / grid.box_length;
  const double x0 = grid.x(0);
  FourierTable t;
  t.K.resize(n);
  t.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = jmin + i;
    const int bin = ((j % n) + n) % n;
    t.K(i) = j * dk;
    // sum_m V_m e^{iK x_m} = e^{iK x_0} sum_m V_m e^{2 pi i j m / n}
    t.values(i) = grid.dx() / (2.0 * kPi) * std::polar(1.0, t.K(i) * x0) * out(bin);
  }
  return t;
}

FourierTable potential_fourier_dense(const PotentialModel& model, const RealGrid& grid) {
  return potential_fourier_dense(sample(model, grid), grid);
}

CVec box_coefficients(const PotentialModel& model, double box_length, int n_K) {
  if (n_K < 1) throw Error(ErrorKind::InvalidBasis, "K grid needs at least one point");
  const double L = box_length;
  const double dk = 2.0 * kPi / L;
  CVec c = CVec::Zero(2 * n_K - 1);
  if (is_periodic(model)) {
    const double ratio = L / lattice_constant(model);
    const long cells = std::lround(ratio);
    if (cells >= 1 && std::abs(ratio - cells) < 1e-9) {
      for (int d = -(n_K - 1); d <= n_K - 1; ++d)
        if (d % cells == 0) c(d + n_K - 1) = lattice_coeff_or_zero(model, -d / cells);
      return c;
    }
  }
  // GSL only tabulates some orders; computed ones lose about three digits, so
  // use panels of the tabulated 128-point rule.
  const size_t order = 128;
  const size_t panels = (size_t(2 * n_K + 64) + order - 1) / order;
  const size_t M = panels * order;
  gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(order);
  if (!tab) throw Error(ErrorKind::Numeric, "Gauss-Legendre table allocation failed");
  Vec xs(M), ws(M);
  for (size_t p = 0; p < panels; ++p) {
    const double a = -L / 2 + L * double(p) / double(panels), b = -L / 2 + L * double(p + 1) / double(panels);
    for (size_t i = 0; i < order; ++i) gsl_integration_glfixed_point(a, b, i, &xs(p * order + i), &ws(p * order + i), tab);
  }
  gsl_integration_glfixed_table_free(tab);
  Vec vw(M);
  for (size_t i = 0; i < M; ++i) vw(i) = sample(model, xs(i)) * ws(i) / L;
  const bool even = is_inversion_symmetric(model);
  for (int d = -(n_K - 1); d <= n_K - 1; ++d) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < M; ++i) {
      re += vw(i) * std::cos(d * dk * xs(i));
      if (!even) im += vw(i) * std::sin(d * dk * xs(i));
    }
    c(d + n_K - 1) = cplx(re, im);
  }
  return c;
}

}  // namespace cqed

namespace cqed {

double localization_width(const PotentialModel& model, double mass, int n_levels, double search_box, int n_grid,
                          double tol) {
  RealGrid grid(n_grid, search_box);
  SpectrumResult r = eig_hermitian(dvr_hamiltonian(grid, model, mass), true, n_levels);
  double a = 0.0;
  for (int s = 0; s < n_levels; ++s) {
    Vec p = r.vectors.col(s).cwiseAbs();
    const double cut = tol * p.maxCoeff();
    int lo = 0, hi = n_grid - 1;
    while (lo < hi && p(lo) <= cut) ++lo;
    while (hi > lo && p(hi) <= cut) --hi;
    a = std::max({a, std::abs(grid.x(lo)), std::abs(grid.x(hi))});
  }
  return 2.0 * a;
}

}  // namespace cqed
