#include "doctest.h"

#include <cmath>

#include "cqed/transforms.hpp"

using namespace cqed;

TEST_CASE("bogoliubov frequency and coefficients") {
  const BogoliubovResult r = bogoliubov(2.0, 1.5);
  CHECK(r.Omega == doctest::Approx(std::sqrt(4.0 + 4.5)));
  CHECK(r.u * r.u - r.v * r.v == doctest::Approx(1.0).epsilon(1e-15));
  // Omega u v = gamma^2 / (2 w)
  CHECK(r.Omega * r.u * r.v == doctest::Approx(1.5 * 1.5 / 4.0).epsilon(1e-14));
  const BogoliubovResult z = bogoliubov(3.0, 0.0);
  CHECK(z.u == 1.0);
  CHECK(z.v == 0.0);
  CHECK_THROWS_AS(bogoliubov(0.0, 1.0), Error);
}

TEST_CASE("coupling and vector potential are inverse") {
  const double w = 1.3, m = 2.0, z = -1.0, g = 0.7;
  const double A = vector_potential_for_gamma(w, g, z, m);
  const auto gam = coupling_gamma({CavityMode{w, A, {1.0}}}, {z}, {m});
  CHECK(gam[0] == doctest::Approx(g).epsilon(1e-14));
}

TEST_CASE("effective coupling is bounded with the documented maxima") {
  const double w = 1.0, m = 1.0;
  double best_xi = 0.0, arg_xi = 0.0, best_amp = 0.0, arg_amp = 0.0;
  for (int i = 1; i <= 40000; ++i) {
    const double g = i * 1e-4;
    const double xi = effective_xi_single(w, g, m), amp = effective_xi_amplitude(w, g, m);
    if (xi > best_xi) best_xi = xi, arg_xi = g;
    if (amp > best_amp) best_amp = amp, arg_amp = g;
  }
  CHECK(arg_xi == doctest::Approx(w / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(arg_amp == doctest::Approx(w).epsilon(1e-3));
  CHECK(effective_xi_single(w, 0.0, m) == 0.0);
  CHECK(effective_xi_single(w, 1e6, m) < 1e-6);
}

TEST_CASE("single-mode effective mass") {
  const double w = 2.0, g = 3.0;
  const double Om = bogoliubov(w, g).Omega;
  CHECK(effective_mass(1.5, w, g) == doctest::Approx(1.5 * Om * Om / (w * w)));
  const double A = vector_potential_for_gamma(w, g, -1.0, 1.5);
  const NormalModeSet nm = normal_mode_transform({CavityMode{w, A, {1.0}}}, {-1.0}, {1.5});
  CHECK(nm.Omegas(0) == doctest::Approx(Om));
  CHECK(effective_mass(1.5, nm) == doctest::Approx(effective_mass(1.5, w, g)).epsilon(1e-12));
}

TEST_CASE("two-mode normal modes and mass follow from the classical quadratic form") {
  const double m = 1.0, z = -1.0;
  const CavityMode a{1.0, 0.4, {1.0}}, b{2.5, 0.3, {1.0}};
  const auto gam = coupling_gamma({a, b}, {z}, {m});
  const NormalModeSet nm = normal_mode_transform({a, b}, {z}, {m});
  // 2x2 g-matrix eigenvalues in closed form
  const double g11 = a.omega * a.omega + 2 * gam[0] * gam[0], g22 = b.omega * b.omega + 2 * gam[1] * gam[1];
  const double g12 = 2 * gam[0] * gam[1];
  const double tr = g11 + g22, det = g11 * g22 - g12 * g12;
  const double l1 = tr / 2 - std::sqrt(tr * tr / 4 - det), l2 = tr / 2 + std::sqrt(tr * tr / 4 - det);
  CHECK(nm.Omegas(0) == doctest::Approx(std::sqrt(l1)).epsilon(1e-13));
  CHECK(nm.Omegas(1) == doctest::Approx(std::sqrt(l2)).epsilon(1e-13));
  // Minimizing (p - c.q)^2/2m + q.W.q/2 at fixed p gives m_eff = m + sum c_b^2 / w_b^2.
  double meff = m;
  for (const CavityMode* md : {&a, &b}) {
    const double c = z * md->A0 * std::sqrt(2.0 * md->omega);
    meff += c * c / (md->omega * md->omega);
  }
  CHECK(effective_mass(m, nm) == doctest::Approx(meff).epsilon(1e-12));
  CHECK((nm.o_matrix * nm.o_matrix.transpose() - Mat::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("cavity dispersion and coupling scaling") {
  CHECK(cavity_dispersion(3.0, 2.0, 2.0) == doctest::Approx(5.0));
  CHECK(coupling_at(1.0, 4.0, 9.0, CouplingScaling::FixedA) == doctest::Approx(1.5));
  CHECK(coupling_at(1.0, 4.0, 9.0, CouplingScaling::FixedGamma) == 1.0);
  CHECK(parse_coupling_scaling("fixed_gamma") == CouplingScaling::FixedGamma);
  CHECK_THROWS_AS(parse_coupling_scaling("fixed"), Error);
  CHECK_THROWS_AS(cavity_dispersion(1.0, -1.0, 0.0), Error);
}
