#include "doctest.h"

#include <cmath>

#include "cqed/runner.hpp"

using namespace cqed;

namespace {

Problem shallow() {
  Problem p;
  p.model = DoubleWell{3.0, 3.85};
  p.omega_c = 3.137;
  p.search_box = 6.0;
  p.n_grid = 400;
  p.box_rule_grid = 400;
  return p;
}

}  // namespace

TEST_CASE("coupling axis is logarithmic") {
  const auto ax = log_coupling_axis(0.01, 100.0, 5);
  REQUIRE(ax.size() == 5);
  CHECK(ax[2].gamma_over_omega == doctest::Approx(1.0));
  CHECK(ax[4].gamma_over_omega == doctest::Approx(100.0));
  CHECK_THROWS_AS(log_coupling_axis(0.0, 1.0, 3), Error);
}

TEST_CASE("serial and parallel sweeps agree") {
  const Problem p = shallow();
  SweepSpec s;
  s.gauge = Gauge::RAD;
  s.rung = {40, 6};
  s.n_eigs = 5;
  s.points = log_coupling_axis(0.1, 10.0, 3);
  s.photon_numbers = true;
  s.exec = Exec::Serial;
  const SweepResult a = sweep_coupling(p, s);
  s.exec = Exec::Parallel;
  const SweepResult b = sweep_coupling(p, s);
  REQUIRE(a.points.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK((a.points[i].energies - b.points[i].energies).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.points[i].photon_number == b.points[i].photon_number);
    CHECK((a.points[i].reported.array() + a.points[i].zero_point - a.points[i].energies.array()).abs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("bad axes and ladders are rejected") {
  const Problem p = shallow();
  SweepSpec s;
  s.rung = {20, 3};
  s.n_eigs = 2;
  s.points = {AxisPoint{1.0}, AxisPoint{0.5}};
  CHECK_THROWS_AS(sweep_coupling(p, s), Error);
  s.points = {AxisPoint{std::nan("")}};
  CHECK_THROWS_AS(sweep_coupling(p, s), Error);
  s.points = {AxisPoint{0.5}};
  CHECK_THROWS_AS(convergence_study(p, s, {{20, 3}, {30, 3}}, 1e-6), Error);
  CHECK_THROWS_AS(convergence_study(p, s, {{20, 3}}, 1e-6), Error);
}

TEST_CASE("convergence study reports the smallest rung within tolerance") {
  const Problem p = shallow();
  SweepSpec s;
  s.gauge = Gauge::RAD;
  s.n_eigs = 4;
  s.points = {AxisPoint{0.5}};
  const ConvergenceTable t = convergence_study(p, s, {{16, 3}, {40, 8}, {60, 14}}, 1e-6);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows.back().max_abs_delta == 0.0);
  CHECK(t.rows[0].max_abs_delta > t.rows[1].max_abs_delta);
  CHECK(t.converged_rung == 1);
  CHECK(t.monotone);
}

TEST_CASE("PF sweeps report no Coulomb photon number") {
  Problem p = shallow();
  SweepSpec s;
  s.gauge = Gauge::PF;
  s.rung = {12, 30};
  s.n_eigs = 3;
  s.points = {AxisPoint{0.3}};
  s.photon_numbers = true;
  const SweepResult r = sweep_coupling(p, s);
  CHECK(std::isnan(r.points[0].photon_number[0]));
  CHECK(r.points[0].top_population[0] < 1e-6);
  CHECK(r.points[0].zero_point == doctest::Approx(3.137 / 2));
}

TEST_CASE("an explicit box overrides the localization rule") {
  Problem p = shallow();
  const double auto_small = resolved_box_length(p, Gauge::RAD, 0.1, 6);
  const double auto_large = resolved_box_length(p, Gauge::RAD, 0.7, 6);
  CHECK(auto_large > auto_small);
  p.box_length = 9.0;
  CHECK(resolved_box_length(p, Gauge::RAD, 0.7, 6) == 9.0);
}
