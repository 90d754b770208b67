#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles/closed_forms.hpp"
#include "sltk/numerics/ode.hpp"

using namespace sltk::num;
using Catch::Matchers::WithinAbs;

namespace {

auto prufer_rhs(double mu) {
  return [mu](double, const State<1>& t) {
    const double s = std::sin(t[0]), c = std::cos(t[0]);
    return State<1>{c * c + mu * s * s};
  };
}

}  // namespace

TEST_CASE("unit slope integrates exactly", "[ode]") {
  const auto sol = integrate_ode<1>([](double, const State<1>&) { return State<1>{1.0}; }, 0.0, 1.0, {0.0}, {},
                                    ToleranceBundle{});
  REQUIRE_THAT(sol.final[0], WithinAbs(1.0, 1e-12));
}

TEST_CASE("free Pruefer angle at the first Dirichlet eigenvalue reaches pi", "[ode]") {
  const double pi = std::numbers::pi;
  const auto sol = integrate_ode<1>(prufer_rhs(pi * pi), 0.0, 1.0, {0.0}, {}, ToleranceBundle{});
  REQUIRE_THAT(sol.final[0], WithinAbs(pi, 1e-9));
}

TEST_CASE("constant-q Pruefer angle matches the closed form", "[ode]") {
  for (double mu : {-30.0, -2.0, 0.0, 2.0, 50.0, 400.0}) {
    for (double theta0 : {0.0, 0.7, std::numbers::pi / 2}) {
      const auto sol = integrate_ode<1>(prufer_rhs(mu), 0.0, 1.0, {theta0}, {}, ToleranceBundle{});
      CAPTURE(mu, theta0);
      // global error accumulates over the half-turns of the angle
      const double exact = oracle::constant_q_angle(theta0, mu, 1.0);
      REQUIRE_THAT(sol.final[0], WithinAbs(exact, 1e-9 * std::max(1.0, std::abs(exact) / std::numbers::pi)));
    }
  }
}

TEST_CASE("piecewise q: segment-aware integration matches glued closed forms", "[ode]") {
  // q = 1 on [0, 0.5), q = 3 on [0.5, 1]; lambda = 20
  const double lambda = 20.0;
  const std::vector<double> breaks{0.0, 0.5, 1.0};
  const double qv[2] = {1.0, 3.0};
  auto rhs = [&](std::size_t j, double, const State<1>& t) {
    const double s = std::sin(t[0]), c = std::cos(t[0]);
    return State<1>{c * c + (lambda - qv[j]) * s * s};
  };
  const auto sol = integrate_segments<1>(rhs, breaks, {0.3}, {}, ToleranceBundle{});
  const double mid = oracle::constant_q_angle(0.3, lambda - 1.0, 0.5);
  const double end = oracle::constant_q_angle(mid, lambda - 3.0, 0.5);
  REQUIRE_THAT(sol.final[0], WithinAbs(end, 1e-9));
}

TEST_CASE("outputs are landed on exactly and recorded in order", "[ode]") {
  const std::vector<double> outs{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto sol = integrate_ode<1>([](double x, const State<1>&) { return State<1>{3.0 * x * x}; }, 0.0, 1.0,
                                    {0.0}, outs, ToleranceBundle{});
  REQUIRE(sol.samples.size() == outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    REQUIRE_THAT(sol.samples[i][0], WithinAbs(std::pow(outs[i], 3), 1e-12));
  }
}

TEST_CASE("outputs spanning several segments are not duplicated", "[ode]") {
  const std::vector<double> breaks{0.0, 0.5, 1.0};
  const std::vector<double> outs{0.0, 0.5, 1.0};
  auto rhs = [](std::size_t, double, const State<1>&) { return State<1>{1.0}; };
  const auto sol = integrate_segments<1>(rhs, breaks, {0.0}, outs, ToleranceBundle{});
  REQUIRE(sol.samples.size() == 3);
  REQUIRE_THAT(sol.samples[1][0], WithinAbs(0.5, 1e-14));
}

TEST_CASE("step budget exhaustion is reported as a numerical error", "[ode]") {
  ToleranceBundle tol;
  tol.max_steps = 1000;
  tol.ode_rel = 1e-14;
  tol.ode_abs = 1e-16;
  REQUIRE_THROWS_AS(integrate_ode<1>(prufer_rhs(1e6), 0.0, 1.0, {0.0}, {}, tol), sltk::NumericalError);
}

TEST_CASE("observed order of the fixed-step scheme is at least 4.5", "[ode]") {
  const double mu = 40.0;
  const double exact = oracle::constant_q_angle(0.4, mu, 1.0, 200000);
  std::vector<double> errors;
  const std::vector<std::size_t> steps{16, 32, 64, 128};
  for (std::size_t m : steps) {
    errors.push_back(std::abs(integrate_fixed<1>(prufer_rhs(mu), 0.0, 1.0, {0.4}, m)[0] - exact));
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double order = std::log2(errors[i] / errors[i + 1]);
    CAPTURE(i, errors[i], errors[i + 1], order);
    REQUIRE(order >= 4.5);
  }
}

TEST_CASE("identical inputs give identical step sequences", "[ode]") {
  const auto a = integrate_ode<1>(prufer_rhs(77.0), 0.0, 1.0, {0.1}, {}, ToleranceBundle{});
  const auto b = integrate_ode<1>(prufer_rhs(77.0), 0.0, 1.0, {0.1}, {}, ToleranceBundle{});
  REQUIRE(a.final[0] == b.final[0]);
  REQUIRE(a.accepted_steps == b.accepted_steps);
}
