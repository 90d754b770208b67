#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles/closed_forms.hpp"
#include "sltk/potential/functionals.hpp"

using namespace sltk;
using Catch::Matchers::WithinAbs;

namespace {

const double kPi = std::numbers::pi;

Potential step13() { return Potential::piecewise({0.0, 0.5, 1.0}, {1.0, 3.0}); }

/// Catalog used by the property tests.
std::vector<Potential> catalog() {
  std::vector<double> samples(257);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = static_cast<double>(i) / 256.0;
    samples[i] = std::exp(x) - 2.0 * x * x;
  }
  return {Potential::zero(),
          Potential::constant(5.0),
          Potential::cos2pi(1),
          Potential::sin2pi(1),
          Potential::cos2pi(3, -2.0),
          Potential::custom_table(0.5, {1.0, 0.0, 0.25}, {0.0, -0.5}),
          step13(),
          Potential::piecewise({0.0, 0.2, 0.7, 1.0}, {-1.0, 4.0, 2.0}),
          Potential::sampled(samples)};
}

}  // namespace

TEST_CASE("eval follows the representation conventions", "[potential]") {
  REQUIRE(eval(Potential::zero(), 0.37) == 0.0);
  REQUIRE(eval(Potential::constant(5.0), 0.5) == 5.0);
  REQUIRE(eval(step13(), 0.5) == 3.0);
  REQUIRE(eval(step13(), 0.4999) == 1.0);
  REQUIRE(eval(step13(), 1.0) == 3.0);
  REQUIRE(eval(Potential::sampled({0.0, 2.0, 4.0}), 0.25) == 1.0);
  REQUIRE_THAT(eval(Potential::cos2pi(1), 0.5), WithinAbs(-1.0, 1e-15));
}

TEST_CASE("eval outside [0,1] is a domain error", "[potential]") {
  REQUIRE_THROWS_AS(eval(Potential::zero(), -0.01), DomainError);
  REQUIRE_THROWS_AS(eval(step13(), 1.5), DomainError);
  REQUIRE_THROWS_AS(eval(step13(), std::nan("")), DomainError);
}

TEST_CASE("construction rejects invalid representations", "[potential]") {
  REQUIRE_THROWS_AS(Potential::piecewise({0.0, 0.5, 0.5, 1.0}, {1, 2, 3}), UsageError);
  REQUIRE_THROWS_AS(Potential::piecewise({0.1, 1.0}, {1}), UsageError);
  REQUIRE_THROWS_AS(Potential::piecewise({0.0, 1.0}, {1, 2}), UsageError);
  REQUIRE_THROWS_AS(Potential::sampled({1.0, 2.0}), UsageError);
  REQUIRE_THROWS_AS(Potential::sampled({1.0, INFINITY, 2.0}), UsageError);
  REQUIRE_THROWS_AS(Potential::cos2pi(0), UsageError);
}

TEST_CASE("subtract keeps exact representations where possible", "[potential]") {
  const auto c = subtract(Potential::constant(5.0), Potential::zero());
  REQUIRE(c.kind() == RepresentationKind::analytic);
  REQUIRE(c.analytic_tag() == AnalyticTag::constant);
  REQUIRE(eval(c, 0.3) == 5.0);

  const auto self = subtract(Potential::cos2pi(2), Potential::cos2pi(2));
  REQUIRE(self.is_constant());
  REQUIRE(ess_sup(self) == 0.0);

  const auto pw = subtract(step13(), Potential::constant(1.0));
  REQUIRE(pw.kind() == RepresentationKind::piecewise);
  REQUIRE(pw.as_piecewise()->breakpoints == std::vector<double>{0.0, 0.5, 1.0});
  REQUIRE(pw.as_piecewise()->values == std::vector<double>{0.0, 2.0});

  const auto merged = subtract(step13(), Potential::piecewise({0.0, 0.25, 1.0}, {1.0, 0.0}));
  REQUIRE(merged.as_piecewise()->breakpoints == std::vector<double>{0.0, 0.25, 0.5, 1.0});
  REQUIRE(merged.as_piecewise()->values == std::vector<double>{0.0, 1.0, 3.0});

  const auto mixed = subtract(step13(), Potential::cos2pi(1));
  REQUIRE(mixed.kind() == RepresentationKind::sampled);
  REQUIRE(mixed.as_sampled()->values.size() == 2049);
}

TEST_CASE("subtract then add reproduces q on the grid", "[potential][property]") {
  const auto cat = catalog();
  for (const auto& q : cat) {
    for (const auto& qt : cat) {
      const auto back = add(subtract(q, qt), qt);
      std::vector<double> xs;
      if (const auto* s = back.as_sampled()) {
        xs = sltk::num::uniform_grid(s->values.size());
      } else {
        // stay off breakpoints where the left-closed convention may flip
        for (int i = 0; i <= 64; ++i) xs.push_back((i + 0.5) / 65.0);
      }
      for (double x : xs) {
        REQUIRE_THAT(eval(back, x), WithinAbs(eval(q, x), 1e-12 * (1.0 + std::abs(eval(q, x)))));
      }
    }
  }
}

TEST_CASE("integral examples", "[potential]") {
  REQUIRE_THAT(integral(Potential::constant(5.0)), WithinAbs(5.0, 1e-14));
  REQUIRE_THAT(integral(Potential::cos2pi(1)), WithinAbs(0.0, 1e-14));
  REQUIRE(integral(step13()) == 2.0);
  REQUIRE_THAT(integral(Potential::sampled({0.0, 1.0, 0.0})), WithinAbs(0.5, 1e-15));
}

TEST_CASE("integral error estimate stays below 1e-10 on smooth catalog entries", "[potential]") {
  for (const auto& q : {Potential::cos2pi(1), Potential::sin2pi(4), Potential::custom_table(0.5, {1.0, 0.0, 0.25}, {0.0, -0.5})}) {
    REQUIRE(integral_with_error(q).error_estimate <= 1e-10);
  }
}

TEST_CASE("essential bounds", "[potential]") {
  REQUIRE(ess_inf(step13()) == 1.0);
  REQUIRE(ess_sup(step13()) == 3.0);
  REQUIRE(ess_sup(Potential::cos2pi(1)) == 1.0);
  REQUIRE(ess_inf(Potential::cos2pi(1)) == -1.0);
  REQUIRE(ess_inf(Potential::constant(-2.5)) == -2.5);
  REQUIRE(ess_sup(Potential::constant(-2.5)) == -2.5);
  // cos(2 pi x) + cos(4 pi x): max 2 at x = 0, min -9/8 at cos(2 pi x) = -1/4
  const auto two = Potential::custom_table(0.0, {1.0, 1.0}, {});
  REQUIRE_THAT(ess_sup(two), WithinAbs(2.0, 1e-12));
  REQUIRE_THAT(ess_inf(two), WithinAbs(-9.0 / 8.0, 1e-12));
}

TEST_CASE("ess_inf <= integral <= ess_sup across the catalog", "[potential][property]") {
  for (const auto& q : catalog()) {
    const double m = integral(q);
    REQUIRE(ess_inf(q) <= m + 1e-12);
    REQUIRE(m <= ess_sup(q) + 1e-12);
  }
}

TEST_CASE("Fourier coefficient examples", "[potential]") {
  REQUIRE_THAT(fourier_cos_coeff(Potential::cos2pi(1), 1), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(fourier_cos_coeff(Potential::cos2pi(1), 2), WithinAbs(0.0, 1e-12));
  for (int n = 1; n <= 5; ++n) REQUIRE_THAT(fourier_cos_coeff(Potential::constant(7.0), n), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(fourier_sin_coeff(Potential::sin2pi(1), 1), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(fourier_sin_coeff(Potential::constant(3.0), 2), WithinAbs(0.0, 1e-12));
  REQUIRE_THROWS_AS(fourier_cos_coeff(Potential::zero(), 0), UsageError);
}

TEST_CASE("sine coefficients of midpoint-even potentials vanish", "[potential]") {
  // Oracle: exact cell antiderivatives for the symmetric step, and a
  // brute-force refinement check for the sampled even potential.
  const auto sym_step = Potential::piecewise({0.0, 0.25, 0.75, 1.0}, {2.0, -1.0, 2.0});
  const auto even_sampled = [] {
    std::vector<double> v(513);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = i / 512.0;
      v[i] = x * (1.0 - x) + std::cos(6.0 * kPi * x);
    }
    return Potential::sampled(v);
  }();
  for (int n = 1; n <= 6; ++n) {
    REQUIRE_THAT(fourier_sin_coeff(sym_step, n), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(fourier_sin_coeff(even_sampled, n), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(fourier_sin_coeff(Potential::cos2pi(2), n), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("piecewise cosine coefficients match exact cell antiderivatives", "[potential]") {
  const auto q = Potential::piecewise({0.0, 0.2, 0.7, 1.0}, {-1.0, 4.0, 2.0});
  for (int n = 1; n <= 10; ++n) {
    const double w = 2.0 * kPi * n;
    const double exact = -1.0 * oracle::cos_cell_integral(w, 0.0, 0.2) + 4.0 * oracle::cos_cell_integral(w, 0.2, 0.7) +
                         2.0 * oracle::cos_cell_integral(w, 0.7, 1.0);
    REQUIRE_THAT(fourier_cos_coeff(q, n), WithinAbs(exact, 1e-12));
  }
}

TEST_CASE("Fourier coefficients are linear in q", "[potential][property]") {
  // Combinations stay within one representation family so that add() is
  // exact; mixing a jump with a smooth term resamples and smears the jump.
  const auto cat = catalog();
  const std::vector<std::vector<std::size_t>> families{{0, 1, 2, 3, 4, 5}, {1, 6, 7}, {1, 8}};
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& fam = families[static_cast<std::size_t>(trial) % families.size()];
    std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
    const auto& p = cat[fam[pick(rng)]];
    const auto& r = cat[fam[pick(rng)]];
    const double a = coef(rng), b = coef(rng);
    const auto combo = add(scale(p, a), scale(r, b));
    for (int n = 1; n <= 4; ++n) {
      REQUIRE_THAT(fourier_cos_coeff(combo, n),
                   WithinAbs(a * fourier_cos_coeff(p, n) + b * fourier_cos_coeff(r, n), 1e-9));
      REQUIRE_THAT(fourier_sin_coeff(combo, n),
                   WithinAbs(a * fourier_sin_coeff(p, n) + b * fourier_sin_coeff(r, n), 1e-9));
    }
  }
}

TEST_CASE("even/odd split examples", "[potential]") {
  auto c = even_odd_split(Potential::constant(4.0));
  REQUIRE(eval(c.even, 0.3) == 4.0);
  REQUIRE(eval(c.odd, 0.3) == 0.0);

  auto s = even_odd_split(Potential::sin2pi(1));
  REQUIRE(eval(s.even, 0.3) == 0.0);
  REQUIRE(eval(s.odd, 0.3) == eval(Potential::sin2pi(1), 0.3));

  auto k = even_odd_split(Potential::cos2pi(1));
  REQUIRE(eval(k.even, 0.3) == eval(Potential::cos2pi(1), 0.3));
  REQUIRE(eval(k.odd, 0.3) == 0.0);
}

TEST_CASE("even/odd parts satisfy their symmetries and reconstruct q", "[potential][property]") {
  for (const auto& q : catalog()) {
    const auto parts = even_odd_split(q);
    if (const auto* pe = parts.even.as_piecewise()) {
      // exact on symmetric breakpoints
      const auto& bps = pe->breakpoints;
      const std::size_t cells = pe->values.size();
      for (std::size_t j = 0; j <= cells; ++j) REQUIRE_THAT(bps[j] + bps[cells - j], WithinAbs(1.0, 1e-15));
      for (std::size_t j = 0; j < cells; ++j) {
        REQUIRE(pe->values[j] == pe->values[cells - 1 - j]);
        REQUIRE(parts.odd.as_piecewise()->values[j] == -parts.odd.as_piecewise()->values[cells - 1 - j]);
      }
    }
    if (const auto* se = parts.even.as_sampled()) {
      const std::size_t n = se->values.size();
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE_THAT(se->values[i] - se->values[n - 1 - i], WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(parts.odd.as_sampled()->values[i] + parts.odd.as_sampled()->values[n - 1 - i], WithinAbs(0.0, 1e-12));
      }
    }
    for (int i = 0; i <= 40; ++i) {
      const double x = (i + 0.37) / 41.0;
      REQUIRE_THAT(eval(parts.even, x), WithinAbs(eval(parts.even, 1.0 - x), 1e-12));
      REQUIRE_THAT(eval(parts.odd, x), WithinAbs(-eval(parts.odd, 1.0 - x), 1e-12));
      REQUIRE_THAT(eval(parts.even, x) + eval(parts.odd, x), WithinAbs(eval(q, x), 1e-12));
    }
  }
}

TEST_CASE("L1 and Linf norms", "[potential]") {
  REQUIRE(l1_norm(step13()) == 2.0);
  REQUIRE(linf_norm(step13()) == 3.0);
  REQUIRE_THAT(l1_norm(Potential::cos2pi(1)), WithinAbs(2.0 / kPi, 1e-12));
  REQUIRE_THAT(l1_norm(Potential::constant(-4.0)), WithinAbs(4.0, 0.0));
  REQUIRE_THAT(l1_norm(Potential::sampled({-1.0, 1.0, -1.0})), WithinAbs(0.5, 1e-15));
  // |cos 2 pi x - 1/2|, roots at 1/6 and 5/6: positive part sqrt(3)/(2 pi) - 1/6,
  // negative part 1/3 + sqrt(3)/(2 pi)
  REQUIRE_THAT(l1_norm(shift(Potential::cos2pi(1), -0.5)), WithinAbs(std::sqrt(3.0) / kPi + 1.0 / 6.0, 1e-12));
}
