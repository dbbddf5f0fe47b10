#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meanmotion/errors.hpp"
#include "meanmotion/lattice.hpp"
#include "meanmotion/lift.hpp"
#include "support.hpp"

using namespace testing;
using std::numbers::pi;

namespace {

bool close(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("construction validates its input") {
  CHECK_THROWS_AS(ExpPolynomial(0, {term(1.0, {})}), ArgumentError);
  CHECK_THROWS_AS(ExpPolynomial(1, {}), ArgumentError);
  CHECK_THROWS_AS(ExpPolynomial(1, {term(0.0, {"1"})}), ArgumentError);
  CHECK_THROWS_AS(ExpPolynomial(2, {term(1.0, {"1"})}), ArgumentError);
  CHECK_THROWS_AS(ExpPolynomial(1, {term(1.0, {"1/2"}), term(2.0, {"2/4"})}), ArgumentError);
  CHECK_THROWS_AS(ExpPolynomial(1, {term({NAN, 0.0}, {"1"})}), ArgumentError);
}

TEST_CASE("evaluate: identity, sine and decay along the imaginary axis") {
  const ExpPolynomial e(1, {term(1.0, {"1"})});
  const Complex z0[] = {0.0};
  CHECK(evaluate(e, z0) == Complex(1.0, 0.0));

  const Complex half_pi[] = {pi / 2};
  CHECK(close(evaluate(sine(), half_pi), 1.0, 1e-15));

  const Complex ipi[] = {Complex(0.0, pi)};
  CHECK(close(evaluate(e, ipi), 0.04321391826377226, 1e-14));

  const Complex wrong[] = {0.0, 0.0};
  CHECK_THROWS_AS(evaluate(e, wrong), ArgumentError);
}

TEST_CASE("restrict_line examples") {
  SUBCASE("two frequencies") {
    const ExpPolynomial p(2, {term(1.0, {"1", "1"}), term(1.0, {"2", "-1"})});
    const Complex base[] = {0.0, Complex(0.0, 1.0)};
    const auto u = restrict_line(p, base);
    REQUIRE(u.terms().size() == 2);
    // sorted by frequency
    CHECK(u.terms()[0].frequency == 1.0);
    CHECK(close(u.terms()[0].amplitude, std::exp(-1.0), 1e-15));
    CHECK(u.terms()[1].frequency == 2.0);
    CHECK(close(u.terms()[1].amplitude, std::exp(1.0), 1e-15));
  }
  SUBCASE("equal frequencies merge") {
    const ExpPolynomial p(2, {term(1.0, {"1", "0"}), term(1.0, {"1", "1"})});
    const Complex base[] = {0.0, 0.0};
    const auto u = restrict_line(p, base);
    REQUIRE(u.terms().size() == 1);
    CHECK(u.terms()[0].frequency == 1.0);
    CHECK(close(u.terms()[0].amplitude, 2.0, 1e-15));
    REQUIRE(u.terms()[0].exact_frequency);
    CHECK(*u.terms()[0].exact_frequency == 1);
  }
  SUBCASE("sine at height one") {
    const Complex base[] = {Complex(0.0, 1.0)};
    const auto u = restrict_line(sine(), base);
    REQUIRE(u.terms().size() == 2);
    const Complex two_i(0.0, 2.0);
    CHECK(u.terms()[0].frequency == -1.0);
    CHECK(close(u.terms()[0].amplitude, -std::exp(1.0) / two_i, 1e-15));
    CHECK(u.terms()[1].frequency == 1.0);
    CHECK(close(u.terms()[1].amplitude, std::exp(-1.0) / two_i, 1e-15));
  }
  SUBCASE("exact cancellation yields the empty sum") {
    // e^{iz₁} − e^{i(z₁+z₂)} vanishes on z₂ = 0
    const ExpPolynomial p(2, {term(1.0, {"1", "0"}), term(-1.0, {"1", "1"})});
    const Complex base[] = {0.3, 0.0};
    CHECK(is_identically_zero(restrict_line(p, base)));
  }
  SUBCASE("float direction groups to tolerance") {
    const ExpPolynomial p(2, {term(1.0, {"1", "0"}), term(1.0, {"0", "1"})});
    const Complex base[] = {0.0, 0.0};
    const double dir[] = {0.1 * 3.0, 0.3};
    const auto u = restrict_line(p, base, std::span<const double>(dir));
    CHECK(u.terms().size() == 1);
  }
}

TEST_CASE("is_identically_zero") {
  CHECK(is_identically_zero(UnivariateExpSum{}));
  CHECK_FALSE(is_identically_zero(usum({{2.0, 1}})));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  for (int i = 0; i < 50; ++i) {
    const Complex base[] = {Complex(d(rng), d(rng))};
    const auto u = restrict_line(sine(), base);
    CHECK_FALSE(is_identically_zero(u));
    // both amplitudes have modulus e^{∓y}/2
    const double y = base[0].imag();
    CHECK(std::abs(std::abs(u.terms()[0].amplitude) - std::exp(y) / 2) <= 1e-12 * std::exp(std::abs(y)));
    CHECK(std::abs(std::abs(u.terms()[1].amplitude) - std::exp(-y) / 2) <= 1e-12 * std::exp(std::abs(y)));
  }
}

TEST_CASE("modulated shifts every exponent") {
  const auto m = sine().modulated({Rational(1, 2)});
  CHECK(m.terms()[0].exponent[0] == Rational(3, 2));
  CHECK(m.terms()[1].exponent[0] == Rational(-1, 2));
  CHECK_THROWS_AS(sine().modulated({Rational(1), Rational(0)}), ArgumentError);
}

TEST_CASE("property: evaluate is additive over disjoint exponent sets") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_polynomial(rng, 2, 6);
    const std::vector<ExpTerm> all = p.terms();
    const ExpPolynomial a(2, {all.begin(), all.begin() + 3});
    const ExpPolynomial b(2, {all.begin() + 3, all.end()});
    const Complex z[] = {Complex(d(rng), d(rng) / 3), Complex(d(rng), d(rng) / 3)};
    const Complex whole = evaluate(p, z);
    const Complex parts = evaluate(a, z) + evaluate(b, z);
    CHECK(std::abs(whole - parts) <= 1e-12 * (std::abs(evaluate(a, z)) + std::abs(evaluate(b, z))));
  }
}

TEST_CASE("property: restriction agrees with direct evaluation") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_polynomial(rng, 3, 5);
    const Complex base[] = {Complex(d(rng), 0.2 * d(rng)), Complex(d(rng), 0.2 * d(rng)),
                            Complex(d(rng), 0.2 * d(rng))};
    const FrequencyVector dir{Rational(1), Rational(-1, 2), Rational(2, 3)};
    const auto u = restrict_line(p, base, std::span<const Rational>(dir));
    double scale = 0.0;
    for (const auto& t : p.terms()) {
      double re = 0.0;
      for (int k = 0; k < 3; ++k) re += base[k].imag() * to_double(t.exponent[k]);
      scale += std::abs(t.coefficient) * std::exp(-re);
    }
    for (int i = 0; i < 100; ++i) {
      const double s = d(rng);
      std::vector<Complex> z(3);
      for (int k = 0; k < 3; ++k) z[k] = base[k] + s * to_double(dir[k]);
      CHECK(std::abs(u(s) - evaluate(p, z)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("property: triangle-inequality bound on horizontal lines") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_polynomial(rng, 2, 5);
    const double y[] = {0.1 * d(rng), 0.1 * d(rng)};
    double bound = 0.0;
    for (const auto& t : p.terms()) {
      bound += std::abs(t.coefficient) * std::exp(-(y[0] * to_double(t.exponent[0]) + y[1] * to_double(t.exponent[1])));
    }
    for (int i = 0; i < 20; ++i) {
      const double x[] = {d(rng), d(rng)};
      const auto z = complexify(x, y);
      CHECK(std::abs(evaluate(p, z)) <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("lift examples") {
  SUBCASE("sine lifts to sin(z + w)") {
    const auto basis = group_basis(sine().exponents());
    const auto f = lift(sine(), basis);
    for (double x : {-2.0, 0.3, 1.7}) {
      for (double t : {-0.5, 0.0, 0.9}) {
        const Complex z[] = {t};
        const auto u = f.flow_point(std::span<const double>(&x, 1));
        const Complex w[] = {u[0]};
        CHECK(close(f(z, w), std::sin(x + t), 1e-14));
      }
    }
  }
  SUBCASE("pure exponential") {
    const ExpPolynomial e(1, {term(1.0, {"1"})});
    const auto f = lift(e, group_basis(e.exponents()));
    const Complex z[] = {0.0};
    const Complex w[] = {0.8};
    CHECK(close(f(z, w), std::polar(1.0, 0.8), 1e-15));
  }
  SUBCASE("half integers") {
    const ExpPolynomial p(1, {term({1.0, 0.5}, {"1/2"}), term({-0.3, 0.2}, {"3/2"})});
    const auto basis = group_basis(p.exponents());
    REQUIRE(basis.basis_vectors == std::vector<FrequencyVector>{{Rational(1, 2)}});
    const auto f = lift(p, basis);
    CHECK(f.coords()[0][0] == 1);
    CHECK(f.coords()[1][0] == 3);
    CHECK(f.shift_identity_error(200, 4) <= 1e-9);
  }
  SUBCASE("a wrong basis is rejected") {
    const ExpPolynomial p(1, {term(1.0, {"1/2"}), term(1.0, {"3/2"})});
    LatticeBasis bogus = group_basis(p.exponents());
    bogus.basis_vectors[0][0] = Rational(1, 4);
    CHECK_THROWS_AS(lift(p, bogus), InternalConsistencyError);
  }
}

TEST_CASE("property: shift identity for random polynomials") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_polynomial(rng, 1 + trial % 3, 3 + trial % 3);
    const auto f = lift(p, group_basis(p.exponents()));
    CHECK(f.shift_identity_error(100, trial) <= 1e-9);
  }
}
