#pragma once

#include "meanmotion/exp_polynomial.hpp"
#include "meanmotion/rational.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing {

using namespace meanmotion;

inline ExpTerm term(Complex c, std::initializer_list<const char*> exponent) {
  FrequencyVector e;
  for (const char* s : exponent) e.push_back(parse_rational(s));
  return ExpTerm{c, std::move(e)};
}

// (e^{iz} − e^{−iz})/(2i)
inline ExpPolynomial sine() {
  return ExpPolynomial(1, {term({0.0, -0.5}, {"1"}), term({0.0, 0.5}, {"-1"})});
}

inline UnivariateExpSum usum(std::initializer_list<std::pair<Complex, int>> terms) {
  std::vector<UnivariateTerm> raw;
  for (const auto& [a, g] : terms) raw.push_back({a, double(g), Rational(g)});
  return UnivariateExpSum::from_terms(std::move(raw));
}

inline UnivariateExpSum usin() { return usum({{{0.0, -0.5}, 1}, {{0.0, 0.5}, -1}}); }
// 2(cos s − 1)
inline UnivariateExpSum ucos2() { return usum({{1.0, 1}, {1.0, -1}, {-2.0, 0}}); }

/// Random polynomial with S terms in p dimensions, exponents n/d with
/// d ∈ {1,2,3,4,6}, |n/d| ≤ 2, coefficients with modulus in [0.3, 1.5].
inline ExpPolynomial random_polynomial(std::mt19937_64& rng, std::size_t p, std::size_t s) {
  static const int dens[] = {1, 2, 3, 4, 6};
  std::uniform_int_distribution<int> pick_den(0, 4);
  std::uniform_real_distribution<double> mod(0.3, 1.5), ang(0.0, 2.0 * std::numbers::pi);
  std::set<FrequencyVector> seen;
  std::vector<ExpTerm> terms;
  while (terms.size() < s) {
    FrequencyVector e;
    for (std::size_t k = 0; k < p; ++k) {
      const int d = dens[pick_den(rng)];
      std::uniform_int_distribution<int> pick_num(-2 * d, 2 * d);
      e.emplace_back(pick_num(rng), d);
    }
    if (!seen.insert(e).second) continue;
    terms.push_back({std::polar(mod(rng), ang(rng)), std::move(e)});
  }
  return ExpPolynomial(p, std::move(terms));
}

}  // namespace testing
