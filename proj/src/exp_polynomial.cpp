#include "meanmotion/exp_polynomial.hpp"

#include "meanmotion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace meanmotion {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ArgumentError(std::string(what) + ": expected length " + std::to_string(want) +
                        ", got " + std::to_string(got));
  }
}

}  // namespace

ExpPolynomial::ExpPolynomial(std::size_t dimension, std::vector<ExpTerm> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension_ == 0) throw ArgumentError("exponential polynomial needs dimension >= 1");
  if (terms_.empty()) throw ArgumentError("exponential polynomial needs at least one term");
  std::map<FrequencyVector, std::size_t> seen;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& term = terms_[j];
    if (term.exponent.size() != dimension_) {
      throw ArgumentError("term " + std::to_string(j) + ": exponent has length " +
                          std::to_string(term.exponent.size()) + ", dimension is " +
                          std::to_string(dimension_));
    }
    if (term.coefficient == Complex(0.0, 0.0) || !std::isfinite(term.coefficient.real()) ||
        !std::isfinite(term.coefficient.imag())) {
      throw ArgumentError("term " + std::to_string(j) + ": coefficient must be finite and nonzero");
    }
    auto [it, inserted] = seen.emplace(term.exponent, j);
    if (!inserted) {
      throw ArgumentError("duplicate exponent at terms " + std::to_string(it->second) + " and " +
                          std::to_string(j));
    }
    exponents_double_.push_back(to_double(term.exponent));
  }
}

std::vector<FrequencyVector> ExpPolynomial::exponents() const {
  std::vector<FrequencyVector> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.exponent);
  return out;
}

ExpPolynomial ExpPolynomial::modulated(const FrequencyVector& shift) const {
  check_length(shift.size(), dimension_, "modulated");
  std::vector<ExpTerm> shifted = terms_;
  for (auto& t : shifted) {
    for (std::size_t k = 0; k < dimension_; ++k) t.exponent[k] += shift[k];
  }
  return ExpPolynomial(dimension_, std::move(shifted));
}

Complex evaluate(const ExpPolynomial& p, std::span<const Complex> z) {
  check_length(z.size(), p.dimension(), "evaluate");
  Complex sum = 0.0;
  const auto& lambdas = p.exponents_double();
  for (std::size_t j = 0; j < p.size(); ++j) {
    Complex pairing = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) pairing += z[k] * lambdas[j][k];
    sum += p.terms()[j].coefficient * std::exp(Complex(0.0, 1.0) * pairing);
  }
  return sum;
}

// ---------------------------------------------------------------------------

UnivariateExpSum UnivariateExpSum::from_terms(std::vector<UnivariateTerm> raw) {
  const bool exact = std::all_of(raw.begin(), raw.end(),
                                 [](const UnivariateTerm& t) { return t.exact_frequency.has_value(); });
  if (exact) {
    std::sort(raw.begin(), raw.end(), [](const UnivariateTerm& a, const UnivariateTerm& b) {
      return *a.exact_frequency < *b.exact_frequency;
    });
  } else {
    std::sort(raw.begin(), raw.end(),
              [](const UnivariateTerm& a, const UnivariateTerm& b) { return a.frequency < b.frequency; });
  }

  std::vector<UnivariateTerm> merged;
  std::vector<double> group_max;
  for (auto& t : raw) {
    bool same = false;
    if (!merged.empty()) {
      const auto& last = merged.back();
      if (exact) {
        same = *last.exact_frequency == *t.exact_frequency;
      } else {
        const double scale = std::max({1.0, std::abs(last.frequency), std::abs(t.frequency)});
        same = std::abs(last.frequency - t.frequency) <= kFrequencyTolerance * scale;
      }
    }
    if (same) {
      merged.back().amplitude += t.amplitude;
      group_max.back() = std::max(group_max.back(), std::abs(t.amplitude));
    } else {
      if (!exact) t.exact_frequency.reset();
      group_max.push_back(std::abs(t.amplitude));
      merged.push_back(std::move(t));
    }
  }

  UnivariateExpSum out;
  for (std::size_t g = 0; g < merged.size(); ++g) {
    if (std::abs(merged[g].amplitude) > kMergeTolerance * group_max[g]) out.terms_.push_back(std::move(merged[g]));
  }
  for (const auto& t : out.terms_) out.abs_amplitudes_.push_back(std::abs(t.amplitude));
  return out;
}

Complex UnivariateExpSum::operator()(Complex s) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    sum += t.amplitude * std::exp(Complex(-t.frequency * s.imag(), t.frequency * s.real()));
  }
  return sum;
}

std::pair<Complex, Complex> UnivariateExpSum::value_and_derivative(Complex s) const {
  const auto e = evaluate_with_bound(s);
  return {e.value, e.derivative};
}

UnivariateExpSum::Evaluation UnivariateExpSum::evaluate_with_bound(Complex s) const {
  Evaluation out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    const double growth = s.imag() == 0.0 ? 1.0 : std::exp(-t.frequency * s.imag());
    const double angle = t.frequency * s.real();
    const Complex term = t.amplitude * growth * Complex(std::cos(angle), std::sin(angle));
    out.value += term;
    out.derivative += Complex(-t.frequency * term.imag(), t.frequency * term.real());
    out.bound += abs_amplitudes_[k] * growth;
  }
  return out;
}

double UnivariateExpSum::amplitude_sum() const {
  return std::accumulate(abs_amplitudes_.begin(), abs_amplitudes_.end(), 0.0);
}

double UnivariateExpSum::frequency_l1() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.frequency);
  return sum;
}

double UnivariateExpSum::max_abs_frequency() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.frequency));
  return m;
}

bool is_identically_zero(const UnivariateExpSum& u) { return u.empty(); }

// ---------------------------------------------------------------------------

LineFamily::LineFamily(const ExpPolynomial& p, std::span<const Rational> direction) : poly_(p) {
  check_length(direction.size(), p.dimension(), "restrict_line direction");
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& q) { return q == 0; })) {
    throw ArgumentError("restrict_line: direction must be nonzero");
  }
  std::vector<std::pair<double, std::optional<Rational>>> freqs;
  for (const auto& term : p.terms()) {
    Rational gamma = 0;
    for (std::size_t k = 0; k < direction.size(); ++k) gamma += direction[k] * term.exponent[k];
    freqs.emplace_back(to_double(gamma), gamma);
  }
  build_groups(std::move(freqs));
}

LineFamily::LineFamily(const ExpPolynomial& p, std::span<const double> direction) : poly_(p) {
  check_length(direction.size(), p.dimension(), "restrict_line direction");
  if (std::all_of(direction.begin(), direction.end(), [](double d) { return d == 0.0; })) {
    throw ArgumentError("restrict_line: direction must be nonzero");
  }
  std::vector<std::pair<double, std::optional<Rational>>> freqs;
  for (const auto& lambda : p.exponents_double()) {
    double gamma = 0.0;
    for (std::size_t k = 0; k < direction.size(); ++k) gamma += direction[k] * lambda[k];
    freqs.emplace_back(gamma, std::nullopt);
  }
  build_groups(std::move(freqs));
}

namespace {
std::vector<Rational> unit_first_axis(std::size_t p) {
  std::vector<Rational> e(p, Rational(0));
  e[0] = 1;
  return e;
}
}  // namespace

LineFamily::LineFamily(const ExpPolynomial& p) : LineFamily(p, std::span<const Rational>(unit_first_axis(p.dimension()))) {}

void LineFamily::build_groups(std::vector<std::pair<double, std::optional<Rational>>> freqs) {
  std::vector<std::size_t> order(freqs.size());
  std::iota(order.begin(), order.end(), 0);
  const bool exact = freqs.front().second.has_value();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exact ? *freqs[a].second < *freqs[b].second : freqs[a].first < freqs[b].first;
  });
  for (std::size_t idx : order) {
    bool same = false;
    if (!groups_.empty()) {
      const auto& last = group_frequency_.back();
      if (exact) {
        same = *last.exact_frequency == *freqs[idx].second;
      } else {
        const double scale = std::max({1.0, std::abs(last.frequency), std::abs(freqs[idx].first)});
        same = std::abs(last.frequency - freqs[idx].first) <= kFrequencyTolerance * scale;
      }
    }
    if (same) {
      groups_.back().push_back(idx);
    } else {
      groups_.push_back({idx});
      group_frequency_.push_back(UnivariateTerm{Complex(0.0), freqs[idx].first, freqs[idx].second});
    }
  }
}

UnivariateExpSum LineFamily::at(std::span<const Complex> base, std::span<const double> extra_phase) const {
  check_length(base.size(), poly_.dimension(), "restrict_line base");
  if (!extra_phase.empty()) check_length(extra_phase.size(), poly_.size(), "restrict_line phases");
  const auto& lambdas = poly_.exponents_double();
  std::vector<Complex> amplitude(poly_.size());
  for (std::size_t j = 0; j < poly_.size(); ++j) {
    double re = 0.0;  // -⟨Im base, λ⟩
    double im = 0.0;  //  ⟨Re base, λ⟩
    for (std::size_t k = 0; k < base.size(); ++k) {
      re -= base[k].imag() * lambdas[j][k];
      im += base[k].real() * lambdas[j][k];
    }
    if (!extra_phase.empty()) im += extra_phase[j];
    amplitude[j] = poly_.terms()[j].coefficient * std::exp(Complex(re, im));
  }

  UnivariateExpSum out;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    Complex a = 0.0;
    double group_max = 0.0;
    for (std::size_t j : groups_[g]) {
      a += amplitude[j];
      group_max = std::max(group_max, std::abs(amplitude[j]));
    }
    if (std::abs(a) > kMergeTolerance * group_max) {
      UnivariateTerm t = group_frequency_[g];
      t.amplitude = a;
      out.terms_.push_back(std::move(t));
      out.abs_amplitudes_.push_back(std::abs(a));
    }
  }
  return out;
}

UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base,
                               std::span<const Rational> direction) {
  return LineFamily(p, direction).at(base);
}

UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base,
                               std::span<const double> direction) {
  return LineFamily(p, direction).at(base);
}

UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base) {
  return LineFamily(p).at(base);
}

std::vector<Complex> complexify(std::span<const double> x, std::span<const double> y) {
  check_length(y.size(), x.size(), "complexify");
  std::vector<Complex> z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = Complex(x[k], y[k]);
  return z;
}

}  // namespace meanmotion
