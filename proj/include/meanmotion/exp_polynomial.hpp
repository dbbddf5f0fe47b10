#pragma once

#include "meanmotion/rational.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace meanmotion {

using Complex = std::complex<double>;

// A merged amplitude at or below this fraction of the largest amplitude in
// its own frequency group is treated as exact cancellation and dropped.
inline constexpr double kMergeTolerance = 1e-12;
// Float frequencies closer than this (relative, floor 1) are grouped.
inline constexpr double kFrequencyTolerance = 1e-12;

/// One term c·e^{i⟨z,λ⟩}.
struct ExpTerm {
  Complex coefficient;
  FrequencyVector exponent;
};

/// P(z) = Σ cⱼ e^{i⟨z,λʲ⟩} on ℂᵖ with exact rational exponents.
///
/// Construction validates: p ≥ 1, at least one term, nonzero coefficients,
/// exponent lengths equal to p, and pairwise distinct exponents.
class ExpPolynomial {
 public:
  ExpPolynomial(std::size_t dimension, std::vector<ExpTerm> terms);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::vector<FrequencyVector> exponents() const;
  // Exponents converted to double, cached at construction.
  const std::vector<std::vector<double>>& exponents_double() const { return exponents_double_; }

  /// e^{i⟨z,shift⟩}·P: every exponent moved by `shift`.
  ExpPolynomial modulated(const FrequencyVector& shift) const;

 private:
  std::size_t dimension_;
  std::vector<ExpTerm> terms_;
  std::vector<std::vector<double>> exponents_double_;
};

/// Σⱼ cⱼ·exp(i⟨z,λʲ⟩) with the bilinear pairing.
Complex evaluate(const ExpPolynomial& p, std::span<const Complex> z);

struct UnivariateTerm {
  Complex amplitude;
  double frequency = 0.0;
  std::optional<Rational> exact_frequency;
};

/// q(s) = Σ aₖ e^{iγₖ s} with pairwise distinct frequencies and no
/// negligible amplitudes. The empty sum marks an identically-zero function.
class UnivariateExpSum {
 public:
  UnivariateExpSum() = default;

  /// Merges equal frequencies (exactly when every term carries an exact
  /// frequency, to kFrequencyTolerance otherwise), then drops groups whose
  /// merged amplitude is ≤ kMergeTolerance times their largest raw amplitude.
  static UnivariateExpSum from_terms(std::vector<UnivariateTerm> raw);

  const std::vector<UnivariateTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex operator()(Complex s) const;
  /// q(s) and q'(s) in one pass.
  std::pair<Complex, Complex> value_and_derivative(Complex s) const;

  struct Evaluation {
    Complex value;
    Complex derivative;
    double bound = 0.0;  // Σ|aₖ e^{iγₖ s}|, the scale of round-off in value
  };
  Evaluation evaluate_with_bound(Complex s) const;

  /// Σ|aₖ|, an upper bound for |q| on the real axis.
  double amplitude_sum() const;
  /// Σ|γₖ|.
  double frequency_l1() const;
  double max_abs_frequency() const;

 private:
  friend class LineFamily;
  std::vector<UnivariateTerm> terms_;
  std::vector<double> abs_amplitudes_;
};

bool is_identically_zero(const UnivariateExpSum& u);

/// Restrictions s ↦ P(base + s·direction) for one fixed direction.
///
/// Frequency grouping is computed once; each call to at() only recomputes
/// amplitudes, so families are the efficient way to restrict many parallel
/// lines.
class LineFamily {
 public:
  /// Exact direction: frequencies ⟨direction,λ⟩ are rational and grouped exactly.
  LineFamily(const ExpPolynomial& p, std::span<const Rational> direction);
  /// Float direction: frequencies are grouped to kFrequencyTolerance.
  LineFamily(const ExpPolynomial& p, std::span<const double> direction);
  /// Direction e₁.
  explicit LineFamily(const ExpPolynomial& p);

  /// Restriction through `base`; optional per-term phases θⱼ multiply the
  /// amplitudes by e^{iθⱼ} before merging.
  UnivariateExpSum at(std::span<const Complex> base,
                      std::span<const double> extra_phase = {}) const;

  const ExpPolynomial& polynomial() const { return poly_; }

 private:
  void build_groups(std::vector<std::pair<double, std::optional<Rational>>> freqs);

  ExpPolynomial poly_;
  // Groups of term indices sharing a frequency, sorted by frequency.
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<UnivariateTerm> group_frequency_;
};

/// q(s) = P(base + s·direction). Throws ArgumentError on length mismatch or
/// a zero direction.
UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base,
                               std::span<const Rational> direction);
UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base,
                               std::span<const double> direction);
/// Direction e₁.
UnivariateExpSum restrict_line(const ExpPolynomial& p, std::span<const Complex> base);

/// base = x + iy componentwise.
std::vector<Complex> complexify(std::span<const double> x, std::span<const double> y);

}  // namespace meanmotion
