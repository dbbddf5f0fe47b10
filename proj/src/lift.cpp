#include "meanmotion/lift.hpp"

#include "meanmotion/errors.hpp"
#include "meanmotion/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meanmotion {

namespace {
constexpr std::size_t kSelfCheckSamples = 8;
constexpr double kShiftIdentityTolerance = 1e-9;
}  // namespace

LiftedPolynomial::LiftedPolynomial(ExpPolynomial base, LatticeBasis basis)
    : base_(std::move(base)), basis_(std::move(basis)), line_family_(base_) {
  if (basis_.dimension != base_.dimension()) {
    throw ArgumentError("lift: basis dimension does not match the polynomial");
  }
  if (basis_.coords.size() != base_.size()) {
    throw InternalConsistencyError("lift: coordinate matrix has " + std::to_string(basis_.coords.size()) +
                                   " rows for " + std::to_string(base_.size()) + " terms");
  }
  for (std::size_t j = 0; j < base_.size(); ++j) {
    const auto& k = basis_.coords[j];
    if (k.size() != basis_.rank) throw InternalConsistencyError("lift: coordinate row has wrong length");
    FrequencyVector rebuilt(base_.dimension(), Rational(0));
    for (std::size_t r = 0; r < basis_.rank; ++r) {
      for (std::size_t c = 0; c < rebuilt.size(); ++c) rebuilt[c] += Rational(k[r]) * basis_.basis_vectors[r][c];
    }
    if (rebuilt != base_.terms()[j].exponent) {
      throw InternalConsistencyError("lift: K·mu differs from lambda at term " + std::to_string(j));
    }
    std::vector<double> row;
    for (const auto& v : k) row.push_back(to_double(v));
    k_double_.push_back(std::move(row));
  }
  for (const auto& mu : basis_.basis_vectors) mu_double_.push_back(to_double(mu));
}

Complex LiftedPolynomial::operator()(std::span<const Complex> z, std::span<const Complex> w) const {
  if (z.size() != base_.dimension() || w.size() != lift_dimension()) {
    throw ArgumentError("lifted evaluation: argument length mismatch");
  }
  Complex sum = 0.0;
  const auto& lambdas = base_.exponents_double();
  for (std::size_t j = 0; j < base_.size(); ++j) {
    Complex phase = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) phase += z[k] * lambdas[j][k];
    for (std::size_t r = 0; r < w.size(); ++r) phase += k_double_[j][r] * w[r];
    sum += base_.terms()[j].coefficient * std::exp(Complex(0.0, 1.0) * phase);
  }
  return sum;
}

UnivariateExpSum LiftedPolynomial::restrict_first_axis(std::span<const double> y,
                                                       std::span<const double> u) const {
  if (y.size() != base_.dimension() || u.size() != lift_dimension()) {
    throw ArgumentError("restrict_first_axis: argument length mismatch");
  }
  std::vector<Complex> base(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) base[k] = Complex(0.0, y[k]);
  std::vector<double> phase(base_.size(), 0.0);
  for (std::size_t j = 0; j < base_.size(); ++j) {
    for (std::size_t r = 0; r < u.size(); ++r) phase[j] += k_double_[j][r] * u[r];
  }
  return line_family_.at(base, phase);
}

std::vector<double> LiftedPolynomial::flow_point(std::span<const double> x) const {
  if (x.size() != base_.dimension()) throw ArgumentError("flow_point: length mismatch");
  std::vector<double> u(lift_dimension(), 0.0);
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) u[r] += mu_double_[r][c] * x[c];
  }
  return u;
}

double LiftedPolynomial::shift_identity_error(std::size_t samples, std::uint64_t seed) const {
  RandomStream stream(seed, {0x6c696674u});
  const std::size_t p = base_.dimension();
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<double> t(p), x(p), y(p);
    for (std::size_t k = 0; k < p; ++k) {
      t[k] = stream.uniform(-1.0, 1.0);
      x[k] = stream.uniform(-10.0, 10.0);
      y[k] = stream.uniform(-1.0, 1.0);
    }
    std::vector<Complex> z(p), shifted(p);
    for (std::size_t k = 0; k < p; ++k) {
      z[k] = Complex(t[k], y[k]);
      shifted[k] = Complex(x[k] + t[k], y[k]);
    }
    const auto u = flow_point(x);
    const std::vector<Complex> w(u.begin(), u.end());
    const Complex lifted = (*this)(z, w);
    const Complex direct = evaluate(base_, shifted);
    // Relative to the triangle-inequality bound, which stays meaningful near zeros.
    double scale = 0.0;
    const auto& lambdas = base_.exponents_double();
    for (std::size_t j = 0; j < base_.size(); ++j) {
      double decay = 0.0;
      for (std::size_t k = 0; k < p; ++k) decay -= y[k] * lambdas[j][k];
      scale += std::abs(base_.terms()[j].coefficient) * std::exp(decay);
    }
    worst = std::max(worst, std::abs(lifted - direct) / scale);
  }
  return worst;
}

LiftedPolynomial lift(const ExpPolynomial& p, const LatticeBasis& basis) {
  LiftedPolynomial lifted(p, basis);
  const double err = lifted.shift_identity_error(kSelfCheckSamples, 0);
  if (!(err <= kShiftIdentityTolerance)) {
    throw InternalConsistencyError("lift: shift identity violated (relative error " + std::to_string(err) + ")");
  }
  return lifted;
}

}  // namespace meanmotion
