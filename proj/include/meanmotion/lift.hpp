#pragma once

#include "meanmotion/exp_polynomial.hpp"
#include "meanmotion/lattice.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace meanmotion {

/// The torus lift F(z,w) = Σⱼ cⱼ exp{i⟨z,λʲ⟩ + i Σᵣ k_{r,j} w_r}, 2π-periodic
/// in each w_r, with F(t+iy, ⟨μ¹,x⟩,…,⟨μᴺ,x⟩) = P(x+iy+t).
class LiftedPolynomial {
 public:
  LiftedPolynomial(ExpPolynomial base, LatticeBasis basis);

  const ExpPolynomial& base() const { return base_; }
  const LatticeBasis& basis() const { return basis_; }
  // k_{r,j} stored as coords()[j][r].
  const IntegerMatrix& coords() const { return basis_.coords; }
  std::size_t lift_dimension() const { return basis_.rank; }

  Complex operator()(std::span<const Complex> z, std::span<const Complex> w) const;

  /// s ↦ F(s + iy₁, i·′y, u), a univariate sum with frequencies λʲ₁ and
  /// amplitudes cⱼ e^{-⟨y,λʲ⟩} e^{iΣᵣ k_{r,j} uᵣ}.
  UnivariateExpSum restrict_first_axis(std::span<const double> y, std::span<const double> u) const;

  /// Torus point u = (⟨μ¹,x⟩,…,⟨μᴺ,x⟩) reached by the linear flow at x.
  std::vector<double> flow_point(std::span<const double> x) const;

  /// Largest relative deviation from the shift identity over `samples`
  /// pseudo-random (t, x, y) triples drawn from `seed`.
  double shift_identity_error(std::size_t samples, std::uint64_t seed) const;

 private:
  ExpPolynomial base_;
  LatticeBasis basis_;
  LineFamily line_family_;
  std::vector<std::vector<double>> k_double_;   // S × N
  std::vector<std::vector<double>> mu_double_;  // N × p
};

/// Builds F from P and a basis of P's exponent group. Verifies K·μ = λ
/// exactly (InternalConsistencyError otherwise) and the shift identity at
/// 8 pseudo-random triples to 1e-9 relative.
LiftedPolynomial lift(const ExpPolynomial& p, const LatticeBasis& basis);

}  // namespace meanmotion
