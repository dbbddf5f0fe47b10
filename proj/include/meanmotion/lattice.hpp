#pragma once

#include "meanmotion/rational.hpp"

#include <cstddef>
#include <vector>

namespace meanmotion {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// A ℤ-basis μ¹…μᴺ of the group generated by a list of exponents λ¹…λˢ.
///
/// The basis is the Hermite-normal-form basis of the cleared integer matrix,
/// so it is canonical for the generated lattice. Two certificates are kept:
/// `coords` (λʲ = Σᵣ coords[j][r]·μʳ) and `generator_transform`
/// (μʳ = Σⱼ generator_transform[r][j]·λʲ). Together they show the basis
/// generates exactly the lattice of the inputs.
struct LatticeBasis {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  std::vector<FrequencyVector> basis_vectors;
  IntegerMatrix coords;               // S × N
  IntegerMatrix generator_transform;  // N × S
  std::vector<std::size_t> pivot_columns;
  Integer denominator = 1;            // LCM of input denominators
};

/// Throws DegenerateInputError for an empty or all-zero list and
/// ArgumentError for ragged input.
LatticeBasis group_basis(const std::vector<FrequencyVector>& exponents);

/// Integer coordinates of `lambda` in the basis. Throws MembershipError when
/// lambda is not in the lattice.
std::vector<Integer> coordinates(const FrequencyVector& lambda, const LatticeBasis& basis);

/// Rank over ℚ by exact Gaussian elimination.
std::size_t rational_rank(const std::vector<FrequencyVector>& vectors);

struct IndependenceCheck {
  bool independent = false;
  // Set when the answer comes from a bounded integer-relation search on
  // floating-point input rather than exact arithmetic.
  bool heuristic = false;
};

/// Exact test: ℤ-independence of rational vectors equals ℚ-independence.
IndependenceCheck check_independence(const std::vector<FrequencyVector>& vectors);

/// Heuristic test for real vectors: searches every nonzero integer relation
/// Σ kᵣ μʳ ≈ 0 with |kᵣ| ≤ max_coefficient (reduced automatically so the
/// search stays below ~2·10⁶ candidates), residual measured in the sup norm
/// against tolerance·Σ|kᵣ|·‖μʳ‖∞.
IndependenceCheck check_independence(const std::vector<std::vector<double>>& vectors,
                                     int max_coefficient = 12, double tolerance = 1e-9);

}  // namespace meanmotion
