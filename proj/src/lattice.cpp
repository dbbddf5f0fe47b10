#include "meanmotion/lattice.hpp"

#include "meanmotion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace meanmotion {

namespace {

struct Xgcd {
  Integer g, x, y;  // a·x + b·y = g
};

Xgcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    old_r = std::exchange(r, Integer(old_r - q * r));
    old_s = std::exchange(s, Integer(old_s - q * s));
    old_t = std::exchange(t, Integer(old_t - q * t));
  }
  return {old_r, old_s, old_t};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// rows[i] <- x·rows[i] + y·rows[k];  rows[k] <- u·rows[i]_old + v·rows[k]
void combine_rows(IntegerMatrix& m, std::size_t i, std::size_t k, const Integer& x, const Integer& y,
                  const Integer& u, const Integer& v) {
  for (std::size_t c = 0; c < m[i].size(); ++c) {
    const Integer ri = m[i][c];
    const Integer rk = m[k][c];
    m[i][c] = x * ri + y * rk;
    m[k][c] = u * ri + v * rk;
  }
}

void check_rectangular(const std::vector<FrequencyVector>& vectors) {
  for (std::size_t j = 1; j < vectors.size(); ++j) {
    if (vectors[j].size() != vectors[0].size()) {
      throw ArgumentError("exponent " + std::to_string(j) + " has length " +
                          std::to_string(vectors[j].size()) + ", expected " +
                          std::to_string(vectors[0].size()));
    }
  }
}

// Forward substitution along the echelon pivots; nullopt when the exact
// solution is not integral or does not reproduce lambda.
std::optional<std::vector<Integer>> solve_integral(const FrequencyVector& lambda,
                                                   const LatticeBasis& basis) {
  std::vector<Integer> k(basis.rank);
  FrequencyVector residual = lambda;
  for (std::size_t r = 0; r < basis.rank; ++r) {
    const std::size_t c = basis.pivot_columns[r];
    const Rational q = residual[c] / basis.basis_vectors[r][c];
    if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
    k[r] = boost::multiprecision::numerator(q);
    for (std::size_t col = 0; col < residual.size(); ++col) {
      residual[col] -= Rational(k[r]) * basis.basis_vectors[r][col];
    }
  }
  if (!is_zero(residual)) return std::nullopt;
  return k;
}

}  // namespace

LatticeBasis group_basis(const std::vector<FrequencyVector>& exponents) {
  if (exponents.empty()) throw DegenerateInputError("group_basis: empty exponent list");
  check_rectangular(exponents);
  if (std::all_of(exponents.begin(), exponents.end(), [](const auto& v) { return is_zero(v); })) {
    throw DegenerateInputError("group_basis: all exponents are zero");
  }

  const std::size_t rows = exponents.size();
  const std::size_t cols = exponents[0].size();

  LatticeBasis basis;
  basis.dimension = cols;
  basis.denominator = lcm_of_denominators(exponents);

  // H = D·Λ, with the unimodular transform U accumulated alongside (H = U·D·Λ).
  IntegerMatrix h(rows, std::vector<Integer>(cols));
  IntegerMatrix u(rows, std::vector<Integer>(rows, Integer(0)));
  for (std::size_t j = 0; j < rows; ++j) {
    u[j][j] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational scaled = exponents[j][c] * Rational(basis.denominator);
      h[j][c] = boost::multiprecision::numerator(scaled);
    }
  }

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      if (h[i][c] == 0) continue;
      const Integer a = h[pivot_row][c];
      const Integer b = h[i][c];
      const Xgcd e = extended_gcd(a, b);
      // [[x, y], [-b/g, a/g]] has determinant 1.
      const Integer bu = -b / e.g;
      const Integer av = a / e.g;
      combine_rows(h, pivot_row, i, e.x, e.y, bu, av);
      combine_rows(u, pivot_row, i, e.x, e.y, bu, av);
    }
    if (h[pivot_row][c] == 0) continue;
    if (h[pivot_row][c] < 0) {
      for (auto& v : h[pivot_row]) v = -v;
      for (auto& v : u[pivot_row]) v = -v;
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      const Integer q = floor_div(h[i][c], h[pivot_row][c]);
      if (q == 0) continue;
      for (std::size_t col = 0; col < cols; ++col) h[i][col] -= q * h[pivot_row][col];
      for (std::size_t col = 0; col < rows; ++col) u[i][col] -= q * u[pivot_row][col];
    }
    basis.pivot_columns.push_back(c);
    ++pivot_row;
  }

  basis.rank = pivot_row;
  for (std::size_t r = 0; r < basis.rank; ++r) {
    FrequencyVector mu(cols);
    for (std::size_t c = 0; c < cols; ++c) mu[c] = Rational(h[r][c], basis.denominator);
    basis.basis_vectors.push_back(std::move(mu));
    basis.generator_transform.push_back(u[r]);
  }

  for (std::size_t j = 0; j < rows; ++j) {
    auto k = solve_integral(exponents[j], basis);
    if (!k) {
      throw InternalConsistencyError("group_basis: exponent " + std::to_string(j) +
                                     " does not reconstruct from the computed basis");
    }
    basis.coords.push_back(std::move(*k));
  }
  return basis;
}

std::vector<Integer> coordinates(const FrequencyVector& lambda, const LatticeBasis& basis) {
  if (lambda.size() != basis.dimension) {
    throw ArgumentError("coordinates: vector length " + std::to_string(lambda.size()) +
                        " does not match basis dimension " + std::to_string(basis.dimension));
  }
  auto k = solve_integral(lambda, basis);
  if (!k) throw MembershipError("coordinates: vector is not in the lattice");
  return *k;
}

std::size_t rational_rank(const std::vector<FrequencyVector>& vectors) {
  if (vectors.empty()) return 0;
  check_rectangular(vectors);
  std::vector<FrequencyVector> m = vectors;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[rank][c];
      for (std::size_t col = c; col < cols; ++col) m[i][col] -= f * m[rank][col];
    }
    ++rank;
  }
  return rank;
}

IndependenceCheck check_independence(const std::vector<FrequencyVector>& vectors) {
  return {rational_rank(vectors) == vectors.size(), false};
}

IndependenceCheck check_independence(const std::vector<std::vector<double>>& vectors,
                                     int max_coefficient, double tolerance) {
  const std::size_t n = vectors.size();
  if (n == 0) return {true, true};
  for (const auto& v : vectors) {
    if (v.size() != vectors[0].size()) throw ArgumentError("check_independence: ragged input");
  }
  std::vector<double> sup(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (double x : vectors[r]) sup[r] = std::max(sup[r], std::abs(x));
    if (sup[r] == 0.0) return {false, true};
  }

  int bound = std::max(1, max_coefficient);
  while (bound > 1 && std::pow(2.0 * bound + 1.0, static_cast<double>(n)) > 2e6) --bound;

  // Enumerate k ∈ [-bound, bound]ⁿ with the first nonzero entry positive.
  std::vector<int> k(n, -bound);
  const std::size_t p = vectors[0].size();
  std::vector<double> combo(p);
  while (true) {
    std::size_t first = 0;
    while (first < n && k[first] == 0) ++first;
    if (first < n && k[first] > 0) {
      std::fill(combo.begin(), combo.end(), 0.0);
      double scale = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        if (k[r] == 0) continue;
        scale += std::abs(k[r]) * sup[r];
        for (std::size_t c = 0; c < p; ++c) combo[c] += k[r] * vectors[r][c];
      }
      double residual = 0.0;
      for (double x : combo) residual = std::max(residual, std::abs(x));
      if (residual <= tolerance * scale) return {false, true};
    }
    std::size_t pos = 0;
    while (pos < n && k[pos] == bound) k[pos++] = -bound;
    if (pos == n) break;
    ++k[pos];
  }
  return {true, true};
}

}  // namespace meanmotion
