#pragma once

#include "meanmotion/exp_polynomial.hpp"
#include "meanmotion/mean_motion.hpp"

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace meanmotion {

struct RegressionCase {
  std::string name;
  ExpPolynomial polynomial;
  std::vector<double> y;
  // Known (plus, minus) values, when there is a closed form.
  std::optional<std::array<double, 2>> expected;
};

/// The bundled suite run by `meanmotion verify`.
std::vector<RegressionCase> bundled_cases();

struct RegressionSettings {
  WindowSchedule schedule;
  std::size_t torus_samples = 8192;
  std::uint64_t seed = 0;
  EstimatorOptions options;
};

struct RegressionRow {
  std::string case_name;
  Convention convention = Convention::plus;
  double box = 0.0;
  double torus = 0.0;
  double diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// A row passes when box and torus agree within the comparison tolerance and,
/// for cases with a known value, both lie within that tolerance of it.
std::vector<RegressionRow> run_regression(const std::vector<RegressionCase>& cases,
                                          const RegressionSettings& settings = {});

/// Columns: case, convention, box, torus, diff, tolerance, pass.
void write_regression_csv(const std::vector<RegressionRow>& rows, std::ostream& out);

}  // namespace meanmotion
