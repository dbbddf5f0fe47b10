#include "meanmotion/regression.hpp"

#include <cmath>
#include <cstdio>

namespace meanmotion {

namespace {

ExpTerm term(double re, double im, std::initializer_list<const char*> exponent) {
  FrequencyVector e;
  for (const char* s : exponent) e.push_back(parse_rational(s));
  return ExpTerm{Complex(re, im), std::move(e)};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<RegressionCase> bundled_cases() {
  std::vector<RegressionCase> cases;
  cases.push_back({"pure_exponential", ExpPolynomial(1, {term(1.3, -0.4, {"5/2"})}), {0.0},
                   std::array<double, 2>{2.5, 2.5}});
  const ExpPolynomial sine(1, {term(0.0, -0.5, {"1"}), term(0.0, 0.5, {"-1"})});
  cases.push_back({"sine_real_axis", sine, {0.0}, std::array<double, 2>{-1.0, 1.0}});
  cases.push_back({"sine_upper_strip", sine, {3.0}, std::array<double, 2>{-1.0, -1.0}});
  cases.push_back({"dominant_2d",
                   ExpPolynomial(2, {term(3.0, 0.0, {"1", "1/2"}), term(0.0, 1.0, {"-1/2", "1"}),
                                     term(0.5, 0.5, {"2", "-1"})}),
                   {0.0, 0.0},
                   std::array<double, 2>{1.0, 1.0}});
  cases.push_back({"mixed_2d",
                   ExpPolynomial(2, {term(1.0, 0.0, {"1", "0"}), term(0.8, 0.3, {"-1/2", "1/3"}),
                                     term(0.9, 0.0, {"1/3", "1"})}),
                   {0.1, -0.2},
                   std::nullopt});
  cases.push_back({"real_trig_2d",
                   ExpPolynomial(2, {term(1.0, 0.0, {"1", "1/2"}), term(1.0, 0.0, {"-1", "-1/2"}),
                                     term(0.7, 0.0, {"1/2", "-1"}), term(0.7, 0.0, {"-1/2", "1"})}),
                   {0.0, 0.0},
                   std::nullopt});
  return cases;
}

std::vector<RegressionRow> run_regression(const std::vector<RegressionCase>& cases,
                                          const RegressionSettings& settings) {
  std::vector<RegressionRow> rows;
  for (const auto& c : cases) {
    WindowSchedule schedule = settings.schedule;
    schedule.seed = settings.seed;
    const ComparisonReport report =
        compare_estimators(c.polynomial, c.y, schedule, settings.torus_samples, settings.seed, settings.options);
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& cmp = report.conventions[k];
      RegressionRow row{c.name, cmp.convention, cmp.box.value, cmp.torus.value, cmp.diff, cmp.tolerance, cmp.pass};
      if (c.expected) {
        const double want = (*c.expected)[k];
        row.pass = row.pass && std::abs(row.box - want) <= row.tolerance &&
                   std::abs(row.torus - want) <= row.tolerance;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_regression_csv(const std::vector<RegressionRow>& rows, std::ostream& out) {
  out << "case,convention,box,torus,diff,tolerance,pass\n";
  for (const auto& r : rows) {
    out << r.case_name << ',' << to_string(r.convention) << ',' << format_double(r.box) << ','
        << format_double(r.torus) << ',' << format_double(r.diff) << ',' << format_double(r.tolerance) << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace meanmotion
