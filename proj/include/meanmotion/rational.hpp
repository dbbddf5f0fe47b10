#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace meanmotion {

// Exact rationals of unbounded magnitude, always normalized (positive
// denominator, lowest terms).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exponent vector λ ∈ ℚᵖ.
using FrequencyVector = std::vector<Rational>;

/// Parses "num/den" or "int" (optional sign, decimal digits only).
/// Throws MalformedRationalError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);
double to_double(const Integer& value);
std::vector<double> to_double(const FrequencyVector& v);

FrequencyVector parse_frequency_vector(const std::vector<std::string>& parts);
std::vector<std::string> to_strings(const FrequencyVector& v);

Rational dot(const FrequencyVector& a, const FrequencyVector& b);
bool is_zero(const FrequencyVector& v);

Integer lcm_of_denominators(const std::vector<FrequencyVector>& vectors);

}  // namespace meanmotion
