#include "meanmotion/rational.hpp"

#include "meanmotion/errors.hpp"


#include <cctype>

namespace meanmotion {

namespace {

bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return false;
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const unsigned char ch = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(ch)) return false;
    value = value * 10 + (ch - '0');
  }
  out = negative ? Integer(-value) : value;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  Integer num;
  Integer den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, num)) {
      throw MalformedRationalError("malformed rational '" + std::string(text) + "'");
    }
  } else {
    const std::string_view den_text = s.substr(slash + 1);
    if (!parse_integer(s.substr(0, slash), num) || den_text.empty() || den_text[0] == '+' ||
        den_text[0] == '-' || !parse_integer(den_text, den)) {
      throw MalformedRationalError("malformed rational '" + std::string(text) + "'");
    }
    if (den == 0) {
      throw MalformedRationalError("zero denominator in '" + std::string(text) + "'");
    }
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer& den = boost::multiprecision::denominator(value);
  std::string out = boost::multiprecision::numerator(value).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double to_double(const Integer& value) { return value.convert_to<double>(); }

std::vector<double> to_double(const FrequencyVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

FrequencyVector parse_frequency_vector(const std::vector<std::string>& parts) {
  FrequencyVector v;
  v.reserve(parts.size());
  for (const auto& part : parts) v.push_back(parse_rational(part));
  return v;
}

std::vector<std::string> to_strings(const FrequencyVector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Rational dot(const FrequencyVector& a, const FrequencyVector& b) {
  if (a.size() != b.size()) throw ArgumentError("dot: length mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

bool is_zero(const FrequencyVector& v) {
  for (const auto& q : v) {
    if (q != 0) return false;
  }
  return true;
}

Integer lcm_of_denominators(const std::vector<FrequencyVector>& vectors) {
  Integer d = 1;
  for (const auto& v : vectors) {
    for (const auto& q : v) {
      d = boost::multiprecision::lcm(d, Integer(boost::multiprecision::denominator(q)));
    }
  }
  return d;
}

}  // namespace meanmotion
