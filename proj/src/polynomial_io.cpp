#include "meanmotion/polynomial_io.hpp"

#include "meanmotion/errors.hpp"

#include <fstream>
#include <map>
#include <string>

namespace meanmotion {

namespace {

std::string term_label(std::size_t j) { return "term " + std::to_string(j); }

}  // namespace

ExpPolynomial parse_polynomial_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw LoadError("polynomial file: top level must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1) {
    throw LoadError("polynomial file: 'dimension' must be a positive integer");
  }
  if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty()) {
    throw LoadError("polynomial file: 'terms' must be a nonempty array");
  }
  const auto dimension = doc["dimension"].get<std::size_t>();

  std::vector<ExpTerm> terms;
  std::map<FrequencyVector, std::size_t> seen;
  for (std::size_t j = 0; j < doc["terms"].size(); ++j) {
    const auto& t = doc["terms"][j];
    if (!t.is_object()) throw LoadError(term_label(j) + ": must be an object");
    for (const char* key : {"re", "im"}) {
      if (!t.contains(key) || !t[key].is_number()) {
        throw LoadError(term_label(j) + ": '" + key + "' must be a number");
      }
    }
    if (!t.contains("exponent") || !t["exponent"].is_array()) {
      throw LoadError(term_label(j) + ": 'exponent' must be an array of strings");
    }
    const auto& e = t["exponent"];
    if (e.size() != dimension) {
      throw LoadError(term_label(j) + ": exponent has " + std::to_string(e.size()) + " components, dimension is " +
                      std::to_string(dimension));
    }
    FrequencyVector exponent;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k].is_string()) {
        throw LoadError(term_label(j) + ": exponent component " + std::to_string(k) + " must be a string");
      }
      try {
        exponent.push_back(parse_rational(e[k].get<std::string>()));
      } catch (const MalformedRationalError& err) {
        throw LoadError(term_label(j) + ", component " + std::to_string(k) + ": " + err.what());
      }
    }
    auto [it, inserted] = seen.emplace(exponent, j);
    if (!inserted) {
      throw LoadError("duplicate exponent at terms " + std::to_string(it->second) + " and " + std::to_string(j));
    }
    const Complex c(t["re"].get<double>(), t["im"].get<double>());
    if (c == Complex(0.0, 0.0)) throw LoadError(term_label(j) + ": coefficient is zero");
    terms.push_back(ExpTerm{c, std::move(exponent)});
  }
  try {
    return ExpPolynomial(dimension, std::move(terms));
  } catch (const ArgumentError& err) {
    throw LoadError(std::string("polynomial file: ") + err.what());
  }
}

ExpPolynomial parse_polynomial_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open polynomial file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw LoadError("polynomial file '" + path.string() + "': " + err.what());
  }
  return parse_polynomial_json(doc);
}

nlohmann::json to_json(const ExpPolynomial& p) {
  nlohmann::json doc;
  doc["dimension"] = p.dimension();
  doc["terms"] = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    doc["terms"].push_back({{"re", t.coefficient.real()}, {"im", t.coefficient.imag()}, {"exponent", to_strings(t.exponent)}});
  }
  return doc;
}

}  // namespace meanmotion
