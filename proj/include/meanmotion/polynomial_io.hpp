#pragma once

#include "meanmotion/exp_polynomial.hpp"

#include <json.hpp>

#include <filesystem>

namespace meanmotion {

/// {"dimension": p, "terms": [{"re": float, "im": float, "exponent": ["num/den", …]}]}
/// Throws LoadError naming the offending term index.
ExpPolynomial parse_polynomial_json(const nlohmann::json& doc);
ExpPolynomial parse_polynomial_file(const std::filesystem::path& path);

nlohmann::json to_json(const ExpPolynomial& p);

}  // namespace meanmotion
