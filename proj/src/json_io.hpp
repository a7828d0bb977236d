#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "groebner.hpp"

namespace hypdist {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
/// {"vars": N+1, "terms": [{"exp": [...], "coef": "a/b"}]} in grevlex order.
Json to_json(const HomoPoly& p);
/// Integer dimension or the string "EMPTY".
Json to_json(const Dimension& d);
/// Polynomial encoding plus "order".
Json to_json(const GroebnerBasis& gb);

/// Accepts "a/b" strings and JSON integers. Errors: BadRational.
Rational rational_from_json(const Json& j);
/// Accepts grammar text or the object encoding; `num_vars` is N+1.
/// Errors: parser errors, DimensionMismatch, NotHomogeneous.
HomoPoly poly_from_json(const Json& j, std::size_t num_vars);

MonomialOrder order_from_json(const Json& j);

/// Parses JSON text; UsageError on malformed input.
Json parse_json_text(const std::string& text, const std::string& what);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace hypdist
