#include "json_io.hpp"

#include <openssl/evp.h>

#include "errors.hpp"

namespace hypdist {

Json to_json(const Rational& r) { return to_fraction_string(r); }

Json to_json(const HomoPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"exp", m.exponents()}, {"coef", to_json(c)}});
  return Json{{"vars", p.num_vars()}, {"terms", std::move(terms)}};
}

Json to_json(const Dimension& d) {
  if (d.is_empty()) return "EMPTY";
  return d.value();
}

Json to_json(const GroebnerBasis& gb) {
  Json gens = Json::array();
  for (const auto& g : gb.generators()) gens.push_back(to_json(g));
  Json order;
  switch (gb.order().kind()) {
    case MonomialOrder::Kind::Grevlex: order["kind"] = "grevlex"; break;
    case MonomialOrder::Kind::Lex: order["kind"] = "lex"; break;
    case MonomialOrder::Kind::Weighted: order["kind"] = "weighted"; break;
  }
  if (gb.order().kind() == MonomialOrder::Kind::Weighted) {
    Json w = Json::array();
    for (const auto& x : gb.order().weights()) w.push_back(to_json(x));
    order["weights"] = std::move(w);
  }
  return Json{{"vars", gb.num_vars()}, {"order", std::move(order)}, {"generators", std::move(gens)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  fail("BadRational", "expected an \"a/b\" string or an integer, got " + j.dump());
}

HomoPoly poly_from_json(const Json& j, std::size_t num_vars) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), num_vars);
  if (!j.is_object() || !j.contains("terms")) usage("polynomial must be a string or {\"vars\", \"terms\"}");
  if (j.contains("vars") && j.at("vars").get<std::size_t>() != num_vars)
    fail("DimensionMismatch", "polynomial has " + j.at("vars").dump() + " variables, ambient ring has " +
                                  std::to_string(num_vars));
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("exp") || !t.contains("coef")) usage("each term needs \"exp\" and \"coef\"");
    terms.emplace_back(Monomial(t.at("exp").get<std::vector<std::uint32_t>>()), rational_from_json(t.at("coef")));
  }
  return HomoPoly::from_terms(num_vars, terms);
}

MonomialOrder order_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) usage("order must be {\"kind\": ...}");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "grevlex") return MonomialOrder::grevlex();
  if (kind == "lex") return MonomialOrder::lex();
  if (kind != "weighted" || !j.contains("weights")) usage("unknown order " + j.dump());
  std::vector<Rational> w;
  for (const auto& x : j.at("weights")) w.push_back(rational_from_json(x));
  return MonomialOrder::weighted(std::move(w));
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    usage(what + " is not valid JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

}  // namespace hypdist
