#include "poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace hypdist {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exps_(std::move(exponents)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::one(std::size_t num_vars) {
  return Monomial(std::vector<std::uint32_t>(num_vars, 0));
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(num_vars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::quotient(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], other.exps_[i]);
  return Monomial(std::move(e));
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  return mask;
}

std::strong_ordering compare_grevlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

void HomoPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomoPoly HomoPoly::from_terms(std::size_t num_vars,
                              const std::vector<std::pair<Monomial, Rational>>& terms) {
  HomoPoly p(num_vars);
  for (const auto& [m, c] : terms) {
    if (m.size() != num_vars)
      fail("DimensionMismatch", "monomial has " + std::to_string(m.size()) +
                                    " exponents, ring has " + std::to_string(num_vars));
    p.add_term(m, c);
  }
  if (!p.terms_.empty()) {
    std::uint32_t d = p.terms_.begin()->first.degree();
    for (const auto& [m, c] : p.terms_)
      if (m.degree() != d)
        fail("NotHomogeneous", "terms of degrees " + std::to_string(d) + " and " +
                                   std::to_string(m.degree()));
  }
  return p;
}

HomoPoly HomoPoly::monomial(const Monomial& m, const Rational& coefficient) {
  HomoPoly p(m.size());
  p.add_term(m, coefficient);
  return p;
}

HomoPoly HomoPoly::variable(std::size_t num_vars, std::size_t index) {
  return monomial(Monomial::variable(num_vars, index));
}

std::uint32_t HomoPoly::degree() const {
  if (terms_.empty()) fail("ZeroPolynomial", "the zero polynomial has no degree");
  return terms_.begin()->first.degree();
}

Rational HomoPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational HomoPoly::eval(std::span<const Rational> point) const {
  if (point.size() != num_vars_)
    fail("DimensionMismatch", "point has " + std::to_string(point.size()) +
                                  " coordinates, ring has " + std::to_string(num_vars_));
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < num_vars_ && t != 0; ++i)
      if (m[i] != 0) t *= pow_rational(point[i], m[i]);
    total += t;
  }
  return total;
}

namespace {

void require_same_ring(const HomoPoly& a, const HomoPoly& b) {
  if (a.num_vars() != b.num_vars())
    fail("MixedAmbient", "polynomials live in rings with " + std::to_string(a.num_vars()) +
                             " and " + std::to_string(b.num_vars()) + " variables");
}

void require_same_degree(const HomoPoly& a, const HomoPoly& b) {
  if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
    fail("DegreeMismatch", "degrees " + std::to_string(a.degree()) + " and " +
                               std::to_string(b.degree()));
}

}  // namespace

HomoPoly HomoPoly::operator+(const HomoPoly& other) const {
  require_same_ring(*this, other);
  require_same_degree(*this, other);
  HomoPoly out(*this);
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

HomoPoly HomoPoly::operator-(const HomoPoly& other) const {
  return *this + other.scaled(-1);
}

HomoPoly HomoPoly::operator*(const HomoPoly& other) const {
  require_same_ring(*this, other);
  HomoPoly out(num_vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

HomoPoly HomoPoly::scaled(const Rational& factor) const {
  HomoPoly out(num_vars_);
  if (factor == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * factor);
  return out;
}

HomoPoly HomoPoly::pow(unsigned exponent) const {
  HomoPoly out = HomoPoly::monomial(Monomial::one(num_vars_));
  HomoPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) out = out * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return out;
}

std::string HomoPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree() == 0) {
      os << to_compact_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << 'x' << i;
      if (m[i] != 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

bool HomoPoly::operator==(const HomoPoly& other) const {
  return num_vars_ == other.num_vars_ && terms_ == other.terms_;
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars) : num_vars_(num_vars) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
      chars_.push_back(text[i]);
      origin_.push_back(i);
    }
    origin_.push_back(text.size());
  }

  HomoPoly parse() {
    if (chars_.empty()) syntax_error("term");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    parse_term(sign);
    while (pos_ < chars_.size()) {
      char c = peek();
      if (c != '+' && c != '-') syntax_error("'+' or '-'");
      ++pos_;
      parse_term(c == '-' ? -1 : 1);
    }
    return HomoPoly::from_terms(num_vars_, terms_);
  }

 private:
  char peek() const { return pos_ < chars_.size() ? chars_[pos_] : '\0'; }
  bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  [[noreturn]] void syntax_error(const std::string& expected) const {
    std::string found = pos_ < chars_.size() ? std::string("'") + chars_[pos_] + "'" : "end of input";
    fail("SyntaxError", "at position " + std::to_string(origin_[pos_]) + ": expected " +
                            expected + ", found " + found);
  }

  Integer parse_uint() {
    if (!at_digit()) syntax_error("digit");
    std::string digits;
    while (at_digit()) digits.push_back(chars_[pos_++]);
    return Integer(digits, 10);
  }

  void parse_factor(std::vector<std::uint32_t>& exps) {
    if (peek() != 'x') syntax_error("variable 'x<index>'");
    std::size_t var_pos = pos_;
    ++pos_;
    Integer index = parse_uint();
    if (index >= num_vars_)
      fail("VariableOutOfRange", "variable x" + index.get_str() + " at position " +
                                     std::to_string(origin_[var_pos]) + " but the ring has x0..x" +
                                     std::to_string(num_vars_ - 1));
    std::uint32_t power = 1;
    if (peek() == '^') {
      ++pos_;
      Integer e = parse_uint();
      if (!e.fits_uint_p() || e > 1000000) fail("SyntaxError", "exponent too large: " + e.get_str());
      power = static_cast<std::uint32_t>(e.get_ui());
    }
    exps[index.get_ui()] += power;
  }

  void parse_term(int sign) {
    std::vector<std::uint32_t> exps(num_vars_, 0);
    Rational coef = sign;
    bool has_coef = false;
    if (at_digit() || ((peek() == '-' || peek() == '+') && pos_ + 1 < chars_.size() &&
                       std::isdigit(static_cast<unsigned char>(chars_[pos_ + 1])))) {
      int coef_sign = 1;
      if (peek() == '-' || peek() == '+') {
        coef_sign = peek() == '-' ? -1 : 1;
        ++pos_;
      }
      Integer num = parse_uint();
      Integer den = 1;
      if (peek() == '/') {
        ++pos_;
        den = parse_uint();
        if (den == 0) syntax_error("nonzero denominator");
      }
      Rational c(num * coef_sign, den);
      c.canonicalize();
      coef *= c;
      has_coef = true;
    }
    if (has_coef) {
      while (peek() == '*' || peek() == 'x') {
        if (peek() == '*') ++pos_;
        parse_factor(exps);
      }
    } else {
      parse_factor(exps);
      while (peek() == '*') {
        ++pos_;
        parse_factor(exps);
      }
    }
    terms_.emplace_back(Monomial(std::move(exps)), coef);
  }

  std::size_t num_vars_;
  std::vector<char> chars_;
  std::vector<std::size_t> origin_;
  std::size_t pos_ = 0;
  std::vector<std::pair<Monomial, Rational>> terms_;
};

}  // namespace

HomoPoly parse_poly(std::string_view text, std::size_t num_vars) {
  if (num_vars == 0) fail("DimensionMismatch", "a polynomial ring needs at least one variable");
  return PolyParser(text, num_vars).parse();
}

Rational eval_poly(const HomoPoly& p, std::span<const Rational> point) { return p.eval(point); }

HomoPoly poly_combine(std::span<const Rational> coeffs, std::span<const HomoPoly> polys) {
  if (polys.empty()) fail("EmptyInput", "no polynomials to combine");
  if (coeffs.size() != polys.size())
    fail("DimensionMismatch", std::to_string(coeffs.size()) + " coefficients for " +
                                  std::to_string(polys.size()) + " polynomials");
  HomoPoly out(polys.front().num_vars());
  for (std::size_t j = 0; j < polys.size(); ++j) {
    require_same_ring(out, polys[j]);
    require_same_degree(polys.front(), polys[j]);
    out = out + polys[j].scaled(coeffs[j]);
  }
  return out;
}

LcmDegree lcm_degree(std::span<const HomoPoly> family) {
  if (family.empty()) fail("EmptyInput", "empty family");
  LcmDegree out;
  Integer l = 1;
  for (const auto& p : family) {
    if (p.is_zero()) fail("ZeroPolynomial", "family contains the zero polynomial");
    if (p.degree() == 0) fail("ConstantPolynomial", "family contains a nonzero constant");
    l = lcm_integer(l, Integer(p.degree()));
  }
  if (!l.fits_uint_p()) fail("DegreeOverflow", "lcm of degrees too large");
  out.lcm = static_cast<std::uint32_t>(l.get_ui());
  for (const auto& p : family) out.lifted.push_back(p.pow(out.lcm / p.degree()));
  return out;
}

}  // namespace hypdist
