#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace hypdist {

/// Exponent vector (i_0, ..., i_N) of a monomial in N+1 variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);

  static Monomial one(std::size_t num_vars);
  static Monomial variable(std::size_t num_vars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const noexcept { return degree_; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// other must divide *this.
  Monomial quotient(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  /// Bitmask of variables with positive exponent.
  std::uint64_t support_mask() const;

  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Graded reverse lexicographic comparison with x_0 > x_1 > ... > x_N.
std::strong_ordering compare_grevlex(const Monomial& a, const Monomial& b);

struct GrevlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grevlex(a, b) == std::strong_ordering::greater;
  }
};

/// Homogeneous polynomial with exact rational coefficients. The zero
/// polynomial is a distinct value that has no degree.
class HomoPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexDescending>;

  explicit HomoPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  /// Collects like terms and drops zeros. Throws NotHomogeneous naming two
  /// offending degrees, or DimensionMismatch for a wrong exponent length.
  static HomoPoly from_terms(std::size_t num_vars,
                             const std::vector<std::pair<Monomial, Rational>>& terms);
  static HomoPoly monomial(const Monomial& m, const Rational& coefficient = 1);
  static HomoPoly variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Throws ZeroPolynomial on the zero polynomial.
  std::uint32_t degree() const;
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  Rational eval(std::span<const Rational> point) const;

  HomoPoly operator+(const HomoPoly& other) const;
  HomoPoly operator-(const HomoPoly& other) const;
  HomoPoly operator*(const HomoPoly& other) const;
  HomoPoly scaled(const Rational& factor) const;
  HomoPoly pow(unsigned exponent) const;

  /// Text in the input grammar, e.g. "x0^2 - 3/4*x1*x2".
  std::string to_string() const;

  bool operator==(const HomoPoly& other) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::size_t num_vars_;
  TermMap terms_;
};

/// Parses the polynomial grammar:
///   poly := term (('+'|'-') term)* ; term := coeff ('*'? factor)* | factor ('*' factor)*
///   factor := var ('^' uint)? ; var := 'x' uint ; coeff := int ('/' uint)?
/// Whitespace is ignored. A leading sign on the first term is accepted.
/// Errors: SyntaxError, NotHomogeneous, VariableOutOfRange.
HomoPoly parse_poly(std::string_view text, std::size_t num_vars);

/// Exact value at a point; DimensionMismatch if the length is not N+1.
Rational eval_poly(const HomoPoly& p, std::span<const Rational> point);

/// sum_j coeffs[j] * polys[j]. Errors: EmptyInput, DegreeMismatch.
HomoPoly poly_combine(std::span<const Rational> coeffs, std::span<const HomoPoly> polys);

struct LcmDegree {
  std::uint32_t lcm = 1;
  /// p_i^(lcm / deg p_i), all of degree `lcm`.
  std::vector<HomoPoly> lifted;
};

/// lcm of the member degrees and the power lift to a common degree.
/// Errors: EmptyInput, ZeroPolynomial.
LcmDegree lcm_degree(std::span<const HomoPoly> family);

}  // namespace hypdist
