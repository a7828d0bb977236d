#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "position.hpp"

namespace hypdist {

/// A place of Q: the archimedean absolute value or a p-adic one.
class Place {
 public:
  static Place infinite() { return Place(); }
  /// Errors: NotPrime.
  static Place finite(const Integer& p);

  bool is_infinite() const noexcept { return p_ == 0; }
  /// The prime; 0 for the infinite place.
  const Integer& prime() const noexcept { return p_; }
  /// "inf" or the prime in decimal.
  std::string to_string() const;

  bool operator==(const Place& other) const { return p_ == other.p_; }
  bool operator<(const Place& other) const { return p_ < other.p_; }

 private:
  Place() = default;
  Integer p_ = 0;
};

/// {inf} followed by the primes up to 13.
std::vector<Place> default_places();

/// Projective point with coprime integer coordinates, first nonzero positive.
class RationalPoint {
 public:
  /// Errors: ZeroInput.
  explicit RationalPoint(std::vector<Integer> coords);
  /// Clears denominators first. Errors: ZeroInput.
  static RationalPoint from_rationals(std::span<const Rational> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<Integer>& coords() const noexcept { return coords_; }
  std::vector<Rational> as_rationals() const;
  /// "(a:b:c)".
  std::string to_string() const;

  bool operator==(const RationalPoint& other) const = default;

 private:
  std::vector<Integer> coords_;
};

/// log of a positive exact rational; the logarithm is only taken on display.
struct LogRational {
  Rational argument = 1;

  LogRational operator*(const LogRational& o) const { return {argument * o.argument}; }
  LogRational operator/(const LogRational& o) const { return {argument / o.argument}; }
  bool operator==(const LogRational& o) const { return argument == o.argument; }

  /// log(argument) in fixed notation with `digits` decimals.
  std::string render(int digits = 50) const;
  double approx() const;
};

/// Fixed-notation decimal of log(arg) / root.
std::string render_log(const Rational& arg, unsigned long root = 1, int digits = 50);

/// Distinct prime factors of |n| in increasing order (n != 0).
std::vector<Integer> prime_factors(const Integer& n);

/// Exponent of p in the nonzero rational x.
long p_adic_order(const Rational& x, const Integer& p);

/// |x|_v exactly. Errors: ZeroInput.
Rational normalized_abs(const Rational& x, const Place& v);

struct ProductFormulaCheck {
  std::vector<Place> places;
  std::vector<Rational> factors;
  Rational product;
  bool ok = false;
};

/// Multiplies |x|_v over inf and every prime of x. Errors: ZeroInput.
ProductFormulaCheck product_formula_check(const Rational& x);

/// max_i |x_i|_v.
Rational point_norm(const RationalPoint& x, const Place& v);

/// h(x) = log max |x_i|.
LogRational height_point(const RationalPoint& x);
/// h(x) as the product of max_i |x_i|_v over all places that can contribute.
LogRational height_point_all_places(const RationalPoint& x);
/// Height of a scalar with log+ at every place: log max(|a|, |b|) for a/b.
LogRational height_scalar(const Rational& x);

/// max_I |a_I|_v.
Rational poly_norm(const HomoPoly& q, const Place& v);
/// Places where some coefficient is not a unit, plus inf.
std::vector<Place> poly_places(const HomoPoly& q);
/// h(Q) summed place by place. Errors: ZeroPolynomial.
LogRational height_poly(const HomoPoly& q);

/// lambda_{Q,v}(x) = log(|x|_v^d |Q|_v / |Q(x)|_v).
/// Errors: PointOnHypersurface, DimensionMismatch, ZeroPolynomial.
LogRational weil_function(const HomoPoly& q, const RationalPoint& x, const Place& v);

struct WeilSum {
  std::vector<Place> places;
  std::vector<LogRational> values;
  LogRational total;
  /// d h(x) + h(Q)
  LogRational expected;
  bool identity_holds = false;
  bool finite_nonnegative = false;
};

/// Sum of lambda_{Q,v}(x) over every place where it can be nonzero.
WeilSum weil_sum_all_places(const HomoPoly& q, const RationalPoint& x);

struct MarginReport {
  RationalPoint point;
  /// lhs = log(lhs_argument) / lhs_root.
  Rational lhs_argument;
  unsigned long lhs_root = 1;
  /// Delta (n+1) + eps.
  Rational multiplier;
  Rational height_argument;
  std::string lhs_approx;
  std::string rhs_approx;
  std::string slack_approx;
  /// Exact sign of rhs - lhs.
  int slack_sign = 0;
};

struct MarginSummary {
  std::vector<MarginReport> reports;
  std::optional<std::size_t> min_slack_index;
  /// Points with negative slack, in input order.
  std::vector<std::size_t> exceptional_candidates;
};

/// Errors: PointNotOnVariety, PointOnHypersurface, DimensionMismatch,
/// BadParameters (eps <= 0 or delta <= 0).
MarginSummary theorem15_margin(const Variety& v, const HypersurfaceFamily& fam, const Rational& delta,
                               const Rational& eps, std::span<const Place> places,
                               std::span<const RationalPoint> points);

/// Points of V in max-norm shells 1, 2, ... with height argument at least
/// `min_height` and off every member of `avoid`, in shell then lexicographic
/// order, until `count` are found or shell `max_shell` is exhausted.
std::vector<RationalPoint> sample_points(const Variety& v, std::span<const HomoPoly> avoid,
                                         std::size_t count, long min_height = 1, long max_shell = 64);

}  // namespace hypdist
