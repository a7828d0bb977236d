#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poly.hpp"

namespace hypdist {

class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, Weighted };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
  /// x_0 > x_1 > ... > x_N.
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  /// Compares sum_i w_i e_i first, then grevlex. Weights must be >= 0.
  static MonomialOrder weighted(std::vector<Rational> weights);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  std::string name() const;

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder& other) const {
    return kind_ == other.kind_ && weights_ == other.weights_;
  }

 private:
  MonomialOrder(Kind kind, std::vector<Rational> weights);

  Kind kind_;
  std::vector<Rational> weights_;
  // Weights scaled to integers by their common denominator.
  std::vector<Integer> scaled_;
};

/// Term list sorted strictly descending in some monomial order.
struct OrderedTerm {
  Monomial mono;
  Rational coef;
};
using OrderedPoly = std::vector<OrderedTerm>;

class GroebnerBasis {
 public:
  GroebnerBasis(std::size_t num_vars, MonomialOrder order) : num_vars_(num_vars), order_(std::move(order)) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  const MonomialOrder& order() const noexcept { return order_; }
  bool reduced() const noexcept { return reduced_; }
  std::size_t size() const noexcept { return polys_.size(); }

  /// Generators as ring elements (monic when reduced).
  std::vector<HomoPoly> generators() const;
  /// Generators with terms in this basis' order, leading term first.
  const std::vector<OrderedPoly>& ordered() const noexcept { return polys_; }
  std::vector<Monomial> leading_monomials() const;
  bool is_unit_ideal() const;

 private:
  friend GroebnerBasis groebner_extend(const GroebnerBasis&, std::span<const HomoPoly>);
  friend GroebnerBasis groebner_from_reduced(std::size_t, const MonomialOrder&,
                                             std::vector<HomoPoly>);

  std::size_t num_vars_;
  MonomialOrder order_;
  std::vector<OrderedPoly> polys_;
  bool reduced_ = false;
};

/// Reduced Groebner basis of <gens>. Zero generators are ignored.
/// Errors: MixedAmbient.
GroebnerBasis groebner_basis(std::span<const HomoPoly> gens, std::size_t num_vars,
                             const MonomialOrder& order);

/// Reduced Groebner basis of <gb> + <more>; only S-pairs involving the new
/// generators are formed since gb's own pairs already reduce to zero.
GroebnerBasis groebner_extend(const GroebnerBasis& gb, std::span<const HomoPoly> more);

/// Rebuilds a basis object from generators that are claimed to be a reduced
/// GB (e.g. loaded from the cache). Call satisfies_buchberger_criterion to trust it.
GroebnerBasis groebner_from_reduced(std::size_t num_vars, const MonomialOrder& order,
                                    std::vector<HomoPoly> generators);

/// Unique remainder of p modulo gb (gb reduced). Errors: MixedAmbient.
HomoPoly normal_form(const HomoPoly& p, const GroebnerBasis& gb);

/// Every S-polynomial of basis pairs reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

/// Projective dimension, with EMPTY as a value of its own. EMPTY compares
/// below every integer dimension and never takes part in arithmetic.
class Dimension {
 public:
  static Dimension empty() { return Dimension(); }
  static Dimension of(int value) { return Dimension(value); }

  bool is_empty() const noexcept { return !value_.has_value(); }
  /// Throws InvariantBreach on EMPTY.
  int value() const;
  std::string to_string() const;

  std::strong_ordering operator<=>(const Dimension& other) const;
  bool operator==(const Dimension& other) const = default;

 private:
  Dimension() = default;
  explicit Dimension(int v) : value_(v) {}
  std::optional<int> value_;
};

struct IdealProfile {
  Dimension projective_dimension = Dimension::empty();
  /// Zero when the dimension is EMPTY.
  std::uint64_t degree = 0;
  std::map<std::uint32_t, std::uint64_t> hilbert_values;
};

Dimension projective_dimension(const GroebnerBasis& gb);
IdealProfile ideal_profile(const GroebnerBasis& gb);
std::uint64_t hilbert_function(const GroebnerBasis& gb, std::uint32_t u);
/// Degree-u monomials outside the leading-term ideal, descending in gb's order.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, std::uint32_t u);
/// All degree-u monomials in N+1 variables, descending in `order`.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, std::uint32_t u,
                                          const MonomialOrder& order);

}  // namespace hypdist
