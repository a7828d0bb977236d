#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "position.hpp"

namespace hypdist {

struct HilbertWeightReport {
  std::uint32_t u = 0;
  std::uint64_t hilbert = 0;
  /// S_X(u, c): maximal total c-weight of a monomial basis of the degree-u
  /// part of the coordinate ring.
  Rational weight;
  std::vector<Monomial> basis;
};

/// Standard monomials under the order that ranks low c-weight monomials
/// higher (weights max(c) - c_i, grevlex tie-break). Their residues are the
/// greedy, hence maximal, c-weight basis. Errors: DimensionMismatch,
/// NegativeWeight, BadDegree (u = 0).
HilbertWeightReport hilbert_weight(const Variety& v, std::uint32_t u, std::span<const Rational> c);

struct BruteForceWeight {
  Rational weight;
  /// Lexicographically least maximizing basis (indices into the grevlex
  /// descending list of degree-u monomials).
  std::vector<Monomial> basis;
  std::uint64_t bases_checked = 0;
};

/// Enumerates every H(u)-subset of degree-u monomials and keeps those whose
/// residues are independent. Errors: OracleTooLarge when there are more
/// than `monomial_cap` monomials of degree u.
BruteForceWeight hilbert_weight_bruteforce(const Variety& v, std::uint32_t u, std::span<const Rational> c,
                                           std::size_t monomial_cap = 16);

/// Residues of the monomials modulo I(V) are linearly independent and span
/// the degree-u part (rank over standard-monomial coordinates).
bool residues_form_basis(const Variety& v, std::uint32_t u, std::span<const Monomial> monomials);

struct EfCheck {
  Rational lhs;  // S / (u H(u))
  Rational rhs;  // sum c_{i_j} / (n+1) - (2n+1) delta max(c) / u
  Rational weight;
  std::uint64_t hilbert = 0;
  bool holds = false;
};

/// Errors: SubsetNotEmptyOnV, UTooSmall, BadSubset, DimensionMismatch, NegativeWeight.
EfCheck ef_lower_bound_check(const Variety& v, std::uint32_t u, std::span<const Rational> c,
                             std::span<const std::size_t> coord_subset);

enum class M0Formula {
  /// d^(n^2+n) deg(V)^(n+1) e^n Delta^n (2n+4)^n (n+1)^n (q!)^n eps^-n
  Distributive,
  /// deg(V)^(n+1) e^n d^(n^2+n) (l-n+1)^n (2n+4)^n (q!)^n eps^-n
  Subgeneral,
};

struct M0Input {
  long n = 1;
  long d = 1;
  long deg_v = 1;
  Rational delta = 1;
  long q = 1;
  Rational eps = 1;
  /// Only for the Subgeneral formula.
  long l = 0;
  M0Formula formula = M0Formula::Distributive;
};

struct BoundReport {
  Integer m0;
  /// Rational factor multiplying e^n.
  Rational rational_factor;
  /// Certified enclosure of the expression, as decimal strings.
  std::string enclosure_low;
  std::string enclosure_high;
  unsigned long precision_bits = 0;
  Rational defect_total;  // Delta (n+1)
  Rational coefficient;   // q - Delta (n+1) - eps
};

/// q - Delta (n+1) - eps; eps = 0 allowed. Errors: BadParameters.
Rational truncation_coefficient(long q, const Rational& delta, long n, const Rational& eps);

/// Errors: BadParameters, FloorAmbiguous (precision ceiling reached).
BoundReport truncation_m0(const M0Input& in, unsigned long precision_ceiling = 1ul << 20);

struct BoundComparison {
  std::string name;
  std::optional<Rational> total;  // absent when the formula is undefined
  /// The distributive-constant bound is strictly smaller.
  bool distributive_better = false;
};

struct ComparisonTable {
  Rational distributive;  // ((l - n + kappa)/kappa) (n+1)
  std::vector<BoundComparison> entries;
};

/// Prior total-defect bounds against the distributive-constant bound.
/// Errors: BadParameters (need 1 <= n <= l, kappa >= 1, n <= N).
ComparisonTable compare_bounds(long n, long ambient_n, long l, long kappa, long q);

}  // namespace hypdist
