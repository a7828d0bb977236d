#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groebner.hpp"

namespace hypdist {

/// Projective variety given by homogeneous generators, with its reduced
/// grevlex basis, dimension n >= 1 and degree. Smoothness and
/// irreducibility are not checked.
class Variety {
 public:
  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t ambient_dimension() const noexcept { return num_vars_ - 1; }
  const std::vector<HomoPoly>& generators() const noexcept { return generators_; }
  const GroebnerBasis& basis() const noexcept { return basis_; }
  int dimension() const noexcept { return dim_; }
  std::uint64_t degree() const noexcept { return degree_; }

  /// All generators vanish at the point.
  bool contains(std::span<const Rational> point) const;

 private:
  friend Variety build_variety(std::span<const HomoPoly>, std::size_t);
  friend Variety variety_from_basis(std::vector<HomoPoly>, GroebnerBasis);
  Variety(std::size_t num_vars, std::vector<HomoPoly> gens, GroebnerBasis gb);

  std::size_t num_vars_;
  std::vector<HomoPoly> generators_;
  GroebnerBasis basis_;
  int dim_ = 0;
  std::uint64_t degree_ = 0;
};

/// Errors: EmptyVariety, ZeroDimensional, MixedAmbient.
Variety build_variety(std::span<const HomoPoly> gens, std::size_t num_vars);
/// Same as build_variety with a precomputed reduced grevlex basis of <gens>.
Variety variety_from_basis(std::vector<HomoPoly> gens, GroebnerBasis gb);

class HypersurfaceFamily {
 public:
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<HomoPoly>& members() const noexcept { return members_; }
  const HomoPoly& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<std::uint32_t>& degrees() const noexcept { return degrees_; }
  std::uint32_t lcm_degree() const noexcept { return lcm_; }
  bool same_degree() const;

 private:
  friend HypersurfaceFamily build_family(const Variety&, std::vector<HomoPoly>);
  std::vector<HomoPoly> members_;
  std::vector<std::uint32_t> degrees_;
  std::uint32_t lcm_ = 1;
};

/// Errors: EmptyInput, ZeroPolynomial, ConstantPolynomial, MixedAmbient,
/// VanishesOnVariety (member in I(V)), MemberContainsComponent (trace of
/// full dimension n).
HypersurfaceFamily build_family(const Variety& v, std::vector<HomoPoly> members);

/// Zero-based member indices.
using IndexSet = std::vector<std::size_t>;

/// dim of V intersected with the supports of the selected members.
/// Errors: EmptyInput, IndexOutOfRange.
Dimension intersection_dimension(const Variety& v, const HypersurfaceFamily& fam,
                                 std::span<const std::size_t> subset);

/// Dimension of V cut by every nonempty subset, indexed by bitmask (bit j =
/// member j). Supersets of an EMPTY trace are EMPTY without a basis
/// computation; other subsets extend the basis of the subset without its
/// largest member.
class SubsetDimensions {
 public:
  /// Errors: SubsetCapExceeded when fam.size() > cap.
  SubsetDimensions(const Variety& v, const HypersurfaceFamily& fam, std::size_t cap);

  std::size_t family_size() const noexcept { return q_; }
  const Dimension& at(std::uint32_t mask) const { return dims_.at(mask); }
  /// Largest dimension among subsets of the given size (EMPTY if all void).
  Dimension max_over_size(std::size_t size) const;

 private:
  std::size_t q_;
  std::vector<Dimension> dims_;
};

struct SubsetRow {
  IndexSet subset;
  Dimension dimension = Dimension::empty();
  /// |subset| / (n - dim); absent for EMPTY traces.
  std::optional<Rational> ratio;
};

struct DistributiveReport {
  Rational delta;
  IndexSet witness;
  std::vector<SubsetRow> per_subset;
  std::size_t empty_subsets_skipped = 0;
  /// Members whose trace on V is not of dimension n-1 (possible only for
  /// reducible V); the remark bounds assume it is.
  IndexSet singleton_anomalies;
};

struct DistributiveOptions {
  std::size_t subset_cap = 14;
  bool with_table = false;
};

/// Maximum of |G| / (n - dim(V cut by G)) over nonempty subsets with a
/// nonempty trace. Ties go to the smaller subset, then the lexicographically
/// smallest index set. Errors: SubsetCapExceeded.
DistributiveReport distributive_constant(const Variety& v, const HypersurfaceFamily& fam,
                                         const DistributiveOptions& options = {});
DistributiveReport distributive_constant(const Variety& v, const SubsetDimensions& table,
                                         bool with_table = false);

struct PositionClass {
  /// Least l such that every (l+1)-subset has empty trace; absent if the
  /// whole family still meets V.
  std::optional<int> l;
  bool general_position = false;
  /// Largest kappa <= min(n, q) such that every (s+1)-subset cuts V to
  /// dimension <= n-s-1 for all s < kappa.
  int kappa = 0;
  /// Componentwise-least (t_1..t_n): every (t_s+1)-subset cuts V to
  /// dimension <= n-s-1. Entries are absent when no subset size works.
  std::vector<std::optional<int>> t_vector;
};

PositionClass classify_position(const Variety& v, const HypersurfaceFamily& fam,
                                std::size_t subset_cap = 14);
PositionClass classify_position(const Variety& v, const SubsetDimensions& table);

struct DimensionProfile {
  IndexSet ordering;
  /// t_0 = 0 < t_1 < ... < t_n = l.
  std::vector<int> t_values;
  int l_value = 0;
  /// Dimension after each prefix of length 1..l+1.
  std::vector<Dimension> prefix_dims;
};

/// Errors: InvalidOrdering, NeverEmpty, ProfileJump.
DimensionProfile dimension_profile(const Variety& v, const HypersurfaceFamily& fam,
                                   std::span<const std::size_t> ordering);

struct BoundSet {
  std::optional<Rational> general;      // 1 under general position
  std::optional<Rational> subgeneral;   // l - n + 1
  std::optional<Rational> t_vector;     // max_k t_k / k
  std::optional<Rational> index;        // (l - n + kappa) / kappa
};

BoundSet remark_bounds(const Variety& v, const PositionClass& cls);

}  // namespace hypdist
