#include "position.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "errors.hpp"

namespace hypdist {

Variety::Variety(std::size_t num_vars, std::vector<HomoPoly> gens, GroebnerBasis gb)
    : num_vars_(num_vars), generators_(std::move(gens)), basis_(std::move(gb)) {
  IdealProfile profile = ideal_profile(basis_);
  if (profile.projective_dimension.is_empty())
    fail("EmptyVariety", "the generators define the empty set (affine cone of dimension 0)");
  dim_ = profile.projective_dimension.value();
  if (dim_ == 0) fail("ZeroDimensional", "the variety has dimension 0; dimension n >= 1 is required");
  degree_ = profile.degree;
}

bool Variety::contains(std::span<const Rational> point) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const HomoPoly& g) { return g.eval(point) == 0; });
}

Variety build_variety(std::span<const HomoPoly> gens, std::size_t num_vars) {
  std::vector<HomoPoly> kept;
  for (const auto& g : gens) {
    if (g.num_vars() != num_vars)
      fail("MixedAmbient", "variety generator has " + std::to_string(g.num_vars()) +
                               " variables, expected " + std::to_string(num_vars));
    if (!g.is_zero()) kept.push_back(g);
  }
  GroebnerBasis gb = groebner_basis(kept, num_vars, MonomialOrder::grevlex());
  return Variety(num_vars, std::move(kept), std::move(gb));
}

Variety variety_from_basis(std::vector<HomoPoly> gens, GroebnerBasis gb) {
  ensure(gb.order() == MonomialOrder::grevlex(), "variety basis must be grevlex");
  std::size_t nv = gb.num_vars();
  return Variety(nv, std::move(gens), std::move(gb));
}

bool HypersurfaceFamily::same_degree() const {
  return std::adjacent_find(degrees_.begin(), degrees_.end(), std::not_equal_to<>()) == degrees_.end();
}

HypersurfaceFamily build_family(const Variety& v, std::vector<HomoPoly> members) {
  if (members.empty()) fail("EmptyInput", "the family has no members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& q = members[i];
    if (q.num_vars() != v.num_vars())
      fail("MixedAmbient", "member " + std::to_string(i + 1) + " has " + std::to_string(q.num_vars()) +
                               " variables, expected " + std::to_string(v.num_vars()));
    if (normal_form(q, v.basis()).is_zero())
      fail("VanishesOnVariety", "member " + std::to_string(i + 1) + " vanishes identically on V");
    HomoPoly single[] = {q};
    Dimension d = projective_dimension(groebner_extend(v.basis(), single));
    if (!d.is_empty() && d.value() >= v.dimension())
      fail("MemberContainsComponent", "member " + std::to_string(i + 1) +
                                          " contains a top-dimensional component of V");
  }
  auto lifted = lcm_degree(members);
  HypersurfaceFamily fam;
  fam.lcm_ = lifted.lcm;
  for (const auto& q : members) fam.degrees_.push_back(q.degree());
  fam.members_ = std::move(members);
  return fam;
}

Dimension intersection_dimension(const Variety& v, const HypersurfaceFamily& fam,
                                 std::span<const std::size_t> subset) {
  if (subset.empty()) fail("EmptyInput", "subset must be nonempty");
  std::vector<HomoPoly> polys;
  for (std::size_t j : subset) {
    if (j >= fam.size())
      fail("IndexOutOfRange", "member index " + std::to_string(j + 1) + " outside 1.." +
                                  std::to_string(fam.size()));
    polys.push_back(fam[j]);
  }
  return projective_dimension(groebner_extend(v.basis(), polys));
}

// ---------------------------------------------------------------------------

SubsetDimensions::SubsetDimensions(const Variety& v, const HypersurfaceFamily& fam, std::size_t cap)
    : q_(fam.size()) {
  if (q_ > cap)
    fail("SubsetCapExceeded", "family has " + std::to_string(q_) + " members but the subset cap is " +
                                  std::to_string(cap) + "; raise the cap to enumerate all subsets");
  ensure(q_ < 31, "family too large for bitmask enumeration");
  const std::uint32_t full = (std::uint32_t{1} << q_) - 1;
  dims_.assign(std::size_t{full} + 1, Dimension::empty());

  // Level-by-level: bases of the previous level keyed by mask.
  std::map<std::uint32_t, GroebnerBasis> previous;
  for (std::size_t j = 0; j < q_; ++j) {
    HomoPoly single[] = {fam[j]};
    GroebnerBasis gb = groebner_extend(v.basis(), single);
    std::uint32_t mask = std::uint32_t{1} << j;
    dims_[mask] = projective_dimension(gb);
    if (!dims_[mask].is_empty()) previous.emplace(mask, std::move(gb));
  }
  for (std::size_t size = 2; size <= q_; ++size) {
    std::map<std::uint32_t, GroebnerBasis> current;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      bool void_below = false;
      for (std::uint32_t rest = mask; rest && !void_below; rest &= rest - 1) {
        std::uint32_t bit = rest & (~rest + 1);
        if (dims_[mask ^ bit].is_empty()) void_below = true;
      }
      if (void_below) continue;  // stays EMPTY
      std::size_t top = std::bit_width(mask) - 1;
      std::uint32_t parent = mask ^ (std::uint32_t{1} << top);
      HomoPoly single[] = {fam[top]};
      GroebnerBasis gb = groebner_extend(previous.at(parent), single);
      dims_[mask] = projective_dimension(gb);
      if (!dims_[mask].is_empty()) current.emplace(mask, std::move(gb));
    }
    previous = std::move(current);
  }
}

Dimension SubsetDimensions::max_over_size(std::size_t size) const {
  Dimension best = Dimension::empty();
  for (std::uint32_t mask = 1; mask < dims_.size(); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == size) best = std::max(best, dims_[mask]);
  return best;
}

namespace {

IndexSet mask_to_indices(std::uint32_t mask) {
  IndexSet out;
  for (std::size_t j = 0; mask; ++j, mask >>= 1)
    if (mask & 1u) out.push_back(j);
  return out;
}

}  // namespace

DistributiveReport distributive_constant(const Variety& v, const HypersurfaceFamily& fam,
                                         const DistributiveOptions& options) {
  SubsetDimensions table(v, fam, options.subset_cap);
  return distributive_constant(v, table, options.with_table);
}

DistributiveReport distributive_constant(const Variety& v, const SubsetDimensions& table,
                                         bool with_table) {
  const int n = v.dimension();
  DistributiveReport report;
  bool have = false;
  const std::uint32_t full = (std::uint32_t{1} << table.family_size()) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const Dimension& d = table.at(mask);
    IndexSet idx = mask_to_indices(mask);
    SubsetRow row{idx, d, std::nullopt};
    if (idx.size() == 1 && (d.is_empty() || d.value() != n - 1))
      report.singleton_anomalies.push_back(idx.front());
    if (d.is_empty()) {
      ++report.empty_subsets_skipped;
    } else {
      ensure(d.value() < n, "subset trace of full dimension");
      Rational r = ratio(Integer(static_cast<long>(idx.size())), Integer(n - d.value()));
      row.ratio = r;
      bool better = !have || r > report.delta ||
                    (r == report.delta &&
                     (idx.size() < report.witness.size() ||
                      (idx.size() == report.witness.size() && idx < report.witness)));
      if (better) {
        report.delta = r;
        report.witness = idx;
        have = true;
      }
    }
    if (with_table) report.per_subset.push_back(std::move(row));
  }
  ensure(have, "no subset with a nonempty trace");
  if (with_table) {
    std::sort(report.per_subset.begin(), report.per_subset.end(),
              [](const SubsetRow& a, const SubsetRow& b) {
                return a.subset.size() != b.subset.size() ? a.subset.size() < b.subset.size()
                                                          : a.subset < b.subset;
              });
  }
  return report;
}

// ---------------------------------------------------------------------------

PositionClass classify_position(const Variety& v, const HypersurfaceFamily& fam, std::size_t subset_cap) {
  SubsetDimensions table(v, fam, subset_cap);
  return classify_position(v, table);
}

PositionClass classify_position(const Variety& v, const SubsetDimensions& table) {
  const int n = v.dimension();
  const std::size_t q = table.family_size();
  PositionClass cls;
  std::vector<Dimension> worst(q + 1, Dimension::empty());
  for (std::size_t k = 1; k <= q; ++k) worst[k] = table.max_over_size(k);

  for (std::size_t k = 1; k <= q; ++k) {
    if (worst[k].is_empty()) {
      cls.l = static_cast<int>(k) - 1;
      break;
    }
  }
  cls.general_position = cls.l.has_value() && *cls.l == n;

  const int kappa_cap = std::min<int>(n, static_cast<int>(q));
  while (cls.kappa < kappa_cap) {
    int s = cls.kappa;
    if (worst[s + 1] <= Dimension::of(n - s - 1)) {
      ++cls.kappa;
    } else {
      break;
    }
  }

  for (int s = 1; s <= n; ++s) {
    std::optional<int> t;
    for (std::size_t k = 1; k <= q; ++k) {
      if (worst[k] <= Dimension::of(n - s - 1)) {
        t = static_cast<int>(k) - 1;
        break;
      }
    }
    cls.t_vector.push_back(t);
  }
  return cls;
}

DimensionProfile dimension_profile(const Variety& v, const HypersurfaceFamily& fam,
                                   std::span<const std::size_t> ordering) {
  const std::size_t q = fam.size();
  std::vector<bool> seen(q, false);
  if (ordering.size() != q) fail("InvalidOrdering", "ordering must list every member exactly once");
  for (std::size_t j : ordering) {
    if (j >= q || seen[j]) fail("InvalidOrdering", "ordering must be a permutation of 1.." + std::to_string(q));
    seen[j] = true;
  }
  const int n = v.dimension();
  DimensionProfile profile;
  profile.ordering.assign(ordering.begin(), ordering.end());
  GroebnerBasis gb = v.basis();
  std::optional<int> l;
  for (std::size_t s = 0; s < q; ++s) {
    HomoPoly single[] = {fam[ordering[s]]};
    gb = groebner_extend(gb, single);
    Dimension d = projective_dimension(gb);
    profile.prefix_dims.push_back(d);
    if (d.is_empty()) {
      l = static_cast<int>(s);
      break;
    }
  }
  if (!l) fail("NeverEmpty", "no prefix of the ordered family has empty intersection with V");
  profile.l_value = *l;
  profile.t_values.push_back(0);
  for (int u = 1; u <= n; ++u) {
    int t = *l;
    for (std::size_t s = 0; s < profile.prefix_dims.size(); ++s) {
      if (profile.prefix_dims[s] <= Dimension::of(n - u - 1)) {
        t = static_cast<int>(s);
        break;
      }
    }
    if (t <= profile.t_values.back())
      fail("ProfileJump", "prefix dimension drops by more than one at prefix length " +
                              std::to_string(t + 1));
    profile.t_values.push_back(t);
  }
  ensure(profile.t_values.back() == *l, "profile does not end at l");
  return profile;
}

BoundSet remark_bounds(const Variety& v, const PositionClass& cls) {
  const int n = v.dimension();
  BoundSet out;
  if (cls.general_position) out.general = Rational(1);
  if (cls.l) out.subgeneral = Rational(*cls.l - n + 1);
  bool all_t = !cls.t_vector.empty() &&
               std::all_of(cls.t_vector.begin(), cls.t_vector.end(), [](const auto& t) { return t.has_value(); });
  if (all_t) {
    Rational best = 0;
    for (std::size_t k = 1; k <= cls.t_vector.size(); ++k) {
      Rational r = ratio(Integer(*cls.t_vector[k - 1]), Integer(static_cast<long>(k)));
      best = std::max(best, r);
    }
    out.t_vector = best;
  }
  if (cls.l && cls.kappa >= 1) {
    out.index = ratio(Integer(*cls.l - n + cls.kappa), Integer(cls.kappa));
  }
  return out;
}

}  // namespace hypdist
