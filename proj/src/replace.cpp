#include "replace.hpp"

#include <algorithm>
#include <random>

#include "errors.hpp"

namespace hypdist {

ExponentSchedule exponent_schedule(std::span<const long> t_values) {
  if (t_values.size() < 2) fail("NotIncreasing", "need t_0 < t_1 at least (n >= 1)");
  for (std::size_t i = 1; i < t_values.size(); ++i)
    if (t_values[i] <= t_values[i - 1])
      fail("NotIncreasing", "t values must be strictly increasing (t_" + std::to_string(i - 1) + " = " +
                                std::to_string(t_values[i - 1]) + ", t_" + std::to_string(i) + " = " +
                                std::to_string(t_values[i]) + ")");
  ExponentSchedule out;
  out.t_values.assign(t_values.begin(), t_values.end());
  const std::size_t n = t_values.size() - 1;
  for (std::size_t s = 1; s <= n; ++s) {
    Rational r = ratio(Integer(t_values[s] - t_values[0]), Integer(static_cast<long>(s)));
    if (s == 1 || r > out.delta) {
      out.delta = r;
      out.argmax = s;
    }
  }
  out.m_values.assign(n + 1, Rational(0));
  out.m_values[n] = out.delta;
  for (std::size_t u = n; u-- > 0;) {
    Rational carry = out.m_values[u + 1] - out.delta;
    out.m_values[u] = Rational(t_values[u + 1] - t_values[u]) + (carry > 0 ? carry : Rational(0));
  }
  return out;
}

bool power_product_at_most(std::span<const Rational> a, std::span<const Rational> lhs_exp,
                           std::span<const Rational> rhs_exp) {
  Integer den = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    den = lcm_integer(den, lhs_exp[i].get_den());
    den = lcm_integer(den, rhs_exp[i].get_den());
  }
  // prod a_i^(D * (rhs_i - lhs_i)) >= 1 with integer exponents.
  Rational acc = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational e = (rhs_exp[i] - lhs_exp[i]) * den;
    ensure(e.get_den() == 1 && e.get_num().fits_slong_p(), "exponent not integral after scaling");
    long k = e.get_num().get_si();
    Rational p = pow_rational(a[i], static_cast<unsigned long>(k < 0 ? -k : k));
    acc *= k < 0 ? Rational(1) / p : p;
  }
  return acc >= 1;
}

PowerInequality verify_power_inequality(std::span<const long> t_values, std::span<const Rational> a_values) {
  PowerInequality out;
  out.schedule = exponent_schedule(t_values);
  const std::size_t n = t_values.size() - 1;
  if (a_values.size() != n)
    fail("DimensionMismatch", "need " + std::to_string(n) + " values a_0..a_{n-1}, got " +
                                  std::to_string(a_values.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a_values[i] < 1) fail("BelowOne", "a_" + std::to_string(i) + " = " + to_fraction_string(a_values[i]) + " < 1");
    if (i > 0 && a_values[i] > a_values[i - 1])
      fail("NotSorted", "a values must be non-increasing (a_" + std::to_string(i) + " > a_" +
                            std::to_string(i - 1) + ")");
  }
  const Rational& delta = out.schedule.delta;
  out.lhs = 1;
  out.rhs_base = 1;
  for (std::size_t u = 0; u < n; ++u) {
    out.lhs *= pow_rational(a_values[u], static_cast<unsigned long>(t_values[u + 1] - t_values[u]));
    out.rhs_base *= a_values[u];
  }
  out.lhs_raised = pow_rational(out.lhs, delta.get_den().get_ui());
  out.rhs_raised = pow_rational(out.rhs_base, delta.get_num().get_ui());
  out.holds = out.lhs_raised <= out.rhs_raised;
  out.equality = out.lhs_raised == out.rhs_raised;

  // Stage k has exponents (t_1 - t_0, ..., t_k - t_{k-1}, m_k, delta, ..., delta)
  // at positions 0..n-1; stage n-1 is the left side, stage 0 ends in m_0 = delta.
  const auto& m = out.schedule.m_values;
  auto stage = [&](std::size_t k) {
    std::vector<Rational> e(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < k) e[i] = Rational(t_values[i + 1] - t_values[i]);
      else if (i == k) e[i] = m[k];
      else e[i] = delta;
    }
    return e;
  };
  out.chain_holds = true;
  auto previous = stage(n - 1);
  for (std::size_t k = n - 1; k-- > 0;) {
    auto next = stage(k);
    if (!power_product_at_most(a_values, previous, next)) out.chain_holds = false;
    previous = std::move(next);
  }
  std::vector<Rational> all_delta(n, delta);
  if (!power_product_at_most(a_values, previous, all_delta)) out.chain_holds = false;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Enumerates integer vectors of length k with max |c_i| = r, ordered
/// lexicographically (first entry most significant) by the ranking
/// 0, 1, -1, 2, -2, ..., r, -r.
class ShellEnumerator {
 public:
  ShellEnumerator(std::size_t k, long r) : k_(k), r_(r), digits_(k, 0) {}

  bool next(std::vector<long>& out) {
    const long base = 2 * r_ + 1;
    while (!done_) {
      bool hit = false;
      for (long d : digits_)
        if (d == base - 1 || d == base - 2) hit = true;  // ranks of r and -r
      if (hit) {
        out.resize(k_);
        for (std::size_t i = 0; i < k_; ++i) out[i] = value_of(digits_[i]);
      }
      advance(base);
      if (hit) return true;
    }
    return false;
  }

 private:
  static long value_of(long rank) { return rank == 0 ? 0 : (rank % 2 == 1 ? (rank + 1) / 2 : -(rank / 2)); }

  void advance(long base) {
    for (std::size_t i = k_; i-- > 0;) {
      if (++digits_[i] < base) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

  std::size_t k_;
  long r_;
  std::vector<long> digits_;
  bool done_ = false;
};

void validate_profile(const Variety& v, const HypersurfaceFamily& fam, const DimensionProfile& profile) {
  DimensionProfile fresh = dimension_profile(v, fam, profile.ordering);
  if (fresh.t_values != profile.t_values || fresh.l_value != profile.l_value)
    fail("InvalidProfile", "profile does not match the family's prefix dimensions for this ordering");
}

}  // namespace

ReplacementSystem build_replacement(const Variety& v, const HypersurfaceFamily& fam,
                                    const DimensionProfile& profile, const ReplacementOptions& options) {
  if (!fam.same_degree())
    fail("SameDegreeRequired", "all members must share one degree; lift them by lcm powers first");
  validate_profile(v, fam, profile);
  const int n = v.dimension();
  const std::size_t width = static_cast<std::size_t>(profile.l_value) + 1;

  ReplacementSystem sys;
  sys.source_profile = profile;
  for (std::size_t j = 0; j < width; ++j) sys.ordered_members.push_back(fam[profile.ordering[j]]);

  std::vector<Rational> row0(width, Rational(0));
  row0[0] = 1;
  sys.coeff_matrix.push_back(row0);
  sys.replacements.push_back(sys.ordered_members[0]);
  HomoPoly p0[] = {sys.replacements[0]};
  GroebnerBasis running = groebner_extend(v.basis(), p0);

  std::mt19937_64 rng(options.seed);
  for (int u = 1; u <= n; ++u) {
    const std::size_t k = static_cast<std::size_t>(profile.t_values[u]) + 1;
    const Dimension bound = Dimension::of(n - u - 1);
    std::span<const HomoPoly> prefix(sys.ordered_members.data(), k);

    auto try_candidate = [&](const std::vector<long>& c) -> bool {
      std::vector<Rational> coeffs(c.begin(), c.end());
      HomoPoly p = poly_combine(coeffs, prefix);
      if (p.is_zero()) return false;
      HomoPoly single[] = {p};
      GroebnerBasis gb = groebner_extend(running, single);
      if (!(projective_dimension(gb) <= bound)) return false;
      std::vector<Rational> row(width, Rational(0));
      std::copy(coeffs.begin(), coeffs.end(), row.begin());
      sys.coeff_matrix.push_back(std::move(row));
      sys.replacements.push_back(std::move(p));
      running = std::move(gb);
      return true;
    };

    bool found = false;
    std::size_t tried = 0;
    std::vector<long> c;
    for (long r = 1; r <= options.pool_bound && !found && tried < options.deterministic_budget; ++r) {
      ShellEnumerator shells(k, r);
      while (!found && tried < options.deterministic_budget && shells.next(c)) {
        ++tried;
        found = try_candidate(c);
      }
    }
    for (std::size_t i = 0; i < options.random_budget && !found; ++i) {
      const auto span = static_cast<std::uint64_t>(2 * options.pool_bound + 1);
      c.assign(k, 0);
      for (auto& x : c) x = static_cast<long>(rng() % span) - options.pool_bound;
      found = try_candidate(c);
    }
    if (!found)
      fail("SearchExhausted", "no coefficient vector with entries in [-" + std::to_string(options.pool_bound) +
                                  ", " + std::to_string(options.pool_bound) + "] found for P_" +
                                  std::to_string(u) + " (pool bound reached)");
  }
  return sys;
}

ReplacementVerdict verify_replacement(const Variety& v, const ReplacementSystem& sys) {
  const int n = v.dimension();
  ReplacementVerdict verdict;
  verdict.ok = true;
  for (std::size_t t = 0; t < sys.replacements.size(); ++t) {
    std::vector<HomoPoly> prefix(sys.replacements.begin(), sys.replacements.begin() + t + 1);
    Dimension d = projective_dimension(groebner_extend(v.basis(), prefix));
    bool ok = d <= Dimension::of(n - static_cast<int>(t) - 1);
    verdict.prefix_dims.push_back(d);
    verdict.step_ok.push_back(ok);
    verdict.ok = verdict.ok && ok;
  }
  if (sys.replacements.size() != static_cast<std::size_t>(n) + 1) verdict.ok = false;

  verdict.span_ok = sys.coeff_matrix.size() == sys.replacements.size() &&
                    sys.source_profile.t_values.size() == sys.replacements.size();
  for (std::size_t u = 0; verdict.span_ok && u < sys.coeff_matrix.size(); ++u) {
    const auto& row = sys.coeff_matrix[u];
    if (row.size() != sys.ordered_members.size()) {
      verdict.span_ok = false;
      break;
    }
    const auto limit = static_cast<std::size_t>(sys.source_profile.t_values[u]);
    for (std::size_t j = limit + 1; j < row.size(); ++j)
      if (row[j] != 0) verdict.span_ok = false;
    if (!(poly_combine(row, sys.ordered_members) == sys.replacements[u])) verdict.span_ok = false;
  }
  if (verdict.span_ok && !sys.coeff_matrix.empty()) {
    const auto& row0 = sys.coeff_matrix[0];
    verdict.span_ok = row0[0] == 1 && std::all_of(row0.begin() + 1, row0.end(), [](const Rational& c) { return c == 0; });
  }
  verdict.ok = verdict.ok && verdict.span_ok;
  return verdict;
}

}  // namespace hypdist
