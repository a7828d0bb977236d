#include "groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "errors.hpp"

namespace hypdist {

MonomialOrder::MonomialOrder(Kind kind, std::vector<Rational> weights)
    : kind_(kind), weights_(std::move(weights)) {
  if (kind_ != Kind::Weighted) return;
  Integer den = 1;
  for (const auto& w : weights_) {
    if (w < 0) fail("NegativeWeight", "weighted order needs non-negative weights");
    den = lcm_integer(den, w.get_den());
  }
  for (const auto& w : weights_) scaled_.push_back(w.get_num() * (den / w.get_den()));
}

MonomialOrder MonomialOrder::weighted(std::vector<Rational> weights) {
  return MonomialOrder(Kind::Weighted, std::move(weights));
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::Grevlex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Weighted: {
      std::string s = "weighted(";
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) s += ",";
        s += to_fraction_string(weights_[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Grevlex:
      return compare_grevlex(a, b);
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::Weighted: {
      if (scaled_.size() != a.size())
        fail("DimensionMismatch", "weight vector length " + std::to_string(scaled_.size()) +
                                      " for a ring with " + std::to_string(a.size()) + " variables");
      Integer wa = 0, wb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]) wa += scaled_[i] * a[i];
        if (b[i]) wb += scaled_[i] * b[i];
      }
      int c = cmp(wa, wb);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      return compare_grevlex(a, b);
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

std::vector<HomoPoly> GroebnerBasis::generators() const {
  std::vector<HomoPoly> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) {
    std::vector<std::pair<Monomial, Rational>> terms;
    for (const auto& t : p) terms.emplace_back(t.mono, t.coef);
    out.push_back(HomoPoly::from_terms(num_vars_, terms));
  }
  return out;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p.front().mono);
  return out;
}

bool GroebnerBasis::is_unit_ideal() const {
  return std::any_of(polys_.begin(), polys_.end(),
                     [](const OrderedPoly& p) { return p.front().mono.degree() == 0; });
}

namespace {

struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return order->compare(a, b) == std::strong_ordering::greater;
  }
};

template <class Coef>
using WorkPoly = std::map<Monomial, Coef, OrderGreater>;

struct IntTerm {
  Monomial mono;
  Integer coef;
};
using IntPoly = std::vector<IntTerm>;

void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  if (p.front().coef < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
}

IntPoly to_int_poly(const HomoPoly& h, const MonomialOrder& order) {
  Integer den = 1;
  for (const auto& [m, c] : h.terms()) den = lcm_integer(den, c.get_den());
  IntPoly p;
  for (const auto& [m, c] : h.terms()) p.push_back({m, c.get_num() * (den / c.get_den())});
  std::sort(p.begin(), p.end(), [&](const IntTerm& a, const IntTerm& b) {
    return order.compare(a.mono, b.mono) == std::strong_ordering::greater;
  });
  make_primitive(p);
  return p;
}

IntPoly to_int_poly(const OrderedPoly& o) {
  Integer den = 1;
  for (const auto& t : o) den = lcm_integer(den, t.coef.get_den());
  IntPoly p;
  for (const auto& t : o) p.push_back({t.mono, t.coef.get_num() * (den / t.coef.get_den())});
  make_primitive(p);
  return p;
}

/// Fraction-free full reduction of `p` by `basis`; the result is a primitive
/// nonzero scalar multiple of the remainder (or empty).
IntPoly reduce_integer(WorkPoly<Integer> p, const std::vector<IntPoly>& basis) {
  IntPoly rem;
  std::size_t steps = 0;
  auto clear_content = [&] {
    Integer g = 0;
    for (const auto& [m, c] : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (const auto& t : rem) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g <= 1) return;
    for (auto& [m, c] : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    for (auto& t : rem) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
  };
  while (!p.empty()) {
    auto it = p.begin();
    const IntPoly* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.front().mono.divides(it->first)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      rem.push_back({it->first, it->second});
      p.erase(it);
      continue;
    }
    Monomial shift = it->first.quotient(divisor->front().mono);
    Integer a = it->second;
    const Integer& b = divisor->front().coef;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer fp = b / g;
    Integer fg = a / g;
    if (fp != 1) {
      for (auto& [m, c] : p) c *= fp;
      for (auto& t : rem) t.coef *= fp;
    }
    for (const auto& t : *divisor) {
      Monomial m = shift * t.mono;
      auto [pos, inserted] = p.try_emplace(std::move(m), 0);
      pos->second -= fg * t.coef;
      if (pos->second == 0) p.erase(pos);
    }
    if (++steps % 8 == 0) clear_content();
  }
  make_primitive(rem);
  return rem;
}

/// Full reduction over the rationals; basis elements need not be monic.
OrderedPoly reduce_rational(WorkPoly<Rational> p, const std::vector<OrderedPoly>& basis) {
  OrderedPoly rem;
  while (!p.empty()) {
    auto it = p.begin();
    const OrderedPoly* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.front().mono.divides(it->first)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      rem.push_back({it->first, it->second});
      p.erase(it);
      continue;
    }
    Monomial shift = it->first.quotient(divisor->front().mono);
    Rational factor = it->second / divisor->front().coef;
    for (const auto& t : *divisor) {
      auto [pos, inserted] = p.try_emplace(shift * t.mono, 0);
      pos->second -= factor * t.coef;
      if (pos->second == 0) p.erase(pos);
    }
  }
  return rem;
}

WorkPoly<Integer> s_polynomial(const IntPoly& f, const IntPoly& g, const MonomialOrder& order) {
  Monomial l = f.front().mono.lcm(g.front().mono);
  Monomial mf = l.quotient(f.front().mono);
  Monomial mg = l.quotient(g.front().mono);
  Integer gcd;
  mpz_gcd(gcd.get_mpz_t(), f.front().coef.get_mpz_t(), g.front().coef.get_mpz_t());
  Integer cf = g.front().coef / gcd;
  Integer cg = f.front().coef / gcd;
  WorkPoly<Integer> s(OrderGreater{&order});
  for (const auto& t : f) s[mf * t.mono] += cf * t.coef;
  for (const auto& t : g) {
    auto [pos, inserted] = s.try_emplace(mg * t.mono, 0);
    pos->second -= cg * t.coef;
    if (pos->second == 0) s.erase(pos);
  }
  // Leading terms cancel exactly.
  for (auto it = s.begin(); it != s.end();) it = it->second == 0 ? s.erase(it) : std::next(it);
  return s;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

/// Buchberger with the coprime and chain criteria, normal selection by lcm.
/// `basis[0..processed)` is already closed under its own S-pairs.
std::vector<IntPoly> buchberger(std::vector<IntPoly> basis, std::size_t processed,
                                const MonomialOrder& order) {
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys;
  auto add_pairs_for = [&](std::size_t t) {
    for (std::size_t i = 0; i < t; ++i) {
      pending.push_back({i, t, basis[i].front().mono.lcm(basis[t].front().mono)});
      pending_keys.insert({i, t});
    }
  };
  for (std::size_t t = std::max<std::size_t>(processed, 1); t < basis.size(); ++t) add_pairs_for(t);

  auto key = [](std::size_t a, std::size_t b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  };

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& a, const Pair& b) {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      auto c = order.compare(a.lcm, b.lcm);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pending.erase(best);
    pending_keys.erase({pr.i, pr.j});

    const Monomial& li = basis[pr.i].front().mono;
    const Monomial& lj = basis[pr.j].front().mono;
    if (li.coprime(lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].front().mono.divides(pr.lcm)) continue;
      if (pending_keys.count(key(pr.i, k)) || pending_keys.count(key(pr.j, k))) continue;
      chain = true;
    }
    if (chain) continue;

    IntPoly r = reduce_integer(s_polynomial(basis[pr.i], basis[pr.j], order), basis);
    if (r.empty()) continue;
    basis.push_back(std::move(r));
    add_pairs_for(basis.size() - 1);
  }
  return basis;
}

std::vector<OrderedPoly> finalize_reduced(const std::vector<IntPoly>& basis, const MonomialOrder& order) {
  // Minimal basis: drop elements whose leading monomial another one divides.
  std::vector<const IntPoly*> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& li = basis[i].front().mono;
      const Monomial& lj = basis[j].front().mono;
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(&basis[i]);
  }
  std::vector<OrderedPoly> monic;
  for (const IntPoly* p : minimal) {
    OrderedPoly o;
    for (const auto& t : *p) o.push_back({t.mono, Rational(t.coef, p->front().coef)});
    for (auto& t : o) t.coef.canonicalize();
    monic.push_back(std::move(o));
  }
  std::vector<OrderedPoly> reduced;
  for (const auto& g : monic) {
    WorkPoly<Rational> tail(OrderGreater{&order});
    for (std::size_t k = 1; k < g.size(); ++k) tail.emplace(g[k].mono, g[k].coef);
    OrderedPoly r{g.front()};
    for (auto& t : reduce_rational(std::move(tail), monic)) r.push_back(std::move(t));
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.front().mono, b.front().mono) == std::strong_ordering::greater;
  });
  return reduced;
}

void check_ring(const HomoPoly& p, std::size_t num_vars) {
  if (p.num_vars() != num_vars)
    fail("MixedAmbient", "generator in a ring with " + std::to_string(p.num_vars()) +
                             " variables, expected " + std::to_string(num_vars));
}

}  // namespace

GroebnerBasis groebner_basis(std::span<const HomoPoly> gens, std::size_t num_vars,
                             const MonomialOrder& order) {
  GroebnerBasis empty(num_vars, order);
  return groebner_extend(empty, gens);
}

GroebnerBasis groebner_extend(const GroebnerBasis& gb, std::span<const HomoPoly> more) {
  const MonomialOrder& order = gb.order();
  std::vector<IntPoly> basis;
  for (const auto& p : gb.polys_) basis.push_back(to_int_poly(p));
  std::size_t processed = basis.size();
  std::vector<IntPoly> fresh;
  for (const auto& h : more) {
    check_ring(h, gb.num_vars());
    if (h.is_zero()) continue;
    WorkPoly<Integer> w(OrderGreater{&order});
    for (const auto& t : to_int_poly(h, order)) w.emplace(t.mono, t.coef);
    IntPoly r = reduce_integer(std::move(w), basis);
    if (!r.empty()) basis.push_back(std::move(r));
  }
  GroebnerBasis out(gb.num_vars(), order);
  out.reduced_ = true;
  if (basis.size() == processed) {
    out.polys_ = gb.polys_;
    return out;
  }
  basis = buchberger(std::move(basis), processed, order);
  out.polys_ = finalize_reduced(basis, order);
  return out;
}

GroebnerBasis groebner_from_reduced(std::size_t num_vars, const MonomialOrder& order,
                                    std::vector<HomoPoly> generators) {
  GroebnerBasis out(num_vars, order);
  for (const auto& h : generators) {
    check_ring(h, num_vars);
    if (h.is_zero()) continue;
    OrderedPoly o;
    for (const auto& [m, c] : h.terms()) o.push_back({m, c});
    std::sort(o.begin(), o.end(), [&](const OrderedTerm& a, const OrderedTerm& b) {
      return order.compare(a.mono, b.mono) == std::strong_ordering::greater;
    });
    out.polys_.push_back(std::move(o));
  }
  std::sort(out.polys_.begin(), out.polys_.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.front().mono, b.front().mono) == std::strong_ordering::greater;
  });
  out.reduced_ = true;
  return out;
}

HomoPoly normal_form(const HomoPoly& p, const GroebnerBasis& gb) {
  check_ring(p, gb.num_vars());
  WorkPoly<Rational> w(OrderGreater{&gb.order()});
  for (const auto& [m, c] : p.terms()) w.emplace(m, c);
  std::vector<std::pair<Monomial, Rational>> terms;
  for (auto& t : reduce_rational(std::move(w), gb.ordered())) terms.emplace_back(t.mono, t.coef);
  return HomoPoly::from_terms(gb.num_vars(), terms);
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  const auto& polys = gb.ordered();
  std::vector<IntPoly> basis;
  for (const auto& p : polys) basis.push_back(to_int_poly(p));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce_integer(s_polynomial(basis[i], basis[j], gb.order()), basis).empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------

int Dimension::value() const {
  ensure(value_.has_value(), "value() on EMPTY dimension");
  return *value_;
}

std::string Dimension::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("EMPTY");
}

std::strong_ordering Dimension::operator<=>(const Dimension& other) const {
  if (is_empty() || other.is_empty()) return other.is_empty() <=> is_empty();
  return *value_ <=> *other.value_;
}

namespace {

template <class Visit>
void for_each_monomial(std::size_t num_vars, std::uint32_t u, Visit&& visit) {
  std::vector<std::uint32_t> e(num_vars, 0);
  // Recursive fill: variable i takes values from the remaining budget.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t remaining) -> void {
    if (i + 1 == num_vars) {
      e[i] = remaining;
      visit(Monomial(e));
      return;
    }
    for (std::uint32_t k = remaining + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, remaining - k);
    }
  };
  if (num_vars > 0) rec(rec, 0, u);
}

bool is_standard(const Monomial& m, const std::vector<Monomial>& leads) {
  return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, std::uint32_t u,
                                          const MonomialOrder& order) {
  std::vector<Monomial> out;
  for_each_monomial(num_vars, u, [&](Monomial m) { out.push_back(std::move(m)); });
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return order.compare(a, b) == std::strong_ordering::greater;
  });
  return out;
}

std::uint64_t hilbert_function(const GroebnerBasis& gb, std::uint32_t u) {
  auto leads = gb.leading_monomials();
  std::uint64_t count = 0;
  for_each_monomial(gb.num_vars(), u, [&](const Monomial& m) {
    if (is_standard(m, leads)) ++count;
  });
  return count;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, std::uint32_t u) {
  auto leads = gb.leading_monomials();
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(gb.num_vars(), u, gb.order()))
    if (is_standard(m, leads)) out.push_back(std::move(m));
  return out;
}

Dimension projective_dimension(const GroebnerBasis& gb) {
  const std::size_t nv = gb.num_vars();
  ensure(nv < 32, "too many variables for subset dimension search");
  std::vector<std::uint64_t> supports;
  for (const auto& l : gb.leading_monomials()) supports.push_back(l.support_mask());
  int best = -1;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nv); ++s) {
    int size = std::popcount(s);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](std::uint64_t sup) { return (sup & ~s) == 0; });
    if (independent) best = size;
  }
  // best is the affine cone dimension; -1 means the unit ideal.
  if (best <= 0) return Dimension::empty();
  return Dimension::of(best - 1);
}

IdealProfile ideal_profile(const GroebnerBasis& gb) {
  IdealProfile profile;
  profile.projective_dimension = projective_dimension(gb);
  if (profile.projective_dimension.is_empty()) return profile;
  const int n = profile.projective_dimension.value();
  const std::size_t nv = gb.num_vars();

  // The Hilbert series numerator has degree at most deg lcm(leading monomials),
  // so H agrees with its polynomial from u0 = deg lcm - N on.
  std::vector<std::uint32_t> max_exp(nv, 0);
  for (const auto& l : gb.leading_monomials())
    for (std::size_t i = 0; i < nv; ++i) max_exp[i] = std::max(max_exp[i], l[i]);
  std::int64_t lcm_deg = std::accumulate(max_exp.begin(), max_exp.end(), std::int64_t{0});
  auto u0 = static_cast<std::uint32_t>(std::max<std::int64_t>(0, lcm_deg - static_cast<std::int64_t>(nv - 1)));

  // n-th finite difference of a degree-n polynomial with leading coefficient
  // delta/n! is delta; the (n+1)-th and (n+2)-th must vanish.
  std::vector<Integer> diffs;
  for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(n) + 3; ++k) {
    std::uint64_t h = hilbert_function(gb, u0 + k);
    profile.hilbert_values[u0 + k] = h;
    diffs.emplace_back(static_cast<unsigned long>(h));
  }
  for (int level = 0; level < n; ++level)
    for (std::size_t k = 0; k + 1 < diffs.size() - level; ++k) diffs[k] = diffs[k + 1] - diffs[k];
  const std::size_t m = diffs.size() - n;  // entries that hold n-th differences
  for (std::size_t k = 1; k < m; ++k)
    ensure(diffs[k] == diffs[0], "Hilbert function not polynomial past the regularity bound");
  ensure(diffs[0] > 0 && diffs[0].fits_ulong_p(), "non-positive degree");
  profile.degree = diffs[0].get_ui();
  return profile;
}

}  // namespace hypdist
