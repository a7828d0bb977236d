// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance CLI_PATH WORK_DIR
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "cli_runner.hpp"
#include "heights.hpp"
#include "json_io.hpp"
#include "oracles.hpp"
#include "replace.hpp"
#include "weights.hpp"

using namespace hypdist;
using namespace hypdist::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      if (problems.size() < 10) problems.push_back(what);
    }
  }
};

std::vector<Rational> rats(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(R(x));
  return out;
}

std::string show(const std::vector<HomoPoly>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s + "}";
}

// ---------------------------------------------------------------- 1

std::vector<HypersurfaceFamily> generated_families(const Variety& v, std::mt19937_64& rng, int kind, int count) {
  const std::size_t vars = v.num_vars();
  std::vector<HypersurfaceFamily> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<HomoPoly> members;
    std::uniform_int_distribution<int> extra(0, 2);
    int q = static_cast<int>(vars) + 1 + extra(rng);
    for (int k = 0; k < q; ++k) {
      switch (kind) {
        case 0:  // generic hyperplanes
          members.push_back(random_linear(rng, vars, 3));
          break;
        case 1:  // small coefficients, frequent coincidences
          members.push_back(random_linear(rng, vars, 1));
          break;
        case 2: {  // half the members through a common point or line
          HomoPoly h = random_linear(rng, vars, 2);
          if (k % 2 == 0) {
            std::vector<std::pair<Monomial, Rational>> terms;
            for (std::size_t i = 1; i < vars; ++i)
              if (i >= vars - 2 || vars == 3) terms.emplace_back(Monomial::variable(vars, i), h.coefficient(Monomial::variable(vars, i)));
            HomoPoly g = HomoPoly::from_terms(vars, terms);
            h = g.is_zero() ? HomoPoly::variable(vars, vars - 1) : g;
          }
          members.push_back(h);
          break;
        }
        default:  // conics
          members.push_back(random_form(rng, vars, 2, 2, 0.7));
          break;
      }
    }
    try {
      out.push_back(build_family(v, members));
    } catch (const DomainError&) {
    }
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(1001);
  Variety p2 = V({}, 3), p3 = V({}, 4);
  int families = 0, general = 0, sub = 0, tvec = 0, index = 0;
  for (const Variety* v : {&p2, &p3}) {
    for (int kind = 0; kind < 4; ++kind) {
      if (v == &p3 && kind == 3) continue;
      for (const auto& fam : generated_families(*v, rng, kind, 5)) {
        ++families;
        const int n = v->dimension();
        std::string label = "P^" + std::to_string(n) + " " + show(fam.members());
        auto rep = distributive_constant(*v, fam);
        o.require(rep.delta == delta_by_enumeration(*v, fam), label + ": delta differs from enumeration");
        auto cls = classify_position(*v, fam);
        auto b = remark_bounds(*v, cls);
        if (kind < 3) {
          bool gp = true;
          std::vector<std::size_t> idx(static_cast<std::size_t>(n + 1));
          std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
            if (pos == idx.size()) {
              std::vector<HomoPoly> forms;
              for (auto i : idx) forms.push_back(fam[i]);
              if (!linear_dimension(forms, v->num_vars()).is_empty()) gp = false;
              return;
            }
            for (std::size_t i = start; i < fam.size(); ++i) {
              idx[pos] = i;
              rec(pos + 1, i + 1);
            }
          };
          rec(0, 0);
          o.require(gp == cls.general_position, label + ": general position disagrees with linear algebra");
        }
        if (b.general) {
          ++general;
          o.require(rep.delta == 1, label + ": general position but delta " + to_fraction_string(rep.delta));
        }
        if (b.subgeneral) {
          ++sub;
          o.require(rep.delta <= *b.subgeneral, label + ": delta above l-n+1");
        }
        if (b.t_vector) {
          ++tvec;
          o.require(rep.delta <= *b.t_vector, label + ": delta above max t_k/k");
        }
        if (b.index) {
          ++index;
          o.require(rep.delta <= *b.index, label + ": delta above (l-n+kappa)/kappa");
        }
      }
    }
  }
  o.require(families >= 30, "fewer than 30 families");
  o.require(general > 0 && sub > general && tvec > 0 && index > 0, "some bound never exercised");
  o.detail = std::to_string(families) + " families; bounds checked: general " + std::to_string(general) +
             ", subgeneral " + std::to_string(sub) + ", t-vector " + std::to_string(tvec) + ", index " +
             std::to_string(index);
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  Outcome o;
  const std::vector<Rational> grid = rats({"3", "2", "3/2", "1"});
  // log a = e2 log 2 + e3 log 3
  const std::vector<std::pair<int, int>> logs = {{0, 1}, {1, 0}, {-1, 1}, {0, 0}};
  long cases = 0, equalities = 0, uniform_equal = 0;
  for (int n = 1; n <= 3; ++n) {
    for (long t0 = 0; t0 <= 1; ++t0) {
      std::vector<long> t(static_cast<std::size_t>(n + 1));
      t[0] = t0;
      std::function<void(int)> fill_t = [&](int pos) {
        if (pos > n) {
          // non-increasing a over the grid: indices into grid non-decreasing
          std::vector<std::size_t> ai(static_cast<std::size_t>(n), 0);
          std::function<void(int, std::size_t)> fill_a = [&](int k, std::size_t start) {
            if (k == n) {
              std::vector<Rational> a;
              for (auto i : ai) a.push_back(grid[i]);
              auto r = verify_power_inequality(t, a);
              ++cases;
              std::ostringstream label;
              label << "t=(";
              for (auto x : t) label << x << ",";
              label << ") a=(";
              for (const auto& x : a) label << to_fraction_string(x) << ",";
              label << ")";
              o.require(r.holds, label.str() + " fails");
              o.require(r.chain_holds, label.str() + " chain step fails");
              // exact oracle: compare exponents of log 2 and log 3
              Rational l2 = 0, l3 = 0, r2 = 0, r3 = 0;
              double lhs_d = 0, rhs_d = 0;
              for (int u = 0; u < n; ++u) {
                Rational step(t[u + 1] - t[u]);
                l2 += step * logs[ai[u]].first;
                l3 += step * logs[ai[u]].second;
                r2 += r.schedule.delta * logs[ai[u]].first;
                r3 += r.schedule.delta * logs[ai[u]].second;
                lhs_d += (t[u + 1] - t[u]) * std::log(a[u].get_d());
                rhs_d += r.schedule.delta.get_d() * std::log(a[u].get_d());
              }
              bool oracle_eq = l2 == r2 && l3 == r3;
              o.require(oracle_eq == r.equality, label.str() + " equality disagrees with the exponent oracle");
              o.require(lhs_d <= rhs_d + 1e-9, label.str() + " fails in floating point");
              if (oracle_eq) {
                ++equalities;
                o.require(std::fabs(lhs_d - rhs_d) < 1e-9, label.str() + " equality not seen in floating point");
              }
              bool uniform = true, equal_a = true;
              for (int u = 1; u < n; ++u) {
                uniform = uniform && t[u + 1] - t[u] == t[1] - t[0];
                equal_a = equal_a && ai[u] == ai[0];
              }
              if (uniform && equal_a) {
                ++uniform_equal;
                o.require(r.equality, label.str() + " uniform step, equal a, but no equality");
              }
              return;
            }
            for (std::size_t i = start; i < grid.size(); ++i) {
              ai[k] = i;
              fill_a(k + 1, i);
            }
          };
          fill_a(0, 0);
          return;
        }
        for (long x = t[pos - 1] + 1; x <= 7 - (n - pos); ++x) {
          t[pos] = x;
          fill_t(pos + 1);
        }
      };
      fill_t(1);
    }
  }
  o.detail = std::to_string(cases) + " cases; " + std::to_string(uniform_equal) +
             " uniform-step equal-a cases all tight; " + std::to_string(equalities) + " equalities in total";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(3003);
  Variety p2 = V({}, 3), p3 = V({}, 4);
  std::vector<std::pair<const Variety*, HypersurfaceFamily>> fams;
  fams.emplace_back(&p2, F(p2, {"x1", "x2", "x1 + x2", "x0"}));
  fams.emplace_back(&p3, F(p3, {"x1", "x2", "x1 + x2", "x3", "x0"}));
  auto add_random = [&](const Variety& v, int want, auto make) {
    int got = 0;
    while (got < want) {
      try {
        HypersurfaceFamily fam = build_family(v, make());
        IndexSet id(fam.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        dimension_profile(v, fam, id);
        fams.emplace_back(&v, std::move(fam));
        ++got;
      } catch (const DomainError&) {
      }
    }
  };
  add_random(p2, 8, [&] {
    std::vector<HomoPoly> m;
    for (int k = 0; k < 5; ++k) m.push_back(random_linear(rng, 3, 1));
    return m;
  });
  add_random(p3, 8, [&] {
    std::vector<HomoPoly> m;
    for (int k = 0; k < 6; ++k) m.push_back(random_linear(rng, 4, 1));
    return m;
  });
  add_random(p2, 5, [&] {
    std::vector<HomoPoly> m;
    HomoPoly shared = random_linear(rng, 3, 1);
    for (int k = 0; k < 3; ++k) m.push_back(shared * random_linear(rng, 3, 1));
    m.push_back(random_form(rng, 3, 2, 2, 0.9));
    m.push_back(random_form(rng, 3, 2, 2, 0.9));
    return m;
  });
  int verified = 0;
  for (auto& [v, fam] : fams) {
    std::string label = "P^" + std::to_string(v->dimension()) + " " + show(fam.members());
    IndexSet id(fam.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    auto prof = dimension_profile(*v, fam, id);
    ReplacementOptions opts;
    opts.seed = 17;
    opts.pool_bound = 8;
    ReplacementSystem sys;
    try {
      sys = build_replacement(*v, fam, prof, opts);
    } catch (const DomainError& e) {
      o.require(false, label + ": " + e.name());
      continue;
    }
    auto verdict = verify_replacement(*v, sys);
    o.require(verdict.ok, label + ": verify_replacement rejects");
    const int n = v->dimension();
    bool shape = sys.replacements.size() == static_cast<std::size_t>(n + 1);
    for (int u = 0; shape && u <= n; ++u) {
      const auto& row = sys.coeff_matrix[u];
      for (std::size_t j = prof.t_values[u] + 1; j < row.size(); ++j) shape = shape && row[j] == 0;
      shape = shape && poly_combine(row, sys.ordered_members) == sys.replacements[u];
      for (const auto& c : row) shape = shape && abs(c) <= 8;
      std::vector<HomoPoly> prefix(sys.replacements.begin(), sys.replacements.begin() + u + 1);
      std::vector<HomoPoly> gens = v->generators();
      gens.insert(gens.end(), prefix.begin(), prefix.end());
      Dimension d = projective_dimension(groebner_basis(gens, v->num_vars(), MonomialOrder::grevlex()));
      shape = shape && d <= Dimension::of(n - u - 1);
    }
    o.require(shape, label + ": coefficient matrix shape or prefix dimension wrong");
    if (verdict.ok && shape) ++verified;
  }
  o.require(verified >= 20, "fewer than 20 verified families");
  o.detail = std::to_string(verified) + "/" + std::to_string(fams.size()) +
             " families verified (B = 8), including concurrent lines with a void-completing member";
  return o;
}

// ---------------------------------------------------------------- 4, 6

struct Instance {
  std::string name;
  Variety v;
  std::vector<std::uint32_t> us;
};

std::vector<Instance> weight_instances() {
  return {{"P^1", V({}, 2), {1, 2, 3}},
          {"conic", V({"x0*x2 - x1^2"}, 3), {1, 2}},
          {"P^3 quadric", V({"x0^2 + x1^2 - x2^2 - x3^2"}, 4), {1}}};
}

std::vector<std::vector<Rational>> weight_grid(std::size_t vars) {
  const std::vector<Rational> mixed = rats({"3", "1/2", "2", "0"});
  std::vector<std::vector<Rational>> g(5, std::vector<Rational>(vars));
  for (std::size_t i = 0; i < vars; ++i) {
    g[0][i] = 0;
    g[1][i] = 1;
    g[2][i] = Rational(static_cast<long>(i));
    g[3][i] = Rational(static_cast<long>(vars - 1 - i)) * R("5/2");
    g[4][i] = mixed[i];
  }
  return g;
}

Outcome criterion4() {
  Outcome o;
  int compared = 0;
  for (const auto& inst : weight_instances()) {
    for (auto u : inst.us) {
      for (const auto& c : weight_grid(inst.v.num_vars())) {
        auto fast = hilbert_weight(inst.v, u, c);
        auto slow = hilbert_weight_bruteforce(inst.v, u, c);
        ++compared;
        o.require(fast.weight == slow.weight,
                  inst.name + " u=" + std::to_string(u) + ": " + to_fraction_string(fast.weight) + " vs " +
                      to_fraction_string(slow.weight));
        o.require(residues_form_basis(inst.v, u, fast.basis), inst.name + ": returned basis is not a basis");
        o.require(fast.hilbert == hilbert_by_rank(inst.v.generators(), inst.v.num_vars(), u),
                  inst.name + ": H(u) disagrees with the rank oracle");
      }
    }
  }
  o.detail = std::to_string(compared) + " (instance, u, c) triples equal to the brute-force oracle";
  return o;
}

Outcome criterion6() {
  Outcome o;
  long checked = 0, skipped = 0;
  for (const auto& inst : weight_instances()) {
    const Variety& v = inst.v;
    const std::size_t vars = v.num_vars();
    const std::size_t k = static_cast<std::size_t>(v.dimension()) + 1;
    auto grid = weight_grid(vars);
    // plus every c in {0, 1, 3}^(N+1)
    std::vector<Rational> digits = rats({"0", "1", "3"});
    std::size_t total = 1;
    for (std::size_t i = 0; i < vars; ++i) total *= digits.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Rational> c(vars);
      std::size_t x = code;
      for (std::size_t i = 0; i < vars; ++i, x /= digits.size()) c[i] = digits[x % digits.size()];
      grid.push_back(c);
    }
    for (std::uint32_t mask = 0; mask < (1u << vars); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < vars; ++i)
        if (mask >> i & 1u) subset.push_back(i);
      for (std::uint32_t u = v.degree() + 1; u <= v.degree() + 3; ++u) {
        for (const auto& c : grid) {
          try {
            auto r = ef_lower_bound_check(v, u, c, subset);
            ++checked;
            o.require(r.holds, inst.name + " u=" + std::to_string(u) + ": " + to_fraction_string(r.lhs) + " < " +
                                   to_fraction_string(r.rhs));
          } catch (const DomainError& e) {
            if (e.name() != "SubsetNotEmptyOnV") throw;
            ++skipped;
          }
        }
      }
    }
  }
  o.require(checked > 0, "no precondition-satisfying input");
  o.detail = std::to_string(checked) + " checks hold; " + std::to_string(skipped) +
             " skipped (coordinate subspace meets V)";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5005);
  int checked = 0;
  for (std::size_t N = 1; N <= 3; ++N) {
    const std::size_t vars = N + 1;
    auto pn = groebner_basis(std::vector<HomoPoly>{}, vars, MonomialOrder::grevlex());
    for (std::uint32_t u = 0; u <= 6; ++u) {
      o.require(hilbert_function(pn, u) == binomial(N + u, N), "P^" + std::to_string(N) + " H(" + std::to_string(u) + ")");
      ++checked;
    }
    for (std::uint32_t d = 1; d <= 3; ++d) {
      for (int trial = 0; trial < 3; ++trial) {
        HomoPoly f = random_form(rng, vars, d, 3, 0.7);
        auto gb = groebner_basis(std::vector<HomoPoly>{f}, vars, MonomialOrder::grevlex());
        for (std::uint32_t u = 0; u <= 6; ++u) {
          std::uint64_t expect = binomial(N + u, N) - (u >= d ? binomial(N + u - d, N) : 0);
          o.require(hilbert_function(gb, u) == expect,
                    "degree " + std::to_string(d) + " hypersurface " + f.to_string() + " H(" + std::to_string(u) + ")");
          ++checked;
        }
      }
    }
  }
  Variety conic = V({"x0*x2 - x1^2"}, 3);
  auto prof = ideal_profile(conic.basis());
  o.require(prof.projective_dimension == Dimension::of(1) && prof.degree == 2, "conic profile (n, deg)");
  for (std::uint32_t u = 0; u <= 6; ++u) o.require(hilbert_function(conic.basis(), u) == 2 * u + 1, "conic H(u) = 2u+1");
  o.detail = std::to_string(checked) + " closed-form values; conic n = 1, deg = 2, H(u) = 2u+1";
  return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  Outcome o;
  M0Input in;
  in.n = 1;
  in.d = 1;
  in.deg_v = 1;
  in.delta = 1;
  in.q = 3;
  in.eps = 6;
  auto m0 = truncation_m0(in);
  o.require(m0.m0 == 32, "M0 = " + m0.m0.get_str());
  struct Tuple {
    long n, N, l, kappa, q;
  };
  const std::vector<Tuple> tuples = {{1, 1, 1, 1, 3}, {2, 2, 4, 1, 6}, {2, 4, 5, 3, 7}, {3, 5, 6, 2, 9}, {4, 8, 10, 4, 12}};
  for (const auto& t : tuples) {
    auto table = compare_bounds(t.n, t.N, t.l, t.kappa, t.q);
    std::map<std::string, std::optional<Rational>> got;
    for (const auto& e : table.entries) got[e.name] = e.total;
    const Rational np1(t.n + 1);
    long inner = std::max(1L, std::min(t.l - t.n, t.kappa));
    std::map<std::string, Rational> expect = {
        {"nochka", Rational(2 * t.N - t.n + 1)},
        {"eremenko_sodin", Rational(2 * t.N)},
        {"ru", np1},
        {"quang_subgeneral", Rational(t.l - t.n + 1) * np1},
        {"jyy_index", (Rational(t.l - t.n) / Rational(inner) + 1) * np1},
    };
    std::string label = "(n,N,l,kappa,q)=(" + std::to_string(t.n) + "," + std::to_string(t.N) + "," +
                        std::to_string(t.l) + "," + std::to_string(t.kappa) + "," + std::to_string(t.q) + ")";
    for (const auto& [name, value] : expect)
      o.require(got.count(name) && got[name] && *got[name] == value, label + " " + name);
    o.require(table.distributive == Rational(t.l - t.n + t.kappa) / Rational(t.kappa) * np1, label + " distributive");
  }
  o.detail = "M0 = " + m0.m0.get_str() + " (enclosure [" + m0.enclosure_low.substr(0, 12) + ", " +
             m0.enclosure_high.substr(0, 12) + "]); " + std::to_string(tuples.size()) + " comparison tuples exact";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<long> big(1, 1'000'000'000'000L);
  std::uniform_int_distribution<long> small(1, 5000);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 1000; ++i) {
    Integer num(coin(rng) ? big(rng) : small(rng));
    Integer den(coin(rng) ? big(rng) : small(rng));
    if (coin(rng)) num = -num;
    Rational x(num, den);
    x.canonicalize();
    auto pf = product_formula_check(x);
    o.require(pf.ok && pf.product == 1, "product formula fails at " + to_fraction_string(x));
    // independent recomputation from p-adic orders
    Rational prod = abs(x);
    std::set<Integer> primes;
    for (const auto& p : prime_factors(x.get_num() < 0 ? Integer(-x.get_num()) : x.get_num())) primes.insert(p);
    for (const auto& p : prime_factors(x.get_den())) primes.insert(p);
    for (const auto& p : primes) {
      long k = p_adic_order(x, p);
      prod *= k >= 0 ? Rational(1) / pow_rational(Rational(p), k) : pow_rational(Rational(p), -k);
    }
    o.require(prod == 1, "p-adic recomputation fails at " + to_fraction_string(x));
  }
  int weil = 0;
  while (weil < 200) {
    std::uniform_int_distribution<int> vars_d(2, 4), deg_d(1, 3), coord(-20, 20);
    std::size_t vars = static_cast<std::size_t>(vars_d(rng));
    HomoPoly q = random_form(rng, vars, static_cast<std::uint32_t>(deg_d(rng)), 12, 0.7);
    std::vector<Integer> xs(vars);
    bool nonzero = false;
    for (auto& c : xs) {
      c = coord(rng);
      nonzero = nonzero || c != 0;
    }
    if (!nonzero) continue;
    RationalPoint x(xs);
    if (q.eval(x.as_rationals()) == 0) continue;
    ++weil;
    auto s = weil_sum_all_places(q, x);
    std::string label = q.to_string() + " at " + x.to_string();
    o.require(s.identity_holds && s.total.argument == s.expected.argument, label + ": Weil identity");
    o.require(s.finite_nonnegative, label + ": negative finite Weil value");
    for (std::size_t k = 0; k < s.places.size(); ++k)
      if (!s.places[k].is_infinite()) o.require(s.values[k].argument >= 1, label + ": lambda < 0 at " + s.places[k].to_string());
  }
  auto h = height_point(RationalPoint(std::vector<Integer>{1, 2, 3}));
  std::string rendered = h.render();
  double diff = std::fabs(std::stod(rendered) - std::log(3.0));
  o.require(diff < 1e-12, "h(1:2:3) renders as " + rendered);
  o.detail = "1000 product-formula cases, 200 Weil identities, h(1:2:3) = " + rendered.substr(0, 20) + "...";
  return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  Variety p1 = V({}, 2), p2 = V({}, 3);
  std::vector<std::pair<const Variety*, HypersurfaceFamily>> cases;
  cases.emplace_back(&p1, F(p1, {"x0", "x1", "x0 + x1"}));
  cases.emplace_back(&p2, F(p2, {"x0", "x1", "x2", "x0 + x1 + x2"}));
  const Rational eps = R("1/2");
  const std::vector<std::pair<std::string, std::vector<Place>>> place_sets = {
      {"{inf}", {Place::infinite()}}, {"{inf,2,3,5,7,11,13}", default_places()}};
  std::size_t points = 0;
  std::ostringstream counts, listing;
  for (const auto& [set_name, places] : place_sets) {
    std::size_t negative = 0, seen = 0;
    for (const auto& [v, fam] : cases) {
      auto rep = distributive_constant(*v, fam);
      auto pts = sample_points(*v, fam.members(), 500, 2);
      o.require(pts.size() == 500, "could not sample 500 points");
      auto summary = theorem15_margin(*v, fam, rep.delta, eps, places, pts);
      seen += pts.size();
      std::set<std::size_t> flagged(summary.exceptional_candidates.begin(), summary.exceptional_candidates.end());
      for (std::size_t i = 0; i < summary.reports.size(); ++i) {
        const auto& r = summary.reports[i];
        o.require(r.height_argument >= 2, "point below height argument 2");
        if (r.slack_sign < 0) {
          ++negative;
          o.require(flagged.count(i) == 1, "negative slack at " + r.point.to_string() + " not listed");
          if (set_name == "{inf}") listing << " " << r.point.to_string();
        } else {
          o.require(r.slack_sign > 0, "zero slack at " + r.point.to_string());
          o.require(flagged.count(i) == 0, "positive slack point flagged");
        }
        double approx = std::stod(r.slack_approx);
        if (std::fabs(approx) > 1e-30) o.require((approx > 0) == (r.slack_sign > 0), "approx slack sign disagrees");
      }
    }
    points = std::max(points, seen);
    counts << (counts.tellp() > 0 ? ", " : "") << "S = " << set_name << ": " << negative << "/" << seen;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(points >= 500, "fewer than 500 points");
  o.require(secs < 120, "took " + std::to_string(secs) + " s");
  o.detail = std::to_string(points) + " points per place set (P^1, P^2), eps = 1/2; negative slack, all listed as " +
             "exceptional candidates: " + counts.str();
  if (!listing.str().empty())
    o.detail += "; S = {inf} candidates:" + listing.str().substr(0, 300) + (listing.str().size() > 300 ? " ..." : "");
  return o;
}

// ---------------------------------------------------------------- 10

Outcome criterion10(const std::string& cli, const std::filesystem::path& work) {
  Outcome o;
  std::filesystem::remove_all(work);
  const std::string env = "HYPDIST_CACHE_DIR=" + (work / "cache").string() + " ";
  int same = 0;
  std::string all;
  auto cases = cli_fixture(work / "fixture");
  for (const auto& c : cases) {
    std::string line = env + cli + " " + c.subcommand + " " + c.args;
    auto a = run_command(line);
    auto b = run_command(line);
    o.require(a.exit_code == 0, c.subcommand + " exited " + std::to_string(a.exit_code));
    o.require(a.out == b.out && !a.out.empty(), c.subcommand + " output differs between runs");
    if (a.exit_code == 0 && a.out == b.out) ++same;
    all += a.out;
  }
  o.detail = std::to_string(same) + "/" + std::to_string(cases.size()) + " subcommands byte-identical (combined sha256 " +
             sha256_hex(all).substr(0, 16) + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance CLI_PATH WORK_DIR\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path work = argv[2];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"remark-consistency of the distributive constant", criterion1},
      {"power inequality exhaustive grid", criterion2},
      {"replacement construction", criterion3},
      {"Hilbert weight oracle equivalence", criterion4},
      {"Hilbert function closed forms", criterion5},
      {"chained Hilbert weight lower bound", criterion6},
      {"truncation level and bound comparison", criterion7},
      {"heights, product formula, Weil identity", criterion8},
      {"empirical height margin", criterion9},
      {"CLI byte-determinism", [&] { return criterion10(cli, work); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first << "): " << o.detail
              << " [" << std::fixed << std::setprecision(2) << secs << " s]\n";
    for (const auto& p : o.problems) std::cout << "    " << p << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
