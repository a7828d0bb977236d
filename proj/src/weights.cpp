#include "weights.hpp"

#include <mpfr.h>

#include <algorithm>
#include <memory>

#include "errors.hpp"

namespace hypdist {

namespace {

void check_weights(const Variety& v, std::span<const Rational> c) {
  if (c.size() != v.num_vars())
    fail("DimensionMismatch", "weight vector has " + std::to_string(c.size()) + " entries, ring has " +
                                  std::to_string(v.num_vars()) + " variables");
  for (const auto& x : c)
    if (x < 0) fail("NegativeWeight", "weights must be non-negative");
}

Rational weight_of(const Monomial& m, std::span<const Rational> c) {
  Rational w = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) w += c[i] * m[i];
  return w;
}

/// Rank of a rational matrix by fraction-based Gaussian elimination.
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Normal form coordinates of each monomial over the standard monomials.
std::vector<std::vector<Rational>> residue_coordinates(const Variety& v, std::uint32_t u,
                                                       std::span<const Monomial> monomials) {
  auto standard = standard_monomials(v.basis(), u);
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : monomials) {
    HomoPoly nf = normal_form(HomoPoly::monomial(m), v.basis());
    std::vector<Rational> row(standard.size(), Rational(0));
    for (std::size_t k = 0; k < standard.size(); ++k) row[k] = nf.coefficient(standard[k]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

HilbertWeightReport hilbert_weight(const Variety& v, std::uint32_t u, std::span<const Rational> c) {
  check_weights(v, c);
  if (u == 0) fail("BadDegree", "u must be at least 1");
  Rational top = *std::max_element(c.begin(), c.end());
  std::vector<Rational> flipped;
  for (const auto& x : c) flipped.push_back(top - x);
  GroebnerBasis gb = groebner_basis(v.generators(), v.num_vars(), MonomialOrder::weighted(flipped));
  HilbertWeightReport report;
  report.u = u;
  report.basis = standard_monomials(gb, u);
  report.hilbert = report.basis.size();
  report.weight = 0;
  for (const auto& m : report.basis) report.weight += weight_of(m, c);
  ensure(report.hilbert == hilbert_function(v.basis(), u), "Hilbert function depends on the order");
  return report;
}

bool residues_form_basis(const Variety& v, std::uint32_t u, std::span<const Monomial> monomials) {
  std::uint64_t h = hilbert_function(v.basis(), u);
  if (monomials.size() != h) return false;
  return matrix_rank(residue_coordinates(v, u, monomials)) == h;
}

BruteForceWeight hilbert_weight_bruteforce(const Variety& v, std::uint32_t u, std::span<const Rational> c,
                                           std::size_t monomial_cap) {
  check_weights(v, c);
  auto all = monomials_of_degree(v.num_vars(), u, MonomialOrder::grevlex());
  if (all.size() > monomial_cap)
    fail("OracleTooLarge", std::to_string(all.size()) + " monomials of degree " + std::to_string(u) +
                               " exceed the oracle cap " + std::to_string(monomial_cap));
  const std::size_t h = hilbert_function(v.basis(), u);
  auto coords = residue_coordinates(v, u, all);

  BruteForceWeight out;
  bool have = false;
  // Lexicographic enumeration of h-subsets of {0..M-1}.
  std::vector<std::size_t> pick(h);
  for (std::size_t i = 0; i < h; ++i) pick[i] = i;
  const std::size_t m = all.size();
  while (true) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i : pick) rows.push_back(coords[i]);
    if (matrix_rank(rows) == h) {
      ++out.bases_checked;
      Rational w = 0;
      for (std::size_t i : pick) w += weight_of(all[i], c);
      if (!have || w > out.weight) {
        out.weight = w;
        out.basis.clear();
        for (std::size_t i : pick) out.basis.push_back(all[i]);
        have = true;
      }
    }
    std::size_t i = h;
    while (i > 0 && pick[i - 1] == m - h + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < h; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (!have) out.weight = 0;  // h == 0: the empty basis
  return out;
}

EfCheck ef_lower_bound_check(const Variety& v, std::uint32_t u, std::span<const Rational> c,
                             std::span<const std::size_t> coord_subset) {
  check_weights(v, c);
  const int n = v.dimension();
  if (coord_subset.size() != static_cast<std::size_t>(n) + 1)
    fail("BadSubset", "need n+1 = " + std::to_string(n + 1) + " coordinate indices");
  std::vector<std::size_t> sorted(coord_subset.begin(), coord_subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.back() >= v.num_vars())
    fail("BadSubset", "coordinate indices must be distinct and in 0.." + std::to_string(v.num_vars() - 1));
  std::vector<HomoPoly> coords;
  for (std::size_t i : sorted) coords.push_back(HomoPoly::variable(v.num_vars(), i));
  if (!projective_dimension(groebner_extend(v.basis(), coords)).is_empty())
    fail("SubsetNotEmptyOnV", "V meets the coordinate subspace of the chosen indices");
  if (u <= v.degree())
    fail("UTooSmall", "u = " + std::to_string(u) + " must exceed deg V = " + std::to_string(v.degree()));

  HilbertWeightReport s = hilbert_weight(v, u, c);
  EfCheck out;
  out.weight = s.weight;
  out.hilbert = s.hilbert;
  out.lhs = s.weight / (Rational(u) * Rational(static_cast<unsigned long>(s.hilbert)));
  Rational sum = 0;
  for (std::size_t i : sorted) sum += c[i];
  Rational top = *std::max_element(c.begin(), c.end());
  Rational delta(static_cast<unsigned long>(v.degree()));
  out.rhs = sum / (n + 1) - Rational(2 * n + 1) * delta * top / Rational(u);
  out.holds = out.lhs >= out.rhs;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Integer factorial(long q) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(q));
  return out;
}

std::string decimal(const mpfr_t x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.30Rf", x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Rational truncation_coefficient(long q, const Rational& delta, long n, const Rational& eps) {
  if (q < 1 || n < 1 || delta <= 0 || eps < 0) fail("BadParameters", "need q, n, delta > 0 and eps >= 0");
  return Rational(q) - delta * (n + 1) - eps;
}

BoundReport truncation_m0(const M0Input& in, unsigned long precision_ceiling) {
  if (in.n < 1 || in.d < 1 || in.deg_v < 1 || in.q < 1 || in.delta <= 0 || in.eps <= 0)
    fail("BadParameters", "n, d, deg_v, q, delta and eps must all be positive");
  if (in.formula == M0Formula::Subgeneral && in.l - in.n + 1 < 1)
    fail("BadParameters", "the subgeneral formula needs l >= n");
  const auto n = static_cast<unsigned long>(in.n);
  Rational factor = 1;
  factor *= pow_rational(Rational(in.d), n * n + n);
  factor *= pow_rational(Rational(in.deg_v), n + 1);
  factor *= pow_rational(Rational(2 * in.n + 4), n);
  factor *= pow_rational(Rational(factorial(in.q)), n);
  factor /= pow_rational(in.eps, n);
  if (in.formula == M0Formula::Distributive) {
    factor *= pow_rational(in.delta, n);
    factor *= pow_rational(Rational(in.n + 1), n);
  } else {
    factor *= pow_rational(Rational(in.l - in.n + 1), n);
  }

  BoundReport out;
  out.rational_factor = factor;
  out.defect_total = in.delta * (in.n + 1);
  out.coefficient = truncation_coefficient(in.q, in.delta, in.n, in.eps);

  // Directed rounding encloses factor * e^n; all quantities are positive.
  for (unsigned long prec = std::min(64ul, std::max(precision_ceiling, 2ul)); prec <= precision_ceiling; prec *= 2) {
    Mpfr lo(static_cast<mpfr_prec_t>(prec)), hi(static_cast<mpfr_prec_t>(prec));
    mpfr_set_ui(lo.v, 1, MPFR_RNDD);
    mpfr_exp(lo.v, lo.v, MPFR_RNDD);
    mpfr_set_ui(hi.v, 1, MPFR_RNDU);
    mpfr_exp(hi.v, hi.v, MPFR_RNDU);
    mpfr_pow_ui(lo.v, lo.v, n, MPFR_RNDD);
    mpfr_pow_ui(hi.v, hi.v, n, MPFR_RNDU);
    mpfr_mul_z(lo.v, lo.v, factor.get_num_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.v, hi.v, factor.get_num_mpz_t(), MPFR_RNDU);
    mpfr_div_z(lo.v, lo.v, factor.get_den_mpz_t(), MPFR_RNDD);
    mpfr_div_z(hi.v, hi.v, factor.get_den_mpz_t(), MPFR_RNDU);
    Integer flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.v, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.v, MPFR_RNDD);
    out.enclosure_low = decimal(lo.v);
    out.enclosure_high = decimal(hi.v);
    out.precision_bits = prec;
    if (flo == fhi) {
      out.m0 = flo;
      return out;
    }
  }
  fail("FloorAmbiguous", "enclosure [" + out.enclosure_low + ", " + out.enclosure_high +
                             "] still contains an integer at the precision ceiling");
}

ComparisonTable compare_bounds(long n, long ambient_n, long l, long kappa, long q) {
  (void)q;
  if (n < 1 || l < n || kappa < 1 || ambient_n < n)
    fail("BadParameters", "need 1 <= n <= l, n <= N and kappa >= 1");
  const Rational np1(n + 1);
  ComparisonTable table;
  table.distributive = ratio(Integer(l - n + kappa), Integer(kappa)) * np1;
  auto add = [&](std::string name, std::optional<Rational> total) {
    BoundComparison e{std::move(name), total, total.has_value() && table.distributive < *total};
    table.entries.push_back(std::move(e));
  };
  add("nochka", Rational(2 * ambient_n - n + 1));
  add("eremenko_sodin", Rational(2 * ambient_n));
  add("ru", np1);
  add("chen_ru_yan", Rational(l) * np1);
  if (l + n - 2 != 0)
    add("shi_ru", ratio(Integer(l * (l - 1)), Integer(l + n - 2)) * np1);
  else
    add("shi_ru", std::nullopt);
  add("giang", Rational(l) * np1);
  add("quang_subgeneral", Rational(l - n + 1) * np1);
  long inner = std::max<long>(1, std::min(l - n, kappa));
  add("jyy_index", (ratio(Integer(l - n), Integer(inner)) + 1) * np1);
  return table;
}

}  // namespace hypdist
