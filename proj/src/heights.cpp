#include "heights.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "errors.hpp"

namespace hypdist {

namespace {

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

Integer rho_factor(const Integer& n) {
  // Brent's variant; n is odd, composite and free of small factors.
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::set<Integer>& out) {
  if (n < 2) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    if (n < Integer(p) * p) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.insert(Integer(p));
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n < 2) return;
  if (is_prime(n)) {
    out.insert(n);
    return;
  }
  std::vector<Integer> stack{n};
  while (!stack.empty()) {
    Integer m = stack.back();
    stack.pop_back();
    if (m < 2) continue;
    if (is_prime(m)) {
      out.insert(m);
      continue;
    }
    Integer f = rho_factor(m);
    stack.push_back(f);
    stack.push_back(m / f);
  }
}

void add_places_of(const Rational& x, std::set<Integer>& primes) {
  if (x == 0) return;
  factor_into(abs(x.get_num()), primes);
  factor_into(x.get_den(), primes);
}

std::vector<Place> with_infinite(const std::set<Integer>& primes) {
  std::vector<Place> out{Place::infinite()};
  for (const auto& p : primes) out.push_back(Place::finite(p));
  return out;
}

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

constexpr mpfr_prec_t kRenderBits = 256;

void set_log(mpfr_t out, const Rational& arg) {
  Mpfr num(kRenderBits), den(kRenderBits);
  mpfr_set_z(num.v, arg.get_num_mpz_t(), MPFR_RNDN);
  mpfr_log(num.v, num.v, MPFR_RNDN);
  mpfr_set_z(den.v, arg.get_den_mpz_t(), MPFR_RNDN);
  mpfr_log(den.v, den.v, MPFR_RNDN);
  mpfr_sub(out, num.v, den.v, MPFR_RNDN);
}

std::string fixed(const mpfr_t x, int digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) fail("NotPrime", p.get_str() + " is not a prime");
  Place out;
  out.p_ = p;
  return out;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : p_.get_str(); }

std::vector<Place> default_places() {
  std::vector<Place> out{Place::infinite()};
  for (int p : {2, 3, 5, 7, 11, 13}) out.push_back(Place::finite(p));
  return out;
}

RationalPoint::RationalPoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
  Integer g = 0;
  for (const auto& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) fail("ZeroInput", "a projective point needs a nonzero coordinate");
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  for (auto& c : coords_) c /= g;
}

RationalPoint RationalPoint::from_rationals(std::span<const Rational> coords) {
  Integer l = 1;
  for (const auto& c : coords) l = lcm_integer(l, c.get_den());
  std::vector<Integer> ints;
  for (const auto& c : coords) ints.push_back(Integer(c.get_num() * (l / c.get_den())));
  return RationalPoint(std::move(ints));
}

std::vector<Rational> RationalPoint::as_rationals() const {
  std::vector<Rational> out;
  for (const auto& c : coords_) out.emplace_back(c);
  return out;
}

std::string RationalPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].get_str();
  return s + ")";
}

std::string render_log(const Rational& arg, unsigned long root, int digits) {
  Mpfr x(kRenderBits);
  set_log(x.v, arg);
  mpfr_div_ui(x.v, x.v, root, MPFR_RNDN);
  return fixed(x.v, digits);
}

std::string LogRational::render(int digits) const { return render_log(argument, 1, digits); }

double LogRational::approx() const {
  Mpfr x(kRenderBits);
  set_log(x.v, argument);
  return mpfr_get_d(x.v, MPFR_RNDN);
}

std::vector<Integer> prime_factors(const Integer& n) {
  std::set<Integer> primes;
  factor_into(abs(n), primes);
  return {primes.begin(), primes.end()};
}

long p_adic_order(const Rational& x, const Integer& p) {
  Integer rest;
  long up = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
  long down = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
  return up - down;
}

Rational normalized_abs(const Rational& x, const Place& v) {
  if (x == 0) fail("ZeroInput", "absolute values are taken of nonzero rationals");
  if (v.is_infinite()) return abs(x);
  long ord = p_adic_order(x, v.prime());
  Rational pk(pow_integer(v.prime(), static_cast<unsigned long>(std::labs(ord))));
  return ord >= 0 ? Rational(1 / pk) : pk;
}

ProductFormulaCheck product_formula_check(const Rational& x) {
  if (x == 0) fail("ZeroInput", "the product formula applies to nonzero rationals");
  std::set<Integer> primes;
  add_places_of(x, primes);
  ProductFormulaCheck out;
  out.places = with_infinite(primes);
  out.product = 1;
  for (const auto& v : out.places) {
    out.factors.push_back(normalized_abs(x, v));
    out.product *= out.factors.back();
  }
  out.ok = out.product == 1;
  return out;
}

Rational point_norm(const RationalPoint& x, const Place& v) {
  Rational best = 0;
  for (const auto& c : x.coords())
    if (c != 0) best = std::max(best, normalized_abs(Rational(c), v));
  return best;
}

LogRational height_point(const RationalPoint& x) {
  Integer best = 0;
  for (const auto& c : x.coords()) best = std::max(best, Integer(abs(c)));
  return {Rational(best)};
}

LogRational height_point_all_places(const RationalPoint& x) {
  std::set<Integer> primes;
  for (const auto& c : x.coords()) add_places_of(Rational(c), primes);
  LogRational out;
  for (const auto& v : with_infinite(primes)) out.argument *= point_norm(x, v);
  return out;
}

LogRational height_scalar(const Rational& x) {
  return {Rational(std::max(Integer(abs(x.get_num())), Integer(x.get_den())))};
}

Rational poly_norm(const HomoPoly& q, const Place& v) {
  Rational best = 0;
  for (const auto& [m, c] : q.terms()) best = std::max(best, normalized_abs(c, v));
  return best;
}

std::vector<Place> poly_places(const HomoPoly& q) {
  std::set<Integer> primes;
  for (const auto& [m, c] : q.terms()) add_places_of(c, primes);
  return with_infinite(primes);
}

LogRational height_poly(const HomoPoly& q) {
  if (q.is_zero()) fail("ZeroPolynomial", "the zero polynomial has no height");
  LogRational out;
  for (const auto& v : poly_places(q)) out.argument *= poly_norm(q, v);
  return out;
}

LogRational weil_function(const HomoPoly& q, const RationalPoint& x, const Place& v) {
  if (q.is_zero()) fail("ZeroPolynomial", "the zero polynomial has no Weil function");
  if (x.size() != q.num_vars())
    fail("DimensionMismatch", "point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                                  std::to_string(q.num_vars()) + " variables");
  Rational value = q.eval(x.as_rationals());
  if (value == 0) fail("PointOnHypersurface", x.to_string() + " lies on " + q.to_string());
  Rational arg = pow_rational(point_norm(x, v), q.degree()) * poly_norm(q, v) / normalized_abs(value, v);
  return {arg};
}

WeilSum weil_sum_all_places(const HomoPoly& q, const RationalPoint& x) {
  if (q.is_zero()) fail("ZeroPolynomial", "the zero polynomial has no Weil function");
  Rational value = q.eval(x.as_rationals());
  if (value == 0) fail("PointOnHypersurface", x.to_string() + " lies on " + q.to_string());
  std::set<Integer> primes;
  for (const auto& [m, c] : q.terms()) add_places_of(c, primes);
  for (const auto& c : x.coords()) add_places_of(Rational(c), primes);
  add_places_of(value, primes);

  WeilSum out;
  out.places = with_infinite(primes);
  out.finite_nonnegative = true;
  for (const auto& v : out.places) {
    LogRational lam = weil_function(q, x, v);
    if (!v.is_infinite() && lam.argument < 1) out.finite_nonnegative = false;
    out.values.push_back(lam);
    out.total = out.total * lam;
  }
  out.expected = LogRational{pow_rational(height_point(x).argument, q.degree())} * height_poly(q);
  out.identity_holds = out.total == out.expected;
  return out;
}

namespace {

/// Sign of mult * log(h) - log(arg) / root with mult = a/b, decided exactly by
/// comparing h^(a root) against arg^b.
int exact_slack_sign(const Rational& mult, const Rational& h, const Rational& arg, unsigned long root) {
  const unsigned long a = mult.get_num().get_ui();
  const unsigned long b = mult.get_den().get_ui();
  Rational left = pow_rational(h, a * root);
  Rational right = pow_rational(arg, b);
  return left > right ? 1 : (left < right ? -1 : 0);
}

}  // namespace

MarginSummary theorem15_margin(const Variety& v, const HypersurfaceFamily& fam, const Rational& delta,
                               const Rational& eps, std::span<const Place> places,
                               std::span<const RationalPoint> points) {
  if (eps <= 0 || delta <= 0) fail("BadParameters", "delta and eps must be positive");
  const Rational mult = delta * (v.dimension() + 1) + eps;
  if (!mult.get_num().fits_ulong_p() || !mult.get_den().fits_ulong_p())
    fail("BadParameters", "multiplier " + to_fraction_string(mult) + " is too large");
  const unsigned long root = fam.lcm_degree();

  MarginSummary out;
  Mpfr best(kRenderBits);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const RationalPoint& x = points[k];
    if (x.size() != v.num_vars())
      fail("DimensionMismatch", "point " + std::to_string(k + 1) + " has " + std::to_string(x.size()) +
                                    " coordinates, expected " + std::to_string(v.num_vars()));
    auto coords = x.as_rationals();
    if (!v.contains(coords)) fail("PointNotOnVariety", "point " + x.to_string() + " is not on V");
    for (std::size_t j = 0; j < fam.size(); ++j)
      if (fam[j].eval(coords) == 0)
        fail("PointOnHypersurface", "point " + x.to_string() + " lies on member " + std::to_string(j + 1));

    MarginReport r{x, 1, root, mult, height_point(x).argument, {}, {}, {}, 0};
    for (const auto& place : places)
      for (std::size_t j = 0; j < fam.size(); ++j)
        r.lhs_argument *= pow_rational(weil_function(fam[j], x, place).argument, root / fam.degrees()[j]);

    Mpfr lhs(kRenderBits), rhs(kRenderBits), slack(kRenderBits), m(kRenderBits);
    set_log(lhs.v, r.lhs_argument);
    mpfr_div_ui(lhs.v, lhs.v, root, MPFR_RNDN);
    set_log(rhs.v, r.height_argument);
    mpfr_set_q(m.v, mult.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(rhs.v, rhs.v, m.v, MPFR_RNDN);
    mpfr_sub(slack.v, rhs.v, lhs.v, MPFR_RNDN);
    r.lhs_approx = fixed(lhs.v, 50);
    r.rhs_approx = fixed(rhs.v, 50);
    r.slack_approx = fixed(slack.v, 50);
    r.slack_sign = exact_slack_sign(mult, r.height_argument, r.lhs_argument, root);
    if (!out.min_slack_index || mpfr_less_p(slack.v, best.v)) {
      out.min_slack_index = k;
      mpfr_set(best.v, slack.v, MPFR_RNDN);
    }
    if (r.slack_sign < 0) out.exceptional_candidates.push_back(k);
    out.reports.push_back(std::move(r));
  }
  return out;
}

std::vector<RationalPoint> sample_points(const Variety& v, std::span<const HomoPoly> avoid,
                                         std::size_t count, long min_height, long max_shell) {
  std::vector<RationalPoint> out;
  const std::size_t len = v.num_vars();
  for (long r = std::max(1L, min_height); r <= max_shell && out.size() < count; ++r) {
    std::vector<long> c(len, -r);
    while (true) {
      bool on_shell = false, canonical = true;
      long g = 0;
      for (long x : c) {
        on_shell = on_shell || std::labs(x) == r;
        g = std::gcd(g, std::labs(x));
      }
      auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
      if (first == c.end() || *first < 0 || g != 1) canonical = false;
      if (on_shell && canonical) {
        std::vector<Rational> q(c.begin(), c.end());
        bool keep = v.contains(q);
        for (const auto& p : avoid)
          if (keep && p.eval(q) == 0) keep = false;
        if (keep) {
          out.emplace_back(std::vector<Integer>(c.begin(), c.end()));
          if (out.size() == count) return out;
        }
      }
      std::size_t i = len;
      while (i > 0 && c[i - 1] == r) c[--i] = -r;
      if (i == 0) break;
      ++c[i - 1];
    }
  }
  return out;
}

}  // namespace hypdist
