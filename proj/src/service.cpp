#include "service.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "errors.hpp"
#include "heights.hpp"
#include "replace.hpp"
#include "weights.hpp"

namespace hypdist {

namespace {

const std::set<std::string>& session_ops() {
  static const std::set<std::string> ops{"dim",    "delta",   "classify", "profile", "replace",
                                         "hilbert", "hweight", "efcheck",  "margin"};
  return ops;
}

const std::set<std::string>& free_ops() {
  static const std::set<std::string> ops{"parse", "schedule", "ineq",   "m0",
                                         "compare", "height", "weil", "pfcheck"};
  return ops;
}

// ---- argument access ------------------------------------------------------

const Json& req(const Json& args, const char* key) {
  if (!args.is_object() || !args.contains(key)) usage(std::string("missing argument \"") + key + "\"");
  return args.at(key);
}

bool has(const Json& args, const char* key) { return args.is_object() && args.contains(key) && !args.at(key).is_null(); }

long get_long(const Json& j, const char* key) {
  if (!j.is_number_integer()) usage(std::string("argument \"") + key + "\" must be an integer");
  return j.get<long>();
}

long arg_long(const Json& args, const char* key) { return get_long(req(args, key), key); }
long arg_long(const Json& args, const char* key, long fallback) {
  return has(args, key) ? get_long(args.at(key), key) : fallback;
}

bool arg_bool(const Json& args, const char* key, bool fallback) {
  if (!has(args, key)) return fallback;
  if (!args.at(key).is_boolean()) usage(std::string("argument \"") + key + "\" must be a boolean");
  return args.at(key).get<bool>();
}

std::vector<long> arg_longs(const Json& args, const char* key) {
  const Json& j = req(args, key);
  if (!j.is_array()) usage(std::string("argument \"") + key + "\" must be an array of integers");
  std::vector<long> out;
  for (const auto& x : j) out.push_back(get_long(x, key));
  return out;
}

Rational arg_rational(const Json& args, const char* key) { return rational_from_json(req(args, key)); }

std::vector<Rational> arg_rationals(const Json& args, const char* key) {
  const Json& j = req(args, key);
  if (!j.is_array()) usage(std::string("argument \"") + key + "\" must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

std::uint32_t arg_degree(const Json& args, const char* key) {
  long u = arg_long(args, key);
  if (u < 0 || u > 1000) fail("BadDegree", std::string(key) + " must lie in 0..1000");
  return static_cast<std::uint32_t>(u);
}

/// 1-based member indices to 0-based.
IndexSet member_indices(const std::vector<long>& one_based, std::size_t q) {
  IndexSet out;
  for (long j : one_based) {
    if (j < 1 || static_cast<std::size_t>(j) > q)
      fail("IndexOutOfRange", "member index " + std::to_string(j) + " outside 1.." + std::to_string(q));
    out.push_back(static_cast<std::size_t>(j - 1));
  }
  return out;
}

Json one_based(const IndexSet& s) {
  Json out = Json::array();
  for (std::size_t j : s) out.push_back(j + 1);
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json opt_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

RationalPoint point_from(const Json& j) {
  if (!j.is_array()) usage("point must be an array of integers");
  std::vector<Integer> c;
  for (const auto& x : j) {
    if (x.is_number_integer()) {
      c.emplace_back(x.dump());
    } else if (x.is_string()) {
      Rational r = parse_rational(x.get<std::string>());
      if (r.get_den() != 1) usage("point coordinates must be integers");
      c.push_back(r.get_num());
    } else {
      usage("point coordinates must be integers");
    }
  }
  return RationalPoint(std::move(c));
}

Place place_from(const Json& j) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinite")) return Place::infinite();
  if (j.is_number_integer()) return Place::finite(Integer(j.dump()));
  if (j.is_string()) return Place::finite(Integer(parse_rational(j.get<std::string>()).get_num()));
  usage("place must be \"inf\" or a prime");
}

const Variety& need_variety(const Session* s) {
  if (!s || !s->variety) usage("this operation needs a configuration");
  return *s->variety;
}

const HypersurfaceFamily& need_family(const Session* s) {
  need_variety(s);
  if (!s->family) usage("the configuration has no family");
  return *s->family;
}

IndexSet ordering_arg(const Json& args, std::size_t q) {
  IndexSet order;
  if (has(args, "ordering")) return member_indices(arg_longs(args, "ordering"), q);
  for (std::size_t j = 0; j < q; ++j) order.push_back(j);
  return order;
}

Json dims_json(const std::vector<Dimension>& dims) {
  Json out = Json::array();
  for (const auto& d : dims) out.push_back(to_json(d));
  return out;
}

Json profile_json(const DimensionProfile& p) {
  return Json{{"ordering", one_based(p.ordering)},
              {"t_values", p.t_values},
              {"l", p.l_value},
              {"prefix_dims", dims_json(p.prefix_dims)}};
}

Json monomials_json(const std::vector<Monomial>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(m.exponents());
  return out;
}

// ---- operations -----------------------------------------------------------

Json op_parse(const Json& args) {
  long vars = arg_long(args, "vars");
  if (vars < 1) usage("vars must be positive");
  HomoPoly p = poly_from_json(req(args, "poly"), static_cast<std::size_t>(vars));
  Json out{{"poly", to_json(p)}, {"text", p.to_string()}};
  out["degree"] = p.is_zero() ? Json(nullptr) : Json(p.degree());
  return out;
}

Json op_dim(const Session* s, const Json& args) {
  const Variety& v = need_variety(s);
  if (has(args, "subset")) {
    const auto& fam = need_family(s);
    IndexSet sub = member_indices(arg_longs(args, "subset"), fam.size());
    return Json{{"subset", one_based(sub)}, {"dimension", to_json(intersection_dimension(v, fam, sub))}};
  }
  IdealProfile prof = ideal_profile(v.basis());
  Json hil = Json::array();
  for (const auto& [u, h] : prof.hilbert_values) hil.push_back(Json{{"u", u}, {"h", h}});
  return Json{{"ambient", v.ambient_dimension()},
              {"dimension", v.dimension()},
              {"degree", v.degree()},
              {"basis", to_json(v.basis())},
              {"hilbert", std::move(hil)}};
}

Json op_delta(const Session* s, const Json& args) {
  const auto& fam = need_family(s);
  DistributiveOptions opts{s->subset_cap, arg_bool(args, "table", false)};
  DistributiveReport r = distributive_constant(*s->variety, fam, opts);
  Json out{{"delta", to_json(r.delta)},
           {"witness", one_based(r.witness)},
           {"empty_subsets_skipped", r.empty_subsets_skipped},
           {"empty_subsets", "excluded"},
           {"singleton_anomalies", one_based(r.singleton_anomalies)}};
  if (opts.with_table) {
    Json rows = Json::array();
    for (const auto& row : r.per_subset)
      rows.push_back(Json{{"subset", one_based(row.subset)},
                          {"dimension", to_json(row.dimension)},
                          {"ratio", opt_rational(row.ratio)}});
    out["per_subset"] = std::move(rows);
  }
  return out;
}

Json op_classify(const Session* s, const Json&) {
  const auto& fam = need_family(s);
  const Variety& v = *s->variety;
  SubsetDimensions table(v, fam, s->subset_cap);
  PositionClass cls = classify_position(v, table);
  DistributiveReport dr = distributive_constant(v, table);
  BoundSet b = remark_bounds(v, cls);
  Json t = Json::array();
  for (const auto& x : cls.t_vector) t.push_back(x ? Json(*x) : Json(nullptr));
  auto bound = [&](const std::optional<Rational>& x) {
    if (!x) return Json(nullptr);
    return Json{{"value", to_json(*x)}, {"holds", dr.delta <= *x}};
  };
  return Json{{"l", cls.l ? Json(*cls.l) : Json(nullptr)},
              {"general_position", cls.general_position},
              {"kappa", cls.kappa},
              {"t_vector", std::move(t)},
              {"delta", to_json(dr.delta)},
              {"bounds",
               Json{{"general", bound(b.general)},
                    {"subgeneral", bound(b.subgeneral)},
                    {"t_vector", bound(b.t_vector)},
                    {"index", bound(b.index)}}}};
}

Json op_profile(const Session* s, const Json& args) {
  const auto& fam = need_family(s);
  return profile_json(dimension_profile(*s->variety, fam, ordering_arg(args, fam.size())));
}

Json op_replace(const Session* s, const Json& args) {
  const auto& fam = need_family(s);
  const Variety& v = *s->variety;
  DimensionProfile prof = dimension_profile(v, fam, ordering_arg(args, fam.size()));
  ReplacementOptions opts;
  opts.seed = static_cast<std::uint64_t>(arg_long(args, "seed", static_cast<long>(s->seed)));
  opts.pool_bound = arg_long(args, "pool_bound", s->pool_bound);
  if (opts.pool_bound < 1) usage("pool_bound must be positive");
  ReplacementSystem sys = build_replacement(v, fam, prof, opts);
  ReplacementVerdict verdict = verify_replacement(v, sys);
  Json matrix = Json::array();
  for (const auto& row : sys.coeff_matrix) matrix.push_back(rationals_json(row));
  Json polys = Json::array();
  for (const auto& p : sys.replacements) polys.push_back(p.to_string());
  return Json{{"profile", profile_json(sys.source_profile)},
              {"seed", opts.seed},
              {"pool_bound", opts.pool_bound},
              {"coefficient_matrix", std::move(matrix)},
              {"replacements", std::move(polys)},
              {"verdict",
               Json{{"prefix_dims", dims_json(verdict.prefix_dims)},
                    {"step_ok", verdict.step_ok},
                    {"span_ok", verdict.span_ok},
                    {"ok", verdict.ok}}}};
}

Json schedule_json(const ExponentSchedule& s) {
  return Json{{"t_values", s.t_values},
              {"delta", to_json(s.delta)},
              {"m_values", rationals_json(s.m_values)},
              {"argmax", s.argmax}};
}

Json op_schedule(const Json& args) {
  auto t = arg_longs(args, "t");
  return schedule_json(exponent_schedule(t));
}

Json op_ineq(const Json& args) {
  auto t = arg_longs(args, "t");
  auto a = arg_rationals(args, "a");
  PowerInequality r = verify_power_inequality(t, a);
  return Json{{"schedule", schedule_json(r.schedule)},
              {"lhs", to_json(r.lhs)},
              {"rhs_base", to_json(r.rhs_base)},
              {"lhs_raised", to_json(r.lhs_raised)},
              {"rhs_raised", to_json(r.rhs_raised)},
              {"holds", r.holds},
              {"equality", r.equality},
              {"chain_holds", r.chain_holds}};
}

Json op_hilbert(const Session* s, const Json& args) {
  const Variety& v = need_variety(s);
  std::uint32_t u_max = has(args, "u_max") ? arg_degree(args, "u_max") : 6;
  Json values = Json::array();
  for (std::uint32_t u = 0; u <= u_max; ++u) values.push_back(Json{{"u", u}, {"h", hilbert_function(v.basis(), u)}});
  return Json{{"dimension", v.dimension()}, {"degree", v.degree()}, {"values", std::move(values)}};
}

Json op_hweight(const Session* s, const Json& args) {
  const Variety& v = need_variety(s);
  std::uint32_t u = arg_degree(args, "u");
  auto c = arg_rationals(args, "c");
  HilbertWeightReport r = hilbert_weight(v, u, c);
  Json out{{"u", r.u}, {"hilbert", r.hilbert}, {"weight", to_json(r.weight)}, {"basis", monomials_json(r.basis)}};
  if (arg_bool(args, "oracle", false)) {
    BruteForceWeight b = hilbert_weight_bruteforce(v, u, c, s->oracle_cap);
    out["oracle"] = Json{{"weight", to_json(b.weight)},
                         {"basis", monomials_json(b.basis)},
                         {"bases_checked", b.bases_checked},
                         {"agrees", b.weight == r.weight}};
  }
  return out;
}

Json op_efcheck(const Session* s, const Json& args) {
  const Variety& v = need_variety(s);
  std::uint32_t u = arg_degree(args, "u");
  auto c = arg_rationals(args, "c");
  std::vector<std::size_t> coords;
  for (long i : arg_longs(args, "subset")) {
    if (i < 0) fail("BadSubset", "coordinate indices are non-negative");
    coords.push_back(static_cast<std::size_t>(i));
  }
  EfCheck r = ef_lower_bound_check(v, u, c, coords);
  return Json{{"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"weight", to_json(r.weight)},
              {"hilbert", r.hilbert},
              {"holds", r.holds}};
}

Json op_m0(const Json& args) {
  M0Input in;
  in.n = arg_long(args, "n");
  in.d = arg_long(args, "d");
  in.deg_v = arg_long(args, "degv");
  in.q = arg_long(args, "q");
  in.eps = arg_rational(args, "eps");
  std::string formula = has(args, "formula") ? req(args, "formula").get<std::string>() : "distributive";
  if (formula == "distributive") {
    in.delta = arg_rational(args, "delta");
  } else if (formula == "subgeneral") {
    in.formula = M0Formula::Subgeneral;
    in.l = arg_long(args, "l");
    if (has(args, "delta")) in.delta = arg_rational(args, "delta");
  } else {
    usage("formula must be \"distributive\" or \"subgeneral\"");
  }
  if (in.n > 64 || in.q > 1000 || in.d > 1000000 || in.deg_v > 1000000)
    fail("BadParameters", "parameters exceed the supported range");
  BoundReport r = truncation_m0(in);
  Json m0 = r.m0.fits_ulong_p() ? Json(r.m0.get_ui()) : Json(r.m0.get_str());
  bool with_delta = in.formula == M0Formula::Distributive || has(args, "delta");
  Json out{{"m0", std::move(m0)},
              {"formula", formula},
              {"rational_factor", to_json(r.rational_factor)},
              {"enclosure_low_approx", r.enclosure_low},
              {"enclosure_high_approx", r.enclosure_high},
              {"precision_bits", r.precision_bits},
              {"defect_total", with_delta ? to_json(r.defect_total) : Json(nullptr)},
              {"coefficient", with_delta ? to_json(r.coefficient) : Json(nullptr)}};
  return out;
}

Json op_compare(const Json& args) {
  ComparisonTable t = compare_bounds(arg_long(args, "n"), arg_long(args, "N"), arg_long(args, "l"),
                                     arg_long(args, "kappa"), arg_long(args, "q", 0));
  Json entries = Json::array();
  for (const auto& e : t.entries)
    entries.push_back(Json{{"name", e.name}, {"total", opt_rational(e.total)}, {"distributive_better", e.distributive_better}});
  return Json{{"distributive", to_json(t.distributive)}, {"entries", std::move(entries)}};
}

Json log_json(const LogRational& x) { return Json{{"argument", to_json(x.argument)}, {"value_approx", x.render()}}; }

Json op_height(const Json& args) {
  if (has(args, "point")) {
    RationalPoint x = point_from(req(args, "point"));
    Json out = log_json(height_point(x));
    out["point"] = x.to_string();
    return out;
  }
  if (has(args, "poly")) {
    HomoPoly q = poly_from_json(req(args, "poly"), static_cast<std::size_t>(arg_long(args, "vars")));
    Json out = log_json(height_poly(q));
    Json places = Json::array();
    for (const auto& v : poly_places(q))
      places.push_back(Json{{"place", v.to_string()}, {"norm", to_json(poly_norm(q, v))}});
    out["places"] = std::move(places);
    return out;
  }
  if (has(args, "x")) return log_json(height_scalar(arg_rational(args, "x")));
  usage("height needs \"point\", \"poly\" or \"x\"");
}

Json op_weil(const Json& args) {
  RationalPoint x = point_from(req(args, "point"));
  HomoPoly q = poly_from_json(req(args, "poly"), x.size());
  const Json& pj = has(args, "place") ? args.at("place") : Json("all");
  if (pj.is_string() && pj.get<std::string>() == "all") {
    WeilSum w = weil_sum_all_places(q, x);
    Json places = Json::array();
    for (std::size_t i = 0; i < w.places.size(); ++i)
      places.push_back(Json{{"place", w.places[i].to_string()}, {"argument", to_json(w.values[i].argument)}});
    return Json{{"places", std::move(places)},
                {"total", log_json(w.total)},
                {"expected", log_json(w.expected)},
                {"identity_holds", w.identity_holds},
                {"finite_nonnegative", w.finite_nonnegative}};
  }
  Place v = place_from(pj);
  Json out = log_json(weil_function(q, x, v));
  out["place"] = v.to_string();
  return out;
}

Json op_pfcheck(const Json& args) {
  ProductFormulaCheck c = product_formula_check(arg_rational(args, "x"));
  Json places = Json::array();
  for (std::size_t i = 0; i < c.places.size(); ++i)
    places.push_back(Json{{"place", c.places[i].to_string()}, {"abs", to_json(c.factors[i])}});
  return Json{{"product", to_json(c.product)}, {"ok", c.ok}, {"places", std::move(places)}};
}

Json op_margin(const Session* s, const Json& args) {
  const auto& fam = need_family(s);
  const Variety& v = *s->variety;
  Rational eps = arg_rational(args, "eps");
  Rational delta = has(args, "delta") ? arg_rational(args, "delta")
                                      : distributive_constant(v, fam, {s->subset_cap, false}).delta;
  std::vector<Place> places{Place::infinite()};
  if (has(args, "primes")) {
    for (long p : arg_longs(args, "primes")) places.push_back(Place::finite(Integer(p)));
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
  } else {
    places = default_places();
  }
  std::vector<RationalPoint> points;
  if (has(args, "points")) {
    for (const auto& p : req(args, "points")) points.push_back(point_from(p));
  } else if (has(args, "sample")) {
    long count = arg_long(args, "sample");
    if (count < 1 || count > 100000) usage("sample must lie in 1..100000");
    points = sample_points(v, fam.members(), static_cast<std::size_t>(count), arg_long(args, "min_height", 2));
  } else {
    usage("margin needs \"points\" or \"sample\"");
  }
  MarginSummary sum = theorem15_margin(v, fam, delta, eps, places, points);
  Json reports = Json::array();
  for (const auto& r : sum.reports)
    reports.push_back(Json{{"point", r.point.to_string()},
                           {"height_argument", to_json(r.height_argument)},
                           {"lhs_argument", to_json(r.lhs_argument)},
                           {"lhs_root", r.lhs_root},
                           {"multiplier", to_json(r.multiplier)},
                           {"lhs_approx", r.lhs_approx},
                           {"rhs_approx", r.rhs_approx},
                           {"slack_approx", r.slack_approx},
                           {"slack_sign", r.slack_sign}});
  Json pl = Json::array();
  for (const auto& p : places) pl.push_back(p.to_string());
  Json cand = Json::array();
  for (std::size_t k : sum.exceptional_candidates) cand.push_back(Json{{"index", k + 1}, {"point", sum.reports[k].point.to_string()}});
  return Json{{"delta", to_json(delta)},
              {"eps", to_json(eps)},
              {"places", std::move(pl)},
              {"count", sum.reports.size()},
              {"min_slack_index", sum.min_slack_index ? Json(*sum.min_slack_index + 1) : Json(nullptr)},
              {"exceptional_candidates", std::move(cand)},
              {"reports", std::move(reports)}};
}

}  // namespace

bool operation_needs_session(const std::string& op) { return session_ops().count(op) > 0; }
bool is_operation(const std::string& op) { return session_ops().count(op) || free_ops().count(op); }

Session open_session(const Json& config) {
  if (!config.is_object()) usage("configuration must be a JSON object");
  Session s;
  long ambient = arg_long(config, "ambient");
  if (ambient < 1 || ambient > 62) fail("BadParameters", "ambient N must lie in 1..62");
  s.num_vars = static_cast<std::size_t>(ambient) + 1;
  s.seed = static_cast<std::uint64_t>(arg_long(config, "seed", 0));
  long cap = arg_long(config, "subset_cap", 14);
  long ocap = arg_long(config, "oracle_cap", 16);
  s.pool_bound = arg_long(config, "pool_bound", 8);
  if (cap < 1 || cap > 24 || ocap < 1 || s.pool_bound < 1) usage("caps must be positive (subset_cap at most 24)");
  s.subset_cap = static_cast<std::size_t>(cap);
  s.oracle_cap = static_cast<std::size_t>(ocap);

  std::vector<HomoPoly> gens;
  if (has(config, "variety")) {
    if (!config.at("variety").is_array()) usage("\"variety\" must be an array");
    for (const auto& g : config.at("variety")) {
      HomoPoly p = poly_from_json(g, s.num_vars);
      if (!p.is_zero()) gens.push_back(std::move(p));
    }
  }
  std::optional<std::filesystem::path> dir;
  if (arg_bool(config, "cache", true)) {
    if (has(config, "cache_dir"))
      dir = std::filesystem::path(config.at("cache_dir").get<std::string>());
    else
      dir = default_cache_dir();
  }
  GbCache cache(dir);
  GroebnerBasis gb = cache.basis(gens, s.num_vars, MonomialOrder::grevlex());
  s.variety = variety_from_basis(std::move(gens), std::move(gb));

  if (has(config, "family")) {
    if (!config.at("family").is_array()) usage("\"family\" must be an array");
    std::vector<HomoPoly> members;
    for (const auto& g : config.at("family")) members.push_back(poly_from_json(g, s.num_vars));
    s.family = build_family(*s.variety, std::move(members));
  }
  return s;
}

Json call_operation(const Session* s, const std::string& op, const Json& args) {
  if (!args.is_object()) usage("arguments must be a JSON object");
  if (op == "parse") return op_parse(args);
  if (op == "dim") return op_dim(s, args);
  if (op == "delta") return op_delta(s, args);
  if (op == "classify") return op_classify(s, args);
  if (op == "profile") return op_profile(s, args);
  if (op == "replace") return op_replace(s, args);
  if (op == "schedule") return op_schedule(args);
  if (op == "ineq") return op_ineq(args);
  if (op == "hilbert") return op_hilbert(s, args);
  if (op == "hweight") return op_hweight(s, args);
  if (op == "efcheck") return op_efcheck(s, args);
  if (op == "m0") return op_m0(args);
  if (op == "compare") return op_compare(args);
  if (op == "height") return op_height(args);
  if (op == "weil") return op_weil(args);
  if (op == "pfcheck") return op_pfcheck(args);
  if (op == "margin") return op_margin(s, args);
  usage("unknown operation \"" + op + "\"");
}

}  // namespace hypdist
