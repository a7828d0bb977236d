#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypdist/hypdist.h"

using Json = nlohmann::ordered_json;

namespace {

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long to_long(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageFailure("expected an integer, got \"" + s + "\"");
  }
}

Json longs(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) out.push_back(to_long(s));
  return out;
}

Json strings(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Json read_points(const std::string& text) {
  Json out = Json::array();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(longs(split(line)));
  }
  return out;
}

struct Request {
  std::string command;
  Json args = Json::object();
  std::string config_path;
  std::string points_path;
};

int emit(const Json& report) {
  std::cout << report.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributive constants, position classes and heights for hypersurface families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hd_version()));

  bool no_cache = false;
  bool timing = false;
  app.add_flag("--no-cache", no_cache, "Bypass the Groebner basis cache");
  app.add_flag("--timing", timing, "Add wall-clock milliseconds to the report");

  Request req;
  std::string s_poly, s_x, s_place, s_delta, s_eps, s_formula = "distributive";
  long vars = 0, u = 0, u_max = 6, n = 0, d = 0, degv = 0, q = 0, l = 0, ambient = 0, kappa = 0;
  long seed = 0, pool_bound = 0, sample = 0, min_height = 2;
  std::vector<std::string> v_subset, v_ordering, v_t, v_a, v_c, v_point, v_primes;
  bool table = false, oracle = false;

  auto config_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--config,--variety", req.config_path, "Session configuration JSON")->check(CLI::ExistingFile);
    if (required) o->required();
  };

  auto* parse = app.add_subcommand("parse", "Parse a homogeneous polynomial");
  parse->add_option("--poly", s_poly)->required();
  parse->add_option("--vars", vars, "Number of variables N+1")->required();

  auto* dim = app.add_subcommand("dim", "Dimension and degree of V, or of V cut by a subset");
  config_opt(dim, true);
  dim->add_option("--subset", v_subset, "1-based member indices")->delimiter(',');

  auto* delta = app.add_subcommand("delta", "Distributive constant of the family");
  config_opt(delta, true);
  delta->add_flag("--table", table, "Include the per-subset table");

  auto* classify = app.add_subcommand("classify", "Position class and remark bounds");
  config_opt(classify, true);

  auto* profile = app.add_subcommand("profile", "Dimension profile of an ordering");
  config_opt(profile, true);
  profile->add_option("--ordering", v_ordering, "1-based permutation")->delimiter(',');

  auto* replace = app.add_subcommand("replace", "Replacement system P_0..P_n");
  config_opt(replace, true);
  replace->add_option("--ordering", v_ordering)->delimiter(',');
  auto* seed_opt = replace->add_option("--seed", seed, "Seed for the fallback search");
  auto* pool_opt = replace->add_option("--pool-bound", pool_bound, "Coefficient bound B");

  auto* schedule = app.add_subcommand("schedule", "Exponent schedule of t_0 < ... < t_n");
  schedule->add_option("--t", v_t)->delimiter(',')->required();

  auto* ineq = app.add_subcommand("ineq", "Power inequality for t and a_0 >= ... >= a_{n-1} >= 1");
  ineq->add_option("--t", v_t)->delimiter(',')->required();
  ineq->add_option("--a", v_a)->delimiter(',')->required();

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of V");
  config_opt(hilbert, true);
  hilbert->add_option("--u-max", u_max);

  auto* hweight = app.add_subcommand("hweight", "Hilbert weight S_V(u, c)");
  config_opt(hweight, true);
  hweight->add_option("--u", u)->required();
  hweight->add_option("--c", v_c)->delimiter(',')->required();
  hweight->add_flag("--oracle", oracle, "Also run the brute-force oracle");

  auto* efcheck = app.add_subcommand("efcheck", "Chained lower bound for the Hilbert weight");
  config_opt(efcheck, true);
  efcheck->add_option("--u", u)->required();
  efcheck->add_option("--c", v_c)->delimiter(',')->required();
  efcheck->add_option("--subset", v_subset, "n+1 coordinate indices (0-based)")->delimiter(',')->required();

  auto* m0 = app.add_subcommand("m0", "Truncation level M0");
  m0->add_option("--n", n)->required();
  m0->add_option("--d", d)->required();
  m0->add_option("--degv", degv)->required();
  m0->add_option("--delta", s_delta);
  m0->add_option("--q", q)->required();
  m0->add_option("--eps", s_eps)->required();
  m0->add_option("--l", l);
  m0->add_option("--formula", s_formula)->check(CLI::IsMember({"distributive", "subgeneral"}));

  auto* compare = app.add_subcommand("compare", "Total defect bounds side by side");
  compare->add_option("--n", n)->required();
  compare->add_option("--N", ambient)->required();
  compare->add_option("--l", l)->required();
  compare->add_option("--kappa", kappa)->required();
  compare->add_option("--q", q);

  auto* height = app.add_subcommand("height", "Height of a point, polynomial or scalar");
  auto* h_point = height->add_option("--point", v_point)->delimiter(',');
  auto* h_poly = height->add_option("--poly", s_poly);
  height->add_option("--vars", vars);
  auto* h_x = height->add_option("--x", s_x);
  h_point->excludes(h_poly)->excludes(h_x);
  h_poly->excludes(h_x);

  auto* weil = app.add_subcommand("weil", "Weil function at one place or summed over all places");
  weil->add_option("--poly", s_poly)->required();
  weil->add_option("--point", v_point)->delimiter(',')->required();
  weil->add_option("--place", s_place, "inf, a prime, or all (default)");

  auto* pfcheck = app.add_subcommand("pfcheck", "Product formula for a nonzero rational");
  pfcheck->add_option("--x", s_x)->required();

  auto* margin = app.add_subcommand("margin", "Empirical margin in the height inequality");
  config_opt(margin, true);
  auto* m_points = margin->add_option("--points", req.points_path, "One point per line")->check(CLI::ExistingFile);
  auto* m_sample = margin->add_option("--sample", sample, "Sample this many points instead");
  m_points->excludes(m_sample);
  margin->add_option("--min-height", min_height);
  margin->add_option("--eps", s_eps)->required();
  margin->add_option("--delta", s_delta, "Override the computed distributive constant");
  margin->add_option("--primes", v_primes)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : HD_ERR_USAGE;
  }

  CLI::App* sub = app.get_subcommands().front();
  req.command = sub->get_name();
  Json& a = req.args;
  std::string config_text, points_text;
  try {
    const std::string& c = req.command;
    if (c == "parse") {
      a["poly"] = s_poly;
      a["vars"] = vars;
    } else if (c == "dim") {
      if (!v_subset.empty()) a["subset"] = longs(v_subset);
    } else if (c == "delta") {
      if (table) a["table"] = true;
    } else if (c == "profile" || c == "replace") {
      if (!v_ordering.empty()) a["ordering"] = longs(v_ordering);
      if (c == "replace") {
        if (*seed_opt) a["seed"] = seed;
        if (*pool_opt) a["pool_bound"] = pool_bound;
      }
    } else if (c == "schedule") {
      a["t"] = longs(v_t);
    } else if (c == "ineq") {
      a["t"] = longs(v_t);
      a["a"] = strings(v_a);
    } else if (c == "hilbert") {
      a["u_max"] = u_max;
    } else if (c == "hweight" || c == "efcheck") {
      a["u"] = u;
      a["c"] = strings(v_c);
      if (c == "hweight" && oracle) a["oracle"] = true;
      if (c == "efcheck") a["subset"] = longs(v_subset);
    } else if (c == "m0") {
      a["n"] = n;
      a["d"] = d;
      a["degv"] = degv;
      a["q"] = q;
      a["eps"] = s_eps;
      a["formula"] = s_formula;
      if (s_formula == "distributive") {
        if (s_delta.empty()) throw UsageFailure("--delta is required for the distributive formula");
        a["delta"] = s_delta;
      } else {
        a["l"] = l;
        if (!s_delta.empty()) a["delta"] = s_delta;
      }
    } else if (c == "compare") {
      a["n"] = n;
      a["N"] = ambient;
      a["l"] = l;
      a["kappa"] = kappa;
      a["q"] = q;
    } else if (c == "height") {
      if (!v_point.empty()) {
        a["point"] = strings(v_point);
      } else if (!s_poly.empty()) {
        if (vars < 1) throw UsageFailure("--vars is required with --poly");
        a["poly"] = s_poly;
        a["vars"] = vars;
      } else if (!s_x.empty()) {
        a["x"] = s_x;
      } else {
        throw UsageFailure("height needs --point, --poly or --x");
      }
    } else if (c == "weil") {
      a["poly"] = s_poly;
      a["point"] = strings(v_point);
      a["place"] = s_place.empty() ? "all" : s_place;
    } else if (c == "pfcheck") {
      a["x"] = s_x;
    } else if (c == "margin") {
      a["eps"] = s_eps;
      if (!s_delta.empty()) a["delta"] = s_delta;
      if (!v_primes.empty()) a["primes"] = longs(v_primes);
      if (!req.points_path.empty()) {
        points_text = read_file(req.points_path);
        a["points"] = read_points(points_text);
      } else if (*m_sample) {
        a["sample"] = sample;
        a["min_height"] = min_height;
      } else {
        throw UsageFailure("margin needs --points or --sample");
      }
    }
    if (!req.config_path.empty()) config_text = read_file(req.config_path);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return HD_ERR_USAGE;
  }

  std::string digest_input = req.command + "\n" + a.dump() + "\n" + config_text + "\n" + points_text;
  char digest[65];
  hd_sha256_hex(digest_input.data(), digest_input.size(), digest);

  Json report;
  report["command"] = req.command;
  report["input_digest"] = std::string(digest);
  report["version"] = hd_version();

  auto fail_with = [&](int code) {
    report["error"] = Json{{"name", hd_last_error_name()}, {"message", hd_last_error_message()}};
    std::cerr << "error: " << hd_last_error_name() << ": " << hd_last_error_message() << "\n";
    std::cout << report.dump() << "\n";
    return code;
  };

  auto start = std::chrono::steady_clock::now();
  hd_session* session = nullptr;
  if (!config_text.empty()) {
    std::string cfg = config_text;
    if (no_cache) {
      Json cj = Json::parse(config_text, nullptr, false);
      if (cj.is_discarded() || !cj.is_object()) {
        std::cerr << "error: configuration is not a JSON object\n";
        return HD_ERR_USAGE;
      }
      cj["cache"] = false;
      cfg = cj.dump();
    }
    int rc = hd_session_open(cfg.c_str(), &session);
    if (rc != HD_OK) return fail_with(rc);
  }
  char* out = nullptr;
  int rc = hd_call(session, req.command.c_str(), a.dump().c_str(), &out);
  hd_session_free(session);
  if (rc != HD_OK) return fail_with(rc);
  report["result"] = Json::parse(out);
  hd_string_free(out);
  if (timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms_approx"] = ms;
  }
  return emit(report);
}
