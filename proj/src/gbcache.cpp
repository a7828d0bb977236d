#include "gbcache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "errors.hpp"
#include "json_io.hpp"

namespace hypdist {

namespace fs = std::filesystem;

std::optional<fs::path> default_cache_dir() {
  if (const char* d = std::getenv("HYPDIST_CACHE_DIR"); d && *d) return fs::path(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "hypdist";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "hypdist";
  return std::nullopt;
}

std::string GbCache::key(std::span<const HomoPoly> gens, std::size_t num_vars, const MonomialOrder& order) {
  Json gj = Json::array();
  for (const auto& g : gens) gj.push_back(to_json(g));
  GroebnerBasis probe(num_vars, order);
  Json doc{{"vars", num_vars}, {"order", to_json(probe).at("order")}, {"generators", std::move(gj)}};
  return sha256_hex(doc.dump());
}

namespace {

std::optional<GroebnerBasis> load(const fs::path& file, std::span<const HomoPoly> gens, std::size_t num_vars,
                                  const MonomialOrder& order) {
  try {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str());
    if (j.at("vars").get<std::size_t>() != num_vars || !(order_from_json(j.at("order")) == order))
      return std::nullopt;
    std::vector<HomoPoly> polys;
    for (const auto& g : j.at("generators")) polys.push_back(poly_from_json(g, num_vars));
    GroebnerBasis gb = groebner_from_reduced(num_vars, order, std::move(polys));
    if (!satisfies_buchberger_criterion(gb)) return std::nullopt;
    for (const auto& g : gens)
      if (!normal_form(g, gb).is_zero()) return std::nullopt;
    return gb;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store(const fs::path& dir, const fs::path& file, const GroebnerBasis& gb) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || fs::exists(file, ec)) return;
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << to_json(gb).dump() << "\n";
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  // link() refuses to replace an existing entry.
  int rc = ::link(tmp.c_str(), file.c_str());
  (void)rc;
  fs::remove(tmp, ec);
}

}  // namespace

GroebnerBasis GbCache::basis(std::span<const HomoPoly> gens, std::size_t num_vars, const MonomialOrder& order,
                             CacheOutcome* outcome) const {
  auto set = [&](CacheOutcome o) {
    if (outcome) *outcome = o;
  };
  if (!dir_) {
    set(CacheOutcome::Disabled);
    return groebner_basis(gens, num_vars, order);
  }
  const fs::path file = *dir_ / (key(gens, num_vars, order) + ".json");
  std::error_code ec;
  bool present = fs::exists(file, ec);
  if (present) {
    if (auto gb = load(file, gens, num_vars, order)) {
      set(CacheOutcome::Hit);
      return *gb;
    }
  }
  GroebnerBasis gb = groebner_basis(gens, num_vars, order);
  if (present) {
    set(CacheOutcome::Rejected);
  } else {
    set(CacheOutcome::Miss);
    store(*dir_, file, gb);
  }
  return gb;
}

}  // namespace hypdist
