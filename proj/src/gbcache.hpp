#pragma once

#include <filesystem>
#include <optional>
#include <span>

#include "groebner.hpp"

namespace hypdist {

/// HYPDIST_CACHE_DIR, else $XDG_CACHE_HOME/hypdist, else $HOME/.cache/hypdist.
std::optional<std::filesystem::path> default_cache_dir();

enum class CacheOutcome { Disabled, Hit, Miss, Rejected };

/// Content-addressed store of reduced bases, one write-once file per key.
/// Loaded entries are trusted only after the Buchberger criterion holds and
/// every input generator reduces to zero; otherwise the basis is recomputed.
class GbCache {
 public:
  explicit GbCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  GroebnerBasis basis(std::span<const HomoPoly> gens, std::size_t num_vars, const MonomialOrder& order,
                      CacheOutcome* outcome = nullptr) const;

  static std::string key(std::span<const HomoPoly> gens, std::size_t num_vars, const MonomialOrder& order);

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace hypdist
