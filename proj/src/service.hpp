#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gbcache.hpp"
#include "json_io.hpp"
#include "position.hpp"

namespace hypdist {

/// A loaded configuration: V, the optional family, and run options.
struct Session {
  std::size_t num_vars = 0;
  std::optional<Variety> variety;
  std::optional<HypersurfaceFamily> family;
  std::uint64_t seed = 0;
  std::size_t subset_cap = 14;
  std::size_t oracle_cap = 16;
  long pool_bound = 8;
};

/// Config: {"ambient": N, "variety": [poly...], "family": [poly...], "seed",
/// "subset_cap", "oracle_cap", "pool_bound", "cache": bool, "cache_dir"}.
/// An empty or absent variety list means V = P^N.
Session open_session(const Json& config);

/// Operations that need no session.
bool operation_needs_session(const std::string& op);
bool is_operation(const std::string& op);

/// Runs one operation. Throws UsageError, DomainError or InvariantBreach.
Json call_operation(const Session* session, const std::string& op, const Json& args);

}  // namespace hypdist
