#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace labsolve {

struct KnownOptimum {
  std::size_t n;
  std::int64_t energy;
  std::string provenance;  // "brute_forced" or "external"
};

/// The shipped table, sorted by N.
const std::vector<KnownOptimum>& known_optima();
std::optional<KnownOptimum> known_optimum(std::size_t n);

struct ResolvedTarget {
  std::int64_t energy;
  std::string source;  // flag, table:<provenance>, brute_force
  std::optional<std::string> warning;
};

/// Explicit target wins, then the table, then brute force when allowed.
/// Throws InvalidInput when no source is available.
ResolvedTarget resolve_target(std::size_t n, std::optional<std::int64_t> explicit_target,
                              bool allow_brute_force);

}  // namespace labsolve
