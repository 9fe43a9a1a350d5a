#include "labs/known_optima.hpp"

#include <algorithm>

#include <json.hpp>

#include "labs/core.hpp"
#include "labs/errors.hpp"

namespace labsolve {

namespace detail {
extern const char* const kKnownOptimaJson;
}

const std::vector<KnownOptimum>& known_optima() {
  static const std::vector<KnownOptimum> table = [] {
    std::vector<KnownOptimum> out;
    const auto doc = nlohmann::json::parse(detail::kKnownOptimaJson);
    for (const auto& e : doc.at("entries")) {
      out.push_back({e.at("n").get<std::size_t>(), e.at("energy").get<std::int64_t>(),
                     e.at("provenance").get<std::string>()});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    return out;
  }();
  return table;
}

std::optional<KnownOptimum> known_optimum(std::size_t n) {
  const auto& t = known_optima();
  auto it = std::lower_bound(t.begin(), t.end(), n, [](const auto& e, std::size_t v) { return e.n < v; });
  if (it == t.end() || it->n != n) return std::nullopt;
  return *it;
}

ResolvedTarget resolve_target(std::size_t n, std::optional<std::int64_t> explicit_target,
                              bool allow_brute_force) {
  const auto entry = known_optimum(n);
  if (explicit_target) {
    if (*explicit_target < 0) throw InvalidInput("target energy must be non-negative");
    ResolvedTarget r{*explicit_target, "flag", std::nullopt};
    if (entry && *explicit_target > entry->energy) {
      r.warning = "above known optimum (" + std::to_string(entry->energy) + ")";
    } else if (entry && *explicit_target < entry->energy) {
      r.warning = "below known optimum (" + std::to_string(entry->energy) + "); runs cannot succeed";
    }
    return r;
  }
  if (entry) return {entry->energy, "table:" + entry->provenance, std::nullopt};
  if (allow_brute_force && n <= kBruteForceCap) {
    return {brute_force_optimum(n).optimal_energy, "brute_force", std::nullopt};
  }
  throw InvalidInput("no target energy for N=" + std::to_string(n) +
                     ": pass --target, or --target-auto with N <= " + std::to_string(kBruteForceCap));
}

}  // namespace labsolve
