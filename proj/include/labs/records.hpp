#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "labs/search.hpp"

namespace labsolve {

inline constexpr const char* kToolVersion = LABS_VERSION;

struct RunKey {
  std::size_t n;
  Method method;
  std::uint64_t replicate;
  std::uint64_t seed;

  friend auto operator<=>(const RunKey&, const RunKey&) = default;
};

/// One (N, method, replicate, seed) search run.
struct RunRecord {
  std::size_t n = 0;
  Method method = Method::mts;
  std::uint64_t replicate_id = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> evals_to_solution;
  std::int64_t best_energy = 0;
  std::int64_t target_energy = 0;
  bool found_optimum = false;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  std::string best_sequence;
  double wall_clock_classical = 0.0;  // seconds
  double wall_clock_quantum = 0.0;    // seconds, 0 for mts
  nlohmann::json metadata = nlohmann::json::object();

  RunKey key() const { return {n, method, replicate_id, seed}; }
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

std::vector<RunRecord> read_run_records(const std::filesystem::path& path);
void append_run_records(const std::filesystem::path& path, const std::vector<RunRecord>& records);

/// Records sorted by key with timing and metadata.execution dropped, one JSON
/// object per line.
/// Two executions of the same grid produce byte-identical canonical text.
std::string canonical_jsonl(std::vector<RunRecord> records);

}  // namespace labsolve
