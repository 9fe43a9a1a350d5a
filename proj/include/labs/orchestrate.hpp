#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "labs/cd.hpp"
#include "labs/records.hpp"
#include "labs/search.hpp"
#include "labs/stats.hpp"

namespace labsolve {

/// DCQO sampling used to seed QE-MTS populations when no shot files are given.
struct SamplerSettings {
  std::size_t shots = 1000;
  std::size_t n_trot = 100;
  Schedule schedule{};
  /// Independent shot sets per replicate for the multi-run variant (0 → K).
  std::size_t multirun_runs = 0;
};

struct Range {
  std::uint64_t begin = 0;  // inclusive
  std::uint64_t end = 0;    // exclusive
};

struct OrchestrateConfig {
  std::vector<std::size_t> n_values;
  std::vector<Method> methods{Method::mts};
  Range replicates{0, 1};
  Range seeds{0, 1};
  SearchParams params;  // target_energy is overwritten per N
  std::function<std::int64_t(std::size_t)> target_for;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 0;  // 0 → OpenMP default
  SamplerSettings sampler;
  /// Optional externally produced shot sets per N; replicate r uses set
  /// r mod size for qemts, and all sets for qemts_multirun.
  std::map<std::size_t, std::vector<ShotSet>> shot_sets;
  std::optional<std::filesystem::path> output;
  /// Stop after this many new runs (resume testing); 0 = no limit.
  std::size_t max_new_runs = 0;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Executes the (N, method, replicate, seed) grid. Every run gets its own RNG
/// stream derived from (master_seed, N, method, replicate, seed), so the
/// records do not depend on the worker count. Keys already present in the
/// output file are skipped and new records are appended in grid order.
TTSDataset orchestrate(const OrchestrateConfig& config);

/// The initial population a replicate starts from, plus the quantum wall time
/// spent producing it.
struct ReplicatePool {
  Population population;
  double quantum_seconds = 0.0;
};

ReplicatePool replicate_pool(const OrchestrateConfig& config, std::size_t n, Method method,
                             std::uint64_t replicate, const StateVector* dcqo_state);

}  // namespace labsolve
