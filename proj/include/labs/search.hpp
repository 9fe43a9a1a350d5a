#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labs/core.hpp"
#include "labs/rng.hpp"
#include "labs/statevector.hpp"

namespace labsolve {

/// Counts objective evaluations: one per candidate energy determination,
/// whether from a full recompute or a one-flip delta.
class EvaluationCounter {
 public:
  void add(std::uint64_t k = 1) noexcept { count_ += k; }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_ = 0;
};

struct SearchParams {
  std::size_t population_size = 100;  // K
  double p_comb = 0.9;
  std::optional<double> p_mut;        // defaults to 1/N
  std::size_t tournament_size = 2;
  std::uint64_t max_generations = 1'000'000;
  std::int64_t target_energy = 0;
  /// Upper bound on evaluations; 0 means unlimited.
  std::uint64_t max_evaluations = 0;
  /// Score neighbours by O(N) deltas (true) or by full recomputation.
  bool incremental = true;

  double mutation_rate(std::size_t n) const { return p_mut.value_or(1.0 / static_cast<double>(n)); }
  void validate() const;
};

/// Tenure interval for a tabu budget M: [max(1, ⌊M/50⌋), max(min, ⌊M/10⌋)].
struct TabuTenure {
  std::int64_t min;
  std::int64_t max;
};
TabuTenure tabu_tenure(std::int64_t budget);

struct TabuOptions {
  bool incremental = true;
  /// Return as soon as the best-seen energy reaches this value.
  std::optional<std::int64_t> stop_at;
};

struct TabuResult {
  SpinSequence best;
  std::int64_t best_energy;
  std::int64_t iterations;  // moves performed
  std::int64_t budget;      // M
};

/// One-flip tabu search with random budget M ∈ [⌊N/2⌋, N + ⌊N/2⌋], random
/// tenure, and aspiration on strict improvement of the best-seen energy.
/// Counts 1 evaluation for the start plus N per iteration.
TabuResult tabu_search(const SpinSequence& start, Rng& rng, EvaluationCounter& counter,
                       const TabuOptions& options = {});

/// Single-point crossover: p1[0..cut) ++ p2[cut..N), cut uniform in [1, N−1].
SpinSequence combine(const SpinSequence& p1, const SpinSequence& p2, Rng& rng);
SpinSequence combine_at(const SpinSequence& p1, const SpinSequence& p2, std::size_t cut);

/// Independent flips with probability p_mut.
SpinSequence mutate(const SpinSequence& seq, double p_mut, Rng& rng);

using Population = std::vector<SpinSequence>;

Population random_population(std::size_t n, std::size_t k, Rng& rng);

enum class SeedingVariant { single_best_replicated, multi_run_best };

/// Minimum-energy shot (first on ties) replicated K times.
Population qemts_seed_population(const ShotSet& shots, std::size_t k);
/// Each shot set's best bitstring, cycled to fill K slots.
Population qemts_seed_population(const std::vector<ShotSet>& runs, std::size_t k);

enum class Method { mts, qemts, qemts_multirun };
std::string to_string(Method m);
Method parse_method(const std::string& name);

struct SearchOutcome {
  SpinSequence best;
  std::int64_t best_energy;
  bool found_optimum;
  std::optional<std::uint64_t> evals_to_solution;
  std::uint64_t evaluations;
  std::uint64_t generations;
};

/// Memetic tabu search: tournament/crossover or copy, mutate, tabu-improve,
/// replace a random slot; stops at the target energy or max_generations.
SearchOutcome mts_run(const SearchParams& params, const Population& initial, Rng& rng);

}  // namespace labsolve
