#include "labs/orchestrate.hpp"

#include <chrono>
#include <memory>

#include <omp.h>

#include "labs/circuit.hpp"
#include "labs/errors.hpp"

namespace labsolve {

namespace {

enum StreamTag : std::uint64_t { kPopulation = 1, kShots = 2, kSearch = 3 };

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Task {
  std::size_t n;
  Method method;
  std::uint64_t replicate;
  std::uint64_t seed;
  std::size_t pool;  // index into the pool table
};

bool needs_dcqo(Method m) { return m != Method::mts; }

}  // namespace

ReplicatePool replicate_pool(const OrchestrateConfig& config, std::size_t n, Method method,
                             std::uint64_t replicate, const StateVector* dcqo_state) {
  const std::size_t k = config.params.population_size;
  const auto method_key = static_cast<std::uint64_t>(method);
  if (method == Method::mts) {
    Rng rng(derive_seed(config.master_seed, {n, method_key, replicate, kPopulation}));
    return {random_population(n, k, rng), 0.0};
  }

  const auto external = config.shot_sets.find(n);
  if (external != config.shot_sets.end() && !external->second.empty()) {
    const auto& sets = external->second;
    if (method == Method::qemts) return {qemts_seed_population(sets[replicate % sets.size()], k), 0.0};
    return {qemts_seed_population(sets, k), 0.0};
  }

  if (dcqo_state == nullptr) throw InvalidInput("QE-MTS needs a DCQO state or shot files");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t runs =
      method == Method::qemts ? 1 : (config.sampler.multirun_runs ? config.sampler.multirun_runs : k);
  std::vector<ShotSet> sets;
  for (std::size_t run = 0; run < runs; ++run) {
    sets.push_back(sample(*dcqo_state, config.sampler.shots,
                          derive_seed(config.master_seed, {n, method_key, replicate, kShots, run})));
  }
  Population pop = method == Method::qemts ? qemts_seed_population(sets.front(), k)
                                           : qemts_seed_population(sets, k);
  return {std::move(pop), seconds_since(start)};
}

TTSDataset orchestrate(const OrchestrateConfig& config) {
  if (config.n_values.empty() || config.methods.empty()) throw InvalidInput("empty run grid");
  if (config.replicates.end <= config.replicates.begin || config.seeds.end <= config.seeds.begin) {
    throw InvalidInput("replicate and seed ranges must be non-empty");
  }
  if (!config.target_for) throw InvalidInput("no target energy source configured");
  config.params.validate();

  TTSDataset existing;
  if (config.output && std::filesystem::exists(*config.output)) {
    for (auto& r : read_run_records(*config.output)) existing.add(std::move(r));
  }

  // Pools are built serially in grid order; only the searches run in parallel.
  std::vector<Task> tasks;
  std::vector<ReplicatePool> pools;
  std::map<std::size_t, std::pair<std::unique_ptr<StateVector>, double>> states;
  std::map<std::size_t, std::int64_t> targets;
  for (auto n : config.n_values) {
    targets[n] = config.target_for(n);
    for (auto method : config.methods) {
      for (auto r = config.replicates.begin; r < config.replicates.end; ++r) {
        std::vector<std::uint64_t> pending;
        for (auto s = config.seeds.begin; s < config.seeds.end; ++s) {
          if (config.max_new_runs && tasks.size() + pending.size() >= config.max_new_runs) break;
          if (!existing.contains({n, method, r, s})) pending.push_back(s);
        }
        if (pending.empty()) continue;
        const StateVector* state = nullptr;
        double sim_seconds = 0.0;
        if (needs_dcqo(method) && !config.shot_sets.contains(n)) {
          auto& slot = states[n];
          if (!slot.first) {
            const auto start = std::chrono::steady_clock::now();
            const auto plan = build_circuit(n, config.sampler.schedule, config.sampler.n_trot,
                                            FieldConfig::uniform(n));
            slot.first = std::make_unique<StateVector>(simulate(plan));
            slot.second = seconds_since(start);
          }
          state = slot.first.get();
          sim_seconds = slot.second;
        }
        pools.push_back(replicate_pool(config, n, method, r, state));
        pools.back().quantum_seconds += sim_seconds;
        for (auto s : pending) tasks.push_back({n, method, r, s, pools.size() - 1});
      }
    }
  }

  std::vector<RunRecord> fresh(tasks.size());
  const int threads = config.jobs ? static_cast<int>(config.jobs) : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
    const Task& task = tasks[static_cast<std::size_t>(t)];
    SearchParams params = config.params;
    params.target_energy = targets.at(task.n);
    Rng rng(derive_seed(config.master_seed, {task.n, static_cast<std::uint64_t>(task.method),
                                             task.replicate, kSearch, task.seed}));
    const auto start = std::chrono::steady_clock::now();
    const SearchOutcome outcome = mts_run(params, pools[task.pool].population, rng);
    RunRecord& rec = fresh[static_cast<std::size_t>(t)];
    rec.wall_clock_classical = seconds_since(start);
    rec.wall_clock_quantum = pools[task.pool].quantum_seconds;
    rec.n = task.n;
    rec.method = task.method;
    rec.replicate_id = task.replicate;
    rec.seed = task.seed;
    rec.found_optimum = outcome.found_optimum;
    rec.evals_to_solution = outcome.evals_to_solution;
    rec.best_energy = outcome.best_energy;
    rec.target_energy = params.target_energy;
    rec.generations = outcome.generations;
    rec.evaluations = outcome.evaluations;
    rec.best_sequence = outcome.best.to_signs();
    rec.metadata = config.metadata;
  }

  if (config.output) append_run_records(*config.output, fresh);
  for (auto& r : fresh) existing.add(std::move(r));
  return existing;
}

}  // namespace labsolve
