#include "labs/search.hpp"

#include <algorithm>
#include <limits>

#include "labs/errors.hpp"

namespace labsolve {

void SearchParams::validate() const {
  if (population_size < 2) throw InvalidInput("population size K must be at least 2");
  if (!(p_comb >= 0.0 && p_comb <= 1.0)) throw InvalidInput("p_comb must lie in [0, 1]");
  if (p_mut && !(*p_mut >= 0.0 && *p_mut <= 1.0)) throw InvalidInput("p_mut must lie in [0, 1]");
  if (tournament_size < 1) throw InvalidInput("tournament size must be at least 1");
}

TabuTenure tabu_tenure(std::int64_t budget) {
  const std::int64_t lo = std::max<std::int64_t>(1, budget / 50);
  return {lo, std::max(lo, budget / 10)};
}

TabuResult tabu_search(const SpinSequence& start, Rng& rng, EvaluationCounter& counter,
                       const TabuOptions& options) {
  const std::size_t n = start.size();
  SpinSequence current = start;
  AutocorrelationProfile profile = autocorrelations(current);
  counter.add();

  const auto budget = static_cast<std::int64_t>(rng.uniform_int(0, static_cast<std::int64_t>(n)) +
                                                static_cast<std::int64_t>(n / 2));
  const TabuTenure tenure = tabu_tenure(budget);

  TabuResult result{current, profile.energy, 0, budget};
  const auto reached = [&] { return options.stop_at && result.best_energy <= *options.stop_at; };
  if (reached()) return result;

  std::vector<std::int64_t> tabu_until(n, 0);
  std::vector<std::int64_t> candidate(n);
  for (std::int64_t t = 1; t <= budget; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      candidate[i] = options.incremental ? profile.energy + flip_delta_energy(current, profile, i)
                                         : energy(current.flipped(i));
    }
    counter.add(n);

    std::size_t chosen = n;
    for (std::size_t i = 0; i < n; ++i) {
      const bool admissible = tabu_until[i] < t || candidate[i] < result.best_energy;
      if (admissible && (chosen == n || candidate[i] < candidate[chosen])) chosen = i;
    }
    if (chosen == n) {
      // Everything tabu and nothing aspirates: take the earliest expiry.
      chosen = static_cast<std::size_t>(
          std::min_element(tabu_until.begin(), tabu_until.end()) - tabu_until.begin());
    }

    apply_flip(current, profile, chosen);
    tabu_until[chosen] = t + rng.uniform_int(tenure.min, tenure.max);
    result.iterations = t;
    if (profile.energy < result.best_energy) {
      result.best = current;
      result.best_energy = profile.energy;
      if (reached()) break;
    }
  }
  return result;
}

SpinSequence combine_at(const SpinSequence& p1, const SpinSequence& p2, std::size_t cut) {
  if (p1.size() != p2.size()) throw InvalidInput("parents differ in length");
  if (cut < 1 || cut >= p1.size()) throw InvalidInput("cut point must lie in [1, N-1]");
  std::vector<std::int8_t> child(p1.spins().begin(), p1.spins().begin() + static_cast<std::ptrdiff_t>(cut));
  child.insert(child.end(), p2.spins().begin() + static_cast<std::ptrdiff_t>(cut), p2.spins().end());
  return SpinSequence(std::move(child));
}

SpinSequence combine(const SpinSequence& p1, const SpinSequence& p2, Rng& rng) {
  if (p1.size() != p2.size()) throw InvalidInput("parents differ in length");
  const auto cut = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(p1.size()) - 1));
  return combine_at(p1, p2, cut);
}

SpinSequence mutate(const SpinSequence& seq, double p_mut, Rng& rng) {
  if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw InvalidInput("p_mut must lie in [0, 1]");
  SpinSequence out = seq;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (rng.uniform01() < p_mut) out.flip(i);
  }
  return out;
}

Population random_population(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1) throw InvalidInput("population size must be at least 1");
  Population pop;
  pop.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::int8_t> spins(n);
    for (auto& s : spins) s = rng.coin() ? 1 : -1;
    pop.emplace_back(std::move(spins));
  }
  return pop;
}

Population qemts_seed_population(const ShotSet& shots, std::size_t k) {
  if (shots.shots.empty()) throw InvalidInput("cannot seed from an empty shot set");
  return Population(k, SpinSequence::parse(shots.best().bits));
}

Population qemts_seed_population(const std::vector<ShotSet>& runs, std::size_t k) {
  if (runs.empty()) throw InvalidInput("cannot seed from zero DCQO runs");
  std::vector<SpinSequence> bests;
  for (const auto& run : runs) bests.push_back(SpinSequence::parse(run.best().bits));
  Population pop;
  pop.reserve(k);
  for (std::size_t j = 0; j < k; ++j) pop.push_back(bests[j % bests.size()]);
  return pop;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::mts: return "mts";
    case Method::qemts: return "qemts";
    case Method::qemts_multirun: return "qemts_multirun";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "mts") return Method::mts;
  if (name == "qemts" || name == "qe-mts") return Method::qemts;
  if (name == "qemts_multirun" || name == "qemts-multirun") return Method::qemts_multirun;
  throw InvalidInput("unknown method '" + name + "' (mts, qemts, qemts-multirun)");
}

SearchOutcome mts_run(const SearchParams& params, const Population& initial, Rng& rng) {
  params.validate();
  if (initial.size() != params.population_size) {
    throw InvalidInput("initial population has " + std::to_string(initial.size()) +
                       " individuals, expected K=" + std::to_string(params.population_size));
  }
  const std::size_t n = initial.front().size();
  for (const auto& s : initial) {
    if (s.size() != n) throw InvalidInput("population members differ in length");
  }
  const double p_mut = params.mutation_rate(n);
  const std::int64_t target = params.target_energy;

  EvaluationCounter counter;
  Population pop = initial;
  std::vector<std::int64_t> energies(pop.size());
  SearchOutcome out{pop.front(), std::numeric_limits<std::int64_t>::max(), false, std::nullopt, 0, 0};

  auto record_if_solved = [&] {
    if (!out.found_optimum && out.best_energy <= target) {
      out.found_optimum = true;
      out.evals_to_solution = counter.count();
    }
    return out.found_optimum;
  };

  for (std::size_t j = 0; j < pop.size(); ++j) {
    energies[j] = energy(pop[j]);
    counter.add();
    if (energies[j] < out.best_energy) {
      out.best = pop[j];
      out.best_energy = energies[j];
    }
    if (record_if_solved()) break;
  }

  auto tournament = [&]() -> const SpinSequence& {
    std::size_t winner = rng.index(pop.size());
    for (std::size_t r = 1; r < params.tournament_size; ++r) {
      const std::size_t challenger = rng.index(pop.size());
      if (energies[challenger] < energies[winner]) winner = challenger;
    }
    return pop[winner];
  };

  // The incumbent is checked after each tabu search returns, so tabu always runs its full budget.
  const TabuOptions tabu_options{params.incremental, std::nullopt};
  std::uint64_t generation = 1;
  while (!out.found_optimum && generation <= params.max_generations &&
         (params.max_evaluations == 0 || counter.count() < params.max_evaluations)) {
    SpinSequence child = pop.front();
    if (rng.uniform01() < params.p_comb) {
      const SpinSequence& p1 = tournament();
      const SpinSequence& p2 = tournament();
      child = combine(p1, p2, rng);
    } else {
      child = pop[rng.index(pop.size())];
    }
    child = mutate(child, p_mut, rng);
    TabuResult improved = tabu_search(child, rng, counter, tabu_options);
    if (improved.best_energy < out.best_energy) {
      out.best = improved.best;
      out.best_energy = improved.best_energy;
    }
    const std::size_t slot = rng.index(pop.size());
    pop[slot] = std::move(improved.best);
    energies[slot] = improved.best_energy;
    ++generation;
    record_if_solved();
  }
  out.evaluations = counter.count();
  out.generations = generation - 1;
  return out;
}

}  // namespace labsolve
