#include <doctest.h>

#include <algorithm>
#include <set>

#include "labs/core.hpp"
#include "labs/errors.hpp"
#include "labs/kernels.hpp"
#include "labs/known_optima.hpp"
#include "labs/rng.hpp"
#include "oracles.hpp"

using namespace labsolve;

namespace {

SpinSequence random_sequence(std::size_t n, Rng& rng) {
  std::vector<std::int8_t> s(n);
  for (auto& v : s) v = rng.coin() ? 1 : -1;
  return SpinSequence(std::move(s));
}

std::vector<int> as_ints(const SpinSequence& s) { return {s.spins().begin(), s.spins().end()}; }

}  // namespace

TEST_CASE("spin sequence validation and text forms") {
  CHECK_THROWS_AS(SpinSequence(std::vector<std::int8_t>{1}), InvalidInput);
  CHECK_THROWS_AS(SpinSequence(std::vector<std::int8_t>{}), InvalidInput);
  CHECK_THROWS_AS(SpinSequence(std::vector<std::int8_t>{1, 0, -1}), InvalidInput);
  CHECK_THROWS_AS(SpinSequence::parse("+x-"), InvalidInput);
  CHECK_THROWS_AS(SpinSequence::parse("+"), InvalidInput);

  const auto a = SpinSequence::parse("++-");
  const auto b = SpinSequence::parse("001");
  CHECK(a == b);
  CHECK(a.to_signs() == "++-");
  CHECK(a.to_bits() == "001");
  CHECK(a.to_index() == 1);
  CHECK(SpinSequence::from_index(1, 3) == a);
  for (std::uint64_t idx = 0; idx < 64; ++idx) CHECK(SpinSequence::from_index(idx, 6).to_index() == idx);
}

TEST_CASE("energy examples") {
  CHECK(energy(SpinSequence::parse("++++")) == 14);
  CHECK(energy(SpinSequence::parse("++-")) == 1);
  CHECK(energy(SpinSequence::parse("+++")) == 5);
}

TEST_CASE("autocorrelation examples") {
  const auto p4 = autocorrelations(SpinSequence::parse("++++"));
  CHECK(p4.c == std::vector<std::int64_t>{3, 2, 1});
  CHECK(p4.energy == 14);
  const auto p3 = autocorrelations(SpinSequence::parse("++-"));
  CHECK(p3.c == std::vector<std::int64_t>{0, -1});
  CHECK(p3.energy == 1);
  for (const char* s : {"++", "+-", "-+", "--"}) {
    const auto p = autocorrelations(SpinSequence::parse(s));
    CHECK(p.c.size() == 1);
    CHECK(std::abs(p.c[0]) == 1);
    CHECK(p.energy == 1);
  }
}

TEST_CASE("autocorrelation profile invariants") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.index(40);
    const auto s = random_sequence(n, rng);
    const auto p = autocorrelations(s);
    std::int64_t sum = 0;
    for (std::size_t k = 1; k < n; ++k) {
      const auto ck = p.c[k - 1];
      CHECK(std::abs(ck) <= static_cast<std::int64_t>(n - k));
      CHECK(((ck - static_cast<std::int64_t>(n - k)) % 2 + 2) % 2 == 0);
      sum += ck * ck;
    }
    CHECK(sum == p.energy);
    CHECK(p.energy == oracle::labs_energy(as_ints(s)));
  }
}

TEST_CASE("flip delta examples") {
  const auto s = SpinSequence::parse("+++");
  const auto p = autocorrelations(s);
  const auto r = flip_delta(s, p, 2);  // spin 3 in 1-based terms
  CHECK(r.delta == -4);
  CHECK(r.profile == autocorrelations(s.flipped(2)));
  CHECK(flip_delta_energy(s, p, 2) == -4);
  CHECK_THROWS_AS(flip_delta(s, p, 3), InvalidInput);

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto seq = random_sequence(3 + rng.index(30), rng);
    auto prof = autocorrelations(seq);
    const auto original = prof;
    const std::size_t i = rng.index(seq.size());
    const auto once = flip_delta(seq, prof, i);
    const auto twice = flip_delta(seq.flipped(i), once.profile, i);
    CHECK(once.delta + twice.delta == 0);
    CHECK(twice.profile == original);
  }
}

#ifndef NDEBUG
TEST_CASE("stale profile is detected in debug builds") {
  const auto s = SpinSequence::parse("+++");
  auto p = autocorrelations(s);
  p.c[0] += 2;
  CHECK_THROWS_AS(flip_delta(s, p, 0), InvalidInput);
}
#endif

TEST_CASE("flip delta agrees with recomputation on 1e5 random cases") {
  Rng rng(2024);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t n = 2 + rng.index(63);
    auto seq = random_sequence(n, rng);
    auto prof = autocorrelations(seq);
    const std::size_t i = rng.index(n);
    const auto before = energy(seq);
    const auto delta = flip_delta_energy(seq, prof, i);
    apply_flip(seq, prof, i);
    if (delta != energy(seq) - before || prof.energy != energy(seq)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("canonical form") {
  const auto s = SpinSequence::parse("++-");
  CHECK(canonical_form(s) == SpinSequence::parse("--+"));
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto seq = random_sequence(2 + rng.index(20), rng);
    const auto c = canonical_form(seq);
    CHECK(canonical_form(c) == c);
    CHECK(energy(c) == energy(seq));
    const std::set<SpinSequence> orbit{seq, seq.negated(), seq.reversed(), seq.reversed().negated()};
    CHECK(c == *orbit.begin());
    for (const auto& o : orbit) CHECK(energy(o) == energy(seq));
  }
}

TEST_CASE("brute force examples") {
  CHECK(brute_force_optimum(2).optimal_energy == 1);
  const auto r3 = brute_force_optimum(3);
  CHECK(r3.optimal_energy == 1);
  CHECK(r3.optimum_count == 4);
  CHECK(r3.states_visited == 8);
  CHECK(brute_force_optimum(4).optimal_energy == 2);
  CHECK_THROWS_AS(brute_force_optimum(25), CapExceeded);
  CHECK_THROWS_AS(brute_force_optimum(1), InvalidInput);
  CHECK(brute_force_optimum(26, 26).n == 26);
}

TEST_CASE("brute force agrees with naive enumeration and orbit partition") {
  for (std::size_t n = 2; n <= 14; ++n) {
    std::int64_t best = -1;
    std::uint64_t count = 0;
    std::set<SpinSequence> optima;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const auto e = oracle::labs_energy(oracle::spins_of(b, n));
      if (best < 0 || e < best) {
        best = e;
        count = 0;
        optima.clear();
      }
      if (e == best) {
        ++count;
        optima.insert(SpinSequence::from_index(b, n));
      }
    }
    const auto r = brute_force_optimum(n);
    CHECK(r.optimal_energy == best);
    CHECK(r.optimum_count == count);
    CHECK(energy(r.one_optimum) == best);
    // Optima split into whole symmetry orbits.
    std::set<SpinSequence> reps;
    std::uint64_t orbit_total = 0;
    for (const auto& o : optima) {
      const auto c = canonical_form(o);
      if (reps.insert(c).second) {
        orbit_total += std::set<SpinSequence>{c, c.negated(), c.reversed(), c.reversed().negated()}.size();
      }
    }
    CHECK(orbit_total == count);
  }
}

TEST_CASE("uniform mean energy") {
  CHECK(uniform_mean_energy(4) == 6);
  CHECK(uniform_mean_energy(2) == 1);
  CHECK(uniform_mean_energy(10) == 45);
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto hist = kernels::energy_histogram_parallel(n);
    std::int64_t total = 0;
    for (std::size_t e = 0; e < hist.size(); ++e) total += static_cast<std::int64_t>(e * hist[e]);
    CHECK(total == uniform_mean_energy(n) * (std::int64_t{1} << n));
  }
}

TEST_CASE("energy bound and mod-4 levels, exhaustive N <= 14") {
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto hist = kernels::energy_histogram_serial(n);
    const auto bound = max_energy_bound(n);
    CHECK(energy(SpinSequence::all_ones(n)) == bound);
    CHECK(static_cast<std::int64_t>(hist.size()) == bound + 1);
    CHECK(hist.back() > 0);
    std::set<std::int64_t> residues;
    for (std::size_t e = 0; e < hist.size(); ++e) {
      if (hist[e]) residues.insert(static_cast<std::int64_t>(e % 4));
    }
    CHECK(residues.size() == 1);
    CHECK(*residues.begin() == bound % 4);
  }
}

TEST_CASE("serial and parallel scan kernels agree") {
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto s = kernels::brute_force_serial(n);
    const auto p = kernels::brute_force_parallel(n);
    CHECK(s.optimal_energy == p.optimal_energy);
    CHECK(s.optimum_count == p.optimum_count);
    CHECK(s.one_optimum == p.one_optimum);
    CHECK(s.states_visited == p.states_visited);
    CHECK(kernels::energy_histogram_serial(n) == kernels::energy_histogram_parallel(n));
    CHECK(kernels::labs_local_minima_serial(n) == kernels::labs_local_minima_parallel(n));
  }
}

TEST_CASE("gray scan visits every state once with a consistent profile") {
  const std::size_t n = 9;
  std::vector<int> seen(std::size_t{1} << n, 0);
  std::size_t bad = 0;
  kernels::gray_scan(n, 0, std::uint64_t{1} << n, [&](const SpinSequence& s, const AutocorrelationProfile& p) {
    ++seen[s.to_index()];
    if (p != autocorrelations(s)) ++bad;
  });
  CHECK(bad == 0);
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST_CASE("known optima table") {
  const auto& table = known_optima();
  CHECK(table.front().n == 2);
  CHECK(table.back().n == 66);
  for (const auto& e : table) {
    // Every LABS energy of length N shares the residue of the all-ones energy.
    CHECK_MESSAGE(e.energy % 4 == max_energy_bound(e.n) % 4, "N=" << e.n);
    CHECK((e.provenance == "brute_forced" || e.provenance == "external"));
    CHECK(e.provenance == (e.n <= 20 ? "brute_forced" : "external"));
  }
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto entry = known_optimum(n);
    REQUIRE(entry.has_value());
    CHECK_MESSAGE(entry->energy == brute_force_optimum(n).optimal_energy, "N=" << n);
  }
  CHECK_FALSE(known_optimum(1).has_value());
  CHECK_FALSE(known_optimum(67).has_value());
}

TEST_CASE("target resolution") {
  const auto auto5 = resolve_target(5, std::nullopt, true);
  CHECK(auto5.energy == 2);
  const auto t10 = resolve_target(10, std::nullopt, false);
  CHECK(t10.energy == brute_force_optimum(10).optimal_energy);
  CHECK(t10.source == "table:brute_forced");
  const auto high = resolve_target(5, 999, false);
  CHECK(high.energy == 999);
  CHECK(high.source == "flag");
  REQUIRE(high.warning.has_value());
  CHECK(high.warning->find("above known optimum") != std::string::npos);
  CHECK_FALSE(resolve_target(5, 2, false).warning.has_value());
  CHECK_THROWS_AS(resolve_target(80, std::nullopt, true), InvalidInput);
  CHECK(resolve_target(40, std::nullopt, false).source == "table:external");
}
