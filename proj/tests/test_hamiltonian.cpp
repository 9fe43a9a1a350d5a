#include <doctest.h>

#include <algorithm>
#include <set>

#include "labs/errors.hpp"
#include "labs/hamiltonian.hpp"
#include "labs/rng.hpp"
#include "oracles.hpp"

using namespace labsolve;
using C = std::complex<double>;

namespace {

// Expands Σ_k C_k² symbolically: every product s_a s_b s_c s_d with the
// squares cancelled, accumulated by support. Independent of the index formulas.
std::map<std::vector<std::size_t>, std::int64_t> expand_objective(std::size_t n) {
  std::map<std::vector<std::size_t>, std::int64_t> terms;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 1; i + k <= n; ++i) {
      for (std::size_t j = 1; j + k <= n; ++j) {
        std::map<std::size_t, int> parity;
        for (auto q : {i, i + k, j, j + k}) parity[q] ^= 1;
        std::vector<std::size_t> support;
        for (auto [q, p] : parity) {
          if (p) support.push_back(q);
        }
        terms[support] += 1;
      }
    }
  }
  return terms;
}

}  // namespace

TEST_CASE("interaction set examples") {
  const auto s3 = build_interaction_sets(3);
  CHECK(s3.pairs == std::vector<std::array<std::size_t, 2>>{{1, 3}});
  CHECK(s3.quads.empty());
  const auto s4 = build_interaction_sets(4);
  CHECK(s4.pairs == std::vector<std::array<std::size_t, 2>>{{1, 3}, {2, 4}});
  CHECK(s4.quads == std::vector<std::array<std::size_t, 4>>{{1, 2, 3, 4}});
  const auto s67 = build_interaction_sets(67);
  CHECK(s67.pairs.size() == 1089);
  CHECK(s67.quads.size() == 23408);
  CHECK_THROWS_AS(build_interaction_sets(1), InvalidInput);
}

TEST_CASE("term count examples") {
  CHECK(term_counts(6) == TermCounts{6, 7});
  CHECK(term_counts(7) == TermCounts{9, 13});
  CHECK(term_counts(3) == TermCounts{1, 0});
  CHECK(term_counts(67) == TermCounts{1089, 23408});
}

TEST_CASE("enumerated sets match closed-form counts for N in [2, 200]") {
  for (std::size_t n = 2; n <= 200; ++n) {
    const auto sets = build_interaction_sets(n);
    const auto counts = term_counts(n);
    CHECK_MESSAGE(sets.pairs.size() == counts.n_two, "N=" << n);
    CHECK_MESSAGE(sets.quads.size() == counts.n_four, "N=" << n);
    const bool pairs_ok = std::all_of(sets.pairs.begin(), sets.pairs.end(),
                                      [n](const auto& p) { return 1 <= p[0] && p[0] < p[1] && p[1] <= n; });
    const bool quads_ok = std::all_of(sets.quads.begin(), sets.quads.end(), [n](const auto& q) {
      return 1 <= q[0] && q[0] < q[1] && q[1] < q[2] && q[2] < q[3] && q[3] <= n;
    });
    CHECK(pairs_ok);
    CHECK(quads_ok);
    CHECK(std::set(sets.pairs.begin(), sets.pairs.end()).size() == sets.pairs.size());
    CHECK(std::set(sets.quads.begin(), sets.quads.end()).size() == sets.quads.size());
  }
}

TEST_CASE("interaction sets equal the symbolic expansion of the objective") {
  for (std::size_t n = 2; n <= 24; ++n) {
    const auto expanded = expand_objective(n);
    const auto sets = build_interaction_sets(n);
    std::map<std::vector<std::size_t>, std::int64_t> from_sets;
    from_sets[{}] = static_cast<std::int64_t>(n * (n - 1) / 2);
    for (const auto& p : sets.pairs) from_sets[{p[0], p[1]}] = 2;
    for (const auto& q : sets.quads) from_sets[{q[0], q[1], q[2], q[3]}] = 4;
    std::map<std::vector<std::size_t>, std::int64_t> nonzero;
    for (const auto& [k, v] : expanded) {
      if (v != 0) nonzero[k] = v;
    }
    CHECK_MESSAGE(nonzero == from_sets, "N=" << n);
  }
}

TEST_CASE("problem Hamiltonian examples") {
  const auto h4 = build_hamiltonian(4);
  CHECK(h4.offset == 6);
  CHECK(diagonal_expectation(h4.op, SpinSequence::parse("++++")) == 8.0);
  const auto h3 = build_hamiltonian(3);
  CHECK(diagonal_expectation(h3.op, SpinSequence::parse("++-")) == -2.0);
  const auto h2 = build_hamiltonian(2);
  CHECK(h2.op.empty());
  CHECK(h2.offset == 1);
}

TEST_CASE("problem Hamiltonian structure") {
  for (std::size_t n = 2; n <= 30; ++n) {
    const auto h = build_hamiltonian(n);
    const auto counts = term_counts(n);
    CHECK(h.op.size() == counts.n_two + counts.n_four);
    std::size_t bad = 0;
    for (const auto& [w, c] : h.op.terms()) {
      for (const auto& [q, a] : w.letters()) bad += a != PauliAxis::Z;
      const double want = w.weight() == 2 ? 2.0 : w.weight() == 4 ? 4.0 : -1.0;
      bad += c != C(want, 0.0);
    }
    CHECK_MESSAGE(bad == 0, "N=" << n);
  }
}

TEST_CASE("diagonal identity exhaustive for N <= 10, sampled to N = 20") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto h = build_hamiltonian(n);
    std::size_t bad = 0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const auto s = SpinSequence::from_index(b, n);
      const double v = diagonal_expectation(h.op, s) + static_cast<double>(h.offset);
      if (v != static_cast<double>(oracle::labs_energy(oracle::spins_of(b, n)))) ++bad;
    }
    CHECK_MESSAGE(bad == 0, "N=" << n);
  }
  Rng rng(99);
  for (std::size_t n = 11; n <= 20; ++n) {
    const auto h = build_hamiltonian(n);
    std::size_t bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto b = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
      const auto s = SpinSequence::from_index(b, n);
      if (diagonal_expectation(h.op, s) + static_cast<double>(h.offset) != static_cast<double>(energy(s))) ++bad;
    }
    CHECK_MESSAGE(bad == 0, "N=" << n);
  }
}

TEST_CASE("spectrum statistics") {
  const auto s3 = spectrum_stats(3);
  CHECK(s3.distinct_levels == 2);
  CHECK(s3.levels == std::vector<std::int64_t>{1, 5});
  CHECK(s3.mod4_residue == 1);
  CHECK(s3.single_residue);
  CHECK(spectrum_stats(4).max_energy == 14);
  CHECK(spectrum_stats(2).distinct_levels == 1);
  CHECK_THROWS_AS(spectrum_stats(21), CapExceeded);
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto s = spectrum_stats(n);
    CHECK(s.single_residue);
    CHECK(s.max_energy == max_energy_bound(n));
    CHECK(static_cast<std::int64_t>(s.distinct_levels) <= max_energy_bound(n) / 4 + 1);
    std::uint64_t total = 0;
    for (auto d : s.degeneracy) total += d;
    CHECK(total == (std::uint64_t{1} << n));
  }
}
