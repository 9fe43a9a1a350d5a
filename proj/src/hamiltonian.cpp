#include "labs/hamiltonian.hpp"

#include <set>

#include "labs/errors.hpp"
#include "labs/kernels.hpp"

namespace labsolve {

namespace {

void require_n(std::size_t n) {
  if (n < 2) throw InvalidInput("N must be at least 2, got " + std::to_string(n));
}

}  // namespace

InteractionSets build_interaction_sets(std::size_t n) {
  require_n(n);
  InteractionSets sets;
  // The two-body partner is i+2k: expanding C_k² leaves s_i s_{i+2k} as the
  // only surviving pair products, which is what the k ≤ ⌊(N−i)/2⌋ bound covers.
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    for (std::size_t k = 1; k <= (n - i) / 2; ++k) sets.pairs.push_back({i, i + 2 * k});
  }
  for (std::size_t i = 1; i + 3 <= n; ++i) {
    for (std::size_t t = 1; t <= (n - i - 1) / 2; ++t) {
      for (std::size_t k = t + 1; k + t <= n - i; ++k) {
        sets.quads.push_back({i, i + t, i + k, i + k + t});
      }
    }
  }
#ifndef NDEBUG
  std::set<std::array<std::size_t, 2>> p(sets.pairs.begin(), sets.pairs.end());
  std::set<std::array<std::size_t, 4>> q(sets.quads.begin(), sets.quads.end());
  if (p.size() != sets.pairs.size() || q.size() != sets.quads.size()) {
    throw std::logic_error("duplicate interaction tuple");
  }
#endif
  return sets;
}

TermCounts term_counts(std::size_t n) {
  require_n(n);
  const auto m = static_cast<std::uint64_t>(n);
  if (m % 2 == 0) {
    const std::uint64_t half = m / 2;
    // (N/12)(N/2 − 1)(2N − 5); the product is divisible by 12.
    return {half * (half - 1), m * (half - 1) * (2 * m - 5) / 12};
  }
  const std::uint64_t h = (m - 1) / 2;
  // (1/24)(N−3)(N−1)(2N−1); N=3 gives zero.
  return {h * h, (m - 3) * (m - 1) * (2 * m - 1) / 24};
}

ProblemHamiltonian build_hamiltonian(std::size_t n) {
  const auto sets = build_interaction_sets(n);
  PauliOperator op(n);
  for (const auto& [a, b] : sets.pairs) {
    op.add(PauliWord{{a, PauliAxis::Z}, {b, PauliAxis::Z}}, 2.0);
  }
  for (const auto& [a, b, c, d] : sets.quads) {
    op.add(PauliWord{{a, PauliAxis::Z}, {b, PauliAxis::Z}, {c, PauliAxis::Z}, {d, PauliAxis::Z}},
           4.0);
  }
  return {std::move(op), uniform_mean_energy(n)};
}

double diagonal_expectation(const PauliOperator& op, const SpinSequence& s) {
  if (s.size() != op.n_qubits()) throw InvalidInput("sequence length differs from register size");
  double total = 0.0;
  for (const auto& [word, c] : op.terms()) {
    if (c.imag() != 0.0) throw InvalidInput("diagonal expectation needs real coefficients");
    int sign = 1;
    for (const auto& [q, axis] : word.letters()) {
      if (axis != PauliAxis::Z) throw InvalidInput("operator is not diagonal");
      sign *= s[q - 1];
    }
    total += c.real() * sign;
  }
  return total;
}

SpectrumStats spectrum_stats(std::size_t n, std::size_t cap) {
  require_n(n);
  if (n > cap) {
    throw CapExceeded("spectrum enumeration cap is N=" + std::to_string(cap) + ", got " +
                      std::to_string(n));
  }
  const auto hist = kernels::energy_histogram_parallel(n);
  SpectrumStats st{};
  st.n = n;
  for (std::size_t e = 0; e < hist.size(); ++e) {
    if (hist[e] == 0) continue;
    st.levels.push_back(static_cast<std::int64_t>(e));
    st.degeneracy.push_back(hist[e]);
  }
  st.distinct_levels = st.levels.size();
  st.min_energy = st.levels.front();
  st.max_energy = st.levels.back();
  st.mod4_residue = st.min_energy % 4;
  st.single_residue = true;
  for (auto e : st.levels) st.single_residue = st.single_residue && (e % 4 == st.mod4_residue);
  return st;
}

}  // namespace labsolve
