#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "labs/core.hpp"
#include "labs/pauli.hpp"

namespace labsolve {

/// Index sets (1-based) of the two- and four-body terms of the LABS Ising form.
struct InteractionSets {
  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<std::array<std::size_t, 4>> quads;
};

/// pairs = {(i, i+2k)}, quads = {(i, i+t, i+k, i+k+t)} from expanding Σ_k C_k².
InteractionSets build_interaction_sets(std::size_t n);

struct TermCounts {
  std::uint64_t n_two;
  std::uint64_t n_four;
  friend bool operator==(const TermCounts&, const TermCounts&) = default;
};

/// Closed-form term counts (even/odd branches).
TermCounts term_counts(std::size_t n);

/// Diagonal problem Hamiltonian H_f = 2 Σ_pairs Z Z + 4 Σ_quads Z Z Z Z plus
/// the constant that turns ⟨s|H_f|s⟩ into the LABS energy.
struct ProblemHamiltonian {
  PauliOperator op;
  std::int64_t offset;  // N(N−1)/2
};

ProblemHamiltonian build_hamiltonian(std::size_t n);

/// ⟨s|H|s⟩ for a Z-only operator, with s mapped 0 ↦ +1, 1 ↦ −1.
double diagonal_expectation(const PauliOperator& op, const SpinSequence& s);

inline constexpr std::size_t kSpectrumCap = 20;

struct SpectrumStats {
  std::size_t n;
  std::size_t distinct_levels;
  std::int64_t min_energy;
  std::int64_t max_energy;
  std::int64_t mod4_residue;
  bool single_residue;  // every level shares mod4_residue
  std::vector<std::int64_t> levels;
  std::vector<std::uint64_t> degeneracy;  // parallel to levels
};

/// Exhaustive spectrum of the LABS energy (N ≤ cap).
SpectrumStats spectrum_stats(std::size_t n, std::size_t cap = kSpectrumCap);

}  // namespace labsolve
