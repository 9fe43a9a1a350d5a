#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labs/core.hpp"
#include "labs/rng.hpp"

namespace labsolve {

/// Sherrington–Kirkpatrick instance: J symmetric, zero diagonal, J_ij ~ N(0, 1/N).
struct SKInstance {
  std::size_t n = 0;
  std::vector<double> couplings;  // row-major N×N
  std::uint64_t seed = 0;

  static SKInstance random(std::size_t n, std::uint64_t seed);
  static SKInstance zero(std::size_t n);

  double coupling(std::size_t i, std::size_t j) const { return couplings[i * n + j]; }
};

/// Σ_{i<j} J_ij s_i s_j.
double sk_energy(const SKInstance& instance, const SpinSequence& seq);

/// Energy change of flipping spin i: −2 s_i Σ_j J_ij s_j.
double sk_flip_delta(const SKInstance& instance, const SpinSequence& seq, std::size_t i);

enum class LandscapeModel { labs, sk };

struct LandscapeStats {
  std::size_t n;
  LandscapeModel model;
  std::optional<std::uint64_t> instance_seed;
  std::optional<std::size_t> instance_index;
  double f_lo;
  std::uint64_t minima_count;
};

inline constexpr std::size_t kLandscapeCap = 22;

/// Fraction of states where no single flip lowers the energy (E(s) ≤ E(s^(i)) ∀i).
LandscapeStats labs_local_minima_density(std::size_t n, std::size_t cap = kLandscapeCap);
LandscapeStats sk_local_minima_density(const SKInstance& instance, std::size_t cap = kLandscapeCap);

/// LABS plus `sk_instances` SK rows per N; instance seeds derive from `seed`.
std::vector<LandscapeStats> landscape_report(std::span<const std::size_t> n_values,
                                             std::size_t sk_instances, std::uint64_t seed);

std::string to_string(LandscapeModel m);

}  // namespace labsolve
