#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "labs/pauli.hpp"
#include "labs/rng.hpp"

namespace labsolve {

using Amplitude = std::complex<double>;

/// Dense 2^N amplitude vector. Qubit 1 is the most significant bit of the
/// basis index, so basis index b printed MSB-first is the bitstring b₀…b_{N−1}.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 30;

  /// |+⟩^⊗N.
  static StateVector plus_state(std::size_t n);
  static StateVector basis_state(std::size_t n, std::uint64_t index);

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }

  double norm() const;

 private:
  StateVector(std::size_t n, std::vector<Amplitude> amps) : n_(n), amps_(std::move(amps)) {}

  std::size_t n_;
  std::vector<Amplitude> amps_;
};

namespace kernels {

/// |ψ⟩ ← exp(−i·angle·P)|ψ⟩ for a Pauli word P given by its basis-index masks
/// (flip = X/Y positions, phase = Y/Z positions). Both variants visit the same
/// disjoint amplitude pairs and perform identical arithmetic per pair.
void pauli_rotation_serial(std::span<Amplitude> amps, std::uint64_t flip_mask,
                           std::uint64_t phase_mask, std::size_t y_count, double angle);
void pauli_rotation_parallel(std::span<Amplitude> amps, std::uint64_t flip_mask,
                             std::uint64_t phase_mask, std::size_t y_count, double angle);

}  // namespace kernels

/// exp(−i·angle·word) applied in place.
void apply_pauli_rotation(StateVector& state, const PauliWord& word, double angle);

/// Σ_b |ψ_b|² ⟨b|H_f|b⟩ + offset, i.e. the mean LABS energy of a measurement.
double mean_energy(const StateVector& state);

inline constexpr std::size_t kExactDistributionCap = 24;

/// Probability mass per LABS energy level.
std::map<std::int64_t, double> exact_distribution(const StateVector& state);

struct Shot {
  std::string bits;
  std::int64_t energy;
};

struct ShotSet {
  std::size_t n = 0;
  std::vector<Shot> shots;
  std::uint64_t rng_seed = 0;

  const Shot& best() const;  // first minimum-energy shot
};

/// i.i.d. measurement samples by inverse CDF over |ψ_b|².
ShotSet sample(const StateVector& state, std::size_t n_shots, std::uint64_t seed);

}  // namespace labsolve
