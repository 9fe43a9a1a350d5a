#include "labs/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "labs/core.hpp"
#include "labs/errors.hpp"

namespace labsolve {

StateVector StateVector::plus_state(std::size_t n) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("statevector size must be in [1, 30] qubits");
  const std::size_t dim = std::size_t{1} << n;
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  return StateVector(n, std::vector<Amplitude>(dim, Amplitude{a, 0.0}));
}

StateVector StateVector::basis_state(std::size_t n, std::uint64_t index) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("statevector size must be in [1, 30] qubits");
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) throw InvalidInput("basis index out of range");
  std::vector<Amplitude> amps(dim);
  amps[index] = 1.0;
  return StateVector(n, std::move(amps));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

namespace kernels {

namespace {

inline double parity_sign(std::uint64_t x) { return (std::popcount(x) & 1) ? -1.0 : 1.0; }

// Plain complex product; std::complex operator* goes through a NaN-checking
// library call that dominates the kernel.
inline Amplitude mul(Amplitude a, Amplitude b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline Amplitude y_phase(std::size_t y_count) {
  switch (y_count % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Rotates the pair (b, b^flip); b has the pivot bit clear. `flip_sign` is the
// phase parity of the flip mask, so the partner's sign is sign(b)·flip_sign.
inline void rotate_pair(std::span<Amplitude> amps, std::uint64_t b, std::uint64_t flip,
                        std::uint64_t phase, Amplitude mixer, double c, double flip_sign) {
  const std::uint64_t partner = b ^ flip;
  const Amplitude lo = amps[b];
  const Amplitude hi = amps[partner];
  const double sign_b = parity_sign(b & phase);
  amps[b] = c * lo + (sign_b * flip_sign) * mul(mixer, hi);
  amps[partner] = c * hi + sign_b * mul(mixer, lo);
}

inline std::uint64_t insert_zero(std::uint64_t j, std::uint64_t pivot) {
  const std::uint64_t low = j & (pivot - 1);
  return ((j ^ low) << 1) | low;
}

void rotate(std::span<Amplitude> amps, std::uint64_t flip, std::uint64_t phase,
            std::size_t y_count, double angle, bool parallel) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const auto dim = static_cast<std::int64_t>(amps.size());
  if (flip == 0) {
    // Diagonal word: e^{−iθ·(±1)}.
    const Amplitude plus{c, -s}, minus{c, s};
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t b = 0; b < dim; ++b) {
      amps[b] = mul(amps[b], (std::popcount(static_cast<std::uint64_t>(b) & phase) & 1) ? minus : plus);
    }
    return;
  }
  // −i·sinθ·i^{#Y}
  const Amplitude mixer = Amplitude{0.0, -s} * y_phase(y_count);
  const std::uint64_t pivot = flip & (~flip + 1);
  const double flip_sign = parity_sign(flip & phase);
  const std::int64_t half = dim / 2;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t j = 0; j < half; ++j) {
    rotate_pair(amps, insert_zero(static_cast<std::uint64_t>(j), pivot), flip, phase, mixer, c, flip_sign);
  }
}

}  // namespace

void pauli_rotation_serial(std::span<Amplitude> amps, std::uint64_t flip_mask,
                           std::uint64_t phase_mask, std::size_t y_count, double angle) {
  rotate(amps, flip_mask, phase_mask, y_count, angle, false);
}

void pauli_rotation_parallel(std::span<Amplitude> amps, std::uint64_t flip_mask,
                             std::uint64_t phase_mask, std::size_t y_count, double angle) {
  rotate(amps, flip_mask, phase_mask, y_count, angle, amps.size() >= (std::size_t{1} << 12));
}

}  // namespace kernels

void apply_pauli_rotation(StateVector& state, const PauliWord& word, double angle) {
  const std::size_t n = state.n_qubits();
  if (word.max_qubit() > n) {
    throw InvalidInput("word " + word.to_string() + " acts outside the " + std::to_string(n) +
                       "-qubit register");
  }
  kernels::pauli_rotation_parallel(state.amplitudes(), word.flip_mask(n), word.phase_mask(n),
                                   word.y_count(), angle);
}

double mean_energy(const StateVector& state) {
  const std::size_t n = state.n_qubits();
  if (n < 2) throw InvalidInput("LABS energy needs at least 2 spins");
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    if (p == 0.0) continue;
    total += p * static_cast<double>(energy(SpinSequence::from_index(b, n)));
  }
  return total;
}

std::map<std::int64_t, double> exact_distribution(const StateVector& state) {
  const std::size_t n = state.n_qubits();
  if (n < 2) throw InvalidInput("LABS energy needs at least 2 spins");
  if (n > kExactDistributionCap) throw CapExceeded("exact distribution is capped at N=24");
  std::map<std::int64_t, double> dist;
  const auto amps = state.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    dist[energy(SpinSequence::from_index(b, n))] += std::norm(amps[b]);
  }
  return dist;
}

const Shot& ShotSet::best() const {
  if (shots.empty()) throw InvalidInput("empty shot set");
  const Shot* best = &shots.front();
  for (const auto& s : shots) {
    if (s.energy < best->energy) best = &s;
  }
  return *best;
}

ShotSet sample(const StateVector& state, std::size_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) throw InvalidInput("need at least one shot");
  const std::size_t n = state.n_qubits();
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    running += std::norm(amps[b]);
    cdf[b] = running;
  }
  Rng rng(seed);
  ShotSet out;
  out.n = n;
  out.rng_seed = seed;
  out.shots.reserve(n_shots);
  for (std::size_t i = 0; i < n_shots; ++i) {
    const double u = rng.uniform01() * running;
    // upper_bound never lands on a zero-mass state: its cdf equals its predecessor's.
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::prev(cdf.end());
    const auto b = static_cast<std::uint64_t>(it - cdf.begin());
    const SpinSequence seq = SpinSequence::from_index(b, n);
    out.shots.push_back({seq.to_bits(), energy(seq)});
  }
  return out;
}

}  // namespace labsolve
