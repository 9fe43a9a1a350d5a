#pragma once

// Exhaustive 2^N scans. Each has a serial reference and an OpenMP version.
// The parallel versions split the Gray-code order into a fixed number of
// chunks (independent of thread count) and reduce per-chunk results in chunk
// order, so both variants return identical values.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "labs/core.hpp"

namespace labsolve::kernels {

inline constexpr std::uint64_t gray(std::uint64_t t) { return t ^ (t >> 1); }

/// Visits Gray-code positions [begin, end) of the N-spin hypercube, keeping
/// the autocorrelation profile current with one O(N) update per step.
template <class Visitor>
void gray_scan(std::size_t n, std::uint64_t begin, std::uint64_t end, Visitor&& visit) {
  if (begin >= end) return;
  SpinSequence seq = SpinSequence::from_index(gray(begin), n);
  AutocorrelationProfile profile = autocorrelations(seq);
  visit(seq, profile);
  for (std::uint64_t t = begin + 1; t < end; ++t) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(t));
    apply_flip(seq, profile, n - 1 - bit);
    visit(seq, profile);
  }
}

inline std::uint64_t chunk_count(std::size_t n) {
  const std::uint64_t states = std::uint64_t{1} << n;
  return states < 256 ? states : 256;
}

BruteForceResult brute_force_serial(std::size_t n);
BruteForceResult brute_force_parallel(std::size_t n);

/// Number of states at each energy, indexed by energy (size max_energy_bound + 1).
std::vector<std::uint64_t> energy_histogram_serial(std::size_t n);
std::vector<std::uint64_t> energy_histogram_parallel(std::size_t n);

/// States with E(s) ≤ E(s^(i)) for every single flip i.
std::uint64_t labs_local_minima_serial(std::size_t n);
std::uint64_t labs_local_minima_parallel(std::size_t n);

/// Same count for H = Σ_{i<j} J_ij s_i s_j, `couplings` row-major N×N symmetric.
std::uint64_t sk_local_minima_serial(std::size_t n, std::span<const double> couplings);
std::uint64_t sk_local_minima_parallel(std::size_t n, std::span<const double> couplings);

}  // namespace labsolve::kernels
