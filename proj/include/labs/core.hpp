#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace labsolve {

/// A ±1 sequence of length N ≥ 2.
///
/// Text input accepts either sign characters ('+'/'-') or a bitstring
/// ('0'/'1'), with 0 ↦ +1 and 1 ↦ −1. In the bit view, spin 0 corresponds to
/// the most significant bit of a basis-state index, so `to_bits()` prints the
/// same string a statevector sampler emits.
class SpinSequence {
 public:
  explicit SpinSequence(std::vector<std::int8_t> spins);

  static SpinSequence parse(std::string_view text);
  static SpinSequence all_ones(std::size_t n);
  /// Spin i is taken from bit (n-1-i) of `index`.
  static SpinSequence from_index(std::uint64_t index, std::size_t n);

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  std::span<const std::int8_t> spins() const noexcept { return spins_; }

  void flip(std::size_t i);
  SpinSequence flipped(std::size_t i) const;
  SpinSequence negated() const;
  SpinSequence reversed() const;

  std::uint64_t to_index() const;
  std::string to_signs() const;
  std::string to_bits() const;

  friend bool operator==(const SpinSequence&, const SpinSequence&) = default;
  /// Lexicographic with −1 < +1.
  friend std::strong_ordering operator<=>(const SpinSequence& a, const SpinSequence& b) {
    return a.spins_ <=> b.spins_;
  }

 private:
  std::vector<std::int8_t> spins_;
};

/// Off-peak autocorrelations C_1..C_{N-1} (c[k-1] = C_k) and their squared sum.
struct AutocorrelationProfile {
  std::vector<std::int64_t> c;
  std::int64_t energy = 0;

  friend bool operator==(const AutocorrelationProfile&, const AutocorrelationProfile&) = default;
};

std::int64_t energy(const SpinSequence& seq);
AutocorrelationProfile autocorrelations(const SpinSequence& seq);

/// Energy change from flipping spin `i` (0-based), O(N), profile untouched.
std::int64_t flip_delta_energy(const SpinSequence& seq, const AutocorrelationProfile& profile,
                               std::size_t i);

/// Flips spin `i` in place and updates the profile in O(N).
void apply_flip(SpinSequence& seq, AutocorrelationProfile& profile, std::size_t i);

struct FlipResult {
  std::int64_t delta;
  AutocorrelationProfile profile;
};

/// Pure variant: returns the delta and the profile of the flipped sequence.
/// Debug builds recompute and throw on a stale input profile.
FlipResult flip_delta(const SpinSequence& seq, const AutocorrelationProfile& profile,
                      std::size_t i);

/// Lexicographic minimum of {s, −s, reverse(s), −reverse(s)}.
SpinSequence canonical_form(const SpinSequence& seq);

/// E[energy] over uniform ±1 sequences: N(N−1)/2.
std::int64_t uniform_mean_energy(std::size_t n);

/// N(N−1)(2N−1)/6, attained by the all-ones sequence.
std::int64_t max_energy_bound(std::size_t n);

inline constexpr std::size_t kBruteForceCap = 24;

struct BruteForceResult {
  std::size_t n = 0;
  std::int64_t optimal_energy = 0;
  SpinSequence one_optimum{std::vector<std::int8_t>{1, 1}};
  std::uint64_t optimum_count = 0;
  std::uint64_t states_visited = 0;
};

/// Exhaustive minimum over all 2^N sequences (Gray-code traversal, parallel).
BruteForceResult brute_force_optimum(std::size_t n, std::size_t cap = kBruteForceCap);

}  // namespace labsolve
