#include "labs/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "labs/errors.hpp"
#include "labs/kernels.hpp"

namespace labsolve {

namespace {

void require_length(std::size_t n) {
  if (n < 2) throw InvalidInput("sequence length must be at least 2, got " + std::to_string(n));
}

}  // namespace

SpinSequence::SpinSequence(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  require_length(spins_.size());
  for (auto s : spins_) {
    if (s != 1 && s != -1) throw InvalidInput("spin values must be +1 or -1");
  }
}

SpinSequence SpinSequence::parse(std::string_view text) {
  std::vector<std::int8_t> spins;
  spins.reserve(text.size());
  const bool signs = text.find_first_of("+-") != std::string_view::npos;
  for (char ch : text) {
    if (signs && ch == '+') spins.push_back(1);
    else if (signs && ch == '-') spins.push_back(-1);
    else if (!signs && ch == '0') spins.push_back(1);
    else if (!signs && ch == '1') spins.push_back(-1);
    else throw InvalidInput("unexpected character '" + std::string(1, ch) + "' in sequence \"" +
                            std::string(text) + "\"");
  }
  return SpinSequence(std::move(spins));
}

SpinSequence SpinSequence::all_ones(std::size_t n) {
  return SpinSequence(std::vector<std::int8_t>(n, 1));
}

SpinSequence SpinSequence::from_index(std::uint64_t index, std::size_t n) {
  require_length(n);
  if (n > 64) throw InvalidInput("basis index view supports at most 64 spins");
  std::vector<std::int8_t> spins(n);
  for (std::size_t i = 0; i < n; ++i) spins[i] = ((index >> (n - 1 - i)) & 1U) ? -1 : 1;
  return SpinSequence(std::move(spins));
}

void SpinSequence::flip(std::size_t i) {
  if (i >= spins_.size()) throw InvalidInput("flip index out of range");
  spins_[i] = static_cast<std::int8_t>(-spins_[i]);
}

SpinSequence SpinSequence::flipped(std::size_t i) const {
  SpinSequence out = *this;
  out.flip(i);
  return out;
}

SpinSequence SpinSequence::negated() const {
  SpinSequence out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

SpinSequence SpinSequence::reversed() const {
  SpinSequence out = *this;
  std::reverse(out.spins_.begin(), out.spins_.end());
  return out;
}

std::uint64_t SpinSequence::to_index() const {
  if (spins_.size() > 64) throw InvalidInput("basis index view supports at most 64 spins");
  std::uint64_t index = 0;
  for (auto s : spins_) index = (index << 1) | (s < 0 ? 1U : 0U);
  return index;
}

std::string SpinSequence::to_signs() const {
  std::string out;
  out.reserve(spins_.size());
  for (auto s : spins_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

std::string SpinSequence::to_bits() const {
  std::string out;
  out.reserve(spins_.size());
  for (auto s : spins_) out.push_back(s > 0 ? '0' : '1');
  return out;
}

AutocorrelationProfile autocorrelations(const SpinSequence& seq) {
  const std::size_t n = seq.size();
  AutocorrelationProfile p;
  p.c.assign(n - 1, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::int64_t ck = 0;
    for (std::size_t i = 0; i + k < n; ++i) ck += seq[i] * seq[i + k];
    p.c[k - 1] = ck;
    p.energy += ck * ck;
  }
  return p;
}

std::int64_t energy(const SpinSequence& seq) { return autocorrelations(seq).energy; }

std::int64_t flip_delta_energy(const SpinSequence& seq, const AutocorrelationProfile& profile,
                               std::size_t i) {
  const std::size_t n = seq.size();
  if (i >= n) throw InvalidInput("flip index out of range");
  const std::int64_t si = seq[i];
  std::int64_t delta = 0;
  for (std::size_t k = 1; k < n; ++k) {
    std::int64_t neighbours = 0;
    if (i + k < n) neighbours += seq[i + k];
    if (i >= k) neighbours += seq[i - k];
    if (neighbours == 0) continue;
    const std::int64_t ck = profile.c[k - 1];
    const std::int64_t updated = ck - 2 * si * neighbours;
    delta += updated * updated - ck * ck;
  }
  return delta;
}

void apply_flip(SpinSequence& seq, AutocorrelationProfile& profile, std::size_t i) {
  const std::size_t n = seq.size();
  if (i >= n) throw InvalidInput("flip index out of range");
  const std::int64_t si = seq[i];
  for (std::size_t k = 1; k < n; ++k) {
    std::int64_t neighbours = 0;
    if (i + k < n) neighbours += seq[i + k];
    if (i >= k) neighbours += seq[i - k];
    if (neighbours == 0) continue;
    std::int64_t& ck = profile.c[k - 1];
    const std::int64_t updated = ck - 2 * si * neighbours;
    profile.energy += updated * updated - ck * ck;
    ck = updated;
  }
  seq.flip(i);
}

FlipResult flip_delta(const SpinSequence& seq, const AutocorrelationProfile& profile,
                      std::size_t i) {
#ifndef NDEBUG
  if (autocorrelations(seq) != profile) throw InvalidInput("stale autocorrelation profile");
#endif
  SpinSequence copy = seq;
  FlipResult out{0, profile};
  apply_flip(copy, out.profile, i);
  out.delta = out.profile.energy - profile.energy;
  return out;
}

SpinSequence canonical_form(const SpinSequence& seq) {
  const SpinSequence rev = seq.reversed();
  return std::min({seq, seq.negated(), rev, rev.negated()});
}

std::int64_t uniform_mean_energy(std::size_t n) {
  require_length(n);
  const auto m = static_cast<std::int64_t>(n);
  return m * (m - 1) / 2;
}

std::int64_t max_energy_bound(std::size_t n) {
  require_length(n);
  const auto m = static_cast<std::int64_t>(n);
  return m * (m - 1) * (2 * m - 1) / 6;
}

BruteForceResult brute_force_optimum(std::size_t n, std::size_t cap) {
  require_length(n);
  if (n > cap) {
    throw CapExceeded("brute force enumerates 2^N states; N=" + std::to_string(n) +
                      " exceeds the cap of " + std::to_string(cap));
  }
  return kernels::brute_force_parallel(n);
}

}  // namespace labsolve
