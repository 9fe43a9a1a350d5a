#include "labs/kernels.hpp"

#include <cstdint>
#include <limits>
#include <optional>

namespace labsolve::kernels {

namespace {

struct ChunkRange {
  std::uint64_t begin;
  std::uint64_t end;
};

ChunkRange chunk_range(std::size_t n, std::uint64_t chunk) {
  const std::uint64_t states = std::uint64_t{1} << n;
  const std::uint64_t chunks = chunk_count(n);
  const std::uint64_t per = states / chunks;
  return {chunk * per, (chunk + 1) * per};
}

// Both variants share the chunk decomposition; only the loop over chunks is
// distributed in the parallel one.
template <class ChunkFn>
auto map_chunks(std::size_t n, bool parallel, ChunkFn&& fn) {
  using Result = decltype(fn(ChunkRange{}));
  const std::uint64_t chunks = chunk_count(n);
  std::vector<Result> out(chunks);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      out[static_cast<std::size_t>(c)] = fn(chunk_range(n, static_cast<std::uint64_t>(c)));
    }
  } else {
    for (std::uint64_t c = 0; c < chunks; ++c) out[c] = fn(chunk_range(n, c));
  }
  return out;
}

struct BruteChunk {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t count = 0;
  std::uint64_t first_index = 0;
};

BruteForceResult brute_force(std::size_t n, bool parallel) {
  auto chunks = map_chunks(n, parallel, [n](ChunkRange r) {
    BruteChunk out;
    gray_scan(n, r.begin, r.end, [&](const SpinSequence& seq, const AutocorrelationProfile& p) {
      if (p.energy < out.best) {
        out.best = p.energy;
        out.count = 1;
        out.first_index = seq.to_index();
      } else if (p.energy == out.best) {
        ++out.count;
      }
    });
    return out;
  });
  BruteChunk total;
  for (const auto& c : chunks) {
    if (c.best < total.best) {
      total = c;
    } else if (c.best == total.best) {
      total.count += c.count;
    }
  }
  BruteForceResult result;
  result.n = n;
  result.optimal_energy = total.best;
  result.optimum_count = total.count;
  result.one_optimum = SpinSequence::from_index(total.first_index, n);
  result.states_visited = std::uint64_t{1} << n;
  return result;
}

std::vector<std::uint64_t> energy_histogram(std::size_t n, bool parallel) {
  const auto levels = static_cast<std::size_t>(max_energy_bound(n)) + 1;
  auto chunks = map_chunks(n, parallel, [n, levels](ChunkRange r) {
    std::vector<std::uint64_t> hist(levels, 0);
    gray_scan(n, r.begin, r.end, [&](const SpinSequence&, const AutocorrelationProfile& p) {
      ++hist[static_cast<std::size_t>(p.energy)];
    });
    return hist;
  });
  std::vector<std::uint64_t> total(levels, 0);
  for (const auto& h : chunks) {
    for (std::size_t e = 0; e < levels; ++e) total[e] += h[e];
  }
  return total;
}

std::uint64_t labs_minima(std::size_t n, bool parallel) {
  auto chunks = map_chunks(n, parallel, [n](ChunkRange r) {
    std::uint64_t count = 0;
    gray_scan(n, r.begin, r.end, [&](const SpinSequence& seq, const AutocorrelationProfile& p) {
      for (std::size_t i = 0; i < n; ++i) {
        if (flip_delta_energy(seq, p, i) < 0) return;
      }
      ++count;
    });
    return count;
  });
  std::uint64_t total = 0;
  for (auto c : chunks) total += c;
  return total;
}

std::uint64_t sk_minima(std::size_t n, std::span<const double> couplings, bool parallel) {
  auto chunks = map_chunks(n, parallel, [n, couplings](ChunkRange r) {
    std::vector<int> s(n);
    std::vector<double> field(n, 0.0);
    const std::uint64_t start = gray(r.begin);
    for (std::size_t i = 0; i < n; ++i) s[i] = ((start >> (n - 1 - i)) & 1U) ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) field[i] += couplings[i * n + j] * s[j];
    }
    std::uint64_t count = 0;
    for (std::uint64_t t = r.begin; t < r.end; ++t) {
      if (t != r.begin) {
        const std::size_t j = n - 1 - static_cast<std::size_t>(std::countr_zero(t));
        const double shift = -2.0 * s[j];
        for (std::size_t i = 0; i < n; ++i) field[i] += couplings[i * n + j] * shift;
        s[j] = -s[j];
      }
      bool minimum = true;
      for (std::size_t i = 0; i < n && minimum; ++i) minimum = (-2.0 * s[i] * field[i]) >= 0.0;
      count += minimum ? 1 : 0;
    }
    return count;
  });
  std::uint64_t total = 0;
  for (auto c : chunks) total += c;
  return total;
}

}  // namespace

BruteForceResult brute_force_serial(std::size_t n) { return brute_force(n, false); }
BruteForceResult brute_force_parallel(std::size_t n) { return brute_force(n, true); }

std::vector<std::uint64_t> energy_histogram_serial(std::size_t n) {
  return energy_histogram(n, false);
}
std::vector<std::uint64_t> energy_histogram_parallel(std::size_t n) {
  return energy_histogram(n, true);
}

std::uint64_t labs_local_minima_serial(std::size_t n) { return labs_minima(n, false); }
std::uint64_t labs_local_minima_parallel(std::size_t n) { return labs_minima(n, true); }

std::uint64_t sk_local_minima_serial(std::size_t n, std::span<const double> couplings) {
  return sk_minima(n, couplings, false);
}
std::uint64_t sk_local_minima_parallel(std::size_t n, std::span<const double> couplings) {
  return sk_minima(n, couplings, true);
}

}  // namespace labsolve::kernels
