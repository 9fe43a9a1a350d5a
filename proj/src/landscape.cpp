#include "labs/landscape.hpp"

#include <cmath>

#include "labs/errors.hpp"
#include "labs/kernels.hpp"

namespace labsolve {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapExceeded("local-minima scan is exhaustive; N=" + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
}

}  // namespace

SKInstance SKInstance::random(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("SK instance needs N >= 2");
  SKInstance inst{n, std::vector<double>(n * n, 0.0), seed};
  Rng rng(seed);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = sigma * rng.normal();
      inst.couplings[i * n + j] = v;
      inst.couplings[j * n + i] = v;
    }
  }
  return inst;
}

SKInstance SKInstance::zero(std::size_t n) {
  if (n < 2) throw InvalidInput("SK instance needs N >= 2");
  return {n, std::vector<double>(n * n, 0.0), 0};
}

double sk_energy(const SKInstance& instance, const SpinSequence& seq) {
  if (seq.size() != instance.n) throw InvalidInput("sequence length differs from SK instance size");
  double e = 0.0;
  for (std::size_t i = 0; i < instance.n; ++i) {
    for (std::size_t j = i + 1; j < instance.n; ++j) e += instance.coupling(i, j) * seq[i] * seq[j];
  }
  return e;
}

double sk_flip_delta(const SKInstance& instance, const SpinSequence& seq, std::size_t i) {
  if (seq.size() != instance.n) throw InvalidInput("sequence length differs from SK instance size");
  if (i >= instance.n) throw InvalidInput("flip index out of range");
  double field = 0.0;
  for (std::size_t j = 0; j < instance.n; ++j) field += instance.coupling(i, j) * seq[j];
  return -2.0 * seq[i] * field;
}

LandscapeStats labs_local_minima_density(std::size_t n, std::size_t cap) {
  if (n < 2) throw InvalidInput("N must be at least 2");
  check_cap(n, cap);
  const std::uint64_t count = kernels::labs_local_minima_parallel(n);
  return {n, LandscapeModel::labs, std::nullopt, std::nullopt,
          static_cast<double>(count) / std::ldexp(1.0, static_cast<int>(n)), count};
}

LandscapeStats sk_local_minima_density(const SKInstance& instance, std::size_t cap) {
  check_cap(instance.n, cap);
  const std::uint64_t count = kernels::sk_local_minima_parallel(instance.n, instance.couplings);
  return {instance.n, LandscapeModel::sk, instance.seed, std::nullopt,
          static_cast<double>(count) / std::ldexp(1.0, static_cast<int>(instance.n)), count};
}

std::vector<LandscapeStats> landscape_report(std::span<const std::size_t> n_values,
                                             std::size_t sk_instances, std::uint64_t seed) {
  for (auto n : n_values) check_cap(n, kLandscapeCap);
  std::vector<LandscapeStats> rows;
  for (auto n : n_values) {
    rows.push_back(labs_local_minima_density(n));
    for (std::size_t k = 0; k < sk_instances; ++k) {
      const auto inst = SKInstance::random(n, derive_seed(seed, {n, k}));
      auto row = sk_local_minima_density(inst);
      row.instance_index = k;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_string(LandscapeModel m) { return m == LandscapeModel::labs ? "labs" : "sk"; }

}  // namespace labsolve
