#include "labs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "labs/errors.hpp"

namespace labsolve {

TTSDataset::TTSDataset(std::vector<RunRecord> records) {
  for (auto& r : records) add(std::move(r));
}

void TTSDataset::add(RunRecord record) {
  const RunKey key = record.key();
  if (index_.contains(key)) {
    throw InvalidInput("duplicate run key (n=" + std::to_string(key.n) + ", method=" +
                       to_string(key.method) + ", replicate=" + std::to_string(key.replicate) +
                       ", seed=" + std::to_string(key.seed) + ")");
  }
  index_.emplace(key, records_.size());
  records_.push_back(std::move(record));
}

bool TTSDataset::contains(const RunKey& key) const { return index_.contains(key); }

GroupedTTS group_replicates(const TTSDataset& dataset, const CensoringPolicy& policy) {
  std::map<Cell, std::map<std::uint64_t, ReplicateSamples>> staging;
  for (const auto& r : dataset.records()) {
    auto& rep = staging[{r.n, r.method}][r.replicate_id];
    rep.replicate = r.replicate_id;
    if (r.found_optimum && r.evals_to_solution) {
      rep.tts.push_back(static_cast<double>(*r.evals_to_solution));
    } else {
      ++rep.censored;
    }
  }
  GroupedTTS out;
  for (auto& [cell, reps] : staging) {
    auto& kept = out.cells[cell];
    for (auto& [id, rep] : reps) {
      out.censored_seeds += rep.censored;
      const double total = static_cast<double>(rep.tts.size() + rep.censored);
      if (rep.tts.empty() || static_cast<double>(rep.censored) / total > policy.max_censored_fraction) {
        out.excluded_replicates.emplace_back(cell, id);
        continue;
      }
      kept.push_back(std::move(rep));
    }
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InsufficientData("median of an empty group");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw InsufficientData("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile level must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::map<std::tuple<std::size_t, Method, std::uint64_t>, double> replicate_medians(
    const GroupedTTS& grouped) {
  std::map<std::tuple<std::size_t, Method, std::uint64_t>, double> out;
  for (const auto& [cell, reps] : grouped.cells) {
    for (const auto& rep : reps) out[{cell.first, cell.second, rep.replicate}] = median(rep.tts);
  }
  return out;
}

FitResult loglinear_fit(std::span<const std::pair<double, double>> points) {
  std::set<double> distinct;
  for (const auto& [n, q] : points) {
    if (!(q > 0.0)) throw InvalidInput("log-linear fit needs positive values");
    distinct.insert(n);
  }
  if (distinct.size() < 2) throw InsufficientData("log-linear fit needs at least two distinct N");
  const double m = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [n, q] : points) {
    mx += n;
    my += std::log(q);
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [n, q] : points) {
    const double dx = n - mx, dy = std::log(q) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult fit;
  fit.n_points = points.size();
  fit.beta = sxy / sxx;
  fit.alpha = my - fit.beta * mx;
  fit.kappa = std::exp(fit.beta);
  if (syy == 0.0) {
    fit.degenerate = true;
    fit.r_squared = 0.0;
  } else {
    double ss_res = 0.0;
    for (const auto& [n, q] : points) {
      const double r = std::log(q) - (fit.alpha + fit.beta * n);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

double crossover(const FitResult& a, const FitResult& b) {
  const double slope_gap = a.beta - b.beta;
  if (slope_gap == 0.0) throw NoCrossover("fits have equal slopes; the lines never cross");
  return (b.alpha - a.alpha) / slope_gap;
}

void Resampler::draw(std::size_t n, Rng& rng, std::vector<std::size_t>& out) const {
  out.resize(n);
  for (auto& i : out) i = rng.index(n);
}

void IdentityResampler::draw(std::size_t n, Rng&, std::vector<std::size_t>& out) const {
  out.resize(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
}

const BootstrapSeries& BootstrapResult::find(Method m, double p) const {
  for (const auto& s : series) {
    if (s.method == m && std::abs(s.p - p) < 1e-12) return s;
  }
  throw InvalidInput("no bootstrap series for method " + to_string(m) + " at p=" + std::to_string(p));
}

namespace {

Interval percentile_interval(std::span<const double> draws) {
  return {quantile(draws, 0.025), quantile(draws, 0.975)};
}

// Replicate medians of one cell under one resampling draw.
std::vector<double> resampled_medians(const std::vector<ReplicateSamples>& reps, Rng& rng,
                                      const Resampler& resampler) {
  std::vector<std::size_t> rep_idx, seed_idx;
  resampler.draw(reps.size(), rng, rep_idx);
  std::vector<double> medians;
  medians.reserve(rep_idx.size());
  std::vector<double> buffer;
  for (auto r : rep_idx) {
    const auto& tts = reps[r].tts;
    resampler.draw(tts.size(), rng, seed_idx);
    buffer.clear();
    for (auto s : seed_idx) buffer.push_back(tts[s]);
    medians.push_back(median(buffer));
  }
  return medians;
}

struct SeriesKey {
  Method method;
  double p;
  friend bool operator<(const SeriesKey& a, const SeriesKey& b) {
    return std::tie(a.method, a.p) < std::tie(b.method, b.p);
  }
};

using QuantileTable = std::map<SeriesKey, std::vector<std::pair<double, double>>>;

QuantileTable quantile_table(const GroupedTTS& grouped, const std::vector<SeriesKey>& keys,
                             const std::optional<std::pair<std::size_t, std::size_t>>& range,
                             Rng& rng, const Resampler& resampler) {
  QuantileTable table;
  for (const auto& [cell, reps] : grouped.cells) {
    const auto [n, method] = cell;
    if (reps.empty()) continue;
    if (range && (n < range->first || n > range->second)) continue;
    const auto medians = resampled_medians(reps, rng, resampler);
    for (const auto& key : keys) {
      if (key.method != method) continue;
      table[key].emplace_back(static_cast<double>(n), quantile(medians, key.p));
    }
  }
  return table;
}

}  // namespace

BootstrapResult two_stage_bootstrap(const GroupedTTS& grouped, const BootstrapConfig& config,
                                    const Resampler& resampler) {
  if (config.draws < 1) throw InvalidInput("bootstrap needs at least one draw");
  // A method needs two distinct N inside the fit range to be fitted.
  std::map<Method, std::set<std::size_t>> sizes;
  for (const auto& [cell, reps] : grouped.cells) {
    const auto [n, method] = cell;
    if (reps.empty()) continue;
    if (config.fit_range && (n < config.fit_range->first || n > config.fit_range->second)) continue;
    sizes[method].insert(n);
  }
  BootstrapResult result;
  std::set<Method> methods;
  for (const auto& [method, ns] : sizes) {
    if (ns.size() >= 2) {
      methods.insert(method);
    } else {
      result.skipped_methods.push_back(method);
    }
  }
  if (methods.empty()) throw InsufficientData("no method has successful runs at two distinct N");

  std::vector<SeriesKey> reported;
  for (auto m : methods) {
    for (double p : config.quantiles) reported.push_back({m, p});
  }
  const bool with_crossover = methods.contains(config.crossover_upper_method) &&
                              methods.contains(config.crossover_lower_method) &&
                              config.crossover_upper_method != config.crossover_lower_method;
  const SeriesKey upper{config.crossover_upper_method, config.crossover_upper_p};
  const SeriesKey lower{config.crossover_lower_method, config.crossover_lower_p};
  std::vector<SeriesKey> keys = reported;
  if (with_crossover) {
    keys.push_back(upper);
    keys.push_back(lower);
  }

  // Point estimates from the data as observed.
  Rng unused(0);
  const QuantileTable observed =
      quantile_table(grouped, keys, config.fit_range, unused, IdentityResampler{});
  std::map<SeriesKey, FitResult> point_fits;
  for (const auto& key : keys) {
    const auto it = observed.find(key);
    if (it == observed.end()) throw InsufficientData("method " + to_string(key.method) + " has no data in range");
    point_fits[key] = loglinear_fit(it->second);
  }

  const std::size_t B = config.draws;
  std::vector<std::vector<FitResult>> fits(B, std::vector<FitResult>(keys.size()));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(B); ++b) {
    Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(b)}));
    const QuantileTable table = quantile_table(grouped, keys, config.fit_range, rng, resampler);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      fits[static_cast<std::size_t>(b)][k] = loglinear_fit(table.at(keys[k]));
    }
  }

  result.draws = B;
  for (std::size_t k = 0; k < reported.size(); ++k) {
    BootstrapSeries s;
    s.method = reported[k].method;
    s.p = reported[k].p;
    s.point = point_fits.at(reported[k]);
    s.point_quantiles = observed.at(reported[k]);
    for (std::size_t b = 0; b < B; ++b) {
      s.kappa.push_back(fits[b][k].kappa);
      s.r_squared.push_back(fits[b][k].r_squared);
      s.alpha.push_back(fits[b][k].alpha);
      s.beta.push_back(fits[b][k].beta);
    }
    s.kappa_median = quantile(s.kappa, 0.5);
    s.kappa_ci = percentile_interval(s.kappa);
    s.r_squared_ci = percentile_interval(s.r_squared);
    result.series.push_back(std::move(s));
  }

  if (with_crossover) {
    const std::size_t ku = reported.size(), kl = reported.size() + 1;
    CrossoverEstimate est;
    for (std::size_t b = 0; b < B; ++b) {
      try {
        est.draws.push_back(crossover(fits[b][ku], fits[b][kl]));
      } catch (const NoCrossover&) {
        ++est.undefined_draws;
      }
    }
    if (!est.draws.empty()) {
      est.median = quantile(est.draws, 0.5);
      est.ci = percentile_interval(est.draws);
      result.crossover = std::move(est);
    }
  }
  return result;
}

std::vector<GapDistribution> log_ratio_gap(const GroupedTTS& grouped, Method a, Method b,
                                           std::size_t draws, std::uint64_t seed,
                                           const Resampler& resampler) {
  if (draws < 1) throw InvalidInput("gap bootstrap needs at least one draw");
  std::set<std::size_t> sizes;
  for (const auto& [cell, reps] : grouped.cells) {
    if (cell.second != a || reps.empty()) continue;
    const auto other = grouped.cells.find({cell.first, b});
    if (other != grouped.cells.end() && !other->second.empty()) sizes.insert(cell.first);
  }
  if (sizes.empty()) {
    throw InsufficientData("log-ratio gap needs both " + to_string(a) + " and " + to_string(b) +
                           " at some N");
  }
  std::vector<GapDistribution> out;
  for (auto n : sizes) {
    const auto& reps_a = grouped.cells.at({n, a});
    const auto& reps_b = grouped.cells.at({n, b});
    auto gap = [&](Rng& rng, const Resampler& r) {
      const double qa = quantile(resampled_medians(reps_a, rng, r), 0.5);
      const double qb = quantile(resampled_medians(reps_b, rng, r), 0.5);
      return std::log10(qa) - std::log10(qb);
    };
    GapDistribution g;
    g.n = n;
    Rng unused(0);
    g.point = gap(unused, IdentityResampler{});
    g.draws.resize(draws);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t d = 0; d < static_cast<std::int64_t>(draws); ++d) {
      Rng rng(derive_seed(seed, {n, static_cast<std::uint64_t>(d)}));
      g.draws[static_cast<std::size_t>(d)] = gap(rng, resampler);
    }
    g.median = quantile(g.draws, 0.5);
    g.ci = percentile_interval(g.draws);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace labsolve
