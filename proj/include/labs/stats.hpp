#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "labs/records.hpp"
#include "labs/rng.hpp"

namespace labsolve {

/// Run records keyed uniquely by (N, method, replicate, seed).
class TTSDataset {
 public:
  TTSDataset() = default;
  explicit TTSDataset(std::vector<RunRecord> records);

  void add(RunRecord record);
  const std::vector<RunRecord>& records() const noexcept { return records_; }
  bool contains(const RunKey& key) const;

 private:
  std::vector<RunRecord> records_;
  std::map<RunKey, std::size_t> index_;
};

/// TTS samples of one replicate after dropping unsuccessful seeds.
struct ReplicateSamples {
  std::uint64_t replicate;
  std::vector<double> tts;
  std::size_t censored = 0;
};

using Cell = std::pair<std::size_t, Method>;  // (N, method)

struct CensoringPolicy {
  /// Replicates with a larger censored fraction are dropped entirely.
  double max_censored_fraction = 0.5;
};

struct GroupedTTS {
  std::map<Cell, std::vector<ReplicateSamples>> cells;
  std::size_t censored_seeds = 0;
  std::vector<std::pair<Cell, std::uint64_t>> excluded_replicates;
};

GroupedTTS group_replicates(const TTSDataset& dataset, const CensoringPolicy& policy = {});

double median(std::vector<double> values);

/// Linear-interpolation quantile: h = (n−1)p, interpolate between ⌊h⌋ and ⌈h⌉.
double quantile(std::span<const double> values, double p);

/// Per-replicate median over successful seeds.
std::map<std::tuple<std::size_t, Method, std::uint64_t>, double> replicate_medians(
    const GroupedTTS& grouped);

struct FitResult {
  double alpha = 0.0;  // intercept of ln Q
  double beta = 0.0;   // slope per unit N
  double kappa = 1.0;  // exp(beta)
  double r_squared = 0.0;
  std::size_t n_points = 0;
  bool degenerate = false;  // zero variance in ln Q; R² reported as 0
};

/// OLS of ln Q on N.
FitResult loglinear_fit(std::span<const std::pair<double, double>> points);

/// N at which line a (intercept, slope) meets line b: (α_b − α_a)/(β_a − β_b).
double crossover(const FitResult& a, const FitResult& b);

/// Index resampling for the bootstrap. The default draws with replacement.
class Resampler {
 public:
  virtual ~Resampler() = default;
  virtual void draw(std::size_t n, Rng& rng, std::vector<std::size_t>& out) const;
};

/// Returns 0..n−1 unchanged; turns the bootstrap into the point estimate.
class IdentityResampler final : public Resampler {
 public:
  void draw(std::size_t n, Rng& rng, std::vector<std::size_t>& out) const override;
};

struct Interval {
  double lower;
  double upper;
};

struct BootstrapConfig {
  std::size_t draws = 5000;
  std::vector<double> quantiles{0.10, 0.50, 0.90};
  std::uint64_t seed = 0;
  std::optional<std::pair<std::size_t, std::size_t>> fit_range;
  /// Quantiles used for the crossover: upper for `crossover_upper_method`,
  /// lower for `crossover_lower_method`.
  double crossover_upper_p = 0.95;
  double crossover_lower_p = 0.05;
  Method crossover_upper_method = Method::qemts;
  Method crossover_lower_method = Method::mts;
};

struct BootstrapSeries {
  Method method;
  double p;
  FitResult point;
  std::vector<std::pair<double, double>> point_quantiles;  // (N, Q_p)
  std::vector<double> kappa;
  std::vector<double> r_squared;
  std::vector<double> alpha;
  std::vector<double> beta;
  double kappa_median;
  Interval kappa_ci;
  Interval r_squared_ci;
};

struct CrossoverEstimate {
  std::vector<double> draws;  // finite draws only
  std::size_t undefined_draws = 0;
  double median;
  Interval ci;
};

struct BootstrapResult {
  std::size_t draws;
  std::vector<BootstrapSeries> series;
  std::optional<CrossoverEstimate> crossover;
  /// Methods left out because they have fewer than two distinct N.
  std::vector<Method> skipped_methods;

  const BootstrapSeries& find(Method m, double p) const;
};

/// Two-stage bootstrap: per draw, resample replicates within each (N, method),
/// then seeds within each chosen replicate; recompute medians, quantiles and
/// the log-linear fit. Draws are independent substreams of `config.seed`.
BootstrapResult two_stage_bootstrap(const GroupedTTS& grouped, const BootstrapConfig& config,
                                    const Resampler& resampler = Resampler{});

struct GapDistribution {
  std::size_t n;
  double point;  // from the unresampled data
  std::vector<double> draws;
  double median;
  Interval ci;
};

/// log10(Q₀.₅ of a) − log10(Q₀.₅ of b) per N under the two-stage bootstrap.
std::vector<GapDistribution> log_ratio_gap(const GroupedTTS& grouped, Method a, Method b,
                                           std::size_t draws, std::uint64_t seed,
                                           const Resampler& resampler = Resampler{});

}  // namespace labsolve
