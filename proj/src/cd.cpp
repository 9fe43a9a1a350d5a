#include "labs/cd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <span>
#include <unordered_map>

#include "labs/errors.hpp"

namespace labsolve {

namespace {

constexpr double kTwoBodyCoupling = 2.0;
constexpr double kFourBodyCoupling = 4.0;

void check_fields(std::size_t n, const FieldConfig& fields) {
  if (fields.h_x.size() != n) throw InvalidInput("h_x must have one entry per spin");
  if (!fields.h_b.empty() && fields.h_b.size() != n) {
    throw InvalidInput("h_b must be empty or have one entry per spin");
  }
  for (double b : fields.h_b) {
    if (b != 0.0) throw InvalidInput("LABS has no one-body Z terms; bias fields must be zero");
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidInput("lambda must lie in [0, 1]");
}

// Subset of {1..kMaxQubits} as a bitmask.
struct Support {
  std::array<std::uint64_t, kMaxQubits / 64> bits{};

  void insert(std::size_t q) { bits[(q - 1) / 64] |= std::uint64_t{1} << ((q - 1) % 64); }
  friend Support operator^(const Support& a, const Support& b) {
    Support out;
    for (std::size_t l = 0; l < out.bits.size(); ++l) out.bits[l] = a.bits[l] ^ b.bits[l];
    return out;
  }
  friend bool operator==(const Support&, const Support&) = default;
};

struct SupportHash {
  std::size_t operator()(const Support& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto b : s.bits) h = (h ^ b) * 0xff51afd7ed558ccdULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

struct Tuple {
  Support support;
  double coupling;
};

template <std::size_t K>
void append_tuples(const std::vector<std::array<std::size_t, K>>& list, double coupling,
                   std::vector<std::vector<Tuple>>& by_site) {
  for (const auto& tuple : list) {
    Support s;
    for (auto q : tuple) s.insert(q);
    for (auto q : tuple) by_site[q - 1].push_back({s, coupling});
  }
}

}  // namespace

Schedule Schedule::parse(const std::string& name, double total_time) {
  if (!(total_time > 0.0)) throw InvalidInput("total time must be positive");
  if (name == "sin_squared" || name == "sin2") return {Kind::sin_squared, total_time};
  throw InvalidInput("unknown schedule '" + name + "' (available: sin_squared)");
}

std::string Schedule::name() const { return "sin_squared"; }

ScheduleValue schedule_eval(const Schedule& schedule, double t) {
  const double T = schedule.total_time;
  if (!(t >= 0.0 && t <= T)) throw InvalidInput("schedule time outside [0, T]");
  const double s = std::sin(std::numbers::pi * t / (2.0 * T));
  return {s * s, std::numbers::pi / (2.0 * T) * std::sin(std::numbers::pi * t / T)};
}

FieldConfig FieldConfig::uniform(std::size_t n, double hx) {
  return {std::vector<double>(n, hx), std::vector<double>(n, 0.0)};
}

PauliOperator initial_hamiltonian(std::size_t n, const FieldConfig& fields) {
  check_fields(n, fields);
  PauliOperator op(n);
  for (std::size_t p = 1; p <= n; ++p) op.add(PauliWord{{p, PauliAxis::X}}, fields.h_x[p - 1]);
  return op;
}

PauliOperator adiabatic_hamiltonian(std::size_t n, const FieldConfig& fields, double lambda) {
  PauliOperator hi = initial_hamiltonian(n, fields);
  PauliOperator hf = build_hamiltonian(n).op;
  return (1.0 - lambda) * std::move(hi) + lambda * std::move(hf);
}

PauliOperator build_O1(std::size_t n, const FieldConfig& fields) {
  if (n < 3) throw InvalidInput("O1 has no terms below N=3");
  check_fields(n, fields);
  const auto sets = build_interaction_sets(n);
  PauliOperator op(n);
  auto emit = [&](std::span<const std::size_t> tuple, double coupling) {
    for (auto p : tuple) {
      PauliWord w;
      for (auto q : tuple) w.set(q, q == p ? PauliAxis::Y : PauliAxis::Z);
      op.add(w, Coefficient{0.0, -2.0 * coupling * fields.h_x[p - 1]});
    }
  };
  for (const auto& pair : sets.pairs) emit(pair, kTwoBodyCoupling);
  for (const auto& quad : sets.quads) emit(quad, kFourBodyCoupling);
  return op;
}

double gamma1_closed(std::size_t n, const FieldConfig& fields) {
  if (n < 3) throw InvalidInput("Gamma1 needs N >= 3");
  check_fields(n, fields);
  const auto sets = build_interaction_sets(n);
  auto sx = [&](std::span<const std::size_t> tuple) {
    double s = 0.0;
    for (auto p : tuple) s += fields.h_x[p - 1] * fields.h_x[p - 1];
    return s;
  };
  double two = 0.0, four = 0.0;
  for (const auto& pair : sets.pairs) two += sx(pair);
  for (const auto& quad : sets.quads) four += sx(quad);
  // 4·J² with J = 2 and 4.
  return 16.0 * two + 64.0 * four;
}

Gamma2Structure::Gamma2Structure(std::size_t n) : n_(n), sets_(build_interaction_sets(n)) {
  if (n < 3) throw InvalidInput("Gamma2 needs N >= 3");
  std::vector<std::vector<Tuple>> by_site(n);
  append_tuples(sets_.pairs, kTwoBodyCoupling, by_site);
  append_tuples(sets_.quads, kFourBodyCoupling, by_site);

  overlap_.assign(n, 0.0);
  // M_p = M_{N+1−p} by reversal symmetry of the tuple sets.
  for (std::size_t p = 1; p <= (n + 1) / 2; ++p) {
    const auto& tuples = by_site[p - 1];
    double diagonal = 0.0;  // D = ∅ arises only from A = B
    for (const auto& t : tuples) diagonal += t.coupling * t.coupling;
    std::unordered_map<Support, double, SupportHash> weights;
    weights.reserve(tuples.size() * tuples.size() / 2 + 1);
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      for (std::size_t b = a + 1; b < tuples.size(); ++b) {
        // (A, B) and (B, A) land on the same D.
        weights[tuples[a].support ^ tuples[b].support] +=
            2.0 * tuples[a].coupling * tuples[b].coupling;
      }
    }
    double m = diagonal * diagonal;
    for (const auto& [d, w] : weights) m += w * w;
    overlap_[p - 1] = m;
    overlap_[n - p] = m;
  }
}

double Gamma2Structure::evaluate(const FieldConfig& fields, double lambda) const {
  check_fields(n_, fields);
  check_lambda(lambda);
  const auto& h = fields.h_x;
  auto adiabatic_part = [&](std::span<const std::size_t> tuple, double coupling) {
    double sx = 0.0, px = 0.0;
    for (std::size_t a = 0; a < tuple.size(); ++a) {
      const double ha = h[tuple[a] - 1] * h[tuple[a] - 1];
      sx += ha;
      for (std::size_t b = a + 1; b < tuple.size(); ++b) px += ha * h[tuple[b] - 1] * h[tuple[b] - 1];
    }
    return coupling * coupling * (16.0 * sx * sx + 64.0 * px);
  };
  double transverse = 0.0;
  for (const auto& pair : sets_.pairs) transverse += adiabatic_part(pair, kTwoBodyCoupling);
  for (const auto& quad : sets_.quads) transverse += adiabatic_part(quad, kFourBodyCoupling);
  double problem = 0.0;
  for (std::size_t p = 0; p < n_; ++p) problem += h[p] * h[p] * overlap_[p];
  problem *= 16.0;
  const double mu = 1.0 - lambda;
  return mu * mu * transverse + lambda * lambda * problem;
}

double gamma2_closed(std::size_t n, const FieldConfig& fields, double lambda) {
  return Gamma2Structure(n).evaluate(fields, lambda);
}

CDCoefficient alpha1(const Gamma2Structure& structure, const FieldConfig& fields, double lambda) {
  const double g1 = gamma1_closed(structure.n(), fields);
  const double g2 = structure.evaluate(fields, lambda);
  if (g2 == 0.0 || !std::isfinite(g2)) {
    throw SingularCoefficient("Gamma2 vanishes at lambda=" + std::to_string(lambda));
  }
  return {lambda, g1, g2, -g1 / g2};
}

CDCoefficient alpha1(std::size_t n, const FieldConfig& fields, double lambda) {
  return alpha1(Gamma2Structure(n), fields, lambda);
}

TraceOracle cd_trace_oracle(std::size_t n, const FieldConfig& fields, double lambda) {
  check_lambda(lambda);
  const PauliOperator h_ad = adiabatic_hamiltonian(n, fields, lambda);
  const PauliOperator d_lambda = build_hamiltonian(n).op - initial_hamiltonian(n, fields);
  const PauliOperator o1 = commutator(h_ad, d_lambda);
  const PauliOperator o2 = commutator(h_ad, o1);
  TraceOracle out{hs_inner(o1, o1), hs_inner(o2, o2), 0.0};
  if (out.gamma2 == 0.0) throw SingularCoefficient("oracle Gamma2 vanishes");
  out.alpha1 = -out.gamma1 / out.gamma2;
  return out;
}

}  // namespace labsolve
