#pragma once

#include <string>
#include <utility>
#include <vector>

#include "labs/hamiltonian.hpp"
#include "labs/pauli.hpp"

namespace labsolve {

/// Annealing path λ(t) on [0, T].
struct Schedule {
  enum class Kind { sin_squared };

  Kind kind = Kind::sin_squared;
  double total_time = 1.0;

  static Schedule parse(const std::string& name, double total_time);
  std::string name() const;
};

struct ScheduleValue {
  double lambda;
  double lambda_dot;
};

/// sin²: λ = sin²(πt/2T), λ̇ = (π/2T)·sin(πt/T).
ScheduleValue schedule_eval(const Schedule& schedule, double t);

/// Transverse fields h_x (default −1) and longitudinal bias h_b (must be 0
/// for LABS; kept so the field layout matches the general DCQO form).
struct FieldConfig {
  std::vector<double> h_x;
  std::vector<double> h_b;

  static FieldConfig uniform(std::size_t n, double hx = -1.0);
  std::size_t size() const { return h_x.size(); }
};

/// H_i = Σ_p h_x[p] X_p.
PauliOperator initial_hamiltonian(std::size_t n, const FieldConfig& fields);

/// H_ad(λ) = (1 − λ) H_i + λ H_f.
PauliOperator adiabatic_hamiltonian(std::size_t n, const FieldConfig& fields, double lambda);

/// First nested commutator O₁ = [H_ad(λ), ∂_λ H_ad] = [H_i, H_f], assembled
/// term by term: every interaction tuple A contributes −2i·J_A·h_p·Y_p Z_{A∖p}
/// for each p ∈ A (J = 2 for pairs, 4 for quads). Anti-Hermitian, so −iO₁
/// has real coefficients −4h (pairs) and −8h (quads).
PauliOperator build_O1(std::size_t n, const FieldConfig& fields);

struct CDCoefficient {
  double lambda;
  double gamma1;
  double gamma2;
  double alpha1;
};

/// Γ₁ = tr(O₁†O₁)/2^N = Σ_A 4 J_A² Σ_{p∈A} h_p².
double gamma1_closed(std::size_t n, const FieldConfig& fields);

/// Field-independent structure constants of Γ₂. Precompute once per N.
///
/// O₂ = [H_ad, O₁] splits into (1−λ)[H_i, O₁], whose words carry no X, and
/// λ[H_f, O₁], whose words are X_p Z_D with D = A Δ B for tuples A, B ∋ p.
/// The two families share no word, so Γ₂ = (1−λ)² Γ₂⁰ + λ² Γ₂¹ with
///   Γ₂⁰ = Σ_A J_A² (16 S_x(A)² + 64 P_x(A)),
///   Γ₂¹ = 16 Σ_p h_p² M_p,   M_p = Σ_D (Σ_{A,B∋p, AΔB=D} J_A J_B)².
/// M_p counts coincident symmetric differences between tuples sharing p; it
/// is computed here by direct accumulation over tuple pairs.
class Gamma2Structure {
 public:
  explicit Gamma2Structure(std::size_t n);

  std::size_t n() const { return n_; }
  const InteractionSets& sets() const { return sets_; }
  /// M_p for p = 1..N (index p−1).
  const std::vector<double>& overlap_weights() const { return overlap_; }

  double evaluate(const FieldConfig& fields, double lambda) const;

 private:
  std::size_t n_;
  InteractionSets sets_;
  std::vector<double> overlap_;
};

double gamma2_closed(std::size_t n, const FieldConfig& fields, double lambda);

/// α₁(λ) = −Γ₁/Γ₂. Throws SingularCoefficient when Γ₂ = 0.
CDCoefficient alpha1(const Gamma2Structure& structure, const FieldConfig& fields, double lambda);
CDCoefficient alpha1(std::size_t n, const FieldConfig& fields, double lambda);

/// Pauli-algebra oracle: builds O₁ and O₂ by explicit commutators and takes
/// normalized traces. Cost grows quickly with N; meant for N ≤ 10.
struct TraceOracle {
  double gamma1;
  double gamma2;
  double alpha1;
};
TraceOracle cd_trace_oracle(std::size_t n, const FieldConfig& fields, double lambda);

}  // namespace labsolve
