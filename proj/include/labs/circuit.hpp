#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labs/cd.hpp"
#include "labs/pauli.hpp"
#include "labs/statevector.hpp"

namespace labsolve {

/// One R_P(angle) = exp(−i·angle·P) rotation inside a block.
struct Rotation {
  PauliWord word;
  double angle;
};

/// The rotations generated by one interaction tuple: R_YZ·R_ZY for a pair,
/// R_YZZZ·R_ZYZZ·R_ZZYZ·R_ZZZY for a quad.
struct RotationBlock {
  enum class Kind { two_body, four_body };
  Kind kind;
  std::vector<std::size_t> qubits;
  std::vector<double> fields;  // h_x at each qubit
  std::vector<Rotation> rotations;
};

struct TrotterStep {
  double time;    // kΔt
  double lambda;
  double lambda_dot;
  double alpha1;
  double theta;   // Δt·α₁(λ(kΔt))·λ̇(kΔt)
  std::vector<RotationBlock> blocks;
};

/// Impulse-regime DCQO circuit: ∏_k exp(θ_k O₁), Trotterized so that each
/// step applies all two-body blocks, then all four-body blocks.
struct CircuitPlan {
  std::size_t n = 0;
  Schedule schedule;
  std::size_t n_trot = 0;
  FieldConfig fields;
  std::vector<TrotterStep> steps;

  std::size_t rotation_count() const;
};

CircuitPlan build_circuit(std::size_t n, const Schedule& schedule, std::size_t n_trot,
                          const FieldConfig& fields);

/// Runs the plan on |+⟩^⊗N.
StateVector simulate(const CircuitPlan& plan);

struct ResourceCount {
  enum class Method { dcqo, qaoa };
  Method method;
  std::uint64_t entangling;
  std::uint64_t single_qubit;
};

/// Gate totals for `layers_or_steps` DCQO Trotter steps or QAOA layers.
///
/// DCQO: 2 R_ZZ + 4 single-qubit per two-body block, 10 R_ZZ + 28 per
/// four-body block. QAOA layer: one R_ZZ per two-body term, a 4-CNOT ladder
/// around a central R_ZZ per four-body term, and N single-qubit R_X mixers.
ResourceCount resource_count(std::size_t n, ResourceCount::Method method,
                             std::uint64_t layers_or_steps);

}  // namespace labsolve
