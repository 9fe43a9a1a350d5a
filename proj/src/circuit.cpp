#include "labs/circuit.hpp"

#include "labs/errors.hpp"
#include "labs/hamiltonian.hpp"

namespace labsolve {

namespace {

// exp(θ·O₁) = ∏ exp(−i·2Jθh_p·W) over the one-Y words W of O₁.
RotationBlock make_block(std::span<const std::size_t> tuple, double coupling, double theta,
                         const FieldConfig& fields) {
  RotationBlock block;
  block.kind = tuple.size() == 2 ? RotationBlock::Kind::two_body : RotationBlock::Kind::four_body;
  block.qubits.assign(tuple.begin(), tuple.end());
  for (auto p : tuple) {
    const double h = fields.h_x[p - 1];
    block.fields.push_back(h);
    PauliWord w;
    for (auto q : tuple) w.set(q, q == p ? PauliAxis::Y : PauliAxis::Z);
    block.rotations.push_back({w, 2.0 * coupling * theta * h});
  }
  return block;
}

}  // namespace

std::size_t CircuitPlan::rotation_count() const {
  std::size_t total = 0;
  for (const auto& step : steps) {
    for (const auto& block : step.blocks) total += block.rotations.size();
  }
  return total;
}

CircuitPlan build_circuit(std::size_t n, const Schedule& schedule, std::size_t n_trot,
                          const FieldConfig& fields) {
  if (n_trot < 1) throw InvalidInput("n_trot must be at least 1");
  if (fields.size() != n) throw InvalidInput("field vector length differs from N");
  const Gamma2Structure structure(n);
  const auto& sets = structure.sets();

  CircuitPlan plan;
  plan.n = n;
  plan.schedule = schedule;
  plan.n_trot = n_trot;
  plan.fields = fields;
  const double dt = schedule.total_time / static_cast<double>(n_trot);
  for (std::size_t k = 1; k <= n_trot; ++k) {
    TrotterStep step;
    // k·Δt can overshoot T by one ulp at the last step.
    step.time = k == n_trot ? schedule.total_time : static_cast<double>(k) * dt;
    const auto [lambda, lambda_dot] = schedule_eval(schedule, step.time);
    step.lambda = lambda;
    step.lambda_dot = lambda_dot;
    step.alpha1 = alpha1(structure, fields, lambda).alpha1;
    step.theta = dt * step.alpha1 * lambda_dot;
    step.blocks.reserve(sets.pairs.size() + sets.quads.size());
    for (const auto& pair : sets.pairs) step.blocks.push_back(make_block(pair, 2.0, step.theta, fields));
    for (const auto& quad : sets.quads) step.blocks.push_back(make_block(quad, 4.0, step.theta, fields));
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

StateVector simulate(const CircuitPlan& plan) {
  StateVector state = StateVector::plus_state(plan.n);
  for (const auto& step : plan.steps) {
    for (const auto& block : step.blocks) {
      for (const auto& r : block.rotations) apply_pauli_rotation(state, r.word, r.angle);
    }
  }
  return state;
}

ResourceCount resource_count(std::size_t n, ResourceCount::Method method,
                             std::uint64_t layers_or_steps) {
  const auto [n_two, n_four] = term_counts(n);
  ResourceCount out{method, 0, 0};
  if (method == ResourceCount::Method::dcqo) {
    out.entangling = layers_or_steps * (2 * n_two + 10 * n_four);
    out.single_qubit = layers_or_steps * (4 * n_two + 28 * n_four);
  } else {
    out.entangling = layers_or_steps * (n_two + 5 * n_four);
    out.single_qubit = layers_or_steps * n;
  }
  return out;
}

}  // namespace labsolve
