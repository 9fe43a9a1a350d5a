#include "labs/pauli.hpp"

#include <bit>
#include <cmath>

#include "labs/errors.hpp"

namespace labsolve {

namespace {

void check_qubit(std::size_t q) {
  if (q < 1 || q > kMaxQubits) {
    throw InvalidInput("qubit index " + std::to_string(q) + " outside [1, " +
                       std::to_string(kMaxQubits) + "]");
  }
}

Coefficient i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliWord::PauliWord(std::initializer_list<std::pair<std::size_t, PauliAxis>> letters) {
  for (const auto& [q, a] : letters) set(q, a);
}

void PauliWord::set(std::size_t qubit, PauliAxis axis) {
  check_qubit(qubit);
  const std::size_t bit = qubit - 1;
  const std::uint64_t m = std::uint64_t{1} << (bit % 64);
  auto& x = x_[bit / 64];
  auto& z = z_[bit / 64];
  x &= ~m;
  z &= ~m;
  if (axis != PauliAxis::Z) x |= m;
  if (axis != PauliAxis::X) z |= m;
}

bool PauliWord::acts_on(std::size_t qubit) const {
  check_qubit(qubit);
  const std::size_t bit = qubit - 1;
  return (((x_[bit / 64] | z_[bit / 64]) >> (bit % 64)) & 1U) != 0;
}

PauliAxis PauliWord::axis(std::size_t qubit) const {
  check_qubit(qubit);
  const std::size_t bit = qubit - 1;
  const bool x = (x_[bit / 64] >> (bit % 64)) & 1U;
  const bool z = (z_[bit / 64] >> (bit % 64)) & 1U;
  if (!x && !z) throw InvalidInput("qubit " + std::to_string(qubit) + " not in word support");
  if (x && z) return PauliAxis::Y;
  return x ? PauliAxis::X : PauliAxis::Z;
}

std::size_t PauliWord::weight() const {
  std::size_t w = 0;
  for (std::size_t l = 0; l < kLimbs; ++l) w += std::popcount(x_[l] | z_[l]);
  return w;
}

bool PauliWord::is_identity() const { return weight() == 0; }

std::size_t PauliWord::max_qubit() const {
  for (std::size_t l = kLimbs; l-- > 0;) {
    const std::uint64_t m = x_[l] | z_[l];
    if (m != 0) return l * 64 + (64 - std::countl_zero(m));
  }
  return 0;
}

std::vector<std::pair<std::size_t, PauliAxis>> PauliWord::letters() const {
  std::vector<std::pair<std::size_t, PauliAxis>> out;
  for (std::size_t l = 0; l < kLimbs; ++l) {
    std::uint64_t m = x_[l] | z_[l];
    while (m != 0) {
      const auto b = static_cast<std::size_t>(std::countr_zero(m));
      m &= m - 1;
      const std::size_t q = l * 64 + b + 1;
      out.emplace_back(q, axis(q));
    }
  }
  return out;
}

std::string PauliWord::to_string() const {
  if (is_identity()) return "I";
  std::string out;
  for (const auto& [q, a] : letters()) {
    if (!out.empty()) out += ' ';
    out += (a == PauliAxis::X ? 'X' : a == PauliAxis::Y ? 'Y' : 'Z');
    out += std::to_string(q);
  }
  return out;
}

std::uint64_t PauliWord::flip_mask(std::size_t n) const {
  if (n > 64 || max_qubit() > n) throw InvalidInput("word does not fit the register");
  std::uint64_t m = 0;
  for (std::size_t q = 1; q <= n; ++q) {
    const std::size_t bit = q - 1;
    if ((x_[bit / 64] >> (bit % 64)) & 1U) m |= std::uint64_t{1} << (n - q);
  }
  return m;
}

std::uint64_t PauliWord::phase_mask(std::size_t n) const {
  if (n > 64 || max_qubit() > n) throw InvalidInput("word does not fit the register");
  std::uint64_t m = 0;
  for (std::size_t q = 1; q <= n; ++q) {
    const std::size_t bit = q - 1;
    if ((z_[bit / 64] >> (bit % 64)) & 1U) m |= std::uint64_t{1} << (n - q);
  }
  return m;
}

std::size_t PauliWord::y_count() const {
  std::size_t c = 0;
  for (std::size_t l = 0; l < kLimbs; ++l) c += std::popcount(x_[l] & z_[l]);
  return c;
}

std::pair<int, PauliWord> multiply(const PauliWord& a, const PauliWord& b) {
  PauliWord out;
  int phase = 0;
  for (std::size_t l = 0; l < PauliWord::kLimbs; ++l) {
    const std::uint64_t ax = a.x_[l] & ~a.z_[l], ay = a.x_[l] & a.z_[l], az = ~a.x_[l] & a.z_[l];
    const std::uint64_t bx = b.x_[l] & ~b.z_[l], by = b.x_[l] & b.z_[l], bz = ~b.x_[l] & b.z_[l];
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives −i.
    const std::uint64_t pos = (ax & by) | (ay & bz) | (az & bx);
    const std::uint64_t neg = (ay & bx) | (az & by) | (ax & bz);
    phase += std::popcount(pos) - std::popcount(neg);
    out.x_[l] = a.x_[l] ^ b.x_[l];
    out.z_[l] = a.z_[l] ^ b.z_[l];
  }
  return {((phase % 4) + 4) % 4, out};
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  std::size_t clashes = 0;
  for (std::size_t l = 0; l < PauliWord::kLimbs; ++l) {
    clashes += std::popcount((a.x_[l] & b.z_[l]) ^ (a.z_[l] & b.x_[l]));
  }
  return clashes % 2 == 0;
}

PauliOperator::PauliOperator(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) throw InvalidInput("too many qubits for a Pauli operator");
}

Coefficient PauliOperator::coefficient(const PauliWord& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? Coefficient{} : it->second;
}

void PauliOperator::add(const PauliWord& w, Coefficient c) {
  if (w.max_qubit() > n_qubits_) throw InvalidInput("word " + w.to_string() + " exceeds register");
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTolerance) terms_.erase(it);
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& other) {
  if (other.n_qubits_ != n_qubits_) throw InvalidInput("operator register sizes differ");
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

PauliOperator& PauliOperator::operator-=(const PauliOperator& other) {
  if (other.n_qubits_ != n_qubits_) throw InvalidInput("operator register sizes differ");
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

PauliOperator& PauliOperator::operator*=(Coefficient s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kPruneTolerance) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

double max_abs_difference(const PauliOperator& a, const PauliOperator& b) {
  double worst = 0.0;
  for (const auto& [w, c] : a.terms_) worst = std::max(worst, std::abs(c - b.coefficient(w)));
  for (const auto& [w, c] : b.terms_) worst = std::max(worst, std::abs(c - a.coefficient(w)));
  return worst;
}

PauliOperator commutator(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits() != b.n_qubits()) throw InvalidInput("operator register sizes differ");
  // Accumulate unpruned, then prune once; keeps exact cancellations exact.
  std::map<PauliWord, Coefficient> acc;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (commutes(wa, wb)) continue;
      auto [phase, word] = multiply(wa, wb);
      // AB − BA = (i^p − i^{−p})·w = 2·i^p·w for odd p.
      acc[word] += 2.0 * i_power(phase) * ca * cb;
    }
  }
  PauliOperator out(a.n_qubits());
  for (const auto& [w, c] : acc) out.add(w, c);
  return out;
}

Coefficient hs_inner_complex(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits() != b.n_qubits()) throw InvalidInput("operator register sizes differ");
  Coefficient sum{};
  for (const auto& [w, ca] : a.terms()) {
    const Coefficient cb = b.coefficient(w);
    sum += std::conj(ca) * cb;
  }
  return sum;
}

double hs_inner(const PauliOperator& a, const PauliOperator& b) {
  return hs_inner_complex(a, b).real();
}

}  // namespace labsolve
