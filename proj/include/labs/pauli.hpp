#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace labsolve {

enum class PauliAxis : std::uint8_t { X, Y, Z };

inline constexpr std::size_t kMaxQubits = 256;

/// A tensor product of X/Y/Z on a subset of qubits, identity elsewhere.
///
/// Stored in symplectic form: qubit q carries X if only its x bit is set, Z if
/// only its z bit is set, Y if both. Qubits are 1-based in the public API.
/// The word is the Hermitian Pauli string itself (Y, not iXZ).
class PauliWord {
 public:
  PauliWord() = default;
  PauliWord(std::initializer_list<std::pair<std::size_t, PauliAxis>> letters);

  void set(std::size_t qubit, PauliAxis axis);
  bool acts_on(std::size_t qubit) const;
  PauliAxis axis(std::size_t qubit) const;  // qubit must be in the support

  std::size_t weight() const;
  bool is_identity() const;
  std::size_t max_qubit() const;  // 0 for identity

  /// Sorted (qubit, axis) list.
  std::vector<std::pair<std::size_t, PauliAxis>> letters() const;
  std::string to_string() const;  // e.g. "Y1 Z3"

  /// Bitmasks over basis-index bits for an n-qubit register (qubit 1 = MSB).
  std::uint64_t flip_mask(std::size_t n) const;
  std::uint64_t phase_mask(std::size_t n) const;
  std::size_t y_count() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;

  /// this·other = i^{phase} · product, phase in {0,1,2,3}.
  friend std::pair<int, PauliWord> multiply(const PauliWord& a, const PauliWord& b);
  friend bool commutes(const PauliWord& a, const PauliWord& b);

 private:
  static constexpr std::size_t kLimbs = kMaxQubits / 64;
  // Bit (q-1) of x/z refers to qubit q.
  std::array<std::uint64_t, kLimbs> x_{};
  std::array<std::uint64_t, kLimbs> z_{};
};

using Coefficient = std::complex<double>;

/// Sparse sum Σ c_w · w over Pauli words on `n_qubits` qubits.
///
/// Coefficients are complex so that commutators (anti-Hermitian) and
/// Hamiltonians (Hermitian) share one type. Entries with |c| < 1e-12 are
/// dropped after every mutation.
class PauliOperator {
 public:
  static constexpr double kPruneTolerance = 1e-12;

  explicit PauliOperator(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::map<PauliWord, Coefficient>& terms() const noexcept { return terms_; }

  Coefficient coefficient(const PauliWord& w) const;
  void add(const PauliWord& w, Coefficient c);

  PauliOperator& operator+=(const PauliOperator& other);
  PauliOperator& operator-=(const PauliOperator& other);
  PauliOperator& operator*=(Coefficient s);
  friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
  friend PauliOperator operator-(PauliOperator a, const PauliOperator& b) { return a -= b; }
  friend PauliOperator operator*(Coefficient s, PauliOperator a) { return a *= s; }

  /// Max |c_a − c_b| over the union of words.
  friend double max_abs_difference(const PauliOperator& a, const PauliOperator& b);

 private:
  std::size_t n_qubits_;
  std::map<PauliWord, Coefficient> terms_;
};

/// [A, B] = AB − BA, exact word by word.
PauliOperator commutator(const PauliOperator& a, const PauliOperator& b);

/// tr(A†B)/2^N = Σ_w conj(a_w)·b_w.
Coefficient hs_inner_complex(const PauliOperator& a, const PauliOperator& b);

/// Real part of the normalized Hilbert-Schmidt inner product.
double hs_inner(const PauliOperator& a, const PauliOperator& b);

}  // namespace labsolve
