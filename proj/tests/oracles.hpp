#pragma once
// Independent reference implementations used only by the tests.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

/// Direct O(N²) evaluation of Σ_k C_k² from a ±1 vector.
inline std::int64_t labs_energy(const std::vector<int>& s) {
  const auto n = static_cast<std::int64_t>(s.size());
  std::int64_t e = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    std::int64_t c = 0;
    for (std::int64_t i = 0; i + k < n; ++i) c += s[i] * s[i + k];
    e += c * c;
  }
  return e;
}

/// Spins of basis index b, spin 0 from the most significant bit, 0 ↦ +1.
inline std::vector<int> spins_of(std::uint64_t b, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ((b >> (n - 1 - i)) & 1) ? -1 : 1;
  return s;
}

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

inline Matrix identity(std::size_t d) {
  Matrix m(d, std::vector<cplx>(d));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix c(d, std::vector<cplx>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t da = a.size(), db = b.size();
  Matrix c(da * db, std::vector<cplx>(da * db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) c[i * db + k][j * db + l] = a[i][j] * b[k][l];
  return c;
}

/// Dense Pauli string; letters[q] in {'I','X','Y','Z'}, qubit 0 leftmost factor.
inline Matrix pauli_matrix(const std::vector<char>& letters) {
  const cplx i(0, 1);
  Matrix out{{1.0}};
  for (char l : letters) {
    Matrix p;
    switch (l) {
      case 'X': p = {{0, 1}, {1, 0}}; break;
      case 'Y': p = {{0, -i}, {i, 0}}; break;
      case 'Z': p = {{1, 0}, {0, -1}}; break;
      default: p = {{1, 0}, {0, 1}}; break;
    }
    out = kron(out, p);
  }
  return out;
}

/// exp(A) by scaling and squaring with a Taylor series.
inline Matrix expm(Matrix a) {
  const std::size_t d = a.size();
  double norm = 0.0;
  for (auto& row : a)
    for (auto& v : row) norm = std::max(norm, std::abs(v));
  int squarings = 0;
  while (norm * static_cast<double>(d) > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& row : a)
    for (auto& v : row) v *= scale;
  Matrix result = identity(d), term = identity(d);
  for (int k = 1; k <= 30; ++k) {
    term = multiply(term, a);
    for (auto& row : term)
      for (auto& v : row) v /= static_cast<double>(k);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) result[r][c] += term[r][c];
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

inline std::vector<cplx> apply(const Matrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

}  // namespace oracle
