#pragma once

// Pfaffians and determinants over commutative entry rings (numbers, radial
// scalars, even forms) and the S(D) similarity machinery.
//
// Pf(A) = 1/(2^d d!) sum_pi sgn(pi) A^{pi1 pi2} ... A^{pi(n-1) pi(n)}, so
// Pf([[0,1],[-1,0]]) = 1.

#include <array>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "thom/errors.hpp"
#include "thom/superalgebra.hpp"

namespace thom {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T{}) : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const T& operator()(int i, int j) const { return e_[i * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> e_;
};

namespace detail {

inline double zero_like(const Matrix<double>&) { return 0.0; }
inline std::complex<double> zero_like(const Matrix<std::complex<double>>&) { return 0.0; }
inline RadialScalar zero_like(const Matrix<RadialScalar>&) { return RadialScalar(); }
inline Form zero_like(const FormMatrix& m) { return Form(m.dim()); }

inline double one_like(const Matrix<double>&) { return 1.0; }
inline std::complex<double> one_like(const Matrix<std::complex<double>>&) { return 1.0; }
inline RadialScalar one_like(const Matrix<RadialScalar>&) { return RadialScalar(1); }
inline Form one_like(const FormMatrix& m) { return Form(m.dim(), RadialScalar(1)); }

inline bool exactly_zero(double x) { return x == 0.0; }
inline bool exactly_zero(const std::complex<double>& x) { return x == 0.0; }
inline bool exactly_zero(const RadialScalar& x) { return x.is_zero_symbolic(); }
inline bool exactly_zero(const Form& x) { return x.is_zero_symbolic(); }

template <class T>
bool antisymmetric_pair(const T& a, const T& b) {
  return exactly_zero(a + b);
}
inline bool antisymmetric_pair(double a, double b) { return std::abs(a + b) <= 1e-12 * std::max(1.0, std::abs(a)); }
inline bool antisymmetric_pair(const std::complex<double>& a, const std::complex<double>& b) {
  return std::abs(a + b) <= 1e-12 * std::max(1.0, std::abs(a));
}

template <class T>
bool commuting(const T&) {
  return true;
}
inline bool commuting(const Form& x) { return x.is_even(); }

template <class M>
void require_pfaffian_input(const M& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("Pfaffian of a non-square matrix");
  if (a.rows() % 2) throw OddDimension("Pfaffian of an odd-dimensional matrix");
  for (int i = 0; i < a.rows(); ++i) {
    if (!antisymmetric_pair(a(i, i), a(i, i))) throw NotAntisymmetric("nonzero diagonal entry");
    for (int j = i + 1; j < a.rows(); ++j) {
      if (!antisymmetric_pair(a(i, j), a(j, i))) throw NotAntisymmetric("A + A^T is not zero");
      if (!commuting(a(i, j))) throw Unsupported("Pfaffian entries must have even degree");
    }
  }
}

template <class M, class T>
void matchings(const M& a, unsigned free, int crossings_parity, std::vector<std::array<int, 2>>& pairs, T& acc) {
  if (!free) {
    T prod = a(pairs[0][0], pairs[0][1]);
    for (std::size_t k = 1; k < pairs.size(); ++k) prod = prod * a(pairs[k][0], pairs[k][1]);
    acc = crossings_parity ? acc - prod : acc + prod;
    return;
  }
  int i = 0;
  while (!(free >> i & 1u)) ++i;
  for (int j = i + 1; j < 32; ++j) {
    if (!(free >> j & 1u)) continue;
    // (i, j) crosses an earlier pair (p, q) iff p < i < q < j; with pairs
    // chosen by smallest free index, p < i always holds.
    int cross = 0;
    for (const auto& pq : pairs)
      if (pq[1] > i && pq[1] < j) ++cross;
    pairs.push_back({i, j});
    matchings(a, free & ~(1u << i) & ~(1u << j), (crossings_parity + cross) % 2, pairs, acc);
    pairs.pop_back();
  }
}

template <class M, class T>
T expansion(const M& a, std::vector<int>& idx, const T& zero) {
  if (idx.empty()) return one_like(a);
  T acc = zero;
  const int first = idx[0];
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const auto& entry = a(first, idx[j]);
    if (exactly_zero(entry)) continue;
    std::vector<int> rest;
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    T term = entry * expansion(a, rest, zero);
    acc = (j % 2) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

/// Signed perfect-matching sum.
template <class M>
auto pfaffian(const M& a) {
  detail::require_pfaffian_input(a);
  auto acc = detail::zero_like(a);
  if (a.rows() == 0) return detail::one_like(a);
  std::vector<std::array<int, 2>> pairs;
  detail::matchings(a, (1u << a.rows()) - 1u, 0, pairs, acc);
  return acc;
}

/// Expansion along the first row.
template <class M>
auto pfaffian_recursive(const M& a) {
  detail::require_pfaffian_input(a);
  std::vector<int> idx(a.rows());
  for (int i = 0; i < a.rows(); ++i) idx[i] = i;
  return detail::expansion(a, idx, detail::zero_like(a));
}

/// Signed permutation expansion via dynamic programming over column subsets.
template <class M>
auto determinant(const M& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  using T = decltype(detail::zero_like(a));
  const int n = a.rows();
  std::vector<T> dp(1u << n, detail::zero_like(a));
  std::vector<bool> live(1u << n, false);
  dp[0] = detail::one_like(a);
  live[0] = true;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!live[mask]) continue;
    const int row = std::popcount(mask);
    if (row == n) continue;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1u) continue;
      const auto& entry = a(row, j);
      if (detail::exactly_zero(entry)) continue;
      // Columns already used that lie to the right of j are inversions.
      const int inv = std::popcount(mask & ~((2u << j) - 1u));
      T term = dp[mask] * entry;
      const unsigned next = mask | (1u << j);
      dp[next] = inv % 2 ? dp[next] - term : dp[next] + term;
      live[next] = true;
    }
  }
  return dp[(1u << n) - 1u];
}

/// eps_{i1 j1 ... id jd} F1^{i1 j1} ... Fd^{id jd}, summed over all
/// permutations of 0..n-1 (n = 2d matrices of even forms).
Form epsilon_contraction(const std::vector<FormMatrix>& factors);

/// S^T A S.
FormMatrix conjugate(const FormMatrix& a, const FormMatrix& s);
Matrix<double> conjugate(const Matrix<double>& a, const Matrix<double>& s);

/// S(D)^i_j = delta^i_j + D v^i v_j.
FormMatrix s_matrix(int n, const RadialScalar& d);

/// A^{ij} + D (v^i v_k A^{kj} - v^j v_k A^{ki}).
FormMatrix s_conjugate_closed_form(const FormMatrix& a, const RadialScalar& d);

/// The 2x2 radial matrix M.
struct MMatrix {
  RadialScalar m11, m12, m21, m22;
  RadialScalar det() const { return m11 * m22 - m12 * m21; }
  /// M * Sbar(D) with Sbar(D) = [[1, D], [0, 1 + tD]].
  MMatrix times_sbar(const RadialScalar& d) const;
};

/// Blocks N^{ab}, each an n x n antisymmetric form matrix.
struct NMatrix {
  std::array<std::array<FormMatrix, 2>, 2> block;
};

/// sum_{ab} M_{ab} N^{ba}
FormMatrix trace_product(const MMatrix& m, const NMatrix& n);

struct SbarConjugation {
  NMatrix conjugated;  // S(D) N^{ab} S(D), blockwise
  NMatrix left_action;  // (Sbar(D) N)^{ab}
  bool agree = false;
};

SbarConjugation sbar_conjugate(const NMatrix& n, const RadialScalar& d);

/// D1 = -M12 / (M11 + t M12); GaugeSingular if the denominator vanishes.
RadialScalar gauge_D1(const MMatrix& m);
/// D2 = -M22 / (M21 + t M22); GaugeSingular if the denominator vanishes.
RadialScalar gauge_D2(const MMatrix& m);

}  // namespace thom
