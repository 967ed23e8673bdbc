#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qcduality/scalar.hpp"

namespace qcd {

template <class T>
using Grid = std::vector<std::vector<T>>;

// Determinant over a commutative ring by dynamic programming on column
// subsets: O(n 2^n) products, no division. Entries of one row are multiplied
// in row order, which only matters for non-commuting entries (never used).
template <class T>
T det_commutative(const Grid<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  if (n > 24) throw error("det_commutative: matrix too large");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<T> f(full + 1, zero);
  std::vector<bool> set(full + 1, false);
  f[0] = one;
  set[0] = true;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int r = __builtin_popcount(mask) - 1;
    T acc = zero;
    bool any = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const std::uint32_t rest = mask & ~(1u << c);
      if (!set[rest]) continue;
      const int above = __builtin_popcount(mask >> (c + 1));
      T term = f[rest] * a[r][c];
      if (above % 2) acc = acc - term;
      else acc = acc + term;
      any = true;
    }
    if (any) {
      f[mask] = acc;
      set[mask] = true;
    }
  }
  return f[full];
}

// Gaussian elimination with largest-magnitude pivots; S must be a field.
template <class S>
S det_field(Grid<S> a) {
  const std::size_t n = a.size();
  S det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      double m = magnitude(a[r][col]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (is_zero(a[piv][col])) return S(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = S(-det);
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a[r][col])) continue;
      S f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

// Exact basis of the right null space of a rational matrix (rows x cols).
std::vector<std::vector<Rational>> nullspace_exact(const Grid<Rational>& a, std::size_t cols);

// Numerical null space: right singular vectors whose singular values fall
// below tol times max(largest singular value, reference). A reference scale
// is needed when cancellation can leave a matrix of pure round-off.
std::vector<std::vector<Complex>> nullspace_numeric(const Grid<Complex>& a, std::size_t cols, double tol,
                                                    double reference = 0.0);

}  // namespace qcd
