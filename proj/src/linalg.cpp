#include "qcduality/linalg.hpp"

#include <Eigen/Dense>

namespace qcd {

std::vector<std::vector<Rational>> nullspace_exact(const Grid<Rational>& a, std::size_t cols) {
  Grid<Rational> m = a;
  const std::size_t rows = m.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || is_zero(m[k][c])) continue;
      Rational f = m[k][c];
      for (std::size_t j = 0; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Complex>> nullspace_numeric(const Grid<Complex>& a, std::size_t cols, double tol, double reference) {
  const std::size_t rows = a.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(std::max<std::size_t>(rows, cols), cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = std::max(sv.size() ? sv(0) : 0.0, reference);
  std::vector<std::vector<Complex>> basis;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(cols); ++k) {
    double s = k < sv.size() ? sv(k) : 0.0;
    if (top == 0.0 || s <= tol * top) {
      std::vector<Complex> v(cols);
      for (std::size_t j = 0; j < cols; ++j) v[j] = svd.matrixV()(j, k);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

}  // namespace qcd
