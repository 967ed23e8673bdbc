#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qcduality/poly.hpp"
#include "qcduality/scalar.hpp"

namespace qcd {

// Product basis of (C^n)^{⊗N}: state index = sum_j d_j n^j, site j in [0, N).
struct Basis {
  int n = 1;
  int sites = 1;
  std::size_t dim = 1;
  std::vector<std::size_t> stride;

  Basis() = default;
  Basis(int rank, int num_sites);
  int digit(std::size_t state, int site) const { return static_cast<int>((state / stride[site]) % n); }
  std::size_t with_digit(std::size_t state, int site, int value) const {
    return state + (static_cast<std::size_t>(value) - digit(state, site)) * stride[site];
  }
  std::vector<int> weights(std::size_t state) const;
};

// Sparse square operator, rows stored as column-sorted (col, value) lists.
// Invariant: no explicit zero entries.
template <class S>
class SparseOp {
 public:
  using Entry = std::pair<std::uint32_t, S>;
  using Row = std::vector<Entry>;

  SparseOp() = default;
  explicit SparseOp(std::size_t dim) : rows_(dim) {}

  static SparseOp identity(std::size_t dim, const S& value = S(1)) {
    SparseOp out(dim);
    if (!is_zero(value))
      for (std::size_t r = 0; r < dim; ++r) out.rows_[r].push_back({static_cast<std::uint32_t>(r), value});
    return out;
  }
  static SparseOp diagonal(const std::vector<S>& values) {
    SparseOp out(values.size());
    for (std::size_t r = 0; r < values.size(); ++r)
      if (!is_zero(values[r])) out.rows_[r].push_back({static_cast<std::uint32_t>(r), values[r]});
    return out;
  }

  std::size_t dim() const { return rows_.size(); }
  const Row& row(std::size_t r) const { return rows_[r]; }
  std::size_t nnz() const {
    std::size_t k = 0;
    for (const auto& r : rows_) k += r.size();
    return k;
  }
  bool is_zero_op() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }

  S at(std::size_t r, std::size_t c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                               [](const Entry& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : S(0);
  }

  void add_to(std::size_t r, std::size_t c, const S& v) {
    if (is_zero(v)) return;
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                               [](const Entry& e, std::uint32_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, {static_cast<std::uint32_t>(c), v});
    }
  }

  SparseOp& axpy(const S& alpha, const SparseOp& o) {
    if (rows_.empty()) rows_.resize(o.dim());
    if (o.dim() != dim()) throw error("operator dimension mismatch");
    if (is_zero(alpha)) return *this;
    for (std::size_t r = 0; r < dim(); ++r) {
      const Row& b = o.rows_[r];
      if (b.empty()) continue;
      Row& a = rows_[r];
      Row merged;
      merged.reserve(a.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
          merged.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].first < a[i].first) {
          S v = alpha * b[j].second;
          if (!is_zero(v)) merged.push_back({b[j].first, v});
          ++j;
        } else {
          S v = a[i].second + alpha * b[j].second;
          if (!is_zero(v)) merged.push_back({a[i].first, v});
          ++i;
          ++j;
        }
      }
      a.swap(merged);
    }
    return *this;
  }

  SparseOp& operator+=(const SparseOp& o) { return axpy(S(1), o); }
  SparseOp& operator-=(const SparseOp& o) { return axpy(S(-1), o); }
  friend SparseOp operator+(SparseOp a, const SparseOp& b) { return a += b; }
  friend SparseOp operator-(SparseOp a, const SparseOp& b) { return a -= b; }
  friend SparseOp operator-(const SparseOp& a) { return SparseOp(a.dim()).axpy(S(-1), a); }
  friend SparseOp operator*(const S& s, const SparseOp& a) {
    SparseOp out(a.dim());
    if (is_zero(s)) return out;
    for (std::size_t r = 0; r < a.dim(); ++r) {
      out.rows_[r].reserve(a.rows_[r].size());
      for (const auto& [c, v] : a.rows_[r]) out.rows_[r].push_back({c, S(s * v)});
    }
    return out;
  }

  friend SparseOp operator*(const SparseOp& a, const SparseOp& b) {
    if (a.dim() != b.dim()) throw error("operator dimension mismatch");
    const std::size_t d = a.dim();
    SparseOp out(d);
    std::vector<S> acc(d, S(0));
    std::vector<char> mark(d, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < d; ++r) {
      touched.clear();
      for (const auto& [k, av] : a.rows_[r])
        for (const auto& [c, bv] : b.rows_[k]) {
          if (!mark[c]) {
            mark[c] = 1;
            touched.push_back(c);
            acc[c] = av * bv;
          } else {
            acc[c] += av * bv;
          }
        }
      std::sort(touched.begin(), touched.end());
      Row& row = out.rows_[r];
      for (std::uint32_t c : touched) {
        if (!is_zero(acc[c])) row.push_back({c, acc[c]});
        mark[c] = 0;
        acc[c] = S(0);
      }
    }
    return out;
  }

  friend bool operator==(const SparseOp& a, const SparseOp& b) { return a.rows_ == b.rows_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& r : rows_)
      for (const auto& e : r) m = std::max(m, magnitude(e.second));
    return m;
  }

  // e_ab^(site) * this: row r (digit a at site) takes row r' (digit b at site).
  SparseOp left_unit(const Basis& basis, int a, int b, int site) const {
    SparseOp out(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
      if (basis.digit(r, site) != a) continue;
      out.rows_[r] = rows_[basis.with_digit(r, site, b)];
    }
    return out;
  }

  // this * e_ab^(site): entries in columns with digit a move to digit b.
  SparseOp right_unit(const Basis& basis, int a, int b, int site) const {
    SparseOp out(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
      Row& row = out.rows_[r];
      for (const auto& [c, v] : rows_[r])
        if (basis.digit(c, site) == a) row.push_back({static_cast<std::uint32_t>(basis.with_digit(c, site, b)), v});
      std::sort(row.begin(), row.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    }
    return out;
  }

  template <class T>
  SparseOp<T> cast(T (*f)(const S&)) const {
    SparseOp<T> out(dim());
    for (std::size_t r = 0; r < dim(); ++r)
      for (const auto& [c, v] : rows_[r]) out.add_to(r, c, f(v));
    return out;
  }

 private:
  std::vector<Row> rows_;
};

template <class S>
SparseOp<S> commutator(const SparseOp<S>& a, const SparseOp<S>& b) {
  return a * b - b * a;
}

// Elementary operators on the product basis.
template <class S>
SparseOp<S> unit_op(const Basis& basis, int a, int b, int site) {
  SparseOp<S> out(basis.dim);
  for (std::size_t c = 0; c < basis.dim; ++c)
    if (basis.digit(c, site) == b) out.add_to(basis.with_digit(c, site, a), c, S(1));
  return out;
}

template <class S>
SparseOp<S> swap_op(const Basis& basis, int i, int j) {
  SparseOp<S> out(basis.dim);
  for (std::size_t c = 0; c < basis.dim; ++c) {
    int di = basis.digit(c, i), dj = basis.digit(c, j);
    out.add_to(basis.with_digit(basis.with_digit(c, i, dj), j, di), c, S(1));
  }
  return out;
}

template <class S>
SparseOp<S> site_diagonal(const Basis& basis, int site, const std::vector<S>& values) {
  std::vector<S> diag(basis.dim);
  for (std::size_t c = 0; c < basis.dim; ++c) diag[c] = values[basis.digit(c, site)];
  return SparseOp<S>::diagonal(diag);
}

// Operator-valued polynomial in x, coefficient k multiplies x^k.
// Invariant: no trailing zero operator.
template <class S>
struct OperatorPolynomial {
  std::size_t dim = 0;
  std::vector<SparseOp<S>> c;

  OperatorPolynomial() = default;
  explicit OperatorPolynomial(std::size_t d) : dim(d) {}
  OperatorPolynomial(std::size_t d, std::vector<SparseOp<S>> coeffs) : dim(d), c(std::move(coeffs)) { trim(); }
  static OperatorPolynomial scalar(std::size_t d, const Poly<S>& p) {
    OperatorPolynomial out(d);
    for (const S& v : p.c) out.c.push_back(SparseOp<S>::identity(d, v));
    out.trim();
    return out;
  }

  void trim() {
    while (!c.empty() && c.back().is_zero_op()) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero_poly() const { return c.empty(); }
  SparseOp<S> coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : SparseOp<S>(dim); }

  SparseOp<S> operator()(const S& x) const {
    SparseOp<S> acc(dim);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      acc = x * acc;
      acc += *it;
    }
    return acc;
  }

  OperatorPolynomial& operator+=(const OperatorPolynomial& o) {
    if (dim == 0) dim = o.dim;
    if (o.c.size() > c.size()) c.resize(o.c.size(), SparseOp<S>(dim));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    trim();
    return *this;
  }
  OperatorPolynomial& operator-=(const OperatorPolynomial& o) {
    if (dim == 0) dim = o.dim;
    if (o.c.size() > c.size()) c.resize(o.c.size(), SparseOp<S>(dim));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] -= o.c[k];
    trim();
    return *this;
  }
  friend OperatorPolynomial operator+(OperatorPolynomial a, const OperatorPolynomial& b) { return a += b; }
  friend OperatorPolynomial operator-(OperatorPolynomial a, const OperatorPolynomial& b) { return a -= b; }
  friend OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    OperatorPolynomial out(std::max(a.dim, b.dim));
    if (a.c.empty() || b.c.empty()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, SparseOp<S>(out.dim));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
  }
  friend OperatorPolynomial operator*(const Poly<S>& p, const OperatorPolynomial& a) {
    OperatorPolynomial out(a.dim);
    if (a.c.empty() || p.c.empty()) return out;
    out.c.assign(a.c.size() + p.c.size() - 1, SparseOp<S>(a.dim));
    for (std::size_t i = 0; i < p.c.size(); ++i)
      for (std::size_t j = 0; j < a.c.size(); ++j) out.c[i + j].axpy(p.c[i], a.c[j]);
    out.trim();
    return out;
  }
  friend OperatorPolynomial operator*(const S& s, const OperatorPolynomial& a) { return Poly<S>::constant(s) * a; }
  friend bool operator==(const OperatorPolynomial& a, const OperatorPolynomial& b) { return a.c == b.c; }

  // A(x + a) via Horner in (x + a).
  OperatorPolynomial shifted(const S& a) const {
    OperatorPolynomial out(dim);
    const Poly<S> lin(std::vector<S>{a, S(1)});
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      out = lin * out;
      OperatorPolynomial term(dim, {*it});
      out += term;
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& op : c) m = std::max(m, op.max_abs());
    return m;
  }
};

template <class S>
struct OperatorDivision {
  OperatorPolynomial<S> quotient, remainder;
};

// Division by a scalar polynomial with invertible leading coefficient.
template <class S>
OperatorDivision<S> divmod(const OperatorPolynomial<S>& num, const Poly<S>& den) {
  if (den.is_zero_poly()) throw error("operator polynomial division by zero");
  OperatorDivision<S> out;
  out.quotient = OperatorPolynomial<S>(num.dim);
  std::vector<SparseOp<S>> rem = num.c;
  const int dd = den.degree();
  const int nd = num.degree();
  if (nd >= dd) {
    std::vector<SparseOp<S>> q(nd - dd + 1, SparseOp<S>(num.dim));
    const S inv = S(1) / den.leading();
    for (int k = nd - dd; k >= 0; --k) {
      q[k] = inv * rem[k + dd];
      for (int j = 0; j <= dd; ++j) rem[k + j].axpy(S(-den.c[j]), q[k]);
    }
    rem.resize(dd);
    out.quotient = OperatorPolynomial<S>(num.dim, std::move(q));
  }
  out.remainder = OperatorPolynomial<S>(num.dim, std::move(rem));
  return out;
}

}  // namespace qcd
