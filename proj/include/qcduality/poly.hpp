#pragma once

#include <algorithm>
#include <vector>

#include "qcduality/scalar.hpp"

namespace qcd {

// Dense univariate polynomial, coefficients stored from x^0 upward.
// Invariant: no trailing zero coefficient; the zero polynomial is empty.
template <class S>
struct Poly {
  std::vector<S> c;

  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const S& v) { return Poly(std::vector<S>{v}); }
  // x - root
  static Poly linear_root(const S& root) { return Poly(std::vector<S>{S(-root), S(1)}); }
  static Poly from_roots(const std::vector<S>& roots) {
    Poly out = constant(S(1));
    for (const S& r : roots) out = out * linear_root(r);
    return out;
  }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero_poly() const { return c.empty(); }
  S coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : S(0); }
  S leading() const { return c.empty() ? S(0) : c.back(); }

  S operator()(const S& x) const {
    S acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = S(acc * x + *it);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), S(0));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), S(0));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] -= o.c[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c) v = S(-v);
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return Poly();
    std::vector<S> out(a.c.size() + b.c.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(out));
  }
  friend Poly operator*(const S& s, Poly a) {
    for (auto& v : a.c) v = S(s * v);
    a.trim();
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

  // p(x + a)
  Poly shifted(const S& a) const {
    Poly out;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      out = out * Poly(std::vector<S>{a, S(1)}) + constant(*it);
    return out;
  }

  Poly derivative() const {
    std::vector<S> out;
    for (std::size_t k = 1; k < c.size(); ++k) out.push_back(S(c[k] * S(static_cast<long>(k))));
    return Poly(std::move(out));
  }
};

template <class S>
struct PolyDivision {
  Poly<S> quotient, remainder;
};

// Long division; the divisor must be nonzero.
template <class S>
PolyDivision<S> divmod(const Poly<S>& num, const Poly<S>& den) {
  if (den.is_zero_poly()) throw error("polynomial division by zero");
  PolyDivision<S> out;
  std::vector<S> rem = num.c;
  int dd = den.degree();
  int nd = num.degree();
  if (nd < dd) {
    out.remainder = num;
    return out;
  }
  std::vector<S> q(nd - dd + 1, S(0));
  for (int k = nd - dd; k >= 0; --k) {
    S f = rem[k + dd] / den.leading();
    q[k] = f;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= f * den.c[j];
  }
  rem.resize(dd);
  out.quotient = Poly<S>(std::move(q));
  out.remainder = Poly<S>(std::move(rem));
  return out;
}

// Newton divided differences through (xs[i], ys[i]).
template <class S>
Poly<S> interpolate(const std::vector<S>& xs, const std::vector<S>& ys) {
  const std::size_t m = xs.size();
  if (ys.size() != m) throw error("interpolate: size mismatch");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (is_zero(S(xs[i] - xs[j]))) throw singular_interpolation("repeated interpolation abscissa");
  std::vector<S> dd = ys;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  Poly<S> out;
  for (std::size_t i = m; i-- > 0;) out = out * Poly<S>::linear_root(xs[i]) + Poly<S>::constant(dd[i]);
  return out;
}

inline Poly<Complex> to_complex(const Poly<Rational>& p) {
  std::vector<Complex> out;
  for (const auto& v : p.c) out.push_back(to_complex(v));
  return Poly<Complex>(std::move(out));
}
inline Poly<Complex> to_complex(const Poly<Complex>& p) { return p; }

// Roots via eigenvalues of the companion matrix.
std::vector<Complex> roots(const Poly<Complex>& p);
inline std::vector<Complex> roots(const Poly<Rational>& p) { return roots(to_complex(p)); }

}  // namespace qcd
