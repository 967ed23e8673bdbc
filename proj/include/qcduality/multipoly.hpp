#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcduality/scalar.hpp"

namespace qcd {

// Sparse multivariate polynomial with rational coefficients. Exponent vectors
// carry no trailing zeros, so the number of variables is implicit and
// constants have an empty key. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(long c) { if (c != 0) terms_[{}] = c; }
  MultiPoly(const Rational& c) { if (!qcd::is_zero(c)) terms_[{}] = c; }
  static MultiPoly variable(int index, int power = 1);
  static MultiPoly monomial(Exponents e, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  Rational coeff(const Exponents& e) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) { return MultiPoly() - a; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly scaled(const Rational& s) const;
  // Keeps only terms whose total degree is at most d.
  MultiPoly truncated(int d) const;
  Rational evaluate(const std::vector<Rational>& values) const;
  std::string str() const;

  static Exponents canonical(Exponents e);

 private:
  Terms terms_;
};

inline MultiPoly div_int(const MultiPoly& p, long k) { return p.scaled(Rational(Rational(1) / Rational(k))); }

}  // namespace qcd
