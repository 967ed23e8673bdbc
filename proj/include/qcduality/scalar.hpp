#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

#include "qcduality/errors.hpp"

namespace qcd {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline Complex to_complex(const Rational& q) { return Complex(q.get_d(), 0.0); }
inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(double v) { return Complex(v, 0.0); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }

inline double magnitude(const Rational& q) { return std::fabs(q.get_d()); }
inline double magnitude(const Complex& z) { return std::abs(z); }

inline Rational div_int(const Rational& q, long k) { return Rational(q / Rational(k)); }
inline Complex div_int(const Complex& z, long k) { return z / static_cast<double>(k); }

// Maps an exact rational into the scalar type S.
template <class S> S from_rational(const Rational& q);
template <> inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <> inline Complex from_rational<Complex>(const Rational& q) { return to_complex(q); }

template <class S> inline constexpr bool is_exact_v = false;
template <> inline constexpr bool is_exact_v<Rational> = true;

inline Rational pow_int(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e >= 0 ? base : Rational(1 / base);
  for (long k = 0; k < (e >= 0 ? e : -e); ++k) out *= b;
  return out;
}
inline Complex pow_int(const Complex& base, long e) {
  Complex out = 1.0;
  Complex b = e >= 0 ? base : 1.0 / base;
  for (long k = 0; k < (e >= 0 ? e : -e); ++k) out *= b;
  return out;
}

// Parses "a", "-a", "a/b" (also decimal "1.25") into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace qcd
