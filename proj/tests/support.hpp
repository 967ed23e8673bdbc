#pragma once

#include <random>
#include <vector>

#include "qcduality/quantum.hpp"

namespace qcd::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
  Rational q(num(rng));
  q /= den(rng);
  return q;
}

inline Rational random_nonzero(std::mt19937_64& rng, int span = 9, int max_den = 5) {
  for (;;) {
    Rational q = random_rational(rng, span, max_den);
    if (!is_zero(q)) return q;
  }
}

template <class S>
TimeVector<S> random_times(std::mt19937_64& rng, int k);

template <>
inline TimeVector<Rational> random_times<Rational>(std::mt19937_64& rng, int k) {
  std::vector<Rational> v;
  for (int i = 0; i < k; ++i) v.push_back(random_rational(rng));
  return TimeVector<Rational>(v);
}

// Small-integer chain with generic parameters: validated, nonzero twist trace.
inline ChainSpec<Rational> random_chain(std::mt19937_64& rng, int n, int N) {
  for (;;) {
    ChainSpec<Rational> spec;
    spec.n = n;
    spec.N = N;
    std::uniform_int_distribution<int> small(-6, 6), eta_num(1, 3);
    spec.eta = Rational(eta_num(rng));
    spec.eta /= 2;
    for (int i = 0; i < N; ++i) spec.x.push_back(Rational(small(rng)));
    for (int a = 0; a < n; ++a) spec.p.push_back(Rational(small(rng)));
    try {
      spec.validate();
      if (!is_zero(spec.twist_trace())) return spec;
    } catch (const error&) {
    }
  }
}

}  // namespace qcd::testing
