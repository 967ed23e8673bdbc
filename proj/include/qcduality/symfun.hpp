#pragma once

#include <vector>

#include "qcduality/linalg.hpp"
#include "qcduality/scalar.hpp"

namespace qcd {

// Weakly decreasing positive parts; zeros are stripped on construction.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  // λ_i with 1-based i; zero past the length.
  int part(int i) const { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }
  bool empty() const { return parts_.empty(); }
  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

Partition conjugate(const Partition& lambda);
// One column of height a, i.e. (1^a).
Partition column(int a);
std::vector<Partition> partitions_of(int size);
std::vector<Partition> partitions_up_to(int max_size);
std::string to_string(const Partition& lambda);

// Times t_1..t_K; values[k-1] holds t_k.
template <class S>
struct TimeVector {
  std::vector<S> values;

  TimeVector() = default;
  explicit TimeVector(std::vector<S> v) : values(std::move(v)) {
    if (values.empty()) throw truncation_too_short("TimeVector needs K >= 1");
  }
  static TimeVector zeros(int k) { return TimeVector(std::vector<S>(k, S(0))); }
  int K() const { return static_cast<int>(values.size()); }
  const S& t(int k) const { return values.at(k - 1); }
};

inline void require_truncation(int have, int need, const char* what) {
  if (have < need)
    throw truncation_too_short(std::string(what) + ": truncation order " + std::to_string(have) + " < required " +
                               std::to_string(need));
}

// h_0..h_kmax from k h_k = sum_{m=1}^k m t_m h_{k-m}.
template <class S>
std::vector<S> h_sequence(int kmax, const TimeVector<S>& t) {
  require_truncation(t.K(), kmax, "h_poly");
  std::vector<S> h(kmax + 1, S(0));
  h[0] = S(1);
  for (int k = 1; k <= kmax; ++k) {
    S acc(0);
    for (int m = 1; m <= k; ++m) acc = acc + S(S(m) * t.t(m)) * h[k - m];
    h[k] = div_int(acc, k);
  }
  return h;
}

template <class S>
S h_poly(int k, const TimeVector<S>& t) {
  if (k < 0) return S(0);
  return h_sequence(k, t)[k];
}

template <class S>
TimeVector<S> negated(const TimeVector<S>& t) {
  std::vector<S> v;
  for (const auto& x : t.values) v.push_back(S(-x));
  return TimeVector<S>(std::move(v));
}

template <class S>
std::vector<S> e_sequence(int kmax, const TimeVector<S>& t) {
  std::vector<S> h = h_sequence(kmax, negated(t));
  for (int k = 1; k <= kmax; k += 2) h[k] = S(-h[k]);
  return h;
}

template <class S>
S e_poly(int k, const TimeVector<S>& t) {
  if (k < 0) return S(0);
  return e_sequence(k, t)[k];
}

// det_{i,j <= l(λ)} h_{λ_i - i + j}
template <class S>
S schur(const Partition& lambda, const TimeVector<S>& t) {
  require_truncation(t.K(), lambda.size(), "schur");
  const int rows = lambda.length();
  if (rows == 0) return S(1);
  std::vector<S> h = h_sequence(lambda.size(), t);
  auto hk = [&](int k) { return (k < 0 || k > lambda.size()) ? S(0) : h[k]; };
  Grid<S> m(rows, std::vector<S>(rows, S(0)));
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= rows; ++j) m[i - 1][j - 1] = hk(lambda.part(i) - i + j);
  return det_commutative(m, S(0), S(1));
}

// det_{i,j <= λ_1} e_{λ'_i - i + j}
template <class S>
S schur_dual(const Partition& lambda, const TimeVector<S>& t) {
  require_truncation(t.K(), lambda.size(), "schur");
  const Partition conj = conjugate(lambda);
  const int rows = conj.length();
  if (rows == 0) return S(1);
  std::vector<S> e = e_sequence(lambda.size(), t);
  auto ek = [&](int k) { return (k < 0 || k > lambda.size()) ? S(0) : e[k]; };
  Grid<S> m(rows, std::vector<S>(rows, S(0)));
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= rows; ++j) m[i - 1][j - 1] = ek(conj.part(i) - i + j);
  return det_commutative(m, S(0), S(1));
}

// t ± [z^{-1}]: t_k ± z^{-k}/k
template <class S>
TimeVector<S> miwa_shift(const TimeVector<S>& t, const S& z, int sign) {
  if (is_zero(z)) throw zero_argument("miwa_shift: z must be nonzero");
  std::vector<S> v = t.values;
  S inv = S(1) / z;
  S power = inv;
  for (int k = 1; k <= t.K(); ++k) {
    S term = div_int(power, k);
    v[k - 1] = sign > 0 ? S(v[k - 1] + term) : S(v[k - 1] - term);
    power *= inv;
  }
  return TimeVector<S>(std::move(v));
}

// Power-sum times t_k = (1/k) sum_i xi_i^k.
template <class S>
TimeVector<S> power_sum_times(const std::vector<S>& xi, int k_max) {
  std::vector<S> v(std::max(k_max, 1), S(0));
  for (const S& x : xi) {
    S p = x;
    for (int k = 1; k <= static_cast<int>(v.size()); ++k) {
      v[k - 1] += div_int(p, k);
      p *= x;
    }
  }
  return TimeVector<S>(std::move(v));
}

template <class S>
S schur_from_eigenvalues(const Partition& lambda, const std::vector<S>& xi) {
  return schur(lambda, power_sum_times(xi, lambda.size()));
}

// Per-degree comparison of sum_{|λ|=m} s_λ(t) s_λ(t') with the degree-m
// part h_m(u), u_k = k t_k t'_k, of exp(sum_k k t_k t'_k).
template <class S>
struct CauchyLittlewoodRow {
  int degree;
  S schur_side;
  S exp_side;
};

template <class S>
std::vector<CauchyLittlewoodRow<S>> cauchy_littlewood(const TimeVector<S>& t, const TimeVector<S>& tp, int max_degree) {
  require_truncation(t.K(), max_degree, "cauchy_littlewood");
  require_truncation(tp.K(), max_degree, "cauchy_littlewood");
  std::vector<S> u;
  for (int k = 1; k <= max_degree; ++k) u.push_back(S(S(k) * t.t(k)) * tp.t(k));
  if (u.empty()) u.push_back(S(0));
  std::vector<S> h = h_sequence(max_degree, TimeVector<S>(u));
  std::vector<CauchyLittlewoodRow<S>> rows;
  for (int m = 0; m <= max_degree; ++m) {
    S acc(0);
    for (const auto& lambda : partitions_of(m)) acc = acc + schur(lambda, t) * schur(lambda, tp);
    rows.push_back({m, acc, h[m]});
  }
  return rows;
}

}  // namespace qcd
