#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "qcduality/mkp.hpp"

namespace qcd {

namespace {

template <class S>
S integer(long v) {
  return S(v);
}
template <>
Complex integer<Complex>(long v) {
  return Complex(static_cast<double>(v), 0.0);
}

std::vector<int> first_rows(int m) {
  std::vector<int> out;
  for (int i = 0; i < m; ++i) out.push_back(i);
  return out;
}

std::vector<int> minus_range(int from, int to) {
  std::vector<int> out;
  for (int j = from; j <= to; ++j) out.push_back(-j);
  return out;
}

// Sample abscissas away from the integer lattice, where the x_i of the
// test chains tend to sit.
template <class S>
std::vector<S> sample_points(int count) {
  std::vector<S> out;
  for (int k = 0; k < count; ++k) out.push_back(from_rational<S>(Rational(6 * k - 11, 7)));
  return out;
}

// Sample abscissas at least a quarter unit from every root of every level,
// shifted by 0..n+1 steps of eta: near such roots the floating evaluation of a
// level loses digits that the identities under test do not.
template <class S>
std::vector<S> separated_points(const TauChain<S>& chain, int count) {
  std::vector<Complex> forbidden;
  const Complex eta = to_complex(chain.data.eta);
  const int n = chain.data.n();
  for (const auto& level : chain.levels)
    for (const Complex& r : roots(level.poly))
      for (int j = 0; j <= n + 1; ++j) forbidden.push_back(r + static_cast<double>(j) * eta);
  std::vector<S> out;
  for (int k = 0; static_cast<int>(out.size()) < count && k < 20 * count; ++k) {
    const Rational x(6 * k - 11, 7);
    const Complex xc(x.get_d());
    if (std::ranges::all_of(forbidden, [&](const Complex& r) { return std::abs(xc - r) >= 0.25; }))
      out.push_back(from_rational<S>(x));
  }
  // Crowded roots: fall back to the plain grid rather than sample too few points.
  if (static_cast<int>(out.size()) < count) return sample_points<S>(count);
  return out;
}

std::vector<std::vector<Rational>> kernel_of(const Grid<Rational>& a, std::size_t cols, double, double) {
  return nullspace_exact(a, cols);
}
std::vector<std::vector<Complex>> kernel_of(const Grid<Complex>& a, std::size_t cols, double tol, double reference) {
  return nullspace_numeric(a, cols, tol, reference);
}

// Coefficients of sum_k (-1)^k base^{offset-k} T^k(x) P(x + (offset-k) eta)
// as a linear map of the coefficients of P (degree d).
template <class S>
std::vector<std::vector<S>> difference_kernel(const std::vector<Poly<S>>& T, const S& base, const S& eta, int d,
                                              int offset, double tolerance) {
  int top = 0;
  for (const auto& t : T) top = std::max(top, t.degree());
  const int rows = top + d + 1;
  Grid<S> m(rows, std::vector<S>(d + 1, S(0)));
  double reference = 0.0;  // size of the individual terms before cancellation
  for (int j = 0; j <= d; ++j) {
    std::vector<S> mono(j + 1, S(0));
    mono[j] = S(1);
    const Poly<S> xj(mono);
    Poly<S> column;
    for (int k = 0; k < static_cast<int>(T.size()); ++k) {
      const int step = offset - k;
      const S sign = (k % 2 == 0) ? S(1) : S(-1);
      const Poly<S> term = S(sign * pow_int(base, step)) * (T[k] * xj.shifted(S(eta * integer<S>(step))));
      for (const auto& c : term.c) reference = std::max(reference, magnitude(c));
      column += term;
    }
    for (int r = 0; r <= column.degree(); ++r) m[r][j] = column.coeff(r);
  }
  return kernel_of(m, d + 1, tolerance, reference);
}

template <class S>
Poly<S> cleaned(std::vector<S> coeffs) {
  if constexpr (!is_exact_v<S>) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, magnitude(c));
    for (auto& c : coeffs)
      if (magnitude(c) < 1e-12 * scale) c = S(0);
  }
  return Poly<S>(std::move(coeffs));
}

template <class S>
double relative(const S& sum, double scale) {
  if (is_zero(sum)) return 0.0;
  return scale == 0.0 ? magnitude(sum) : magnitude(sum) / scale;
}

}  // namespace

// ---- chain ----

template <class S>
TauChain<S> undress_chain(const KricheverData<S>& data, const Times<S>& times) {
  data.validate();
  TauChain<S> chain{data, times, {}, {}};
  for (int m = 0; m <= data.n(); ++m) {
    chain.levels.push_back(casoratian(data, first_rows(m), minus_range(1, m), times));
    chain.degrees.push_back(chain.levels.back().degree());
  }
  return chain;
}

template <class S>
std::vector<QuasiPolynomial<S>> q_functions(const TauChain<S>& chain) {
  if (!chain.times.t.empty() || !chain.times.shifts.empty()) {
    for (const auto& v : chain.times.t)
      if (!is_zero(v)) throw error("q_functions: the chain must be taken at t = 0");
    if (!chain.times.shifts.empty()) throw error("q_functions: the chain must be taken at t = 0");
  }
  return chain.levels;
}

template <class S>
QuasiPolynomial<S> tau_level_coefficient(const KricheverData<S>& data, int m, int k, const Times<S>& times) {
  std::vector<int> shifts;
  for (int j = 0; j <= m; ++j)
    if (j != k) shifts.push_back(-j);
  return casoratian(data, first_rows(m), shifts, times);
}

// ---- rational functions and difference operators ----

template <class S>
S RationalFunction<S>::operator()(const S& x) const {
  const S d = den(x);
  if (qcd::is_zero(d)) throw pole_evaluation("rational function evaluated at a pole");
  return num(x) / d;
}

template <class S>
DifferenceOperator<S> DifferenceOperator<S>::identity(const S& eta) {
  DifferenceOperator out;
  out.eta = eta;
  out.terms.emplace(0, RationalFunction<S>::constant(S(1)));
  return out;
}

template <class S>
DifferenceOperator<S> DifferenceOperator<S>::first_order(const S& eta, const RationalFunction<S>& u) {
  DifferenceOperator out = identity(eta);
  out.terms.emplace(-1, -u);
  return out;
}

template <class S>
RationalFunction<S> DifferenceOperator<S>::coefficient(int k) const {
  auto it = terms.find(k);
  if (it == terms.end()) return RationalFunction<S>{Poly<S>(), Poly<S>::constant(S(1))};
  return it->second;
}

template <class S>
std::vector<int> DifferenceOperator<S>::spans(const DifferenceOperator& other) const {
  std::vector<int> out;
  for (const auto& [k, c] : terms) out.push_back(k);
  for (const auto& [k, c] : other.terms) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// tau^{(m)}(x+eta) tau^{(m-1)}(x-eta) / (tau^{(m)}(x) tau^{(m-1)}(x)) with the
// exponential factors cancelled.
template <class S>
RationalFunction<S> dressing_coefficient(const QuasiPolynomial<S>& upper, const QuasiPolynomial<S>& lower,
                                         const S& eta) {
  const S ratio = upper.base / lower.base;
  return {ratio * (upper.poly.shifted(eta) * lower.poly.shifted(S(-eta))), upper.poly * lower.poly};
}

template <class S>
DifferenceOperator<S> factor_product(const std::vector<RationalFunction<S>>& U, const S& eta) {
  DifferenceOperator<S> out = DifferenceOperator<S>::identity(eta);
  for (auto it = U.rbegin(); it != U.rend(); ++it) out = out * DifferenceOperator<S>::first_order(eta, *it);
  return out;
}

// An operator sampled pointwise: x -> {k: c_k(x)}, with magnitude[k] the sum
// of the absolute values of the products that formed c_k (the scale of its
// floating-point error). Empty on a pole.
template <class S>
struct Sample {
  std::map<int, S> c;
  std::map<int, double> magnitude;
};

template <class S>
using Sampled = std::function<std::optional<Sample<S>>(const S&)>;

template <class S>
Sampled<S> sampled(const DifferenceOperator<S>& op) {
  return [op](const S& x) -> std::optional<Sample<S>> {
    Sample<S> out;
    try {
      for (const auto& [k, c] : op.terms) {
        const S value = c(x);
        out.c.emplace(k, value);
        out.magnitude.emplace(k, qcd::magnitude(value));
      }
    } catch (const pole_evaluation&) {
      return std::nullopt;
    }
    return out;
  };
}

// prod_{m=upto..1} (1 - U_m S^{-1}) at x, one factor at a time; avoids the
// rational-function products, which lose digits in floating point.
template <class S>
std::optional<Sample<S>> factors_at(const std::vector<RationalFunction<S>>& U, std::size_t upto, const S& eta,
                                    const S& x) {
  if (upto == 0) return Sample<S>{{{0, S(1)}}, {{0, 1.0}}};
  auto out = factors_at(U, upto - 1, eta, x);
  if (!out) return out;
  const auto prev = factors_at(U, upto - 1, eta, S(x - eta));
  if (!prev) return prev;
  S u;
  try {
    u = U[upto - 1](x);
  } catch (const pole_evaluation&) {
    return std::nullopt;
  }
  for (const auto& [k, c] : prev->c) {
    out->c[k - 1] -= u * c;
    out->magnitude[k - 1] += qcd::magnitude(u) * prev->magnitude.at(k);
  }
  return out;
}

template <class S>
Sampled<S> sampled(const std::vector<RationalFunction<S>>& U, const S& eta) {
  return [U, eta](const S& x) { return factors_at(U, U.size(), eta, x); };
}

// sum_k c_k(x) f(x + k eta) at x, where f = base^{x/eta} P(x) with the
// factor base^{x/eta} removed; returns (sum, largest term).
template <class S>
std::pair<S, double> apply_op(const std::map<int, S>& coeffs, const QuasiPolynomial<S>& f, const S& eta, const S& x) {
  S sum(0);
  double scale = 0.0;
  for (const auto& [k, c] : coeffs) {
    const S term = c * f.shifted_steps(k, eta).poly(x);
    sum += term;
    scale = std::max(scale, magnitude(term));
  }
  return {sum, scale};
}

// Largest coefficient deviation of two operators over samples, relative to
// the largest pre-cancellation magnitude of either.
template <class S>
double operator_gap(const Sampled<S>& a, const Sampled<S>& b, const std::vector<S>& xs) {
  double worst = 0.0;
  for (const S& x : xs) {
    auto sa = a(x), sb = b(x);
    if (!sa || !sb) continue;
    double scale = 1e-300;
    for (const auto& [k, v] : sa->magnitude) scale = std::max(scale, v);
    for (const auto& [k, v] : sb->magnitude) scale = std::max(scale, v);
    for (const auto& [k, v] : sb->c) sa->c[k] -= v;
    for (const auto& [k, v] : sa->c) worst = std::max(worst, relative(v, scale));
  }
  return worst;
}

// Worst relative residual of an operator applied to f over samples; exact
// tracks whether every sum vanished identically.
template <class S>
double kill_residual(const Sampled<S>& op, const QuasiPolynomial<S>& f, const S& eta, const std::vector<S>& xs,
                     bool& exact) {
  double worst = 0.0;
  exact = true;
  for (const S& x : xs) {
    auto sample = op(x);
    if (!sample) continue;
    auto [sum, scale] = apply_op(sample->c, f, eta, x);
    worst = std::max(worst, relative(sum, scale));
    exact = exact && is_zero(sum);
  }
  return worst;
}

// g_m = (1 - U_m S^{-1}) g_{m-1}, g_0 = f, at x - j eta with base^{x/eta}
// removed; returns (g_m, larger of the two terms of the last step).
template <class S>
std::optional<std::pair<S, double>> factored_apply(const std::vector<RationalFunction<S>>& U, std::size_t m,
                                                   const QuasiPolynomial<S>& f, const S& eta, const S& x, int j) {
  if (m == 0) {
    const S value = f.shifted_steps(-j, eta).poly(x);
    return std::pair{value, magnitude(value)};
  }
  const auto here = factored_apply(U, m - 1, f, eta, x, j);
  const auto before = factored_apply(U, m - 1, f, eta, x, j + 1);
  if (!here || !before) return std::nullopt;
  S u;
  try {
    u = U[m - 1](S(x - eta * S(j)));
  } catch (const pole_evaluation&) {
    return std::nullopt;
  }
  const S step = u * before->first;
  // Scale: largest magnitude anywhere in the recursion.
  const double scale = std::max({here->second, before->second, magnitude(step)});
  return std::pair{S(here->first - step), scale};
}

// Residual of the factorized operator applied to f factor by factor.
template <class S>
double factored_kill_residual(const std::vector<RationalFunction<S>>& U, const QuasiPolynomial<S>& f, const S& eta,
                              const std::vector<S>& xs, bool& exact) {
  double worst = 0.0;
  exact = true;
  for (const S& x : xs) {
    const auto result = factored_apply(U, U.size(), f, eta, x, 0);
    if (!result) continue;
    worst = std::max(worst, relative(result->first, result->second));
    exact = exact && is_zero(result->first);
  }
  return worst;
}

}  // namespace

template <class S>
WaveOperator<S> wave_operator(const TauChain<S>& chain) {
  const int n = chain.data.n();
  const S& eta = chain.data.eta;
  WaveOperator<S> out;
  out.expanded.eta = eta;
  const auto& top = chain.levels[n];
  for (int k = 0; k <= n; ++k) {
    auto minor = tau_level_coefficient(chain.data, n, k, chain.times);
    Poly<S> num = (k % 2 == 0) ? minor.poly : -minor.poly;
    out.expanded.terms.emplace(-k, RationalFunction<S>{num, top.poly});
  }
  for (int m = 1; m <= n; ++m) out.U.push_back(dressing_coefficient(chain.levels[m], chain.levels[m - 1], eta));
  out.factorized = factor_product(out.U, eta);
  if constexpr (is_exact_v<S>) {
    out.agree = out.expanded == out.factorized;
  } else {
    out.agree = operator_gap(sampled(out.expanded), sampled(out.U, eta), separated_points(chain, 6)) < 1e-9;
  }
  return out;
}

template <class S>
CheckReport kernel_check(const KricheverData<S>& data, const Times<S>& times, std::uint64_t seed) {
  const double tol = 1e-9;
  CheckReport report;
  const auto chain = undress_chain(data, times);
  const auto W = wave_operator(chain);
  const auto xs = separated_points(chain, std::max(8, data.N() + 2));
  report.add("factorization", W.agree);

  const int n = data.n();
  std::vector<QuasiPolynomial<S>> A;
  for (int k = 0; k < n; ++k) A.push_back(a_quasi(data, k, times));

  const Sampled<S> expanded = sampled(W.expanded);
  for (int k = 0; k < n; ++k) {
    bool exact = true;
    double worst = kill_residual(expanded, A[k], data.eta, xs, exact);
    report.add("expanded kills A_" + std::to_string(k + 1), is_exact_v<S> ? exact : worst < tol, worst);
    worst = factored_kill_residual(W.U, A[k], data.eta, xs, exact);
    report.add("factorized kills A_" + std::to_string(k + 1), is_exact_v<S> ? exact : worst < tol, worst);
  }

  // Random combination, evaluated with the exponential factors restored.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Complex> gamma;
  for (int k = 0; k < n; ++k) gamma.emplace_back(coeff(rng), coeff(rng));
  const Complex eta = to_complex(data.eta);
  double worst = 0.0;
  for (const S& x : xs) {
    const auto sample = expanded(x);
    if (!sample) continue;
    const auto& coeffs = sample->c;
    Complex sum = 0.0;
    double scale = 0.0;
    for (const auto& [j, c] : coeffs) {
      Complex f = 0.0;
      const Complex at = to_complex(x) + static_cast<double>(j) * eta;
      for (int k = 0; k < n; ++k) f += gamma[k] * to_complex(A[k]).value(at, eta);
      const Complex term = to_complex(c) * f;
      sum += term;
      scale = std::max(scale, std::abs(term));
    }
    worst = std::max(worst, relative(sum, scale));
  }
  report.add("kills a random combination", worst < tol, worst);

  if (n >= 2) {
    const auto swapped = undress_chain(data.swapped(0, 1), times);
    const auto Ws = wave_operator(swapped);
    double gap = operator_gap(expanded, sampled(Ws.U, data.eta), xs);
    bool same = is_exact_v<S> ? (W.expanded == Ws.factorized) : gap < tol;
    report.add("reordered factorization", same, gap);

    const std::vector<RationalFunction<S>> first{W.U[0], W.U[1]}, second{Ws.U[0], Ws.U[1]};
    gap = operator_gap(sampled(first, data.eta), sampled(second, data.eta), xs);
    same = is_exact_v<S> ? (factor_product(first, data.eta) == factor_product(second, data.eta)) : gap < tol;
    report.add("two-factor exchange", same, gap);

    bool exact = true;
    const double w = factored_kill_residual(std::vector<RationalFunction<S>>{Ws.U[0]}, A[1], data.eta, xs, exact);
    report.add("reordered last factor kills A_2", is_exact_v<S> ? exact : w < tol, w);
  }
  return report;
}

// ---- TQ relations ----

template <class S>
TQSolution<S> tq_solve_q1(const std::vector<Poly<S>>& T, const S& p, const S& eta, int d, double tolerance) {
  auto kernel = difference_kernel(T, p, eta, d, 1, tolerance);
  TQSolution<S> out;
  out.kernel_dim = static_cast<int>(kernel.size());
  if (kernel.size() != 1) return out;
  Poly<S> q = cleaned(kernel[0]);
  if (q.is_zero_poly()) return out;
  out.q = S(S(1) / q.leading()) * q;
  return out;
}

template <class S>
double tq_verify_qn1(const std::vector<Poly<S>>& T, const QuasiPolynomial<S>& q_prev, const S& det_g, const S& eta,
                     const std::vector<S>& samples) {
  const Poly<S>& phi = T.at(0);
  double worst = 0.0;
  for (const S& x : samples) {
    S sum(0);
    double scale = 0.0;
    for (int a = 0; a < static_cast<int>(T.size()); ++a) {
      const S y = x + S(eta * integer<S>(a - 1));
      const S next = x + S(eta * integer<S>(a));
      const S denom = phi(y) * pow_int(det_g, a) * phi(next);
      if (is_zero(denom)) throw pole_evaluation("dual relation sampled at a zero of phi");
      S term = T[a](y) * pow_int(q_prev.base, a - 1) * q_prev.poly(y) / denom;
      if (a % 2) term = S(-term);
      sum += term;
      scale = std::max(scale, magnitude(term));
    }
    worst = std::max(worst, relative(sum, scale));
  }
  return worst;
}

BetheReport bethe_verify(const std::vector<QuasiPolynomial<Complex>>& Q, const std::vector<Complex>& p,
                         const Complex& eta, double collision_tolerance) {
  const int n = static_cast<int>(Q.size()) - 1;
  std::vector<std::vector<Complex>> level_roots;
  for (const auto& q : Q) {
    auto r = q.poly.degree() > 0 ? roots(q.poly) : std::vector<Complex>{};
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j)
        if (std::abs(r[i] - r[j]) < collision_tolerance * std::max(1.0, std::abs(r[i])))
          throw root_collision("Bethe roots collide at level " + std::to_string(&q - Q.data()));
    level_roots.push_back(std::move(r));
  }
  BetheReport report;
  for (int m = 1; m < n; ++m) {
    const auto& up = Q[m + 1];
    const auto& mid = Q[m];
    const auto& low = Q[m - 1];
    const Complex target = p[m - 1] / p[m];
    for (std::size_t a = 0; a < level_roots[m].size(); ++a) {
      const Complex v = level_roots[m][a];
      const Complex ratio = up.base * up.poly(v + eta) / up.poly(v) * mid.poly(v - eta) /
                            (mid.base * mid.base * mid.poly(v + eta)) * low.base * low.poly(v) / low.poly(v - eta);
      Complex product = 1.0;
      for (const auto& w : level_roots[m + 1]) product *= (v - w + eta) / (v - w);
      for (std::size_t b = 0; b < level_roots[m].size(); ++b)
        if (b != a) product *= (v - level_roots[m][b] - eta) / (v - level_roots[m][b] + eta);
      for (const auto& w : level_roots[m - 1]) product *= (v - w) / (v - w - eta);
      BetheRow row{m, v, std::abs(ratio + 1.0), std::abs(product - target) / std::abs(target)};
      report.max_ratio = std::max(report.max_ratio, row.ratio_residual);
      report.max_product = std::max(report.max_product, row.product_residual);
      report.rows.push_back(row);
    }
  }
  return report;
}

template <class S>
S plucker_residual(const Grid<S>& matrix, int j1, int j2, int j3, int j4) {
  const int cols = static_cast<int>(matrix.empty() ? 0 : matrix[0].size());
  auto D = [&](int a, int b) {
    Grid<S> minor;
    for (const auto& row : matrix) {
      std::vector<S> r;
      for (int c = 0; c < cols; ++c)
        if (c != a && c != b) r.push_back(row[c]);
      minor.push_back(std::move(r));
    }
    return det_field(minor);
  };
  return D(j1, j2) * D(j3, j4) + D(j1, j4) * D(j2, j3) - D(j1, j3) * D(j2, j4);
}

CheckReport dressing_recurrence_check(const KricheverData<Complex>& data, const Times<Complex>& times,
                                      const Complex& x, const Complex& z, double tolerance) {
  const int n = data.n();
  const Complex eta = data.eta;
  const auto minus = times.shifted(z, -1);
  auto level = [&](int m, const Complex& at, const Times<Complex>& tm) -> Complex {
    if (m < 0 || m > n) return 0.0;
    return casoratian(data, first_rows(m), minus_range(1, m), tm).value(at, eta);
  };
  const Complex pre = std::pow(z, x / eta) * std::exp(times.xi(z)) * times.shift_factor(z);
  auto psi = [&](int m, const Complex& at) {
    return pre * std::pow(z, (at - x) / eta) * level(m, at, minus) / level(m, at, times);
  };
  CheckReport report;
  for (int m = 1; m <= n; ++m) {
    const Complex U = level(m, x + eta, times) * level(m - 1, x - eta, times) /
                      (level(m, x, times) * level(m - 1, x, times));
    const Complex lhs = psi(m, x);
    const Complex rhs = psi(m - 1, x) - U * psi(m - 1, x - eta);
    const double r = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    report.add("recurrence m=" + std::to_string(m), r < tolerance, r);
  }
  for (int m = 0; m <= n + 1; ++m) {
    const Complex t1 = level(m - 1, x, minus) * level(m, x, times);
    const Complex t2 = -level(m - 1, x - eta, minus) * level(m, x + eta, times) / z;
    const Complex t3 = -level(m - 1, x, times) * level(m, x, minus);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    const double r = relative(Complex(t1 + t2 + t3), scale);
    report.add("bilinear m=" + std::to_string(m), r < tolerance, r);
  }
  return report;
}

KricheverData<Complex> krichever_from_transfer(const std::vector<Poly<Complex>>& T, const std::vector<Complex>& p,
                                               const std::vector<int>& M, const Complex& eta, double tolerance) {
  KricheverData<Complex> data;
  data.eta = eta;
  data.p = p;
  data.M = M;
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto kernel = difference_kernel(T, p[k], eta, M[k], 0, tolerance);
    if (kernel.size() != 1)
      throw near_degenerate_spectrum("kernel of the transfer difference operator has dimension " +
                                     std::to_string(kernel.size()) + " at point " + std::to_string(k + 1));
    const Poly<Complex> P = cleaned(kernel[0]);
    const Complex p0 = P(0.0);
    if (std::abs(p0) < 1e-12 * std::max(1.0, std::abs(P.leading())))
      throw error("krichever_from_transfer: A_k vanishes at x = 0, cannot normalize a_k0 = 1");
    // Forward differences in y = x/eta give the falling-factorial expansion.
    std::vector<Complex> values;
    for (int j = 0; j <= M[k]; ++j) values.push_back(P(static_cast<double>(j) * eta) / p0);
    std::vector<Complex> a;
    double fact = 1.0;
    for (int m = 0; m <= M[k]; ++m) {
      if (m > 0) fact *= m;
      a.push_back(values[0] / fact * std::pow(p[k], m));
      for (int j = 0; j + 1 < static_cast<int>(values.size()); ++j) values[j] = values[j + 1] - values[j];
      values.pop_back();
    }
    a[0] = 1.0;
    data.a.push_back(std::move(a));
  }
  return data;
}

#define QCD_INSTANTIATE_CHAIN(S)                                                                                  \
  template TauChain<S> undress_chain(const KricheverData<S>&, const Times<S>&);                                   \
  template std::vector<QuasiPolynomial<S>> q_functions(const TauChain<S>&);                                       \
  template QuasiPolynomial<S> tau_level_coefficient(const KricheverData<S>&, int, int, const Times<S>&);          \
  template struct RationalFunction<S>;                                                                            \
  template struct DifferenceOperator<S>;                                                                          \
  template WaveOperator<S> wave_operator(const TauChain<S>&);                                                     \
  template CheckReport kernel_check(const KricheverData<S>&, const Times<S>&, std::uint64_t);                     \
  template TQSolution<S> tq_solve_q1(const std::vector<Poly<S>>&, const S&, const S&, int, double);               \
  template double tq_verify_qn1(const std::vector<Poly<S>>&, const QuasiPolynomial<S>&, const S&, const S&,       \
                                const std::vector<S>&);                                                           \
  template S plucker_residual(const Grid<S>&, int, int, int, int);

QCD_INSTANTIATE_CHAIN(Rational)
QCD_INSTANTIATE_CHAIN(Complex)

}  // namespace qcd
