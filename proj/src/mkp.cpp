#include "qcduality/mkp.hpp"

#include <cmath>
#include <numbers>

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

long binomial(int m, int r) {
  long out = 1;
  for (int k = 1; k <= r; ++k) out = out * (m - r + k) / k;
  return out;
}

Complex log_of(const Rational& q) { return std::log(to_complex(q)); }
Complex log_of(const Complex& z) { return std::log(z); }

// z^y on the branch continuous around ref (cut opposite to ref).
Complex power_near(const Complex& z, const Complex& y, const Complex& ref) {
  return std::exp(y * (std::log(ref) + std::log(z / ref)));
}

// Prefactor z^{x/eta} exp(xi(t, z)) prod (1 - z/z_j)^{-s_j}.
Complex wave_prefactor(const Times<Complex>& times, const Complex& x, const Complex& eta, const Complex& z,
                       const Complex& ref) {
  return power_near(z, x / eta, ref) * std::exp(times.xi(z)) * times.shift_factor(z);
}

template <class S>
Grid<S> scalar_casoratian(const std::vector<QuasiPolynomial<S>>& rows, const std::vector<int>& shifts, const S& x,
                          const S& eta) {
  Grid<S> m(rows.size(), std::vector<S>(shifts.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t s = 0; s < shifts.size(); ++s)
      m[r][s] = pow_int(rows[r].base, shifts[s]) * rows[r].poly(S(x + S(eta * integer<S>(shifts[s]))));
  return m;
}

}  // namespace

// ---- data and times ----

template <class S>
int KricheverData<S>::N() const {
  int total = 0;
  for (int m : M) total += m;
  return total;
}

template <class S>
void KricheverData<S>::validate() const {
  if (is_zero(eta)) throw error("Krichever data: eta must be nonzero");
  if (p.empty()) throw error("Krichever data: at least one point required");
  if (M.size() != p.size() || a.size() != p.size()) throw error("Krichever data: size mismatch");
  for (int i = 0; i < n(); ++i) {
    if (is_zero(p[i])) throw error("Krichever data: points must be nonzero");
    for (int j = i + 1; j < n(); ++j)
      if (is_zero(S(p[i] - p[j]))) throw error("Krichever data: points must be distinct");
    if (M[i] < 0) throw error("Krichever data: negative multiplicity");
    if (static_cast<int>(a[i].size()) != M[i] + 1) throw error("Krichever data: a_i needs M_i + 1 coefficients");
    if (!(a[i][0] == S(1))) throw error("Krichever data: a_i0 must be 1");
  }
}

template <class S>
KricheverData<S> KricheverData<S>::restricted(int m) const {
  KricheverData out;
  out.eta = eta;
  out.p.assign(p.begin(), p.begin() + m);
  out.M.assign(M.begin(), M.begin() + m);
  out.a.assign(a.begin(), a.begin() + m);
  return out;
}

template <class S>
KricheverData<S> KricheverData<S>::swapped(int i, int j) const {
  KricheverData out = *this;
  std::swap(out.p[i], out.p[j]);
  std::swap(out.M[i], out.M[j]);
  std::swap(out.a[i], out.a[j]);
  return out;
}

KricheverData<Complex> to_complex(const KricheverData<Rational>& data) {
  KricheverData<Complex> out;
  out.eta = to_complex(data.eta);
  for (const auto& v : data.p) out.p.push_back(to_complex(v));
  out.M = data.M;
  for (const auto& row : data.a) {
    std::vector<Complex> r;
    for (const auto& v : row) r.push_back(to_complex(v));
    out.a.push_back(std::move(r));
  }
  return out;
}

template <class S>
Times<S> Times<S>::from(const TimeVector<S>& tv, int required) {
  require_truncation(tv.K(), required, "times");
  return Times(tv.values);
}

template <class S>
Times<S> Times<S>::shifted(const S& z, int sign) const {
  if (is_zero(z)) throw zero_argument("Miwa shift at z = 0");
  Times out = *this;
  for (auto it = out.shifts.begin(); it != out.shifts.end(); ++it)
    if (it->z == z && it->sign == -sign) {
      out.shifts.erase(it);
      return out;
    }
  out.shifts.push_back({z, sign});
  return out;
}

template <class S>
Times<S> Times<S>::with_t1(const S& value) const {
  Times out = *this;
  if (out.t.empty()) out.t.push_back(S(0));
  out.t[0] = value;
  return out;
}

template <class S>
S Times<S>::xi(const S& zeta) const {
  S acc(0), power(1);
  for (const S& tk : t) {
    power *= zeta;
    acc += tk * power;
  }
  return acc;
}

template <class S>
S Times<S>::log_derivative(const S& zeta, int k) const {
  S acc(0);
  for (int m = k; m <= static_cast<int>(t.size()); ++m) {
    S falling(1);
    for (int j = 0; j < k; ++j) falling *= integer<S>(m - j);
    acc += t[m - 1] * falling * pow_int(zeta, m - k);
  }
  S fact(1);
  for (int j = 2; j < k; ++j) fact *= integer<S>(j);
  for (const auto& sh : shifts) {
    S d = sh.z - zeta;
    if (is_zero(d)) throw pole_evaluation("Miwa shift point coincides with an evaluation point");
    acc += integer<S>(sh.sign) * fact / pow_int(d, k);
  }
  return acc;
}

template <class S>
S Times<S>::shift_factor(const S& zeta) const {
  S acc(1);
  for (const auto& sh : shifts) {
    S f = S(1) - zeta / sh.z;
    if (sh.sign > 0) {
      if (is_zero(f)) throw pole_evaluation("Miwa shift point coincides with an evaluation point");
      acc /= f;
    } else {
      acc *= f;
    }
  }
  return acc;
}

Times<Complex> to_complex(const Times<Rational>& times) {
  Times<Complex> out;
  for (const auto& v : times.t) out.t.push_back(to_complex(v));
  for (const auto& sh : times.shifts) out.shifts.push_back({to_complex(sh.z), sh.sign});
  return out;
}

// ---- quasipolynomials ----

template <class S>
QuasiPolynomial<S> QuasiPolynomial<S>::shifted_steps(int k, const S& eta) const {
  QuasiPolynomial out = *this;
  out.poly = pow_int(base, k) * poly.shifted(S(eta * integer<S>(k)));
  return out;
}

template <class S>
Complex QuasiPolynomial<S>::value(const Complex& x, const Complex& eta) const {
  Complex p = to_complex(poly)(x);
  const Complex log_base = log_of(base) + Complex(0.0, 2.0 * std::numbers::pi * winding);
  return std::exp(x / eta * log_base + to_complex(log_scale)) * p;
}

QuasiPolynomial<Complex> to_complex(const QuasiPolynomial<Rational>& q) {
  return {to_complex(q.base), to_complex(q.log_scale), to_complex(q.poly), q.winding};
}

// ---- A-functions and tau ----

template <class S>
QuasiPolynomial<S> a_quasi(const KricheverData<S>& data, int i, const Times<S>& times) {
  const S& p = data.p[i];
  const int M = data.M[i];
  // Y[q] = E^{(q)}(p) / E(p) by the complete Bell recursion in log E.
  std::vector<S> L(M + 1, S(0)), Y(M + 1, S(0));
  for (int k = 1; k <= M; ++k) L[k] = times.log_derivative(p, k);
  Y[0] = S(1);
  for (int q = 0; q < M; ++q) {
    S acc(0);
    for (int j = 0; j <= q; ++j) acc += integer<S>(binomial(q, j)) * Y[q - j] * L[j + 1];
    Y[q + 1] = acc;
  }
  // falling[r] = (x/eta)(x/eta - 1)...(x/eta - r + 1)
  std::vector<Poly<S>> falling(M + 1);
  falling[0] = Poly<S>::constant(S(1));
  for (int r = 0; r < M; ++r)
    falling[r + 1] = falling[r] * Poly<S>(std::vector<S>{integer<S>(-r), S(S(1) / data.eta)});
  Poly<S> poly;
  for (int m = 0; m <= M; ++m) {
    if (is_zero(data.a[i][m])) continue;
    for (int r = 0; r <= m; ++r) {
      S c = data.a[i][m] * integer<S>(binomial(m, r)) * pow_int(p, -r) * Y[m - r];
      poly += c * falling[r];
    }
  }
  return {p, times.xi(p), times.shift_factor(p) * poly};
}

template <class S>
Complex a_function(const KricheverData<S>& data, int i, const Complex& x, const Times<S>& times) {
  return a_quasi(data, i, times).value(x, to_complex(data.eta));
}

template <class S>
QuasiPolynomial<S> casoratian(const KricheverData<S>& data, const std::vector<int>& rows, const std::vector<int>& shifts,
                              const Times<S>& times, const std::vector<int>& extra) {
  if (rows.size() != shifts.size()) throw error("casoratian: needs a square matrix");
  QuasiPolynomial<S> out{S(1), S(0), Poly<S>::constant(S(1))};
  if (rows.empty()) return out;
  Grid<Poly<S>> m(rows.size(), std::vector<Poly<S>>(shifts.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto a = a_quasi(data, rows[r], times);
    out.absorb(a);
    const int add = extra.empty() ? 0 : extra[r];
    for (std::size_t s = 0; s < shifts.size(); ++s) m[r][s] = a.shifted_steps(shifts[s] + add, data.eta).poly;
  }
  out.poly = det_commutative(m, Poly<S>(), Poly<S>::constant(S(1)));
  return out;
}

template <class S>
QuasiPolynomial<S> tau_quasipoly(const KricheverData<S>& data, const Times<S>& times) {
  const int n = data.n();
  std::vector<QuasiPolynomial<S>> rows;
  QuasiPolynomial<S> out{S(1), S(0), Poly<S>()};
  for (int i = 0; i < n; ++i) {
    rows.push_back(a_quasi(data, i, times));
    out.absorb(rows.back());
  }
  std::vector<int> shifts;
  for (int j = 1; j <= n; ++j) shifts.push_back(-j);
  std::vector<S> xs, ys;
  for (int k = 0; k <= data.N(); ++k) {
    xs.push_back(integer<S>(k));
    ys.push_back(det_field(scalar_casoratian(rows, shifts, xs.back(), data.eta)));
  }
  out.poly = interpolate(xs, ys);
  return out;
}

template <class S>
Complex tau(const KricheverData<S>& data, const Complex& x, const Times<S>& times) {
  return tau_quasipoly(data, times).value(x, to_complex(data.eta));
}

namespace {

std::vector<int> minus_range(int from, int to) {
  std::vector<int> out;
  for (int j = from; j <= to; ++j) out.push_back(-j);
  return out;
}

std::vector<int> all_rows(int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.push_back(i);
  return out;
}

}  // namespace

// ---- wave functions ----

namespace {

// q(x) exp(-offset): the exponential of xi at the points is common to
// numerator and denominator of every wave-function ratio, so it is removed
// before evaluation to keep both in double range.
Complex reduced_value(const QuasiPolynomial<Complex>& q, const Complex& x, const Complex& eta, const Complex& offset) {
  const Complex log_base = log_of(q.base) + Complex(0.0, 2.0 * std::numbers::pi * q.winding);
  return std::exp(x / eta * log_base + (q.log_scale - offset)) * q.poly(x);
}

Complex reduced_tau(const QuasiPolynomial<Complex>& q, const Complex& x, const Complex& eta, const char* what) {
  const Complex t = reduced_value(q, x, eta, q.log_scale);
  if (std::abs(t) == 0.0) throw pole_evaluation(what);
  return t;
}

void require_off_points(const KricheverData<Complex>& data, const Complex& z) {
  for (const auto& p : data.p)
    if (p == z) throw pole_evaluation("adjoint wave function at a Krichever point");
}

}  // namespace

Complex wave_det(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times, const Complex& z) {
  const int n = data.n();
  Grid<Complex> m(n + 1, std::vector<Complex>(n + 1));
  for (int j = 0; j <= n; ++j) m[0][j] = std::pow(z, -j);
  for (int i = 0; i < n; ++i) {
    auto a = a_quasi(data, i, times);
    for (int j = 0; j <= n; ++j)
      m[i + 1][j] = reduced_value(a, x - static_cast<double>(j) * data.eta, data.eta, a.log_scale);
  }
  const Complex t = reduced_tau(tau_quasipoly(data, times), x, data.eta, "wave function at a zero of tau");
  return wave_prefactor(times, x, data.eta, z, z) * det_field(m) / t;
}

Complex wave_ba(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times, const Complex& z) {
  const auto base = tau_quasipoly(data, times);
  const Complex t = reduced_tau(base, x, data.eta, "wave function at a zero of tau");
  const Complex shifted = reduced_value(tau_quasipoly(data, times.shifted(z, -1)), x, data.eta, base.log_scale);
  return wave_prefactor(times, x, data.eta, z, z) * shifted / t;
}

Complex adjoint_wave_det(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times,
                         const Complex& z) {
  require_off_points(data, z);
  const int n = data.n();
  const auto plus = times.shifted(z, +1);
  Grid<Complex> m(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i) {
    auto a = a_quasi(data, i, times);
    m[i][0] = reduced_value(a_quasi(data, i, plus), x - data.eta, data.eta, a.log_scale);
    for (int j = 2; j <= n; ++j)
      m[i][j - 1] = reduced_value(a, x - static_cast<double>(j) * data.eta, data.eta, a.log_scale);
  }
  const Complex t = reduced_tau(tau_quasipoly(data, times), x, data.eta, "adjoint wave function at a zero of tau");
  return det_field(m) / (t * wave_prefactor(times, x, data.eta, z, z));
}

Complex adjoint_wave_ba(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times,
                        const Complex& z) {
  require_off_points(data, z);
  const auto base = tau_quasipoly(data, times);
  const Complex t = reduced_tau(base, x, data.eta, "adjoint wave function at a zero of tau");
  const Complex shifted = reduced_value(tau_quasipoly(data, times.shifted(z, +1)), x, data.eta, base.log_scale);
  return shifted / (t * wave_prefactor(times, x, data.eta, z, z));
}

namespace {

// Integer nodes w >= 2 for interpolation in w = 1/z; a node is skipped when
// the shift point 1/w is a Krichever point (A_i has a pole there).
template <class S>
std::vector<S> miwa_nodes(const KricheverData<S>& data, int count) {
  std::vector<S> out;
  for (int k = 2; static_cast<int>(out.size()) < count; ++k) {
    const S w = integer<S>(k);
    bool clear = true;
    for (const auto& p : data.p) clear = clear && !is_zero(S(w * p - S(1)));
    if (clear) out.push_back(w);
  }
  return out;
}

}  // namespace

template <class S>
std::vector<S> wave_coefficients(const KricheverData<S>& data, const S& x, const Times<S>& times) {
  const int n = data.n();
  const S denom = tau_quasipoly(data, times).poly(x);
  if (is_zero(denom)) throw pole_evaluation("wave coefficients at a zero of tau");
  const auto ws = miwa_nodes(data, n + 2);
  std::vector<S> values;
  for (const S& w : ws) {
    values.push_back(S(tau_quasipoly(data, times.shifted(S(S(1) / w), -1)).poly(x) / denom));
  }
  Poly<S> series = interpolate(ws, values);
  std::vector<S> out;
  for (int k = 0; k <= n; ++k) out.push_back(series.coeff(k));
  return out;
}

template <class S>
std::vector<S> krichever_residuals(const KricheverData<S>& data, const S& x, const Times<S>& times) {
  const auto w = wave_coefficients(data, x, times);
  std::vector<S> out;
  for (int i = 0; i < data.n(); ++i) {
    auto a = a_quasi(data, i, times);
    S acc(0);
    for (int k = 0; k <= data.n(); ++k) acc += w[k] * a.shifted_steps(-k, data.eta).poly(x);
    out.push_back(acc);
  }
  return out;
}

int miwa_truncation_degree(const KricheverData<Rational>& data, const Rational& x, const Times<Rational>& times) {
  const auto ws = miwa_nodes(data, data.n() + 4);
  std::vector<Rational> values;
  for (const Rational& w : ws) {
    values.push_back(tau_quasipoly(data, times.shifted(Rational(1 / w), -1)).poly(x));
  }
  return interpolate(ws, values).degree();
}

// ---- contour data ----

std::vector<Complex> laurent_coefficients(const std::function<Complex(const Complex&)>& f, const Complex& centre,
                                          double radius, int count) {
  std::vector<Complex> samples(count);
  for (int k = 0; k < count; ++k) samples[k] = f(centre + std::polar(radius, 2.0 * std::numbers::pi * k / count));
  const int half = count / 2;
  std::vector<Complex> out(count);
  for (int j = -half; j < count - half; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < count; ++k) acc += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / count);
    out[j + half] = acc / static_cast<double>(count) * std::pow(radius, -j);
  }
  return out;
}

namespace {

constexpr int kContourPoints = 96;

// Radius around p_k: well inside the distance to the origin and the other
// points, and small enough that the smooth prefactor z^{-x/eta} / E(z)
// changes by O(1) across the circle (keeps the DFT dynamic range bounded).
double pole_radius(const KricheverData<Complex>& data, int k, const Complex& x, const Times<Complex>& times) {
  const Complex p = data.p[k];
  double r = std::abs(p);
  for (int j = 0; j < data.n(); ++j)
    if (j != k) r = std::min(r, std::abs(p - data.p[j]));
  for (const auto& sh : times.shifts) r = std::min(r, std::abs(p - sh.z));
  const double drift = std::abs(times.log_derivative(p, 1)) + std::abs(x / data.eta) / std::abs(p);
  return std::min(0.3 * r, 0.5 / (1.0 + drift));
}

Complex adjoint_near(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times,
                     const Complex& z, const Complex& ref, const Complex& tau_x) {
  return tau(data, x, times.shifted(z, +1)) / (tau_x * wave_prefactor(times, x, data.eta, z, ref));
}

}  // namespace

int adjoint_zero_order(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times) {
  double r = std::numeric_limits<double>::max();
  for (const auto& p : data.p) r = std::min(r, std::abs(p));
  for (const auto& sh : times.shifts) r = std::min(r, std::abs(sh.z));
  r *= 0.5;
  auto c = laurent_coefficients([&](const Complex& z) { return tau(data, x, times.shifted(z, +1)); }, 0.0, r,
                                kContourPoints);
  const int half = kContourPoints / 2;
  double scale = 0.0;
  for (int j = 0; j < half; ++j) scale = std::max(scale, std::abs(c[j + half]) * std::pow(r, j));
  for (int j = 0; j < half; ++j)
    if (std::abs(c[j + half]) * std::pow(r, j) > 1e-8 * scale) return j;
  return half;
}

int adjoint_pole_order(const KricheverData<Complex>& data, int k, const Complex& x, const Times<Complex>& times) {
  const double r = pole_radius(data, k, x, times);
  const Complex t = tau(data, x, times);
  auto c = laurent_coefficients([&](const Complex& z) { return adjoint_near(data, x, times, z, data.p[k], t); },
                                data.p[k], r, kContourPoints);
  const int half = kContourPoints / 2;
  double scale = 0.0;
  for (int j = -half; j < half; ++j) scale = std::max(scale, std::abs(c[j + half]) * std::pow(r, j));
  int order = 0;
  for (int q = 1; q <= half; ++q)
    if (std::abs(c[half - q]) * std::pow(r, -q) > 1e-8 * scale) order = q;
  return order;
}

Complex adjoint_residue_numeric(const KricheverData<Complex>& data, int k, int m, const Complex& x,
                                const Times<Complex>& times) {
  const double r = pole_radius(data, k, x, times);
  const Complex t = tau(data, x, times);
  auto c = laurent_coefficients([&](const Complex& z) { return adjoint_near(data, x, times, z, data.p[k], t); },
                                data.p[k], r, kContourPoints);
  return c[kContourPoints / 2 - (m + 1)];
}

Complex adjoint_residue_minor(const KricheverData<Complex>& data, int k, int m, const Complex& x,
                              const Times<Complex>& times) {
  std::vector<int> rows;
  for (int i = 0; i < data.n(); ++i)
    if (i != k) rows.push_back(i);
  auto hat = casoratian(data, rows, minus_range(2, data.n()), times);
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) fact *= j;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * fact * data.a[k][m] * hat.value(x, data.eta) / tau(data, x, times);
}

// ---- bilinear identities ----

namespace {

template <class S>
struct Reduced {
  QuasiPolynomial<S> q;
  // value at x + k eta with base^{x/eta} exp(log_scale) removed
  S at(const S& x, int k, const S& eta) const { return q.shifted_steps(k, eta).poly(x); }
};

template <class S>
BilinearResidual finish(const std::vector<S>& terms) {
  S sum(0);
  double scale = 0.0;
  for (const auto& t : terms) {
    sum += t;
    scale = std::max(scale, magnitude(t));
  }
  BilinearResidual out;
  out.residual = magnitude(sum);
  out.scale = scale;
  out.exact_zero = is_zero(sum);
  return out;
}

}  // namespace

template <class S>
BilinearResidual hirota_tau_check(const KricheverData<S>& data, const S& x, const Times<S>& times, const S& z1,
                                  const S& z2) {
  Reduced<S> t0{tau_quasipoly(data, times)};
  Reduced<S> t1{tau_quasipoly(data, times.shifted(z1, -1))};
  Reduced<S> t2{tau_quasipoly(data, times.shifted(z2, -1))};
  Reduced<S> t12{tau_quasipoly(data, times.shifted(z1, -1).shifted(z2, -1))};
  const S& eta = data.eta;
  return finish<S>({S(z2 * t2.at(x, 1, eta) * t1.at(x, 0, eta)), S(-z1 * t1.at(x, 1, eta) * t2.at(x, 0, eta)),
                    S((z1 - z2) * t0.at(x, 1, eta) * t12.at(x, 0, eta))});
}

template <class S>
BilinearResidual diff3_check(const KricheverData<S>& data, const S& x, const Times<S>& times, const S& z) {
  const int n = data.n();
  const auto minus = times.shifted(z, -1);
  auto derivative = [&](const Times<S>& tm) {
    QuasiPolynomial<S> acc = casoratian(data, all_rows(n), minus_range(1, n), tm);
    acc.poly = Poly<S>();
    for (int r = 0; r < n; ++r) {
      std::vector<int> extra(n, 0);
      extra[r] = 1;
      acc.poly += casoratian(data, all_rows(n), minus_range(1, n), tm, extra).poly;
    }
    return Reduced<S>{acc};
  };
  Reduced<S> t0{casoratian(data, all_rows(n), minus_range(1, n), times)};
  Reduced<S> tm{casoratian(data, all_rows(n), minus_range(1, n), minus)};
  auto d0 = derivative(times), dm = derivative(minus);
  const S& eta = data.eta;
  return finish<S>({S(z * t0.at(x, 1, eta) * tm.at(x, 0, eta)), S(-z * t0.at(x, 0, eta) * tm.at(x, 1, eta)),
                    S(-tm.at(x, 0, eta) * d0.at(x, 1, eta)), S(t0.at(x, 1, eta) * dm.at(x, 0, eta))});
}

// ---- Baecklund residue ----

Complex backlund_residue(const KricheverData<Complex>& data, int m, const Complex& x, const Times<Complex>& times) {
  const auto level = data.restricted(m);
  const Complex p = data.p[m - 1];
  const double r = pole_radius(level, m - 1, x, times);
  auto f = [&](const Complex& z) {
    const Complex pre = power_near(z, -x / data.eta - 1.0, p) * std::exp(-times.xi(z)) / times.shift_factor(z);
    return pre * tau(level, x + data.eta, times.shifted(z, +1));
  };
  auto c = laurent_coefficients(f, p, r, kContourPoints);
  const double sign = ((m - 1) % 2 == 0) ? 1.0 : -1.0;
  return sign * c[kContourPoints / 2 - 1];
}

#define QCD_INSTANTIATE_MKP(S)                                                                                     \
  template struct KricheverData<S>;                                                                                \
  template struct Times<S>;                                                                                        \
  template struct QuasiPolynomial<S>;                                                                              \
  template QuasiPolynomial<S> a_quasi(const KricheverData<S>&, int, const Times<S>&);                              \
  template Complex a_function(const KricheverData<S>&, int, const Complex&, const Times<S>&);                      \
  template QuasiPolynomial<S> casoratian(const KricheverData<S>&, const std::vector<int>&, const std::vector<int>&, \
                                         const Times<S>&, const std::vector<int>&);                                \
  template QuasiPolynomial<S> tau_quasipoly(const KricheverData<S>&, const Times<S>&);                             \
  template Complex tau(const KricheverData<S>&, const Complex&, const Times<S>&);                                  \
  template std::vector<S> wave_coefficients(const KricheverData<S>&, const S&, const Times<S>&);                   \
  template std::vector<S> krichever_residuals(const KricheverData<S>&, const S&, const Times<S>&);                 \
  template BilinearResidual hirota_tau_check(const KricheverData<S>&, const S&, const Times<S>&, const S&,         \
                                             const S&);                                                            \
  template BilinearResidual diff3_check(const KricheverData<S>&, const S&, const Times<S>&, const S&);

QCD_INSTANTIATE_MKP(Rational)
QCD_INSTANTIATE_MKP(Complex)

}  // namespace qcd
