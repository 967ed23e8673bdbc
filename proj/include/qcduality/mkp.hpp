#pragma once

#include <cstdint>
#include <functional>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qcduality/linalg.hpp"
#include "qcduality/poly.hpp"
#include "qcduality/symfun.hpp"

namespace qcd {

// Krichever data of one polynomial mKP solution. Points are 0-based here:
// point i of the formulas is p[i-1].
template <class S>
struct KricheverData {
  S eta = S(1);
  std::vector<S> p;
  std::vector<int> M;
  std::vector<std::vector<S>> a;  // a[i][m], m = 0..M[i], a[i][0] = 1

  int n() const { return static_cast<int>(p.size()); }
  int N() const;
  // Throws on zero eta, zero or repeated points, negative multiplicities,
  // coefficient lists of the wrong length or a[i][0] != 1.
  void validate() const;
  // The first m points with their coefficients.
  KricheverData restricted(int m) const;
  // Points i and j exchanged.
  KricheverData swapped(int i, int j) const;
};

KricheverData<Complex> to_complex(const KricheverData<Rational>& data);

template <class S>
struct MiwaShift {
  S z;
  int sign;  // +1 for t + [1/z], -1 for t - [1/z]
};

// Times with finitely many nonzero entries plus symbolic Miwa shifts, so
// xi(t, zeta) is an exact finite sum at every evaluation point.
template <class S>
struct Times {
  std::vector<S> t;  // t[k-1] = t_k
  std::vector<MiwaShift<S>> shifts;

  Times() = default;
  explicit Times(std::vector<S> values) : t(std::move(values)) {}
  // Requires K >= required (the truncation the caller needs downstream).
  static Times from(const TimeVector<S>& tv, int required);

  Times shifted(const S& z, int sign) const;
  Times with_t1(const S& value) const;
  // xi(t, zeta) over the finite time list only.
  S xi(const S& zeta) const;
  // k-th derivative (k >= 1) of log E, E = exp(xi) prod (1 - zeta/z_j)^{-s_j}.
  S log_derivative(const S& zeta, int k) const;
  // prod (1 - zeta/z_j)^{-s_j}; throws pole_evaluation at a pole.
  S shift_factor(const S& zeta) const;
};

Times<Complex> to_complex(const Times<Rational>& times);

inline double principal_arg(const Rational& q) { return sgn(q) < 0 ? std::numbers::pi : 0.0; }
inline double principal_arg(const Complex& z) { return std::arg(z); }

// k with Log a + Log b = Log(ab) + 2 pi i k for principal logarithms.
template <class S>
int product_winding(const S& a, const S& b) {
  return static_cast<int>(
      std::lround((principal_arg(a) + principal_arg(b) - principal_arg(S(a * b))) / (2.0 * std::numbers::pi)));
}

// value(x) = exp(x/eta (Log base + 2 pi i winding)) exp(log_scale) poly(x).
// The winding keeps a product of point powers on the branch of its factors.
template <class S>
struct QuasiPolynomial {
  S base = S(1);
  S log_scale = S(0);
  Poly<S> poly;
  int winding = 0;

  int degree() const { return poly.degree(); }
  // f(x + k eta) as a quasipolynomial with the same base and scale.
  QuasiPolynomial shifted_steps(int k, const S& eta) const;
  Complex value(const Complex& x, const Complex& eta) const;
  friend QuasiPolynomial operator*(const QuasiPolynomial& a, const QuasiPolynomial& b) {
    return QuasiPolynomial{S(a.base * b.base), S(a.log_scale + b.log_scale), a.poly * b.poly,
                           a.winding + b.winding + product_winding(a.base, b.base)};
  }
  // Multiplies the exponential part by that of factor (base and scale only).
  void absorb(const QuasiPolynomial& factor) {
    winding += factor.winding + product_winding(base, factor.base);
    base *= factor.base;
    log_scale += factor.log_scale;
  }
};

QuasiPolynomial<Complex> to_complex(const QuasiPolynomial<Rational>& q);
inline QuasiPolynomial<Complex> to_complex(const QuasiPolynomial<Complex>& q) { return q; }

// A_i(x, t) of point i (0-based) as a quasipolynomial in x.
template <class S>
QuasiPolynomial<S> a_quasi(const KricheverData<S>& data, int i, const Times<S>& times);

template <class S>
Complex a_function(const KricheverData<S>& data, int i, const Complex& x, const Times<S>& times);

// det_{r in rows, s} A_r(x + (shifts[s] + extra[r]) eta), exact in x. The
// optional per-row extra shift realizes d/dt_1 of one row.
template <class S>
QuasiPolynomial<S> casoratian(const KricheverData<S>& data, const std::vector<int>& rows, const std::vector<int>& shifts,
                              const Times<S>& times, const std::vector<int>& extra = {});

// tau = det A_i(x - j eta), j = 1..n, polynomial part recovered by
// interpolation through deg + 1 abscissas.
template <class S>
QuasiPolynomial<S> tau_quasipoly(const KricheverData<S>& data, const Times<S>& times);

template <class S>
Complex tau(const KricheverData<S>& data, const Complex& x, const Times<S>& times);

// Wave function: determinant form and tau-ratio form.
Complex wave_det(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times, const Complex& z);
Complex wave_ba(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times, const Complex& z);

// Adjoint wave function: determinant form and tau-ratio form.
Complex adjoint_wave_det(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times,
                         const Complex& z);
Complex adjoint_wave_ba(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times,
                        const Complex& z);

// Coefficients w_1..w_n of the wave function at x, read off from
// tau(x, t - [1/z]) / tau(x, t) as a polynomial in 1/z (exact for rational
// data). Entry 0 is 1.
template <class S>
std::vector<S> wave_coefficients(const KricheverData<S>& data, const S& x, const Times<S>& times);

// Krichever conditions sum_m a_im d^m psi / dz^m at p_i with the common
// factor p_i^{x/eta} exp(xi) removed. Exact zero for rational data.
template <class S>
std::vector<S> krichever_residuals(const KricheverData<S>& data, const S& x, const Times<S>& times);

// Degree in 1/z of tau(x, t - [1/z]) found by exact interpolation.
int miwa_truncation_degree(const KricheverData<Rational>& data, const Rational& x, const Times<Rational>& times);

// Laurent coefficients of f on a circle: entry j + half is c_j, j in
// [-half, half).
std::vector<Complex> laurent_coefficients(const std::function<Complex(const Complex&)>& f, const Complex& centre,
                                          double radius, int count);

// Order of the zero at z = 0 of tau(x, t + [1/z]).
int adjoint_zero_order(const KricheverData<Complex>& data, const Complex& x, const Times<Complex>& times);

// Pole order of the adjoint wave function at p_k.
int adjoint_pole_order(const KricheverData<Complex>& data, int k, const Complex& x, const Times<Complex>& times);

// res_{z=p_k} (z - p_k)^m psi*: numeric contour value and the minor formula
// (-1)^k m! a_km hatA_k(x - 2 eta) / tau(x) (k 0-based).
Complex adjoint_residue_numeric(const KricheverData<Complex>& data, int k, int m, const Complex& x,
                                const Times<Complex>& times);
Complex adjoint_residue_minor(const KricheverData<Complex>& data, int k, int m, const Complex& x,
                              const Times<Complex>& times);

// Three-term bilinear identity for tau at (x, t, z1, z2); returns the
// residual with the common factors removed (exact zero for rational data)
// and the scale of the individual terms.
struct BilinearResidual {
  double residual = 0.0;
  double scale = 0.0;
  bool exact_zero = false;
};
template <class S>
BilinearResidual hirota_tau_check(const KricheverData<S>& data, const S& x, const Times<S>& times, const S& z1,
                                  const S& z2);
// Limit form with d/dt_1 of tau.
template <class S>
BilinearResidual diff3_check(const KricheverData<S>& data, const S& x, const Times<S>& times, const S& z);

// ---- undressing chain, Q-functions, difference operators ----

template <class S>
struct TauChain {
  KricheverData<S> data;
  Times<S> times;
  std::vector<QuasiPolynomial<S>> levels;  // levels[m] = tau^{(m)}, m = 0..n
  std::vector<int> degrees;                // N_m
};

// Minor form: tau^{(m)} = det_{r, s = 1..m} A_r(x - s eta).
template <class S>
TauChain<S> undress_chain(const KricheverData<S>& data, const Times<S>& times);

// tau^{(m-1)}(x, t) from the residue at z = p_m of
// z^{-x/eta - 1} exp(-xi(t, z)) tau^{(m)}(x + eta, t + [1/z]), m 1-based.
Complex backlund_residue(const KricheverData<Complex>& data, int m, const Complex& x, const Times<Complex>& times);

// Q_m(x) = tau^{(m)}(x, 0), m = 0..n; roots are the Bethe roots of level m
// and Q_n = (p_1...p_n)^{x/eta} phi.
template <class S>
std::vector<QuasiPolynomial<S>> q_functions(const TauChain<S>& chain);

// Quotient of two polynomials; equality by cross multiplication.
template <class S>
struct RationalFunction {
  Poly<S> num;
  Poly<S> den = Poly<S>::constant(S(1));

  static RationalFunction constant(const S& v) { return {Poly<S>::constant(v), Poly<S>::constant(S(1))}; }
  RationalFunction shifted(const S& a) const { return {num.shifted(a), den.shifted(a)}; }
  bool is_zero() const { return num.is_zero_poly(); }
  S operator()(const S& x) const;
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator-(const RationalFunction& a) { return {-a.num, a.den}; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

// sum_k c_k(x) S^k with S f(x) = f(x + eta); coefficients on the left.
template <class S>
struct DifferenceOperator {
  S eta = S(1);
  std::map<int, RationalFunction<S>> terms;

  static DifferenceOperator identity(const S& eta);
  // 1 - u(x) S^{-1}
  static DifferenceOperator first_order(const S& eta, const RationalFunction<S>& u);
  RationalFunction<S> coefficient(int k) const;
  friend DifferenceOperator operator*(const DifferenceOperator& a, const DifferenceOperator& b) {
    DifferenceOperator out;
    out.eta = a.eta;
    for (const auto& [ka, ca] : a.terms)
      for (const auto& [kb, cb] : b.terms) {
        RationalFunction<S> term = ca * cb.shifted(S(a.eta * S(ka)));
        auto it = out.terms.find(ka + kb);
        if (it == out.terms.end()) out.terms.emplace(ka + kb, term);
        else it->second = it->second + term;
      }
    return out;
  }
  friend bool operator==(const DifferenceOperator& a, const DifferenceOperator& b) {
    for (int k : a.spans(b))
      if (!(a.coefficient(k) == b.coefficient(k))) return false;
    return true;
  }
  std::vector<int> spans(const DifferenceOperator& other) const;
};

template <class S>
struct WaveOperator {
  DifferenceOperator<S> expanded;    // sum (-1)^k tau^{(n),k}/tau S^{-k}
  DifferenceOperator<S> factorized;  // prod_{m=n..1} (1 - U_m S^{-1})
  std::vector<RationalFunction<S>> U;  // U[m-1] = U_m
  bool agree = false;
};

// U_m(x) = tau^{(m)}(x+eta) tau^{(m-1)}(x-eta) / (tau^{(m)}(x) tau^{(m-1)}(x)).
template <class S>
WaveOperator<S> wave_operator(const TauChain<S>& chain);

// tau^{(m),k}: rows 1..m, columns j = 0..m without k, of A_i(x - j eta).
template <class S>
QuasiPolynomial<S> tau_level_coefficient(const KricheverData<S>& data, int m, int k, const Times<S>& times);

struct CheckRow {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  void add(std::string name, bool ok, double residual = 0.0) { rows.push_back({std::move(name), ok, residual}); }
};

// The wave operator annihilates every A_k (expanded and factorized forms),
// a random combination of them, and the factor reordering for p_1 <-> p_2
// leaves the operator unchanged while its last factor kills A_2.
template <class S>
CheckReport kernel_check(const KricheverData<S>& data, const Times<S>& times, std::uint64_t seed = 1);

template <class S>
struct TQSolution {
  std::optional<Poly<S>> q;  // polynomial part of Q_1, monic when possible
  int kernel_dim = 0;
  bool ambiguous() const { return kernel_dim > 1; }
};

// sum_k (-1)^k T^k(x) Q_1(x - (k-1) eta) = 0 for Q_1 = p^{x/eta} P(x),
// deg P = d. T holds T^0..T^n.
template <class S>
TQSolution<S> tq_solve_q1(const std::vector<Poly<S>>& T, const S& p, const S& eta, int d, double tolerance = 1e-9);

// Residual of the dual relation for Q_{n-1} = base^{x/eta} P(x) with
// Q_n = det_g^{x/eta} phi(x), at the given sample points; relative for
// floating input, exact zero expected for rationals.
template <class S>
double tq_verify_qn1(const std::vector<Poly<S>>& T, const QuasiPolynomial<S>& q_prev, const S& det_g, const S& eta,
                     const std::vector<S>& samples);

struct BetheRow {
  int level = 0;  // m
  Complex root;
  double ratio_residual = 0.0;    // |ratio + 1|
  double product_residual = 0.0;  // relative deviation from p_m / p_{m+1}
};

struct BetheReport {
  std::vector<BetheRow> rows;
  double max_ratio = 0.0;
  double max_product = 0.0;
};

// Q holds Q_0..Q_n; p the Krichever points. Throws root_collision when two
// roots of one level coincide within tolerance.
BetheReport bethe_verify(const std::vector<QuasiPolynomial<Complex>>& Q, const std::vector<Complex>& p,
                         const Complex& eta, double collision_tolerance = 1e-8);

// D[j1 j2] D[j3 j4] + D[j1 j4] D[j2 j3] = D[j1 j3] D[j2 j4] for an
// m x (m+2) matrix; columns 0-based. Returns the residual.
template <class S>
S plucker_residual(const Grid<S>& matrix, int j1, int j2, int j3, int j4);

// psi^{(m)} = (1 - U_m S^{-1}) psi^{(m-1)} and its bilinear form for
// m = 0..n+1 with tau^{(-1)} = tau^{(n+1)} = 0.
CheckReport dressing_recurrence_check(const KricheverData<Complex>& data, const Times<Complex>& times,
                                      const Complex& x, const Complex& z, double tolerance = 1e-10);

// Krichever data reproducing a quantum eigenstate: A_k spans the kernel of
// sum_a (-1)^a T^a(x) S^{-a} among p_k^{x/eta} times polynomials of degree
// M_k, normalized to a_k0 = 1.
KricheverData<Complex> krichever_from_transfer(const std::vector<Poly<Complex>>& T, const std::vector<Complex>& p,
                                               const std::vector<int>& M, const Complex& eta,
                                               double tolerance = 1e-9);

}  // namespace qcd
