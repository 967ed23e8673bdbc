#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "qcduality/duality.hpp"
#include "support.hpp"

using namespace qcd;

namespace {

Rational q(long a, long b = 1) {
  Rational out(a);
  out /= b;
  return out;
}

ChainSpec<Rational> chain(int n, int N) {
  static const Rational xs[] = {q(0), q(1), q(5, 2), q(-2), q(7, 4)};
  static const Rational ps[] = {q(2), q(5), q(-3), q(7)};
  ChainSpec<Rational> spec;
  spec.n = n;
  spec.N = N;
  spec.eta = q(1, 3);
  spec.x.assign(xs, xs + N);
  spec.p.assign(ps, ps + n);
  spec.validate();
  return spec;
}

// T^0..T^n eigenvalue polynomials on one state.
std::vector<Poly<Complex>> columns_on(TransferFamily<Rational>& family, const SpectralRecord& record) {
  std::vector<Poly<Complex>> out;
  for (int a = 0; a <= family.spec().n; ++a) out.push_back(eigenvalue_on(to_complex(family.column(a)), record));
  return out;
}

double poly_gap(const Poly<Complex>& a, const Poly<Complex>& b) {
  double gap = 0.0, scale = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
    gap = std::max(gap, std::abs(a.coeff(k) - b.coeff(k)));
    scale = std::max({scale, std::abs(a.coeff(k)), std::abs(b.coeff(k))});
  }
  return gap / scale;
}

Poly<Complex> monic(const Poly<Complex>& p) { return (1.0 / p.leading()) * p; }

double rel(const Complex& a, const Complex& b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Brute-force determinant by cofactor expansion along the first row.
Poly<Rational> cofactor_char_poly(const Grid<Rational>& L) {
  const int n = static_cast<int>(L.size());
  Grid<Poly<Rational>> m(n, std::vector<Poly<Rational>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = i == j ? Poly<Rational>(std::vector<Rational>{-L[i][j], Rational(1)})
                       : Poly<Rational>::constant(Rational(-L[i][j]));
  std::function<Poly<Rational>(const Grid<Poly<Rational>>&)> det = [&](const Grid<Poly<Rational>>& a) {
    if (a.size() == 1) return a[0][0];
    Poly<Rational> acc;
    for (std::size_t c = 0; c < a.size(); ++c) {
      Grid<Poly<Rational>> minor;
      for (std::size_t r = 1; r < a.size(); ++r) {
        std::vector<Poly<Rational>> row;
        for (std::size_t k = 0; k < a.size(); ++k)
          if (k != c) row.push_back(a[r][k]);
        minor.push_back(row);
      }
      Poly<Rational> term = a[0][c] * det(minor);
      acc = c % 2 ? acc - term : acc + term;
    }
    return acc;
  };
  return det(m);
}

// Nested Bethe equations and the eigenvalue in the algebraic Bethe ansatz
// labelling: levels w^(b) = roots of Q_{n-b}, g_b = p_{n-b+1}, w^(0) = x.
struct AbaCheck {
  double equations = 0.0;
  double eigenvalue = 0.0;
};

AbaCheck aba_transcription(const ChainSpec<Complex>& spec, const std::vector<QuasiPolynomial<Complex>>& Q,
                           const SpectralRecord& record) {
  const int n = spec.n;
  std::vector<std::vector<Complex>> w(n + 1);
  w[0] = spec.x;
  for (int b = 1; b < n; ++b)
    if (Q[n - b].poly.degree() > 0) w[b] = roots(Q[n - b].poly);
  auto g = [&](int b) { return spec.p[n - b]; };
  const Complex eta = spec.eta;
  AbaCheck out;
  for (int b = 1; b < n; ++b)
    for (std::size_t a = 0; a < w[b].size(); ++a) {
      const Complex v = w[b][a];
      Complex lhs = g(b), rhs = g(b + 1);
      for (const auto& u : w[b - 1]) lhs *= (v - u + eta) / (v - u);
      for (std::size_t c = 0; c < w[b].size(); ++c)
        if (c != a) rhs *= (v - w[b][c] + eta) / (v - w[b][c] - eta);
      for (const auto& u : w[b + 1]) rhs *= (v - u - eta) / (v - u);
      out.equations = std::max(out.equations, std::abs(lhs - rhs) / std::abs(rhs));
    }
  for (Complex x : {Complex(0.37, 0.41), Complex(-1.3, 0.2)}) {
    Complex lambda = 0.0;
    for (int b = 1; b <= n; ++b) {
      Complex term = g(b);
      for (const auto& u : w[b - 1]) term *= (x - u + eta) / (x - u);
      for (const auto& u : w[b]) term *= (x - u - eta) / (x - u);
      lambda += term;
    }
    Complex phi = 1.0;
    for (const auto& xi : spec.x) phi *= x - xi;
    const Complex expected = record.lambda(x) / phi;
    out.eigenvalue = std::max(out.eigenvalue, std::abs(lambda - expected) / std::abs(expected));
  }
  return out;
}

}  // namespace

TEST_CASE("Lax matrix basics") {
  auto one = lax_build<Rational>({q(2)}, {q(3)}, q(1, 2));
  CHECK(one.L[0][0] == q(-6));
  auto h = lax_build<Rational>({q(2)}, {q(-1, 2) * q(7)}, q(1, 2));
  CHECK(h.L[0][0] == q(7));
  CHECK_THROWS_AS(lax_build<Rational>({q(0), q(1, 2)}, {q(1), q(1)}, q(1, 2)), degenerate_spacing);
  CHECK_THROWS_AS(lax_build<Rational>({q(0), q(-1, 2)}, {q(1), q(1)}, q(1, 2)), degenerate_spacing);
  auto a = lax_build<Rational>({q(0), q(1), q(3)}, {q(1), q(-2), q(5)}, q(1, 3));
  auto b = lax_build<Rational>({q(0), q(1), q(3)}, {q(3), q(-6), q(15)}, q(1, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(b.L[i][j] == 3 * a.L[i][j]);
}

TEST_CASE("characteristic polynomial and integrals agree on three routes") {
  CHECK(char_poly<Rational>({{q(-6)}}) == Poly<Rational>(std::vector<Rational>{q(6), q(1)}));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Grid<Rational> L(3, std::vector<Rational>(3));
    for (auto& row : L)
      for (auto& v : row) v = testing::random_rational(rng);
    CHECK(char_poly(L) == cofactor_char_poly(L));
  }
  // Integrals: subset formula equals the characteristic-polynomial route.
  for (int trial = 0; trial < 20; ++trial) {
    const Rational eta = q(1, 3);
    std::vector<Rational> x, xdot;
    for (int i = 0; i < 3; ++i) {
      x.push_back(Rational(3 * i) + testing::random_rational(rng, 1, 4));
      xdot.push_back(testing::random_nonzero(rng));
    }
    LaxMatrix<Rational> lax;
    try {
      lax = lax_build(x, xdot, eta);
    } catch (const degenerate_spacing&) {
      continue;
    }
    const auto I = integrals(x, xdot, eta);
    CHECK(I == integrals_from_char_poly(char_poly(lax.L), eta));
    CHECK(I[0] == xdot[0] + xdot[1] + xdot[2]);
  }
  // N = 2 closed form.
  const std::vector<Rational> x{q(0), q(2)}, v{q(3), q(-1)};
  const Rational eta = q(1, 2);
  CHECK(integrals(x, v, eta)[1] == v[0] * v[1] * q(4) / (q(4) - eta * eta));
  // Complex route: coefficients are (-1)^k e_k of the eigenvalues.
  Grid<Complex> Lc{{{1.0, 0.5}, {2.0, 0.0}, {-1.0, 0.0}}, {{0.0, 1.0}, {3.0, 0.0}, {0.5, 0.0}},
                   {{1.0, 0.0}, {0.0, -2.0}, {-2.0, 1.0}}};
  const auto chi = char_poly(Lc);
  Grid<Rational> dummy;
  Eigen::MatrixXcd m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Lc[i][j];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
  std::vector<Complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + 3);
  CHECK(poly_gap(chi, Poly<Complex>::from_roots(ev)) < 1e-13);
}

TEST_CASE("duality: characteristic polynomial of L(-eta H) equals prod (z - p_a)^M_a") {
  for (auto [n, N] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 2}, std::pair{3, 1}}) {
    const auto spec = to_complex(chain(n, N));
    const auto records = joint_spectrum(spec);
    CHECK(records.size() == static_cast<std::size_t>(std::pow(n, N)));
    for (const auto& record : records) {
      const auto report = duality_verify(spec, record);
      INFO("n=", n, " N=", N, " residual=", report.residual);
      CHECK(report.pass);
    }
  }
  // N = 1: L = [H_1] = [p_a].
  const auto spec = to_complex(chain(3, 1));
  for (const auto& record : joint_spectrum(spec)) {
    int a = 0;
    while (record.weights[a] == 0) ++a;
    CHECK(std::abs(record.H[0] - spec.p[a]) < 1e-12);
  }
}

TEST_CASE("spectral equations: calibration gate and exact ferromagnetic sector") {
  CHECK_NOTHROW(calibrate_spectral_equations());
  const auto spec = chain(2, 3);
  std::vector<Rational> H;
  for (int i = 0; i < 3; ++i) {
    Rational h = spec.p[1];
    for (int k = 0; k < 3; ++k)
      if (k != i) h *= (spec.x[i] - spec.x[k] + spec.eta) / (spec.x[i] - spec.x[k]);
    H.push_back(h);
  }
  const auto F = spectral_equations(spec.x, spec.eta, H);
  CHECK(F[0] == 3 * spec.p[1]);
  CHECK(F[1] == 3 * spec.p[1] * spec.p[1]);
  CHECK(F[2] == spec.p[1] * spec.p[1] * spec.p[1]);
}

TEST_CASE("Bethe-free solve recovers the brute-force spectrum") {
  for (int N : {1, 2, 3}) {
    const auto spec = to_complex(chain(2, N));
    const auto records = joint_spectrum(spec);
    std::size_t total = 0;
    for (int m1 = 0; m1 <= N; ++m1) {
      SpectrumTarget target{spec.p, {m1, N - m1}};
      const auto result = solve_spectrum(spec, target);
      INFO("N=", N, " M=(", m1, ",", N - m1, ") failed seeds=", result.failed());
      total += result.solutions.size();
      // Every solution matches a brute-force state of the same sector.
      std::size_t sector = 0;
      for (const auto& record : records) {
        if (record.weights != target.M) continue;
        ++sector;
        bool matched = false;
        for (const auto& H : result.solutions) {
          double gap = 0.0;
          for (int i = 0; i < N; ++i) gap = std::max(gap, std::abs(H[i] - record.H[i]) / std::abs(record.H[i]));
          matched = matched || gap < 1e-8;
        }
        CHECK(matched);
      }
      CHECK(result.solutions.size() == sector);
    }
    CHECK(total == static_cast<std::size_t>(1 << N));
  }
  // Oracle seeds converge back to the brute-force values.
  const auto spec = to_complex(chain(2, 2));
  for (const auto& record : joint_spectrum(spec)) {
    SolveOptions options;
    std::vector<Complex> seed = record.H;
    for (auto& h : seed) h *= 1.0 + 1e-3;
    options.seeds = {seed};
    const auto result = solve_spectrum(spec, SpectrumTarget{spec.p, record.weights}, options);
    REQUIRE(result.solutions.size() == 1);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(result.solutions[0][i] - record.H[i]) < 1e-10);
  }
  SpectrumTarget bad{spec.p, {2, 1}};
  CHECK_THROWS_AS(solve_spectrum(spec, bad), error);
}

TEST_CASE("TQ relation, Bethe equations and the eigenvalue formula on every state") {
  for (auto [n, N] : {std::pair{2, 3}, std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
    const auto spec_q = chain(n, N);
    const auto spec = to_complex(spec_q);
    TransferFamily<Rational> family(spec_q);
    Complex G = 1.0;
    for (const auto& p : spec.p) G *= p;
    for (const auto& record : joint_spectrum(spec)) {
      INFO("n=", n, " N=", N, " state=", record.state);
      if (record.collision) continue;
      const auto T = columns_on(family, record);
      CHECK(poly_gap(T[0], to_complex(spec_q.phi())) < 1e-10);

      // Matched Krichever data reproduces phi as the top tau-function.
      const auto data = krichever_from_transfer(T, spec.p, record.weights, spec.eta);
      const auto levels = q_functions(undress_chain(data, Times<Complex>()));
      CHECK(poly_gap(monic(levels[n].poly), to_complex(spec_q.phi())) < 1e-9);
      CHECK(std::abs(levels[n].base - G) < 1e-12 * std::abs(G));
      // T^a / T^0 = tau^{(n),a} / tau on the state.
      for (int a = 1; a <= n; ++a) {
        const auto minor = tau_level_coefficient(data, n, a, Times<Complex>());
        for (Complex x : {Complex(0.3, 0.4), Complex(-1.1, 0.2)})
          CHECK(rel(T[a](x) / T[0](x), minor.poly(x) / levels[n].poly(x)) < 1e-9);
      }

      // Q_1 from the TQ relation.
      const auto solution = tq_solve_q1(T, spec.p[0], spec.eta, record.weights[0]);
      CHECK(solution.kernel_dim == 1);
      REQUIRE(solution.q.has_value());
      CHECK(solution.q->degree() == record.weights[0]);
      CHECK(poly_gap(*solution.q, monic(levels[1].poly)) < 1e-9);

      // Dual relation for Q_{n-1}.
      CHECK(tq_verify_qn1(T, levels[n - 1], G, spec.eta, {Complex(0.31, 0.2), Complex(-0.7, 0.45)}) < 1e-9);

      // Nested Bethe equations.
      const auto bethe = bethe_verify(levels, spec.p, spec.eta);
      CHECK(bethe.max_ratio < 1e-9);
      CHECK(bethe.max_product < 1e-9);

      // Eigenvalues from the roots of Q_{n-1}.
      const auto roots = levels[n - 1].poly.degree() > 0 ? qcd::roots(levels[n - 1].poly) : std::vector<Complex>{};
      const auto H = eig3_eval(spec, roots);
      for (int i = 0; i < N; ++i) CHECK(rel(H[i], record.H[i]) < 1e-9);

      // Same roots in the algebraic Bethe ansatz labelling.
      const auto aba = aba_transcription(spec, levels, record);
      CHECK(aba.equations < 1e-9);
      CHECK(aba.eigenvalue < 1e-9);
    }
  }
}

TEST_CASE("eigenvalue formula without roots is the highest-weight state") {
  const auto spec = to_complex(chain(2, 3));
  const auto H = eig3_eval(spec, {});
  for (const auto& record : joint_spectrum(spec))
    if (record.weights == std::vector<int>{0, 3})
      for (int i = 0; i < 3; ++i) CHECK(rel(H[i], record.H[i]) < 1e-12);
  Complex sum = 0.0;
  for (const auto& h : H) sum += h;
  CHECK(std::abs(sum - 3.0 * spec.p[1]) < 1e-12);
  CHECK_THROWS_AS(eig3_eval(spec, {spec.x[1]}), pole_evaluation);
}

TEST_CASE("TQ kernel with more than one solution is reported") {
  // T^a of the identity-twisted free chain with N = 0 sites: every constant
  // times p^{x/eta} works, and degree 1 adds a second direction when p = 1.
  std::vector<Poly<Rational>> T{Poly<Rational>::constant(1), Poly<Rational>::constant(2),
                                Poly<Rational>::constant(1)};
  const auto sol = tq_solve_q1(T, q(1), q(1), 1);
  CHECK(sol.ambiguous());
  CHECK_FALSE(sol.q.has_value());
}

TEST_CASE("RS tau and wave function on matched data") {
  const auto spec_q = chain(2, 2);
  const auto spec = to_complex(spec_q);
  TransferFamily<Rational> family(spec_q);
  for (const auto& record : joint_spectrum(spec)) {
    INFO("state=", record.state);
    const auto rs = rs_from_state(spec, record.H);
    const auto data = krichever_from_transfer(columns_on(family, record), spec.p, record.weights, spec.eta);
    // Zeros at t = 0 are the inhomogeneities.
    for (int i = 0; i < 2; ++i) CHECK(std::abs(rs_tau(rs, spec.x[i], Times<Complex>())) < 1e-12);
    // Ratio with the mKP tau has an x- and t-independent log-derivative.
    const double dx = 1e-3;
    Complex reference = 0.0;
    for (const auto& t : {Times<Complex>(), Times<Complex>({0.2, -0.1}), Times<Complex>({-0.15, 0.05, 0.1})})
      for (Complex x : {Complex(0.3, 0.2), Complex(-0.9, 0.6)}) {
        auto ratio = [&](const Complex& y) { return rs_tau(rs, y, t) / tau(data, y, t); };
        const Complex slope = (std::log(ratio(x + dx)) - std::log(ratio(x))) / dx;
        if (reference == Complex(0.0)) reference = slope;
        CHECK(std::abs(slope - reference) < 1e-9 * std::max(1.0, std::abs(reference)));
      }
    // Determinant formulas against tau ratios and the mKP wave function.
    const Times<Complex> t({0.1, -0.2});
    for (Complex z : {Complex(1.3, 0.7), Complex(-2.2, 1.1)}) {
      const Complex x(0.4, 0.3);
      const auto w = rs_wave(rs, x, t, z);
      const Complex pre = std::exp(x / spec.eta * std::log(z) + t.xi(z));
      CHECK(rel(w.psi, pre * rs_tau(rs, x, t.shifted(z, -1)) / rs_tau(rs, x, t)) < 1e-10);
      CHECK(rel(w.psi_star, rs_tau(rs, x, t.shifted(z, +1)) / (pre * rs_tau(rs, x, t))) < 1e-10);
      CHECK(rel(w.psi, wave_ba(data, x, t, z)) < 1e-9);
      CHECK(rel(w.psi_star, adjoint_wave_ba(data, x, t, z)) < 1e-9);
    }
    // Velocities of the zeros at t = 0.
    const double h = 1e-6;
    Eigen::MatrixXcd L(2, 2);
    for (int i = 0; i < 2; ++i) {
      auto zero_at = [&](double t1) {
        auto Y = rs_flow_matrix(rs, Times<Complex>({t1}));
        Eigen::MatrixXcd m(2, 2);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) m(a, b) = Y[a][b];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> s(m, false);
        const auto& ev = s.eigenvalues();
        return std::abs(ev(0) - spec.x[i]) < std::abs(ev(1) - spec.x[i]) ? ev(0) : ev(1);
      };
      const Complex v = (zero_at(h) - zero_at(-h)) / (2 * h);
      CHECK(std::abs(v + spec.eta * record.H[i]) < 1e-4 * std::max(1.0, std::abs(record.H[i])));
    }
  }
}

TEST_CASE("RS equations of motion along the t1 flow") {
  for (int N : {1, 2, 3}) {
    const auto spec = to_complex(chain(2, N));
    for (const auto& record : joint_spectrum(spec)) {
      const auto report = rs_eom_check(rs_from_state(spec, record.H), 1e-3, 0.05);
      INFO("N=", N, " residual=", report.residual, " drift=", report.integral_drift);
      CHECK(report.pass);
    }
  }
  RSData close{{0.0, 0.004}, {{-1.0, 0.0}, {0.0, 1.0}}, {1.0}, 1.0};
  CHECK_THROWS_AS(rs_eom_check(close, 1e-3, 0.01), root_tracking_lost);
}
