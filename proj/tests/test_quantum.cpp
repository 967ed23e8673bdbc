#include <doctest.h>

#include <cmath>
#include <random>

#include "qcduality/quantum.hpp"
#include "support.hpp"

using namespace qcd;
using qcd::testing::random_chain;
using qcd::testing::random_rational;

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t d = a.size();
  Dense out(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

// Oracle: trace over an explicit auxiliary factor (slowest digit) of the
// dense product R_01 ... R_0N g_0.
SparseOp<Rational> dense_transfer(const ChainSpec<Rational>& spec, const Rational& x) {
  const std::size_t q = spec.basis().dim, d = q * spec.n;
  auto aux = [&](std::size_t s) { return static_cast<int>(s / q); };
  auto site = [&](std::size_t s, int j) { return spec.basis().digit(s % q, j); };
  Dense acc(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t s = 0; s < d; ++s) acc[s][s] = 1;
  for (int j = 0; j < spec.N; ++j) {
    Dense r(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t s = 0; s < d; ++s) {
      r[s][s] += x - spec.x[j];
      int a = aux(s), b = site(s, j);
      std::size_t swapped = spec.basis().with_digit(s % q, j, a) + static_cast<std::size_t>(b) * q;
      r[swapped][s] += spec.eta;
    }
    acc = dense_mul(acc, r);
  }
  SparseOp<Rational> out(q);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) {
      Rational v = 0;
      for (int a = 0; a < spec.n; ++a) v += acc[a * q + r][a * q + c] * spec.p[a];
      out.add_to(r, c, v);
    }
  return out;
}

SparseOp<Rational> site_twist(const Basis& basis, const std::vector<Rational>& g, int site) {
  SparseOp<Rational> out(basis.dim);
  for (int a = 0; a < basis.n; ++a)
    for (int b = 0; b < basis.n; ++b) out.axpy(g[a * basis.n + b], unit_op<Rational>(basis, a, b, site));
  return out;
}

ChainSpec<Rational> fixed_chain(int n, int N) {
  ChainSpec<Rational> spec;
  spec.n = n;
  spec.N = N;
  spec.eta = Rational(1) / 3;
  std::vector<Rational> xs{Rational(0), Rational(1), Rational(5) / 2, Rational(-2), Rational(7) / 4};
  std::vector<Rational> ps{Rational(2), Rational(5), Rational(-3), Rational(7)};
  spec.x.assign(xs.begin(), xs.begin() + N);
  spec.p.assign(ps.begin(), ps.begin() + n);
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("chain spec validation") {
  auto spec = fixed_chain(2, 2);
  auto bad = spec;
  bad.x[1] = bad.x[0] + bad.eta;
  CHECK_THROWS_AS(bad.validate(), degenerate_spacing);
  bad = spec;
  bad.p[1] = bad.p[0];
  CHECK_THROWS_AS(bad.validate(), error);
  bad = spec;
  bad.eta = 0;
  CHECK_THROWS_AS(bad.validate(), error);
  ChainSpec<Rational> huge;
  huge.n = 2;
  huge.N = 13;
  for (int i = 0; i < 13; ++i) huge.x.push_back(Rational(10 * i));
  huge.p = {Rational(1), Rational(2)};
  CHECK_THROWS_AS(huge.validate(), budget_exceeded);
}

TEST_CASE("R-matrix: permutation at zero, Yang-Baxter, twist invariance") {
  auto spec = fixed_chain(2, 1);
  Basis two(2, 2);
  CHECK(r_matrix(spec, Rational(0)) == spec.eta * swap_op<Rational>(two, 0, 1));
  std::mt19937_64 rng(9);
  Basis three(3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Rational u = random_rational(rng), v = random_rational(rng), eta = random_rational(rng) + 7;
    auto lhs = r_matrix_on<Rational>(three, 0, 1, u - v, eta) * r_matrix_on<Rational>(three, 0, 2, u, eta) *
               r_matrix_on<Rational>(three, 1, 2, v, eta);
    auto rhs = r_matrix_on<Rational>(three, 1, 2, v, eta) * r_matrix_on<Rational>(three, 0, 2, u, eta) *
               r_matrix_on<Rational>(three, 0, 1, u - v, eta);
    CHECK(lhs == rhs);
    std::vector<Rational> g(9);
    for (auto& e : g) e = random_rational(rng);
    auto gg = site_twist(three, g, 0) * site_twist(three, g, 1);
    CHECK(commutator(gg, r_matrix_on<Rational>(three, 0, 1, u, eta)).is_zero_op());
  }
}

TEST_CASE("transfer matrix: closed forms and dense oracle") {
  auto one_site = fixed_chain(2, 1);
  auto t = transfer_poly(one_site);
  auto basis = one_site.basis();
  auto expected = OperatorPolynomial<Rational>::scalar(
      basis.dim, one_site.twist_trace() * Poly<Rational>::linear_root(one_site.x[0]));
  expected += OperatorPolynomial<Rational>(basis.dim, {one_site.eta * site_diagonal(basis, 0, one_site.p)});
  CHECK(t == expected);

  auto scalar_chain = fixed_chain(1, 4);
  Poly<Rational> shifted_phi = Poly<Rational>::constant(scalar_chain.p[0]);
  for (const auto& xi : scalar_chain.x) shifted_phi = shifted_phi * Poly<Rational>::linear_root(xi - scalar_chain.eta);
  CHECK(transfer_poly(scalar_chain) == OperatorPolynomial<Rational>::scalar(1, shifted_phi));

  std::mt19937_64 rng(41);
  for (auto [n, N] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    auto spec = random_chain(rng, n, N);
    auto tp = transfer_poly(spec);
    CHECK(tp.degree() == N);
    CHECK(tp.coeff(N) == SparseOp<Rational>::identity(spec.basis().dim, spec.twist_trace()));
    for (int k = 0; k < 3; ++k) {
      Rational x = random_rational(rng);
      CHECK(tp(x) == dense_transfer(spec, x));
      CHECK(transfer_at(spec, x) == tp(x));
    }
    CHECK(commutator(tp(Rational(1) / 7), tp(Rational(-5) / 3)).is_zero_op());
    for (const auto& m : weight_operators(spec)) CHECK(commutator(m, tp(Rational(2) / 9)).is_zero_op());
  }
}

TEST_CASE("hamiltonians: residues, sum rule, commutativity") {
  auto single = fixed_chain(3, 1);
  CHECK(hamiltonians(single)[0] == site_diagonal(single.basis(), 0, single.p));

  std::mt19937_64 rng(77);
  for (auto [n, N] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 2}}) {
    auto spec = random_chain(rng, n, N);
    auto hs = hamiltonians(spec);
    auto residue = hamiltonians_from_residue(spec, transfer_poly(spec));
    SparseOp<Rational> total(spec.basis().dim), twists(spec.basis().dim);
    for (int i = 0; i < N; ++i) {
      CHECK(hs[i] == residue[i]);
      total += hs[i];
      twists += site_diagonal(spec.basis(), i, spec.p);
      for (int j = i + 1; j < N; ++j) CHECK(commutator(hs[i], hs[j]).is_zero_op());
    }
    CHECK(total == twists);
  }
}

TEST_CASE("weight operators") {
  auto spec = fixed_chain(2, 1);
  auto m = weight_operators(spec);
  CHECK(m[0] == SparseOp<Rational>::diagonal({Rational(1), Rational(0)}));
  auto big = fixed_chain(3, 3);
  SparseOp<Rational> sum(big.basis().dim);
  for (const auto& op : weight_operators(big)) sum += op;
  CHECK(sum == SparseOp<Rational>::identity(big.basis().dim, Rational(3)));
}

TEST_CASE("gaudin hamiltonians commute and are the eta -> 0 limit") {
  auto spec = fixed_chain(2, 3);
  std::vector<Rational> h{Rational(3, 2), Rational(-1, 3)};
  auto single = fixed_chain(2, 1);
  CHECK(gaudin_hamiltonians(single, h)[0] == site_diagonal(single.basis(), 0, h));
  auto gh = gaudin_hamiltonians(spec, h);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(commutator(gh[i], gh[j]).is_zero_op());

  auto deviation = [&](double eta) {
    ChainSpec<Complex> c = to_complex(spec);
    c.eta = eta;
    for (int a = 0; a < 2; ++a) c.p[a] = std::exp(eta * h[a].get_d());
    auto hs = hamiltonians(c);
    std::vector<Complex> hc{to_complex(h[0]), to_complex(h[1])};
    auto gc = gaudin_hamiltonians(c, hc);
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
      auto diff = Complex(1.0 / eta) * (hs[i] - SparseOp<Complex>::identity(c.basis().dim)) - gc[i];
      worst = std::max(worst, diff.max_abs());
    }
    return worst;
  };
  double ratio = deviation(1e-3) / deviation(1e-4);
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 12.0);
}

TEST_CASE("co-derivative examples") {
  Basis basis(3, 2);
  std::mt19937_64 rng(5);
  std::vector<Rational> g(9);
  for (auto& e : g) e = random_rational(rng);

  auto det = TwistPolynomial<Rational>::from_scalar(basis, character_polynomial(3, Partition{1, 1, 1}));
  auto d_det = coderivative_apply(det, 0);
  CHECK(d_det.evaluate(g) == SparseOp<Rational>::identity(basis.dim, det_field(Grid<Rational>{
                                                                         {g[0], g[1], g[2]},
                                                                         {g[3], g[4], g[5]},
                                                                         {g[6], g[7], g[8]}})));

  auto trace = TwistPolynomial<Rational>::from_scalar(basis, character_polynomial(3, Partition{1}));
  auto g1 = coderivative_apply(trace, 0);
  CHECK(g1.evaluate(g) == site_twist(basis, g, 0));
  CHECK(coderivative_apply(g1, 1).evaluate(g) == swap_op<Rational>(basis, 0, 1) * site_twist(basis, g, 0));

  // [D_2, D_1] = P_12 (D_1 - D_2) on a quadratic character.
  auto chi = TwistPolynomial<Rational>::from_scalar(basis, character_polynomial(3, Partition{2, 1}));
  auto lhs = coderivative_apply(coderivative_apply(chi, 0), 1) - coderivative_apply(coderivative_apply(chi, 1), 0);
  auto diff = coderivative_apply(chi, 0) - coderivative_apply(chi, 1);
  CHECK(lhs.evaluate(g) == swap_op<Rational>(basis, 0, 1) * diff.evaluate(g));
}

TEST_CASE("character polynomial matches schur of eigenvalues on diagonal twists") {
  std::vector<Rational> p{Rational(2), Rational(-1, 3), Rational(5)};
  for (const auto& lambda : partitions_up_to(4)) {
    auto chi = character_polynomial(3, lambda);
    std::vector<Rational> g(9, Rational(0));
    for (int a = 0; a < 3; ++a) g[a * 3 + a] = p[a];
    CHECK(chi.evaluate(g) == schur_from_eigenvalues(lambda, p));
  }
}

TEST_CASE("transfer_lambda: empty, one box, quantum determinant, vanishing") {
  std::mt19937_64 rng(123);
  auto spec = random_chain(rng, 2, 2);
  const auto dim = spec.basis().dim;
  CHECK(transfer_lambda(spec, Partition{}) == OperatorPolynomial<Rational>::scalar(dim, spec.phi()));
  CHECK(transfer_lambda(spec, Partition{1}) == transfer_poly(spec));
  CHECK(transfer_lambda(spec, Partition{1, 1}) ==
        OperatorPolynomial<Rational>::scalar(dim, spec.twist_det() * spec.phi().shifted(spec.eta)));
  CHECK(transfer_lambda(spec, Partition{1, 1, 1}).is_zero_poly());

  auto spec3 = random_chain(rng, 3, 3);
  CHECK(transfer_lambda(spec3, Partition{1}) == transfer_poly(spec3));
  CHECK(transfer_lambda(spec3, Partition{1, 1, 1}) ==
        OperatorPolynomial<Rational>::scalar(spec3.basis().dim, spec3.twist_det() * spec3.phi().shifted(spec3.eta)));

  TransferFamily<Rational> family(spec3);
  std::vector<Partition> lambdas{Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}};
  for (const auto& a : lambdas)
    for (const auto& b : lambdas)
      CHECK(commutator(family.get(a)(Rational(1) / 5), family.get(b)(Rational(-4) / 3)).is_zero_op());
  for (const auto& m : weight_operators(spec3)) CHECK(commutator(m, family.get(Partition{2, 1})(Rational(3))).is_zero_op());
}

TEST_CASE("CBR identities exact for small chains") {
  std::mt19937_64 rng(31);
  TransferFamily<Rational> family(random_chain(rng, 2, 3));
  for (const auto& lambda : partitions_up_to(4)) {
    auto report = cbr_verify(family, lambda, 4);
    INFO(qcd::to_string(lambda), " ", report.note);
    CHECK(report.pass);
    CHECK(report.residual == 0.0);
  }
  auto vanishing = cbr_verify(family, Partition{1, 1, 1}, 4);
  CHECK(vanishing.pass);
  CHECK_THROWS_AS(cbr_verify(family, Partition{3, 2}, 4), budget_exceeded);
}

TEST_CASE("master T-operator truncation") {
  std::mt19937_64 rng(8);
  auto spec = random_chain(rng, 2, 2);
  TransferFamily<Rational> family(spec);
  const auto dim = spec.basis().dim;
  CHECK(master_t_truncated(family, TimeVector<Rational>::zeros(3), 3) ==
        OperatorPolynomial<Rational>::scalar(dim, spec.phi()));
  CHECK_THROWS_AS(master_t_truncated(family, TimeVector<Rational>::zeros(2), 3), truncation_too_short);

  // Linear part in t_1 is T_(1).
  TimeVector<Rational> eps({Rational(1, 1000), Rational(0), Rational(0)});
  auto at_eps = master_t_truncated(family, eps, 3);
  auto lin = master_t_truncated(family, TimeVector<Rational>({Rational(1), Rational(0), Rational(0)}), 1);
  CHECK(lin == OperatorPolynomial<Rational>::scalar(dim, spec.phi()) + family.get(Partition{1}));
  (void)at_eps;

  // Miwa point -[1/z]: sum_a (-1/z)^a T^a.
  Rational z(7, 2);
  auto miwa = miwa_shift(TimeVector<Rational>::zeros(4), z, -1);
  OperatorPolynomial<Rational> expected(dim);
  for (int a = 0; a <= 2; ++a) expected += pow_int(Rational(-1) / z, a) * family.column(a);
  CHECK(master_t_truncated(family, miwa, 4) == expected);
}

TEST_CASE("Hirota three-term identity") {
  std::mt19937_64 rng(99);
  TransferFamily<Rational> family(random_chain(rng, 2, 2));
  auto report = hirota_3term_verify(family);
  CHECK_MESSAGE(report.pass, report.note);
}
