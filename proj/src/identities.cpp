#include <sstream>

#include "qcduality/quantum.hpp"

namespace qcd {

namespace {

using OpPoly = OperatorPolynomial<Rational>;

OpPoly one_poly(std::size_t dim) { return OpPoly::scalar(dim, Poly<Rational>::constant(Rational(1))); }

// Abscissas that avoid x_i + k eta for every integer k.
std::vector<Rational> sample_points(const ChainSpec<Rational>& spec, int count) {
  std::vector<Rational> out;
  for (int m = 0; static_cast<int>(out.size()) < count; ++m) {
    Rational xi = Rational(2 * m + 1) / 7 + Rational(1) / 13;
    bool on_lattice = false;
    for (const auto& xk : spec.x) {
      Rational k = (xi - xk) / spec.eta;
      k.canonicalize();
      if (k.get_den() == 1) on_lattice = true;
    }
    if (!on_lattice) out.push_back(xi);
  }
  return out;
}

struct FormResult {
  bool divisible = false;
  bool matches = false;
  bool samples_agree = false;
  double residual = 0.0;
};

// entry(i, j) -> T^{...} or T_{...}; shift_sign selects x + (j-1)eta or x - (j-1)eta.
template <class EntryFn>
FormResult check_form(TransferFamily<Rational>& family, const OpPoly& target, int size, int shift_sign,
                      EntryFn entry) {
  const auto& spec = family.spec();
  const std::size_t dim = spec.basis().dim;
  Grid<OpPoly> m(size, std::vector<OpPoly>(size));
  for (int i = 1; i <= size; ++i)
    for (int j = 1; j <= size; ++j)
      m[i - 1][j - 1] = entry(i, j).shifted(Rational(shift_sign * (j - 1) * spec.eta));
  OpPoly det = det_commutative(m, OpPoly(dim), one_poly(dim));

  Poly<Rational> prefactor = Poly<Rational>::constant(Rational(1));
  const Poly<Rational> phi = spec.phi();
  for (int k = 1; k <= size - 1; ++k) prefactor = prefactor * phi.shifted(Rational(shift_sign * k * spec.eta));

  FormResult out;
  auto division = divmod(det, prefactor);
  out.divisible = division.remainder.is_zero_poly();
  OpPoly lhs = prefactor * target;
  OpPoly diff = lhs - det;
  out.matches = diff.is_zero_poly() && division.quotient == target;
  out.residual = std::max(diff.max_abs(), division.remainder.max_abs());

  // Independent certification at deg + 1 sample points.
  const int degree = std::max(det.degree(), lhs.degree());
  out.samples_agree = true;
  for (const Rational& xi : sample_points(spec, std::max(degree, 0) + 1)) {
    Grid<SparseOp<Rational>> values(size, std::vector<SparseOp<Rational>>(size));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) values[i][j] = m[i][j](xi);
    SparseOp<Rational> rhs =
        det_commutative(values, SparseOp<Rational>(dim), SparseOp<Rational>::identity(dim));
    SparseOp<Rational> left = prefactor(xi) * target(xi);
    if (!(left == rhs)) out.samples_agree = false;
  }
  return out;
}

}  // namespace

IdentityReport cbr_verify(TransferFamily<Rational>& family, const Partition& lambda, int max_size) {
  if (lambda.size() > max_size)
    throw budget_exceeded("cbr_verify: |lambda| = " + std::to_string(lambda.size()) + " exceeds budget " +
                          std::to_string(max_size));
  const auto& spec = family.spec();
  const std::size_t dim = spec.basis().dim;
  IdentityReport report;
  const OpPoly& target = family.get(lambda);
  if (lambda.empty()) {
    bool ok = target == OpPoly::scalar(dim, spec.phi());
    report.checks.push_back({"empty diagram gives phi", ok});
    report.pass = ok;
    return report;
  }
  if (lambda.length() > spec.n) report.checks.push_back({"vanishes beyond rank", target.is_zero_poly()});

  const Partition conj = conjugate(lambda);
  FormResult rows = check_form(family, target, lambda.length(), -1, [&](int i, int j) {
    return family.row(lambda.part(i) - i + j);
  });
  FormResult cols = check_form(family, target, lambda.part(1), +1, [&](int i, int j) {
    return family.column(conj.part(i) - i + j);
  });
  report.checks.push_back({"row form", rows.matches});
  report.checks.push_back({"row form divisible", rows.divisible});
  report.checks.push_back({"row form samples", rows.samples_agree});
  report.checks.push_back({"column form", cols.matches});
  report.checks.push_back({"column form divisible", cols.divisible});
  report.checks.push_back({"column form samples", cols.samples_agree});
  report.residual = std::max(rows.residual, cols.residual);
  report.pass = true;
  for (const auto& [name, ok] : report.checks) report.pass = report.pass && ok;
  return report;
}

namespace {

using Graded = std::map<MultiPoly::Exponents, OpPoly>;

void graded_add(Graded& g, const MultiPoly::Exponents& e, const OpPoly& p) {
  auto it = g.find(e);
  if (it == g.end()) g.emplace(e, p);
  else it->second += p;
}

Graded graded_from_terms(TransferFamily<Rational>& family, const std::vector<std::pair<Partition, MultiPoly>>& terms) {
  Graded out;
  for (const auto& [lambda, coeff] : terms) {
    const OpPoly& t = family.get(lambda);
    for (const auto& [e, c] : coeff.terms()) graded_add(out, e, c * t);
  }
  return out;
}

Graded graded_shift(const Graded& g, const Rational& a) {
  Graded out;
  for (const auto& [e, p] : g) out.emplace(e, p.shifted(a));
  return out;
}

Graded graded_mul(const Graded& a, const Graded& b) {
  Graded out;
  for (const auto& [ea, pa] : a)
    for (const auto& [eb, pb] : b) {
      MultiPoly::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
      for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
      graded_add(out, MultiPoly::canonical(e), pa * pb);
    }
  return out;
}

Graded graded_scale(const Graded& g, const MultiPoly& s) {
  Graded out;
  for (const auto& [es, cs] : s.terms())
    for (const auto& [e, p] : g) {
      MultiPoly::Exponents sum(std::max(es.size(), e.size()), 0);
      for (std::size_t k = 0; k < es.size(); ++k) sum[k] += es[k];
      for (std::size_t k = 0; k < e.size(); ++k) sum[k] += e[k];
      graded_add(out, MultiPoly::canonical(sum), cs * p);
    }
  return out;
}

TimeVector<MultiPoly> miwa_times(const std::vector<int>& vars, int k_max) {
  std::vector<MultiPoly> v;
  for (int k = 1; k <= k_max; ++k) {
    MultiPoly acc;
    for (int var : vars) acc -= div_int(MultiPoly::variable(var, k), k);
    v.push_back(acc);
  }
  return TimeVector<MultiPoly>(v);
}

}  // namespace

IdentityReport hirota_3term_verify(TransferFamily<Rational>& family) {
  const auto& spec = family.spec();
  const std::size_t dim = spec.basis().dim;
  const int degree = 2 * spec.n;
  // t - [z^{-1}] at t = 0 in the variables w1 = 1/z1 (index 0), w2 = 1/z2 (index 1).
  Graded one = graded_from_terms(family, master_t_terms(spec.n, miwa_times({0}, degree), degree));
  Graded two = graded_from_terms(family, master_t_terms(spec.n, miwa_times({1}, degree), degree));
  Graded both = graded_from_terms(family, master_t_terms(spec.n, miwa_times({0, 1}, degree), degree));
  Graded zero_t;
  zero_t.emplace(MultiPoly::Exponents{}, OpPoly::scalar(dim, spec.phi()));

  // Multiplied through by w1 w2:
  // w1 T(x+eta; -[w2]) T(x; -[w1]) - w2 T(x+eta; -[w1]) T(x; -[w2])
  //   + (w2 - w1) T(x+eta; 0) T(x; -[w1]-[w2]) = 0
  const MultiPoly w1 = MultiPoly::variable(0), w2 = MultiPoly::variable(1);
  Graded total;
  for (const auto& [e, p] : graded_scale(graded_mul(graded_shift(two, spec.eta), one), w1)) graded_add(total, e, p);
  for (const auto& [e, p] : graded_scale(graded_mul(graded_shift(one, spec.eta), two), -w2))
    graded_add(total, e, p);
  for (const auto& [e, p] : graded_scale(graded_mul(graded_shift(zero_t, spec.eta), both), w2 - w1))
    graded_add(total, e, p);

  IdentityReport report;
  bool all_zero = true;
  double residual = 0.0;
  int nonzero_terms = 0;
  for (const auto& [e, p] : total) {
    if (!p.is_zero_poly()) {
      all_zero = false;
      ++nonzero_terms;
    }
    residual = std::max(residual, p.max_abs());
  }
  // Formal z1 = z2: collect by total degree in (w1, w2).
  std::map<int, OpPoly> diagonal;
  for (const auto& [e, p] : total) {
    int d = 0;
    for (int k : e) d += k;
    auto it = diagonal.find(d);
    if (it == diagonal.end()) diagonal.emplace(d, p);
    else it->second += p;
  }
  bool diagonal_zero = true;
  for (const auto& [d, p] : diagonal) diagonal_zero = diagonal_zero && p.is_zero_poly();

  report.checks.push_back({"coefficientwise in w1, w2", all_zero});
  report.checks.push_back({"coincident points", diagonal_zero});
  report.residual = residual;
  report.pass = all_zero && diagonal_zero;
  std::ostringstream os;
  os << total.size() << " graded coefficients, " << nonzero_terms << " nonzero";
  report.note = os.str();
  return report;
}

}  // namespace qcd
