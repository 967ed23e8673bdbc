#include "qcduality/quantum.hpp"

#include <algorithm>

namespace qcd {

template <class S>
void ChainSpec<S>::validate() const {
  if (n < 1 || N < 1) throw error("chain needs n >= 1 and N >= 1");
  if (static_cast<int>(x.size()) != N) throw error("chain needs exactly N inhomogeneities");
  if (static_cast<int>(p.size()) != n) throw error("chain needs exactly n twist values");
  std::size_t dim = 1;
  for (int j = 0; j < N; ++j) {
    dim *= static_cast<std::size_t>(n);
    if (dim > kMaxDimension)
      throw budget_exceeded("n^N exceeds the dimension budget of " + std::to_string(kMaxDimension));
  }
  if (is_zero(eta)) throw error("eta must be nonzero");
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      S d = x[i] - x[j];
      if (is_zero(d) || is_zero(S(d - eta)) || is_zero(S(d + eta)))
        throw degenerate_spacing("inhomogeneities " + std::to_string(i) + " and " + std::to_string(j) +
                                 " coincide or differ by eta");
    }
  for (int a = 0; a < n; ++a) {
    if (is_zero(p[a])) throw error("twist values must be nonzero");
    for (int b = a + 1; b < n; ++b)
      if (is_zero(S(p[a] - p[b]))) throw error("twist values must be distinct");
  }
}

template <class S>
Poly<S> ChainSpec<S>::phi() const {
  return Poly<S>::from_roots(x);
}

template <class S>
S ChainSpec<S>::twist_trace() const {
  S acc(0);
  for (const S& v : p) acc += v;
  return acc;
}

template <class S>
S ChainSpec<S>::twist_det() const {
  S acc(1);
  for (const S& v : p) acc *= v;
  return acc;
}

ChainSpec<Complex> to_complex(const ChainSpec<Rational>& spec) {
  ChainSpec<Complex> out;
  out.n = spec.n;
  out.N = spec.N;
  out.eta = to_complex(spec.eta);
  for (const auto& v : spec.x) out.x.push_back(to_complex(v));
  for (const auto& v : spec.p) out.p.push_back(to_complex(v));
  return out;
}

template <class S>
SparseOp<S> r_matrix(const ChainSpec<S>& spec, const S& x) {
  return r_matrix_on(Basis(spec.n, 2), 0, 1, x, spec.eta);
}

template <class S>
SparseOp<S> r_matrix_on(const Basis& basis, int i, int j, const S& x, const S& eta) {
  SparseOp<S> out = SparseOp<S>::identity(basis.dim, x);
  out.axpy(eta, swap_op<S>(basis, i, j));
  return out;
}

namespace {

// Monodromy entries after absorbing sites; the aux-space entry (c,b) of
// R_0j(x - x_j) is (x - x_j) delta_cb + eta e_bc^(j).
template <class S>
std::vector<std::vector<OperatorPolynomial<S>>> monodromy(const ChainSpec<S>& spec, const Basis& basis) {
  const int n = spec.n;
  std::vector<std::vector<OperatorPolynomial<S>>> t(n, std::vector<OperatorPolynomial<S>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[a][b] = a == b ? OperatorPolynomial<S>::scalar(basis.dim, Poly<S>::constant(S(1)))
                       : OperatorPolynomial<S>(basis.dim);
  for (int j = 0; j < spec.N; ++j) {
    const Poly<S> shift = Poly<S>::linear_root(spec.x[j]);
    std::vector<std::vector<OperatorPolynomial<S>>> next(n, std::vector<OperatorPolynomial<S>>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        OperatorPolynomial<S> acc = shift * t[a][b];
        for (int c = 0; c < n; ++c) {
          const auto& src = t[a][c];
          OperatorPolynomial<S> term(basis.dim);
          for (const auto& op : src.c) term.c.push_back(spec.eta * op.right_unit(basis, b, c, j));
          term.trim();
          acc += term;
        }
        next[a][b] = std::move(acc);
      }
    t = std::move(next);
  }
  return t;
}

}  // namespace

template <class S>
OperatorPolynomial<S> transfer_poly(const ChainSpec<S>& spec) {
  spec.validate();
  const Basis basis = spec.basis();
  auto t = monodromy(spec, basis);
  OperatorPolynomial<S> out(basis.dim);
  for (int a = 0; a < spec.n; ++a) out += spec.p[a] * t[a][a];
  return out;
}

template <class S>
SparseOp<S> transfer_at(const ChainSpec<S>& spec, const S& x) {
  spec.validate();
  const Basis basis = spec.basis();
  const int n = spec.n;
  std::vector<std::vector<SparseOp<S>>> t(n, std::vector<SparseOp<S>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = SparseOp<S>::identity(basis.dim, a == b ? S(1) : S(0));
  for (int j = 0; j < spec.N; ++j) {
    const S shift = x - spec.x[j];
    std::vector<std::vector<SparseOp<S>>> next(n, std::vector<SparseOp<S>>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        SparseOp<S> acc = shift * t[a][b];
        for (int c = 0; c < n; ++c) acc.axpy(spec.eta, t[a][c].right_unit(basis, b, c, j));
        next[a][b] = std::move(acc);
      }
    t = std::move(next);
  }
  SparseOp<S> out(basis.dim);
  for (int a = 0; a < n; ++a) out.axpy(spec.p[a], t[a][a]);
  return out;
}

template <class S>
std::vector<SparseOp<S>> hamiltonians(const ChainSpec<S>& spec) {
  spec.validate();
  const Basis basis = spec.basis();
  auto reduced = [&](int i, int k) {
    SparseOp<S> op = SparseOp<S>::identity(basis.dim);
    op.axpy(S(spec.eta / S(spec.x[i] - spec.x[k])), swap_op<S>(basis, i, k));
    return op;
  };
  std::vector<SparseOp<S>> out;
  for (int i = 0; i < spec.N; ++i) {
    SparseOp<S> h = SparseOp<S>::identity(basis.dim);
    for (int k = i + 1; k < spec.N; ++k) h = h * reduced(i, k);
    h = h * site_diagonal(basis, i, spec.p);
    for (int k = 0; k < i; ++k) h = h * reduced(i, k);
    out.push_back(std::move(h));
  }
  return out;
}

template <class S>
std::vector<SparseOp<S>> hamiltonians_from_residue(const ChainSpec<S>& spec, const OperatorPolynomial<S>& transfer) {
  std::vector<SparseOp<S>> out;
  for (int i = 0; i < spec.N; ++i) {
    S denom = spec.eta;
    for (int k = 0; k < spec.N; ++k)
      if (k != i) denom *= spec.x[i] - spec.x[k];
    out.push_back(S(S(1) / denom) * transfer(spec.x[i]));
  }
  return out;
}

template <class S>
std::vector<SparseOp<S>> weight_operators(const ChainSpec<S>& spec) {
  const Basis basis = spec.basis();
  std::vector<SparseOp<S>> out;
  for (int a = 0; a < spec.n; ++a) {
    std::vector<S> diag(basis.dim, S(0));
    for (std::size_t s = 0; s < basis.dim; ++s) diag[s] = S(basis.weights(s)[a]);
    out.push_back(SparseOp<S>::diagonal(diag));
  }
  return out;
}

template <class S>
std::vector<SparseOp<S>> gaudin_hamiltonians(const ChainSpec<S>& spec, const std::vector<S>& h) {
  if (static_cast<int>(h.size()) != spec.n) throw error("gaudin_hamiltonians: h needs n diagonal entries");
  const Basis basis = spec.basis();
  std::vector<SparseOp<S>> out;
  for (int i = 0; i < spec.N; ++i) {
    SparseOp<S> op = site_diagonal(basis, i, h);
    for (int j = 0; j < spec.N; ++j) {
      if (j == i) continue;
      S d = spec.x[i] - spec.x[j];
      if (is_zero(d)) throw degenerate_spacing("gaudin_hamiltonians: coinciding inhomogeneities");
      op.axpy(S(S(1) / d), swap_op<S>(basis, i, j));
    }
    out.push_back(std::move(op));
  }
  return out;
}

// ---- twist polynomials and the co-derivative ----

template <class S>
TwistPolynomial<S> TwistPolynomial<S>::from_scalar(const Basis& basis, const MultiPoly& poly) {
  TwistPolynomial out(basis);
  const std::size_t vars = static_cast<std::size_t>(basis.n) * basis.n;
  const SparseOp<S> id = SparseOp<S>::identity(basis.dim);
  for (const auto& [e, c] : poly.terms()) {
    if (e.size() > vars) throw error("twist polynomial uses more than n^2 variables");
    Monomial m(vars, 0);
    for (std::size_t k = 0; k < e.size(); ++k) m[k] = static_cast<std::uint8_t>(e[k]);
    out.add(m, from_rational<S>(c), id);
  }
  return out;
}

template <class S>
void TwistPolynomial<S>::add(const Monomial& m, const S& scale, const SparseOp<S>& op) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    SparseOp<S> v = scale * op;
    if (!v.is_zero_op()) terms_.emplace(m, std::move(v));
    return;
  }
  it->second.axpy(scale, op);
  if (it->second.is_zero_op()) terms_.erase(it);
}

template <class S>
void TwistPolynomial<S>::prune_offdiagonal(int k) {
  const int n = basis_.n;
  for (auto it = terms_.begin(); it != terms_.end();) {
    int off = 0;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (a != c) off += it->first[a * n + c];
    if (off > k) it = terms_.erase(it);
    else ++it;
  }
}

template <class S>
SparseOp<S> TwistPolynomial<S>::evaluate_diagonal(const std::vector<S>& p) const {
  const int n = basis_.n;
  SparseOp<S> out(basis_.dim);
  for (const auto& [m, op] : terms_) {
    bool diagonal = true;
    S value(1);
    for (int a = 0; a < n && diagonal; ++a)
      for (int c = 0; c < n; ++c) {
        int e = m[a * n + c];
        if (!e) continue;
        if (a != c) {
          diagonal = false;
          break;
        }
        value *= pow_int(p[a], e);
      }
    if (diagonal) out.axpy(value, op);
  }
  return out;
}

template <class S>
SparseOp<S> TwistPolynomial<S>::evaluate(const std::vector<S>& g) const {
  SparseOp<S> out(basis_.dim);
  for (const auto& [m, op] : terms_) {
    S value(1);
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) value *= pow_int(g[v], m[v]);
    out.axpy(value, op);
  }
  return out;
}

template <class S>
TwistPolynomial<S> coderivative_apply(const TwistPolynomial<S>& poly, int site) {
  const Basis& basis = poly.basis();
  const int n = basis.n;
  TwistPolynomial<S> out(basis);
  for (const auto& [m, op] : poly.terms()) {
    std::vector<SparseOp<S>> units(static_cast<std::size_t>(n) * n);
    std::vector<bool> ready(units.size(), false);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int e = m[b * n + c];
        if (!e) continue;
        for (int a = 0; a < n; ++a) {
          const std::size_t key = static_cast<std::size_t>(a) * n + b;
          if (!ready[key]) {
            units[key] = op.left_unit(basis, a, b, site);
            ready[key] = true;
          }
          typename TwistPolynomial<S>::Monomial next = m;
          --next[b * n + c];
          ++next[a * n + c];
          out.add(next, S(e), units[key]);
        }
      }
  }
  return out;
}

MultiPoly character_polynomial(int n, const Partition& lambda) {
  if (lambda.length() > n) return MultiPoly();
  const int size = lambda.size();
  if (size == 0) return MultiPoly(1);
  std::vector<std::vector<MultiPoly>> g(n, std::vector<MultiPoly>(n));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) g[a][c] = MultiPoly::variable(a * n + c);
  std::vector<MultiPoly> times;
  auto power = g;
  for (int k = 1; k <= size; ++k) {
    MultiPoly trace;
    for (int a = 0; a < n; ++a) trace += power[a][a];
    times.push_back(div_int(trace, k));
    if (k == size) break;
    std::vector<std::vector<MultiPoly>> next(n, std::vector<MultiPoly>(n));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b) next[a][c] += power[a][b] * g[b][c];
    power = std::move(next);
  }
  return schur(lambda, TimeVector<MultiPoly>(times));
}

template <class S>
OperatorPolynomial<S> transfer_lambda(const ChainSpec<S>& spec, const Partition& lambda) {
  spec.validate();
  const Basis basis = spec.basis();
  if (lambda.length() > spec.n) return OperatorPolynomial<S>(basis.dim);
  std::vector<TwistPolynomial<S>> f{TwistPolynomial<S>::from_scalar(basis, character_polynomial(spec.n, lambda))};
  for (int i = 0; i < spec.N; ++i) {
    const int remaining = spec.N - 1 - i;
    std::vector<TwistPolynomial<S>> next(f.size() + 1, TwistPolynomial<S>(basis));
    for (std::size_t k = 0; k < f.size(); ++k) {
      for (const auto& [m, op] : f[k].terms()) {
        next[k + 1].add(m, S(1), op);
        next[k].add(m, S(-spec.x[i]), op);
      }
      TwistPolynomial<S> d = coderivative_apply(f[k], i);
      for (const auto& [m, op] : d.terms()) next[k].add(m, spec.eta, op);
    }
    for (auto& tp : next) tp.prune_offdiagonal(remaining);
    f = std::move(next);
  }
  OperatorPolynomial<S> out(basis.dim);
  for (const auto& tp : f) out.c.push_back(tp.evaluate_diagonal(spec.p));
  out.trim();
  return out;
}

template <class S>
const OperatorPolynomial<S>& TransferFamily<S>::get(const Partition& lambda) {
  auto it = cache_.find(lambda);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(lambda, transfer_lambda(spec_, lambda)).first->second;
}

template <class S>
OperatorPolynomial<S> TransferFamily<S>::column(int a) {
  if (a < 0 || a > spec_.n) return OperatorPolynomial<S>(spec_.basis().dim);
  return get(qcd::column(a));
}

template <class S>
OperatorPolynomial<S> TransferFamily<S>::row(int s) {
  if (s < 0) return OperatorPolynomial<S>(spec_.basis().dim);
  return get(Partition(std::vector<int>{s}));
}

template <class S>
OperatorPolynomial<S> master_t_truncated(TransferFamily<S>& family, const TimeVector<S>& t, int max_size) {
  require_truncation(t.K(), max_size, "master_t_truncated");
  const auto& spec = family.spec();
  OperatorPolynomial<S> out(spec.basis().dim);
  for (const auto& lambda : partitions_up_to(max_size)) {
    if (lambda.length() > spec.n) continue;
    S coeff = schur(lambda, t);
    if (is_zero(coeff)) continue;
    out += coeff * family.get(lambda);
  }
  return out;
}

std::vector<std::pair<Partition, MultiPoly>> master_t_terms(int n, const TimeVector<MultiPoly>& t, int max_size) {
  require_truncation(t.K(), max_size, "master_t_terms");
  std::vector<std::pair<Partition, MultiPoly>> out;
  for (const auto& lambda : partitions_up_to(max_size)) {
    if (lambda.length() > n) continue;
    MultiPoly coeff = schur(lambda, t);
    if (!coeff.is_zero()) out.emplace_back(lambda, std::move(coeff));
  }
  return out;
}

template struct ChainSpec<Rational>;
template struct ChainSpec<Complex>;
template class TwistPolynomial<Rational>;
template class TwistPolynomial<Complex>;
template class TransferFamily<Rational>;
template class TransferFamily<Complex>;

#define QCD_INSTANTIATE(S)                                                                              \
  template SparseOp<S> r_matrix(const ChainSpec<S>&, const S&);                                         \
  template SparseOp<S> r_matrix_on(const Basis&, int, int, const S&, const S&);                         \
  template OperatorPolynomial<S> transfer_poly(const ChainSpec<S>&);                                    \
  template SparseOp<S> transfer_at(const ChainSpec<S>&, const S&);                                      \
  template std::vector<SparseOp<S>> hamiltonians(const ChainSpec<S>&);                                  \
  template std::vector<SparseOp<S>> hamiltonians_from_residue(const ChainSpec<S>&,                      \
                                                              const OperatorPolynomial<S>&);            \
  template std::vector<SparseOp<S>> weight_operators(const ChainSpec<S>&);                              \
  template std::vector<SparseOp<S>> gaudin_hamiltonians(const ChainSpec<S>&, const std::vector<S>&);    \
  template TwistPolynomial<S> coderivative_apply(const TwistPolynomial<S>&, int);                       \
  template OperatorPolynomial<S> transfer_lambda(const ChainSpec<S>&, const Partition&);                \
  template OperatorPolynomial<S> master_t_truncated(TransferFamily<S>&, const TimeVector<S>&, int);

QCD_INSTANTIATE(Rational)
QCD_INSTANTIATE(Complex)

#undef QCD_INSTANTIATE

}  // namespace qcd
