#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcduality/multipoly.hpp"
#include "qcduality/operator.hpp"
#include "qcduality/symfun.hpp"

namespace qcd {

inline constexpr std::size_t kMaxDimension = 4096;

// Twisted inhomogeneous GL(n) chain. Sites are 0-based; basis index a at a
// site carries twist value p[a].
template <class S>
struct ChainSpec {
  int n = 1;
  int N = 1;
  S eta = S(1);
  std::vector<S> x;
  std::vector<S> p;

  // Throws on repeated or ±eta-spaced inhomogeneities, repeated or zero twist
  // values, eta = 0, or a space larger than kMaxDimension.
  void validate() const;
  Basis basis() const { return Basis(n, N); }
  Poly<S> phi() const;
  S twist_trace() const;
  S twist_det() const;
};

ChainSpec<Complex> to_complex(const ChainSpec<Rational>& spec);

// xI + eta P on C^n ⊗ C^n.
template <class S>
SparseOp<S> r_matrix(const ChainSpec<S>& spec, const S& x);

// xI + eta P_ij embedded in the chain space (used for Yang-Baxter checks).
template <class S>
SparseOp<S> r_matrix_on(const Basis& basis, int i, int j, const S& x, const S& eta);

// tr_0 R_01(x-x_1) ... R_0N(x-x_N) g_0 as a degree-N operator polynomial.
template <class S>
OperatorPolynomial<S> transfer_poly(const ChainSpec<S>& spec);

// The same trace evaluated at a scalar spectral parameter.
template <class S>
SparseOp<S> transfer_at(const ChainSpec<S>& spec, const S& x);

// Ordered product R~_{i,i+1}..R~_{i,N} g_i R~_{i,1}..R~_{i,i-1}; equals the residue of the
// trace at x_i for the site ordering R_01..R_0N.
template <class S>
std::vector<SparseOp<S>> hamiltonians(const ChainSpec<S>& spec);

// eta^{-1} res_{x=x_i} T(x)/phi(x) = T(x_i) / (eta prod_{k!=i}(x_i-x_k)).
template <class S>
std::vector<SparseOp<S>> hamiltonians_from_residue(const ChainSpec<S>& spec, const OperatorPolynomial<S>& transfer);

template <class S>
std::vector<SparseOp<S>> weight_operators(const ChainSpec<S>& spec);

// h_i + sum_{j != i} P_ij / (x_i - x_j); h holds the diagonal of h.
template <class S>
std::vector<SparseOp<S>> gaudin_hamiltonians(const ChainSpec<S>& spec, const std::vector<S>& h);

// Operator-valued polynomial in the n^2 twist entries g^a_c; variable index
// a*n + c.
template <class S>
class TwistPolynomial {
 public:
  using Monomial = std::vector<std::uint8_t>;

  TwistPolynomial() = default;
  TwistPolynomial(const Basis& basis) : basis_(basis) {}
  // Lifts a scalar polynomial in the entries to coef * identity terms.
  static TwistPolynomial from_scalar(const Basis& basis, const MultiPoly& poly);

  const Basis& basis() const { return basis_; }
  const std::map<Monomial, SparseOp<S>>& terms() const { return terms_; }
  void add(const Monomial& m, const S& scale, const SparseOp<S>& op);
  bool is_zero() const { return terms_.empty(); }
  // Drops monomials with more than k off-diagonal factors.
  void prune_offdiagonal(int k);

  SparseOp<S> evaluate_diagonal(const std::vector<S>& p) const;
  // g given row-major, g[a*n + c] = g^a_c.
  SparseOp<S> evaluate(const std::vector<S>& g) const;

  friend TwistPolynomial operator-(const TwistPolynomial& a, const TwistPolynomial& b) {
    TwistPolynomial out = a;
    for (const auto& [m, op] : b.terms_) out.add(m, S(-1), op);
    return out;
  }
  friend bool operator==(const TwistPolynomial& a, const TwistPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Basis basis_;
  std::map<Monomial, SparseOp<S>> terms_;
};

// D_site = sum_ab e_ab^(site) D^a_b, D^a_b = sum_c g^a_c d/dg^b_c.
template <class S>
TwistPolynomial<S> coderivative_apply(const TwistPolynomial<S>& poly, int site);

// chi_λ(g) in the entries of g, built from tr g^k through Jacobi-Trudi.
MultiPoly character_polynomial(int n, const Partition& lambda);

// (x - x_N + eta D_N) ... (x - x_1 + eta D_1) chi_λ(g) at g = diag(p).
template <class S>
OperatorPolynomial<S> transfer_lambda(const ChainSpec<S>& spec, const Partition& lambda);

// Memoized transfer_lambda for one chain.
template <class S>
class TransferFamily {
 public:
  explicit TransferFamily(ChainSpec<S> spec) : spec_(std::move(spec)) { spec_.validate(); }
  const ChainSpec<S>& spec() const { return spec_; }
  const OperatorPolynomial<S>& get(const Partition& lambda);
  // T^a = T_{(1^a)}, zero outside 0..n.
  OperatorPolynomial<S> column(int a);
  // T_s = T_{(s)}, zero for s < 0.
  OperatorPolynomial<S> row(int s);

 private:
  ChainSpec<S> spec_;
  std::map<Partition, OperatorPolynomial<S>> cache_;
};

struct IdentityReport {
  bool pass = false;
  double residual = 0.0;
  std::vector<std::pair<std::string, bool>> checks;
  std::string note;
};

// Row and column determinant identities for T_λ, exact divisibility of both
// determinants by their phi-products, and sample-point agreement.
IdentityReport cbr_verify(TransferFamily<Rational>& family, const Partition& lambda, int max_size);

// sum_{|λ| <= D, l(λ) <= n} s_λ(t) T_λ(x).
template <class S>
OperatorPolynomial<S> master_t_truncated(TransferFamily<S>& family, const TimeVector<S>& t, int max_size);

// Same sum with times valued in a polynomial ring: one (λ, s_λ(t)) pair per
// partition with nonzero coefficient.
std::vector<std::pair<Partition, MultiPoly>> master_t_terms(int n, const TimeVector<MultiPoly>& t, int max_size);

// Three-term bilinear identity at t = 0 with Miwa variables w_k = 1/z_k kept
// symbolic; every coefficient of w1^i w2^j must vanish exactly.
IdentityReport hirota_3term_verify(TransferFamily<Rational>& family);

}  // namespace qcd
