#pragma once

#include <string>
#include <vector>

#include "qcduality/mkp.hpp"
#include "qcduality/quantum.hpp"
#include "qcduality/spectrum.hpp"

namespace qcd {

// L_ij = xdot_i / (x_i - x_j - eta); the diagonal is -xdot_i / eta.
template <class S>
struct LaxMatrix {
  std::vector<S> x, xdot;
  S eta = S(1);
  Grid<S> L;

  int size() const { return static_cast<int>(x.size()); }
};

// Throws degenerate_spacing on coinciding coordinates or x_i - x_j = eta.
template <class S>
LaxMatrix<S> lax_build(const std::vector<S>& x, const std::vector<S>& xdot, const S& eta);

// det(z I - L), monic of degree N. Exact for rationals; for floating input
// the determinant is sampled on a circle and interpolated by a DFT.
template <class S>
Poly<S> char_poly(const Grid<S>& L);

// I_1..I_N from coordinates and velocities (subset sums); the characteristic
// polynomial of the Lax matrix is z^N + sum_k eta^{-k} I_k z^{N-k}.
template <class S>
std::vector<S> integrals(const std::vector<S>& x, const std::vector<S>& xdot, const S& eta);

// I_k read off the characteristic polynomial: I_k = eta^k c_{N-k}.
template <class S>
std::vector<S> integrals_from_char_poly(const Poly<S>& chi, const S& eta);

struct SpectrumTarget {
  std::vector<Complex> p;
  std::vector<int> M;

  int N() const;
  // Twist values repeated by multiplicity.
  std::vector<Complex> values() const;
  // prod (z - p_a)^{M_a}
  Poly<Complex> polynomial() const;
};

struct DualityReport {
  Poly<Complex> chi;
  Poly<Complex> target;
  double residual = 0.0;  // max |c_k - target_k| / max_k |target_k|
  bool pass = false;
};

DualityReport duality_check(const ChainSpec<Complex>& spec, const std::vector<Complex>& H, const SpectrumTarget& target,
                            double tolerance = 1e-8);
DualityReport duality_verify(const ChainSpec<Complex>& spec, const SpectralRecord& record, double tolerance = 1e-8);

// F_k(H) = sum_{|I|=k} prod_{i in I} H_i prod_{i<j in I} C_ij with
// C_ij = (x_i - x_j)^2 / ((x_i - x_j)^2 - eta^2); the spectral equations
// read F_k(H) = e_k(target values).
template <class S>
std::vector<S> spectral_equations(const std::vector<S>& x, const S& eta, const std::vector<S>& H);

// Checks the sign and eta bookkeeping of the spectral equations on N = 1
// (H_1 = p) and on the exact N = 2 ferromagnetic sector; throws on mismatch.
void calibrate_spectral_equations();

struct SolveOptions {
  // Explicit seeds are refined by Newton at the target eta; when empty the
  // solver seeds every sector assignment at a small eta and continues.
  std::vector<std::vector<Complex>> seeds;
  double start_fraction = 1e-3;  // eta* = start_fraction * eta
  int max_newton = 40;
  int max_halvings = 40;
  double dedupe = 1e-8;
  double tolerance = 1e-8;  // duality re-validation
};

struct SeedOutcome {
  std::vector<Complex> seed;
  bool converged = false;
  std::string note;
};

struct SolveResult {
  std::vector<std::vector<Complex>> solutions;
  std::vector<double> residuals;  // duality residual per solution
  std::vector<SeedOutcome> outcomes;
  int failed() const;
};

SolveResult solve_spectrum(const ChainSpec<Complex>& spec, const SpectrumTarget& target,
                           const SolveOptions& options = {});

// Seeds H_i = p_{a(i)} (1 + eta* sum_{k in block of i, k != i} 1/(x_i - x_k))
// for every assignment of the twist values to sites with the given
// multiplicities.
std::vector<std::vector<Complex>> homotopy_seeds(const ChainSpec<Complex>& spec, const SpectrumTarget& target,
                                                 const Complex& eta_start);

// Classical data: zeros at t = 0, Lax matrix at t = 0 and the n Krichever
// points (Spec L_0 = points with multiplicities).
struct RSData {
  std::vector<Complex> x0;
  Grid<Complex> L0;
  std::vector<Complex> p;
  Complex eta = 1.0;
};

RSData rs_from_state(const ChainSpec<Complex>& spec, const std::vector<Complex>& H);

// prod_i p_i^{x/eta} E(p_i) det(x I - Y(t)), Y(t) = X_0 - eta sum_k k t_k L_0^k;
// a Miwa shift +-[1/z] adds -+ eta L_0 (z - L_0)^{-1} to Y.
Complex rs_tau(const RSData& rs, const Complex& x, const Times<Complex>& times);
Grid<Complex> rs_flow_matrix(const RSData& rs, const Times<Complex>& times);

struct WavePair {
  Complex psi;
  Complex psi_star;
};
// Determinant formulas with (X(t), L(t)) replaced by the similar pair
// (Y(t), L_0).
WavePair rs_wave(const RSData& rs, const Complex& x, const Times<Complex>& times, const Complex& z);

struct EomReport {
  double residual = 0.0;        // max |xddot - rhs| / max(1, |rhs terms|)
  double integral_drift = 0.0;  // max relative change of I_k along the window
  int samples = 0;
  bool pass = false;
};

// Tracks the zeros of rs_tau in t_1 over [0, window] with nearest-neighbour
// continuation at step h; 5-point stencils at every checkpoint. Throws
// root_tracking_lost when two tracked zeros come closer than 10 h.
EomReport rs_eom_check(const RSData& rs, double h = 1e-3, double window = 0.1, int checkpoints = 5,
                       double tolerance = 1e-5, double drift_tolerance = 1e-6);

// H_i = p_n prod_{k != i} (x_i - x_k + eta)/(x_i - x_k)
//           prod_g (x_i - w_g - eta)/(x_i - w_g)
// with w the roots of Q_{n-1}.
std::vector<Complex> eig3_eval(const ChainSpec<Complex>& spec, const std::vector<Complex>& roots);

// One eigenstate pushed through Krichever data, the Q-chain, the TQ
// relations, the nested Bethe equations and the eigenvalue formula. Residuals
// are relative; levels[m] = Q_m.
struct StateBethe {
  std::vector<std::vector<Complex>> roots;  // roots[m] = roots of Q_m, m = 0..n
  int q1_degree = -1;
  int kernel_dim = 0;
  double phi_gap = 0.0;      // Q_n against phi
  double q1_gap = 0.0;       // TQ solution against Q_1
  double dual_tq = 0.0;      // relation for Q_{n-1}
  double bethe_ratio = 0.0;  // ratio form
  double bethe_product = 0.0;
  double eig3 = 0.0;  // H_i from the roots of Q_{n-1}
  double worst() const;
};

// Requires a state without lambda collisions.
StateBethe state_bethe(TransferFamily<Rational>& family, const SpectralRecord& record);

}  // namespace qcd
