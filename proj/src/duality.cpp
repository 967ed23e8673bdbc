#include "qcduality/duality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace qcd {

namespace {

using MatrixC = Eigen::MatrixXcd;

MatrixC to_eigen(const Grid<Complex>& g) {
  const int n = static_cast<int>(g.size());
  MatrixC m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g[i][j];
  return m;
}

template <class S>
S spacing_factor(const S& d, const S& eta) {
  const S den = d * d - eta * eta;
  if (is_zero(den) || is_zero(d)) throw degenerate_spacing("particle spacing equals 0 or +-eta");
  return d * d / den;
}

}  // namespace

// ---- Lax matrix, characteristic polynomial, integrals ----

template <class S>
LaxMatrix<S> lax_build(const std::vector<S>& x, const std::vector<S>& xdot, const S& eta) {
  if (x.size() != xdot.size()) throw error("lax_build: coordinate and velocity counts differ");
  if (is_zero(eta)) throw error("lax_build: eta must be nonzero");
  const int n = static_cast<int>(x.size());
  LaxMatrix<S> out{x, xdot, eta, Grid<S>(n, std::vector<S>(n))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const S d = x[i] - x[j] - eta;
      if (i != j && (is_zero(d) || is_zero(S(x[i] - x[j]))))
        throw degenerate_spacing("lax_build: x_" + std::to_string(i + 1) + " - x_" + std::to_string(j + 1) +
                                 " is 0 or eta");
      out.L[i][j] = xdot[i] / d;
    }
  return out;
}

template <>
Poly<Rational> char_poly(const Grid<Rational>& L) {
  // Faddeev-LeVerrier: M_k = L M_{k-1} + c_{N-k+1} I, c_{N-k} = -tr(L M_k) / k.
  const int n = static_cast<int>(L.size());
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Grid<Rational> M(n, std::vector<Rational>(n, Rational(0)));
  for (int k = 1; k <= n; ++k) {
    Grid<Rational> next(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational acc = 0;
        for (int l = 0; l < n; ++l) acc += L[i][l] * M[l][j];
        next[i][j] = acc;
      }
    for (int i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Rational trace = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) trace += L[i][l] * next[l][i];
    c[n - k] = -trace / k;
    M = std::move(next);
  }
  return Poly<Rational>(std::move(c));
}

template <>
Poly<Complex> char_poly(const Grid<Complex>& L) {
  const int n = static_cast<int>(L.size());
  double radius = 1.0;
  for (const auto& row : L) {
    double s = 0.0;
    for (const auto& v : row) s += std::abs(v);
    radius = std::max(radius, s);
  }
  const int K = n + 1;
  std::vector<Complex> samples(K);
  for (int j = 0; j < K; ++j) {
    const Complex z = std::polar(radius, 2.0 * std::numbers::pi * j / K);
    Grid<Complex> m = L;
    for (int i = 0; i < n; ++i) {
      for (auto& v : m[i]) v = -v;
      m[i][i] += z;
    }
    samples[j] = det_field(m);
  }
  std::vector<Complex> c(n + 1);
  for (int k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < K; ++j) acc += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / K);
    c[k] = acc / static_cast<double>(K) * std::pow(radius, -k);
  }
  c[n] = 1.0;
  return Poly<Complex>(std::move(c));
}

template <class S>
std::vector<S> integrals(const std::vector<S>& x, const std::vector<S>& xdot, const S& eta) {
  const int n = static_cast<int>(x.size());
  Grid<S> C(n, std::vector<S>(n, S(1)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) C[i][j] = spacing_factor(S(x[i] - x[j]), eta);
  std::vector<S> out(n, S(0));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    S term(1);
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      term *= xdot[i];
      for (int j = i + 1; j < n; ++j)
        if (mask & (1u << j)) term *= C[i][j];
    }
    out[__builtin_popcount(mask) - 1] += term;
  }
  return out;
}

template <class S>
std::vector<S> integrals_from_char_poly(const Poly<S>& chi, const S& eta) {
  const int n = chi.degree();
  std::vector<S> out;
  for (int k = 1; k <= n; ++k) out.push_back(S(pow_int(eta, k) * chi.coeff(n - k)));
  return out;
}

// ---- duality ----

int SpectrumTarget::N() const {
  int total = 0;
  for (int m : M) total += m;
  return total;
}

std::vector<Complex> SpectrumTarget::values() const {
  std::vector<Complex> out;
  for (std::size_t a = 0; a < p.size(); ++a) out.insert(out.end(), M[a], p[a]);
  return out;
}

Poly<Complex> SpectrumTarget::polynomial() const { return Poly<Complex>::from_roots(values()); }

DualityReport duality_check(const ChainSpec<Complex>& spec, const std::vector<Complex>& H, const SpectrumTarget& target,
                            double tolerance) {
  std::vector<Complex> xdot;
  for (const auto& h : H) xdot.push_back(-spec.eta * h);
  DualityReport out;
  out.chi = char_poly(lax_build(spec.x, xdot, spec.eta).L);
  out.target = target.polynomial();
  double scale = 0.0, gap = 0.0;
  for (int k = 0; k <= out.target.degree(); ++k) {
    scale = std::max(scale, std::abs(out.target.coeff(k)));
    gap = std::max(gap, std::abs(out.chi.coeff(k) - out.target.coeff(k)));
  }
  out.residual = gap / scale;
  out.pass = out.residual < tolerance && out.chi.degree() == out.target.degree();
  return out;
}

DualityReport duality_verify(const ChainSpec<Complex>& spec, const SpectralRecord& record, double tolerance) {
  return duality_check(spec, record.H, SpectrumTarget{spec.p, record.weights}, tolerance);
}

// ---- spectral equations and the Newton solver ----

namespace {

struct SpectralSystem {
  int n = 0;
  Grid<Complex> C;
  std::vector<Complex> e;  // e_1..e_N of the target values

  SpectralSystem(const std::vector<Complex>& x, const Complex& eta, const std::vector<Complex>& values)
      : n(static_cast<int>(x.size())), C(n, std::vector<Complex>(n, 1.0)) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) C[i][j] = spacing_factor(Complex(x[i] - x[j]), eta);
    const auto target = Poly<Complex>::from_roots(values);
    for (int k = 1; k <= n; ++k) e.push_back((k % 2 ? -1.0 : 1.0) * target.coeff(n - k));
  }

  // Residual vector F(H) - e and Jacobian dF_k/dH_i.
  void evaluate(const std::vector<Complex>& H, Eigen::VectorXcd& F, MatrixC& J) const {
    F = Eigen::VectorXcd::Zero(n);
    J = MatrixC::Zero(n, n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Complex w = 1.0, mono = 1.0;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        mono *= H[i];
        for (int j = i + 1; j < n; ++j)
          if (mask & (1u << j)) w *= C[i][j];
      }
      const int k = __builtin_popcount(mask) - 1;
      F(k) += w * mono;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        Complex rest = w;
        for (int j = 0; j < n; ++j)
          if (j != i && (mask & (1u << j))) rest *= H[j];
        J(k, i) += rest;
      }
    }
    for (int k = 0; k < n; ++k) F(k) -= e[k];
  }

  double size(const Eigen::VectorXcd& F) const {
    double out = 0.0;
    for (int k = 0; k < n; ++k) out = std::max(out, std::abs(F(k)) / (1.0 + std::abs(e[k])));
    return out;
  }
};

// Damped Newton; returns false when it stalls.
bool newton(const SpectralSystem& sys, std::vector<Complex>& H, int max_iterations) {
  Eigen::VectorXcd F;
  MatrixC J;
  sys.evaluate(H, F, J);
  double current = sys.size(F);
  for (int it = 0; it < max_iterations; ++it) {
    if (current < 1e-14) return true;
    Eigen::ColPivHouseholderQR<MatrixC> qr(J);
    if (qr.rank() < sys.n) throw jacobian_singular("spectral equations: singular Jacobian");
    const Eigen::VectorXcd step = qr.solve(F);
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 20; ++halving, lambda *= 0.5) {
      std::vector<Complex> trial = H;
      for (int i = 0; i < sys.n; ++i) trial[i] -= lambda * step(i);
      Eigen::VectorXcd Ft;
      MatrixC Jt;
      sys.evaluate(trial, Ft, Jt);
      const double s = sys.size(Ft);
      if (s < current) {
        H = std::move(trial);
        F = std::move(Ft);
        J = std::move(Jt);
        improved = current - s > 0.0;
        current = s;
        break;
      }
    }
    if (!improved) return current < 1e-11;
  }
  return current < 1e-11;
}

}  // namespace

template <class S>
std::vector<S> spectral_equations(const std::vector<S>& x, const S& eta, const std::vector<S>& H) {
  const int n = static_cast<int>(x.size());
  std::vector<S> out(n, S(0));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    S term(1);
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      term *= H[i];
      for (int j = i + 1; j < n; ++j)
        if (mask & (1u << j)) term *= spacing_factor(S(x[i] - x[j]), eta);
    }
    out[__builtin_popcount(mask) - 1] += term;
  }
  return out;
}

void calibrate_spectral_equations() {
  static std::once_flag once;
  std::call_once(once, [] {
    // N = 1: H_1 = p.
    const Rational p(7, 3);
    if (spectral_equations<Rational>({Rational(1, 2)}, Rational(1, 3), {p})[0] != p)
      throw error("spectral equation calibration failed at N = 1");
    // N = 2, both sites in one sector: H_i = p prod (x_i - x_k + eta)/(x_i - x_k).
    const std::vector<Rational> x{Rational(0), Rational(1)};
    const Rational eta(1, 3), q(2);
    std::vector<Rational> H;
    for (int i = 0; i < 2; ++i) {
      const Rational d = x[i] - x[1 - i];
      H.push_back(q * (d + eta) / d);
    }
    const auto F = spectral_equations(x, eta, H);
    if (F[0] != q + q || F[1] != q * q) throw error("spectral equation calibration failed at N = 2");
  });
}

int SolveResult::failed() const {
  int out = 0;
  for (const auto& o : outcomes)
    if (!o.converged) ++out;
  return out;
}

std::vector<std::vector<Complex>> homotopy_seeds(const ChainSpec<Complex>& spec, const SpectrumTarget& target,
                                                 const Complex& eta_start) {
  std::vector<int> labels;
  for (std::size_t a = 0; a < target.M.size(); ++a) labels.insert(labels.end(), target.M[a], static_cast<int>(a));
  std::vector<std::vector<Complex>> out;
  do {
    std::vector<Complex> seed;
    for (int i = 0; i < spec.N; ++i) {
      Complex sum = 0.0;
      for (int k = 0; k < spec.N; ++k)
        if (k != i && labels[k] == labels[i]) sum += 1.0 / (spec.x[i] - spec.x[k]);
      seed.push_back(target.p[labels[i]] * (1.0 + eta_start * sum));
    }
    out.push_back(std::move(seed));
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

SolveResult solve_spectrum(const ChainSpec<Complex>& spec, const SpectrumTarget& target, const SolveOptions& options) {
  spec.validate();
  calibrate_spectral_equations();
  if (target.p.size() != target.M.size()) throw error("solve_spectrum: twist and multiplicity counts differ");
  for (int m : target.M)
    if (m < 0) throw error("solve_spectrum: negative multiplicity");
  if (target.N() != spec.N) throw error("solve_spectrum: multiplicities must sum to N");

  const auto values = target.values();
  SolveResult result;
  std::vector<std::vector<Complex>> found;

  auto attempt = [&](std::vector<Complex> H, bool continuation) {
    SeedOutcome outcome{H, false, {}};
    try {
      if (!continuation) {
        outcome.converged = newton(SpectralSystem(spec.x, spec.eta, values), H, options.max_newton);
        if (!outcome.converged) outcome.note = "no convergence at the target eta";
      } else {
        double s = options.start_fraction;
        if (!newton(SpectralSystem(spec.x, spec.eta * s, values), H, options.max_newton)) {
          outcome.note = "no convergence at the starting eta";
        } else {
          double ds = s;
          int halvings = 0;
          while (s < 1.0) {
            const double next = std::min(1.0, s + ds);
            std::vector<Complex> trial = H;
            bool ok = false;
            try {
              ok = newton(SpectralSystem(spec.x, spec.eta * next, values), trial, 12);
            } catch (const jacobian_singular&) {
              ok = false;
            }
            if (ok) {
              H = std::move(trial);
              s = next;
              ds = std::min(2.0 * ds, 0.1);
            } else if (++halvings > options.max_halvings) {
              outcome.note = "continuation stalled at eta fraction " + std::to_string(s);
              break;
            } else {
              ds *= 0.5;
            }
          }
          outcome.converged = s >= 1.0;
        }
      }
    } catch (const jacobian_singular& e) {
      outcome.note = e.what();
    }
    if (outcome.converged) found.push_back(H);
    result.outcomes.push_back(std::move(outcome));
  };

  if (!options.seeds.empty()) {
    for (const auto& seed : options.seeds) attempt(seed, false);
  } else {
    for (auto& seed : homotopy_seeds(spec, target, spec.eta * options.start_fraction)) attempt(seed, true);
  }

  for (const auto& H : found) {
    bool duplicate = false;
    for (const auto& kept : result.solutions) {
      double gap = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < H.size(); ++i) {
        gap = std::max(gap, std::abs(H[i] - kept[i]));
        scale = std::max(scale, std::abs(kept[i]));
      }
      if (gap < options.dedupe * scale) duplicate = true;
    }
    if (duplicate) continue;
    const auto check = duality_check(spec, H, target, options.tolerance);
    if (!check.pass) continue;
    result.solutions.push_back(H);
    result.residuals.push_back(check.residual);
  }
  return result;
}

// ---- classical RS data ----

RSData rs_from_state(const ChainSpec<Complex>& spec, const std::vector<Complex>& H) {
  std::vector<Complex> xdot;
  for (const auto& h : H) xdot.push_back(-spec.eta * h);
  return {spec.x, lax_build(spec.x, xdot, spec.eta).L, spec.p, spec.eta};
}

Grid<Complex> rs_flow_matrix(const RSData& rs, const Times<Complex>& times) {
  const int n = static_cast<int>(rs.x0.size());
  const MatrixC L = to_eigen(rs.L0);
  MatrixC Y = MatrixC::Zero(n, n);
  for (int i = 0; i < n; ++i) Y(i, i) = rs.x0[i];
  MatrixC power = MatrixC::Identity(n, n);
  for (std::size_t k = 1; k <= times.t.size(); ++k) {
    power = power * L;
    Y -= rs.eta * static_cast<double>(k) * times.t[k - 1] * power;
  }
  for (const auto& sh : times.shifts) {
    const MatrixC resolvent = (sh.z * MatrixC::Identity(n, n) - L).inverse();
    Y -= rs.eta * static_cast<double>(sh.sign) * L * resolvent;
  }
  Grid<Complex> out(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = Y(i, j);
  return out;
}

Complex rs_tau(const RSData& rs, const Complex& x, const Times<Complex>& times) {
  Complex pre = 1.0;
  for (const auto& p : rs.p) pre *= std::exp(x / rs.eta * std::log(p) + times.xi(p)) * times.shift_factor(p);
  const MatrixC Y = to_eigen(rs_flow_matrix(rs, times));
  const int n = static_cast<int>(Y.rows());
  return pre * (x * MatrixC::Identity(n, n) - Y).determinant();
}

WavePair rs_wave(const RSData& rs, const Complex& x, const Times<Complex>& times, const Complex& z) {
  if (z == Complex(0.0)) throw pole_evaluation("rs_wave at z = 0");
  const MatrixC Y = to_eigen(rs_flow_matrix(rs, times));
  const MatrixC L = to_eigen(rs.L0);
  const int n = static_cast<int>(Y.rows());
  const MatrixC I = MatrixC::Identity(n, n);
  const Complex dx = (x * I - Y).determinant(), dz = (z * I - L).determinant();
  if (std::abs(dx) == 0.0 || std::abs(dz) == 0.0) throw pole_evaluation("rs_wave at a zero of det(x - X) det(z - L)");
  Complex points = 1.0;
  for (const auto& p : rs.p) points *= 1.0 - p / z;
  const Complex exponential = std::exp(x / rs.eta * std::log(z) + times.xi(z)) * times.shift_factor(z);
  WavePair out;
  out.psi = points * exponential * ((x * I - Y) * (z * I - L) - rs.eta * L).determinant() / (dx * dz);
  out.psi_star = ((z * I - L) * (x * I - Y) + rs.eta * L).determinant() / (points * exponential * dx * dz);
  return out;
}

EomReport rs_eom_check(const RSData& rs, double h, double window, int checkpoints, double tolerance,
                       double drift_tolerance) {
  const int n = static_cast<int>(rs.x0.size());
  const MatrixC L = to_eigen(rs.L0);
  const int steps = static_cast<int>(std::ceil(window / h)) + 2;
  // track[j + 2] holds the zeros at t_1 = j h, j = -2..steps.
  std::vector<std::vector<Complex>> track(steps + 3);
  track[2] = rs.x0;
  auto zeros_at = [&](double t1) {
    MatrixC Y = -rs.eta * t1 * L;
    for (int i = 0; i < n; ++i) Y(i, i) += rs.x0[i];
    Eigen::ComplexEigenSolver<MatrixC> solver(Y, false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
    return out;
  };
  auto follow = [&](const std::vector<Complex>& prev, std::vector<Complex> found, double t1) {
    std::vector<Complex> out(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
      int best = -1;
      for (int j = 0; j < n; ++j)
        if (!used[j] && (best < 0 || std::abs(found[j] - prev[i]) < std::abs(found[best] - prev[i]))) best = j;
      used[best] = true;
      out[i] = found[best];
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(out[i] - out[j]) < 10.0 * h)
          throw root_tracking_lost("zeros " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                   " collide near t1 = " + std::to_string(t1));
    return out;
  };
  for (int j = 1; j <= steps; ++j) track[j + 2] = follow(track[j + 1], zeros_at(j * h), j * h);
  for (int j = -1; j >= -2; --j) track[j + 2] = follow(track[j + 3], zeros_at(j * h), j * h);

  EomReport report;
  std::vector<Complex> initial;
  for (int c = 0; c < checkpoints; ++c) {
    const int j = checkpoints > 1 ? static_cast<int>(std::lround((steps - 2) * static_cast<double>(c) /
                                                                  (checkpoints - 1)))
                                  : 0;
    const auto& m2 = track[j], &m1 = track[j + 1], &z0 = track[j + 2], &p1 = track[j + 3], &p2 = track[j + 4];
    std::vector<Complex> v(n), a(n);
    for (int i = 0; i < n; ++i) {
      v[i] = (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
      a[i] = (-p2[i] + 16.0 * p1[i] - 30.0 * z0[i] + 16.0 * m1[i] - m2[i]) / (12.0 * h * h);
    }
    for (int i = 0; i < n; ++i) {
      Complex rhs = 0.0;
      double scale = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        const Complex d = z0[i] - z0[k];
        const Complex term = -2.0 * rs.eta * rs.eta * v[i] * v[k] / (d * (d * d - rs.eta * rs.eta));
        rhs += term;
        scale = std::max(scale, std::abs(term));
      }
      scale = std::max(scale, std::abs(a[i]));
      report.residual = std::max(report.residual, std::abs(a[i] - rhs) / scale);
    }
    const auto I = integrals(z0, v, rs.eta);
    if (c == 0) initial = I;
    for (int k = 0; k < n; ++k)
      report.integral_drift =
          std::max(report.integral_drift, std::abs(I[k] - initial[k]) / std::max(1.0, std::abs(initial[k])));
    ++report.samples;
  }
  report.pass = report.residual < tolerance && report.integral_drift < drift_tolerance;
  return report;
}

std::vector<Complex> eig3_eval(const ChainSpec<Complex>& spec, const std::vector<Complex>& roots) {
  std::vector<Complex> H;
  for (int i = 0; i < spec.N; ++i) {
    Complex h = spec.p.back();
    for (int k = 0; k < spec.N; ++k)
      if (k != i) h *= (spec.x[i] - spec.x[k] + spec.eta) / (spec.x[i] - spec.x[k]);
    for (const auto& w : roots) {
      if (spec.x[i] == w) throw pole_evaluation("Bethe root coincides with an inhomogeneity");
      h *= (spec.x[i] - w - spec.eta) / (spec.x[i] - w);
    }
    H.push_back(h);
  }
  return H;
}

namespace {

double coefficient_gap(const Poly<Complex>& a, const Poly<Complex>& b) {
  double gap = 0.0, scale = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
    gap = std::max(gap, std::abs(a.coeff(k) - b.coeff(k)));
    scale = std::max({scale, std::abs(a.coeff(k)), std::abs(b.coeff(k))});
  }
  return scale > 0.0 ? gap / scale : gap;
}

Poly<Complex> monic(const Poly<Complex>& p) { return (1.0 / p.leading()) * p; }

}  // namespace

double StateBethe::worst() const {
  return std::max({phi_gap, q1_gap, dual_tq, bethe_ratio, bethe_product, eig3});
}

StateBethe state_bethe(TransferFamily<Rational>& family, const SpectralRecord& record) {
  if (record.collision) throw near_degenerate_spectrum("state_bethe: lambda is shared with another state");
  const auto spec = to_complex(family.spec());
  const int n = spec.n;
  std::vector<Poly<Complex>> T;
  for (int a = 0; a <= n; ++a) T.push_back(eigenvalue_on(to_complex(family.column(a)), record));
  Complex G = 1.0;
  for (const auto& p : spec.p) G *= p;

  const auto data = krichever_from_transfer(T, spec.p, record.weights, spec.eta);
  const auto levels = q_functions(undress_chain(data, Times<Complex>()));
  StateBethe out;
  for (const auto& level : levels)
    out.roots.push_back(level.poly.degree() > 0 ? roots(level.poly) : std::vector<Complex>{});
  out.phi_gap = coefficient_gap(monic(levels[n].poly), to_complex(family.spec().phi()));

  const auto solution = tq_solve_q1(T, spec.p[0], spec.eta, record.weights[0]);
  out.kernel_dim = solution.kernel_dim;
  if (solution.q) {
    out.q1_degree = solution.q->degree();
    out.q1_gap = coefficient_gap(*solution.q, monic(levels[1].poly));
  } else {
    out.q1_gap = 1.0;
  }
  out.dual_tq = tq_verify_qn1(T, levels[n - 1], G, spec.eta, {Complex(0.31, 0.2), Complex(-0.7, 0.45)});

  const auto bethe = bethe_verify(levels, spec.p, spec.eta);
  out.bethe_ratio = bethe.max_ratio;
  out.bethe_product = bethe.max_product;

  const auto H = eig3_eval(spec, out.roots[n - 1]);
  for (int i = 0; i < spec.N; ++i)
    out.eig3 = std::max(out.eig3, std::abs(H[i] - record.H[i]) / std::abs(record.H[i]));
  return out;
}

template LaxMatrix<Rational> lax_build(const std::vector<Rational>&, const std::vector<Rational>&, const Rational&);
template LaxMatrix<Complex> lax_build(const std::vector<Complex>&, const std::vector<Complex>&, const Complex&);
template std::vector<Rational> integrals(const std::vector<Rational>&, const std::vector<Rational>&, const Rational&);
template std::vector<Complex> integrals(const std::vector<Complex>&, const std::vector<Complex>&, const Complex&);
template std::vector<Rational> integrals_from_char_poly(const Poly<Rational>&, const Rational&);
template std::vector<Complex> integrals_from_char_poly(const Poly<Complex>&, const Complex&);
template std::vector<Rational> spectral_equations(const std::vector<Rational>&, const Rational&,
                                                  const std::vector<Rational>&);
template std::vector<Complex> spectral_equations(const std::vector<Complex>&, const Complex&,
                                                 const std::vector<Complex>&);

}  // namespace qcd
