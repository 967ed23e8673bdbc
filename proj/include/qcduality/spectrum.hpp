#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qcduality/quantum.hpp"

namespace qcd {

// One joint eigenstate of the transfer matrices and weight operators.
// Invariants: sum of weights = N; lambda has degree N with leading
// coefficient tr g; lambda / phi = tr g + sum eta H_i / (x - x_i).
struct SpectralRecord {
  std::size_t state = 0;
  std::vector<int> weights;
  Poly<Complex> lambda;
  std::vector<Complex> H;
  Eigen::VectorXcd vector;  // in the full n^N product basis
  double residual = 0.0;    // relative residual of the pole expansion
  bool collision = false;   // another state in the block shares lambda
};

struct SpectrumOptions {
  std::uint64_t seed = 1;
  int retries = 4;
  double tolerance = 1e-10;
  int threads = 1;
};

std::vector<SpectralRecord> joint_spectrum(const ChainSpec<Complex>& spec, const SpectrumOptions& options = {});
inline std::vector<SpectralRecord> joint_spectrum(const ChainSpec<Rational>& spec,
                                                  const SpectrumOptions& options = {}) {
  spec.validate();
  return joint_spectrum(to_complex(spec), options);
}

// Eigenvalue polynomial of a commuting operator polynomial on a record's
// state, by Rayleigh quotients at deg + 1 points of a circle.
Poly<Complex> eigenvalue_on(const OperatorPolynomial<Complex>& op, const SpectralRecord& record);

// Eigenvalue of a single operator on a record's state.
Complex eigenvalue_on(const SparseOp<Complex>& op, const SpectralRecord& record);

// Sum of weight-multiplied twist values, the expected value of sum_i H_i.
Complex weighted_twist_sum(const std::vector<Complex>& p, const std::vector<int>& weights);

OperatorPolynomial<Complex> to_complex(const OperatorPolynomial<Rational>& op);

}  // namespace qcd
