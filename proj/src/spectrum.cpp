#include "qcduality/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <thread>

namespace qcd {

namespace {

Eigen::VectorXcd apply_op(const SparseOp<Complex>& op, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (std::size_t r = 0; r < op.dim(); ++r)
    for (const auto& [c, val] : op.row(r)) out(r) += val * v(c);
  return out;
}

Complex rayleigh(const SparseOp<Complex>& op, const Eigen::VectorXcd& v) {
  return v.dot(apply_op(op, v)) / v.squaredNorm();
}

// Interpolation nodes on a circle enclosing the inhomogeneities; DFT-like
// spacing keeps the Newton interpolation well conditioned.
std::vector<Complex> circle_nodes(const std::vector<Complex>& x, int count, double phase) {
  Complex centre = 0.0;
  for (const auto& v : x) centre += v;
  centre /= static_cast<double>(std::max<std::size_t>(1, x.size()));
  double radius = 1.0;
  for (const auto& v : x) radius = std::max(radius, 1.5 * std::abs(v - centre));
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k)
    out.push_back(centre + std::polar(radius, phase + 2.0 * std::numbers::pi * k / count));
  return out;
}

struct Block {
  std::vector<int> weights;
  std::vector<std::size_t> states;
};

struct BlockContext {
  const ChainSpec<Complex>* spec;
  const OperatorPolynomial<Complex>* transfer;
  const SpectrumOptions* options;
};

std::vector<SpectralRecord> solve_block(const BlockContext& ctx, const Block& block, std::uint64_t block_seed) {
  const auto& spec = *ctx.spec;
  const auto& transfer = *ctx.transfer;
  const std::size_t b = block.states.size();
  const std::size_t dim = transfer.dim;
  std::mt19937_64 rng(block_seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi);
  std::string last_failure;

  for (int attempt = 0; attempt <= ctx.options->retries; ++attempt) {
    const auto nodes = circle_nodes(spec.x, spec.N + 1, angle(rng));
    std::vector<SparseOp<Complex>> at_nodes;
    for (const auto& z : nodes) at_nodes.push_back(transfer(z));

    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(b, b);
    std::vector<double> weights;
    for (std::size_t k = 0; k < nodes.size(); ++k) weights.push_back(coef(rng));
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < b; ++i) local[block.states[i]] = i;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (std::size_t i = 0; i < b; ++i)
        for (const auto& [c, val] : at_nodes[k].row(block.states[i])) {
          auto it = local.find(c);
          if (it == local.end()) throw error("joint_spectrum: transfer matrix leaves a weight block");
          combo(i, it->second) += weights[k] * val;
        }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(combo, true);
    if (solver.info() != Eigen::Success) {
      last_failure = "eigen-decomposition failed";
      continue;
    }

    std::vector<SpectralRecord> records;
    bool ok = true;
    const Complex twist_trace = spec.twist_trace();
    for (std::size_t j = 0; j < b && ok; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      for (std::size_t i = 0; i < b; ++i) v(block.states[i]) = solver.eigenvectors()(i, j);
      v.normalize();
      std::vector<Complex> values;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        Complex mu = rayleigh(at_nodes[k], v);
        double scale = std::max(std::abs(mu), at_nodes[k].max_abs());
        double off = (apply_op(at_nodes[k], v) - mu * v).norm() / scale;
        if (!(off < ctx.options->tolerance)) {
          ok = false;
          last_failure = "off-diagonal residual " + std::to_string(off);
          break;
        }
        values.push_back(mu);
      }
      if (!ok) break;

      SpectralRecord rec;
      rec.weights = block.weights;
      rec.lambda = interpolate(nodes, values);
      for (int i = 0; i < spec.N; ++i) {
        Complex denom = spec.eta;
        for (int k = 0; k < spec.N; ++k)
          if (k != i) denom *= spec.x[i] - spec.x[k];
        rec.H.push_back(rec.lambda(spec.x[i]) / denom);
      }
      rec.vector = std::move(v);

      // Pole expansion at a fresh point against the operator itself.
      const Complex probe = nodes[0] * Complex(0.37, 0.21) + Complex(0.5, -0.3);
      Complex predicted = twist_trace;
      for (int i = 0; i < spec.N; ++i) predicted += spec.eta * rec.H[i] / (probe - spec.x[i]);
      predicted *= spec.phi()(probe);
      auto op = transfer(probe);
      double scale = std::max(std::abs(predicted), op.max_abs());
      rec.residual = (apply_op(op, rec.vector) - predicted * rec.vector).norm() / scale;
      if (!(rec.residual < ctx.options->tolerance)) {
        ok = false;
        last_failure = "pole expansion residual " + std::to_string(rec.residual);
        break;
      }
      records.push_back(std::move(rec));
    }
    if (!ok) continue;

    for (std::size_t i = 0; i < records.size(); ++i)
      for (std::size_t j = i + 1; j < records.size(); ++j) {
        double gap = 0.0, size = 1e-300;
        for (int k = 0; k <= spec.N; ++k) {
          gap = std::max(gap, std::abs(records[i].lambda.coeff(k) - records[j].lambda.coeff(k)));
          size = std::max(size, std::abs(records[i].lambda.coeff(k)));
        }
        if (gap / size < 1e-8) records[i].collision = records[j].collision = true;
      }
    return records;
  }
  throw near_degenerate_spectrum("joint_spectrum: block " + std::to_string(block.states.size()) +
                                 " states failed after retries (" + last_failure + "), seed " +
                                 std::to_string(ctx.options->seed));
}

}  // namespace

OperatorPolynomial<Complex> to_complex(const OperatorPolynomial<Rational>& op) {
  OperatorPolynomial<Complex> out(op.dim);
  for (const auto& c : op.c) out.c.push_back(c.cast<Complex>([](const Rational& q) { return to_complex(q); }));
  out.trim();
  return out;
}

Complex weighted_twist_sum(const std::vector<Complex>& p, const std::vector<int>& weights) {
  Complex acc = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) acc += static_cast<double>(weights[a]) * p[a];
  return acc;
}

std::vector<SpectralRecord> joint_spectrum(const ChainSpec<Complex>& spec, const SpectrumOptions& options) {
  spec.validate();
  const Basis basis = spec.basis();
  const auto transfer = transfer_poly(spec);

  std::map<std::vector<int>, Block> by_weight;
  for (std::size_t s = 0; s < basis.dim; ++s) {
    auto w = basis.weights(s);
    auto& block = by_weight[w];
    block.weights = w;
    block.states.push_back(s);
  }
  std::vector<Block> blocks;
  for (auto& [w, block] : by_weight) blocks.push_back(std::move(block));

  // Per-block seeds derived from the run seed keep results independent of
  // the thread count.
  std::vector<std::uint64_t> seeds;
  std::seed_seq seq{options.seed, static_cast<std::uint64_t>(blocks.size())};
  seeds.resize(blocks.size());
  std::vector<std::uint32_t> raw(2 * blocks.size());
  seq.generate(raw.begin(), raw.end());
  for (std::size_t i = 0; i < blocks.size(); ++i) seeds[i] = (std::uint64_t(raw[2 * i]) << 32) | raw[2 * i + 1];

  BlockContext ctx{&spec, &transfer, &options};
  std::vector<std::vector<SpectralRecord>> results(blocks.size());
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < blocks.size(); ++i) results[i] = solve_block(ctx, blocks[i], seeds[i]);
  } else {
    std::vector<std::exception_ptr> errors(blocks.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < blocks.size(); i += threads) {
          try {
            results[i] = solve_block(ctx, blocks[i], seeds[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<SpectralRecord> out;
  for (auto& block : results)
    for (auto& rec : block) {
      rec.state = out.size();
      out.push_back(std::move(rec));
    }
  return out;
}

Complex eigenvalue_on(const SparseOp<Complex>& op, const SpectralRecord& record) {
  return rayleigh(op, record.vector);
}

Poly<Complex> eigenvalue_on(const OperatorPolynomial<Complex>& op, const SpectralRecord& record) {
  if (op.is_zero_poly()) return Poly<Complex>();
  const int count = op.degree() + 1;
  std::vector<Complex> nodes, values;
  for (int k = 0; k < count; ++k) {
    nodes.push_back(std::polar(2.0, 0.3 + 2.0 * std::numbers::pi * k / count));
    values.push_back(rayleigh(op(nodes.back()), record.vector));
  }
  Poly<Complex> out = interpolate(nodes, values);
  // Drop round-off in coefficients far below the polynomial's scale.
  double scale = 0.0;
  for (const auto& c : out.c) scale = std::max(scale, std::abs(c));
  for (auto& c : out.c) {
    if (std::abs(c) < 1e-13 * scale) c = 0.0;
    if (std::abs(c.imag()) < 1e-13 * scale) c = Complex(c.real(), 0.0);
  }
  out.trim();
  return out;
}

}  // namespace qcd
