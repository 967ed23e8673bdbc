#include "qcduality/runner.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <regex>
#include <sstream>

#include "qcduality/spectrum.hpp"

namespace qcd::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---- parsing ----

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw parse_error("config " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& require(const Json& node, const std::string& key, const std::string& path) {
  if (!node.is_object() || !node.contains(key)) fail_at(path + "/" + key, "missing required field");
  return node.at(key);
}

long long parse_integer(const Json& node, const std::string& path) {
  if (!node.is_number_integer()) fail_at(path, "expected an integer");
  return node.get<long long>();
}

double parse_positive(const Json& node, const std::string& path) {
  if (!node.is_number()) fail_at(path, "expected a number");
  const double v = node.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) fail_at(path, "tolerance must be positive");
  return v;
}

std::vector<Rational> parse_rational_list(const Json& node, const std::string& path) {
  if (!node.is_array()) fail_at(path, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(parse_rational(node[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<int> parse_int_list(const Json& node, const std::string& path) {
  if (!node.is_array()) fail_at(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(static_cast<int>(parse_integer(node[i], path + "/" + std::to_string(i))));
  return out;
}

ChainSpec<Rational> parse_chain(const Json& node) {
  const std::string path = "/chain";
  ChainSpec<Rational> spec;
  spec.n = static_cast<int>(parse_integer(require(node, "n", path), path + "/n"));
  spec.N = static_cast<int>(parse_integer(require(node, "N", path), path + "/N"));
  spec.eta = parse_rational(require(node, "eta", path), path + "/eta");
  spec.x = parse_rational_list(require(node, "x", path), path + "/x");
  spec.p = parse_rational_list(require(node, "p", path), path + "/p");
  if (spec.n < 1 || spec.N < 1) fail_at(path, "n and N must be positive");
  if (static_cast<int>(spec.x.size()) != spec.N) fail_at(path + "/x", "expected N inhomogeneities");
  if (static_cast<int>(spec.p.size()) != spec.n) fail_at(path + "/p", "expected n twist values");
  return spec;
}

KricheverData<Rational> parse_krichever(const Json& node) {
  const std::string path = "/krichever";
  KricheverData<Rational> data;
  data.eta = parse_rational(require(node, "eta", path), path + "/eta");
  data.p = parse_rational_list(require(node, "points", path), path + "/points");
  data.M = parse_int_list(require(node, "multiplicities", path), path + "/multiplicities");
  const Json& coefficients = require(node, "coefficients", path);
  if (!coefficients.is_array()) fail_at(path + "/coefficients", "expected an array per point");
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    data.a.push_back(parse_rational_list(coefficients[i], path + "/coefficients/" + std::to_string(i)));
  return data;
}

const std::vector<std::string> kModes{"verify-cbr", "verify-hirota", "spectrum", "duality", "mkp-demo", "solve"};

bool needs_seed(const std::string& mode) { return mode != "verify-cbr" && mode != "verify-hirota"; }

// ---- report assembly ----

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json complex_list(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(complex_json(z));
  return out;
}

Json rational_list(const std::vector<Rational>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(format_rational(q));
  return out;
}

// Orders roots by real then imaginary part so reports do not depend on the
// eigen-solver's output order.
std::vector<Complex> sorted(std::vector<Complex> zs) {
  std::sort(zs.begin(), zs.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return zs;
}

double relative(const Complex& a, const Complex& b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

class Recorder {
 public:
  explicit Recorder(std::uint64_t seed) : seed_(seed) {}

  void add(const std::string& name, bool pass, double residual, double elapsed, const std::string& note = {}) {
    Json row;
    row["name"] = name;
    row["status"] = pass ? "PASS" : "FAIL";
    row["residual"] = residual;
    row["elapsed"] = elapsed;
    if (!note.empty()) row["note"] = note;
    if (!pass) row["seed"] = seed_;
    rows_.push_back(std::move(row));
    all_pass_ = all_pass_ && pass;
  }

  // Runs body, timing it; a library error becomes a FAIL row. Budget
  // violations propagate.
  void guarded(const std::string& name, const std::function<void(Recorder&, double start)>& body) {
    const double start = now();
    try {
      body(*this, start);
    } catch (const budget_exceeded&) {
      throw;
    } catch (const error& e) {
      add(name, false, 1.0, now() - start, std::string("error: ") + e.what());
    }
  }

  static double now() {
    using clock = std::chrono::steady_clock;
    static const auto origin = clock::now();
    return std::chrono::duration<double>(clock::now() - origin).count();
  }

  Json take() { return std::move(rows_); }
  bool pass() const { return all_pass_; }

 private:
  std::uint64_t seed_;
  Json rows_ = Json::array();
  bool all_pass_ = true;
};

// ---- modes ----

void verify_cbr(const RunConfig& config, Recorder& rec) {
  TransferFamily<Rational> family(*config.chain);
  const auto& spec = family.spec();
  for (const auto& lambda : partitions_up_to(config.budgets.max_lambda)) {
    if (lambda.empty() || lambda.length() > spec.n + 1) continue;
    rec.guarded("cbr " + to_string(lambda), [&](Recorder& r, double start) {
      const auto report = cbr_verify(family, lambda, config.budgets.max_lambda);
      std::string failed;
      for (const auto& [name, ok] : report.checks)
        if (!ok) failed += (failed.empty() ? "" : "; ") + name;
      r.add("cbr " + to_string(lambda), report.pass, report.residual, Recorder::now() - start,
            failed.empty() ? report.note : failed);
    });
  }
  rec.guarded("quantum determinant", [&](Recorder& r, double start) {
    const auto expected =
        OperatorPolynomial<Rational>::scalar(spec.basis().dim, spec.twist_det() * spec.phi().shifted(spec.eta));
    const bool ok = family.column(spec.n) == expected;
    r.add("quantum determinant", ok, ok ? 0.0 : 1.0, Recorder::now() - start);
  });
}

void verify_hirota(const RunConfig& config, Recorder& rec) {
  TransferFamily<Rational> family(*config.chain);
  rec.guarded("hirota three-term", [&](Recorder& r, double start) {
    const auto report = hirota_3term_verify(family);
    r.add("hirota three-term", report.pass, report.residual, Recorder::now() - start, report.note);
  });
}

SpectrumOptions spectrum_options(std::uint64_t seed, int threads) {
  SpectrumOptions options;
  options.seed = seed;
  options.threads = threads;
  return options;
}

Json state_json(const SpectralRecord& record) {
  Json state;
  state["state"] = record.state;
  state["sector"] = record.weights;
  state["H"] = complex_list(record.H);
  state["collision"] = record.collision;
  return state;
}

void spectrum_mode(const RunConfig& config, std::uint64_t seed, int threads, Recorder& rec, Json& states,
                   bool duality) {
  const auto& spec_q = *config.chain;
  const auto spec = to_complex(spec_q);
  std::vector<SpectralRecord> records;
  rec.guarded("joint spectrum", [&](Recorder& r, double start) {
    records = joint_spectrum(spec, spectrum_options(seed, threads));
    const bool complete = records.size() == spec.basis().dim;
    r.add("joint spectrum", complete, complete ? 0.0 : 1.0, Recorder::now() - start,
          std::to_string(records.size()) + " states");
  });
  std::optional<TransferFamily<Rational>> family;
  if (duality && config.bethe_roots) family.emplace(spec_q);
  for (const auto& record : records) {
    Json state = state_json(record);
    const std::string tag = " state " + std::to_string(record.state);
    const double start = Recorder::now();
    rec.add("pole expansion" + tag, record.residual < config.tolerances.spectral, record.residual,
            Recorder::now() - start);
    state["pole_residual"] = record.residual;
    if (duality) {
      rec.guarded("duality" + tag, [&](Recorder& r, double t0) {
        const auto report = duality_verify(spec, record, config.tolerances.spectral);
        state["duality_residual"] = report.residual;
        r.add("duality" + tag, report.pass, report.residual, Recorder::now() - t0);
      });
      if (family && !record.collision) {
        rec.guarded("bethe" + tag, [&](Recorder& r, double t0) {
          const auto bethe = state_bethe(*family, record);
          Json roots = Json::array();
          for (std::size_t m = 1; m + 1 < bethe.roots.size(); ++m) roots.push_back(complex_list(sorted(bethe.roots[m])));
          state["bethe_roots"] = roots;
          state["bethe_residual"] = bethe.worst();
          const bool ok = bethe.worst() < config.tolerances.bethe && bethe.kernel_dim == 1 &&
                          bethe.q1_degree == record.weights[0];
          r.add("bethe" + tag, ok, bethe.worst(), Recorder::now() - t0);
        });
      } else if (family) {
        state["bethe_note"] = "lambda shared with another state; roots not computed";
      }
    }
    states.push_back(std::move(state));
  }
}

void all_sectors(int n, int remaining, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int m = remaining; m >= 0; --m) {
    prefix.push_back(m);
    all_sectors(n, remaining - m, prefix, out);
    prefix.pop_back();
  }
}

void solve_mode(const RunConfig& config, std::uint64_t seed, int threads, Recorder& rec, Json& states) {
  const auto spec = to_complex(*config.chain);
  auto sectors = config.sectors;
  if (sectors.empty()) {
    std::vector<int> prefix;
    all_sectors(spec.n, spec.N, prefix, sectors);
  }
  rec.guarded("calibration", [&](Recorder& r, double start) {
    calibrate_spectral_equations();
    r.add("calibration", true, 0.0, Recorder::now() - start);
  });
  std::vector<SpectralRecord> brute;
  const bool cross = config.cross_validate && spec.basis().dim <= config.budgets.brute_force_dimension;
  if (config.cross_validate && !cross)
    rec.add("cross-validation skipped", true, 0.0, 0.0, "n^N exceeds the brute-force budget");
  if (cross) brute = joint_spectrum(spec, spectrum_options(seed, threads));

  std::size_t total = 0;
  for (const auto& M : sectors) {
    std::string label = "(";
    for (std::size_t a = 0; a < M.size(); ++a) label += (a ? "," : "") + std::to_string(M[a]);
    label += ")";
    rec.guarded("solve M=" + label, [&](Recorder& r, double start) {
      SpectrumTarget target{spec.p, M};
      SolveOptions options;
      options.tolerance = config.tolerances.spectral;
      options.dedupe = config.tolerances.spectral;
      const auto result = solve_spectrum(spec, target, options);
      total += result.solutions.size();
      double worst = 0.0;
      for (std::size_t k = 0; k < result.solutions.size(); ++k) {
        Json state;
        state["sector"] = M;
        state["H"] = complex_list(result.solutions[k]);
        state["duality_residual"] = result.residuals[k];
        states.push_back(std::move(state));
        worst = std::max(worst, result.residuals[k]);
      }
      bool ok = worst < config.tolerances.spectral;
      std::string note = std::to_string(result.solutions.size()) + " solutions, " +
                         std::to_string(result.failed()) + " seeds failed";
      if (cross) {
        std::size_t expected = 0;
        double gap = 0.0;
        for (const auto& record : brute) {
          if (record.weights != M) continue;
          ++expected;
          double best = std::numeric_limits<double>::infinity();
          for (const auto& H : result.solutions) {
            double d = 0.0;
            for (int i = 0; i < spec.N; ++i) d = std::max(d, relative(H[i], record.H[i]));
            best = std::min(best, d);
          }
          gap = std::max(gap, best);
        }
        ok = ok && expected == result.solutions.size() && gap < config.tolerances.spectral;
        worst = std::max(worst, gap);
        note += ", brute force " + std::to_string(expected);
      }
      r.add("solve M=" + label, ok, worst, Recorder::now() - start, note);
    });
  }
  if (cross && config.sectors.empty())
    rec.add("solution count", total == brute.size(), total == brute.size() ? 0.0 : 1.0, 0.0,
            std::to_string(total) + " of " + std::to_string(brute.size()));
}

void mkp_mode(const RunConfig& config, std::uint64_t seed, Recorder& rec, Json& chain_json) {
  const auto& data = *config.krichever;
  data.validate();
  const Times<Rational> times(config.times);
  const auto data_c = to_complex(data);
  const auto times_c = to_complex(times);

  rec.guarded("krichever conditions", [&](Recorder& r, double start) {
    std::size_t nonzero = 0;
    for (const auto& x : config.samples)
      for (const auto& v : krichever_residuals(data, x, times)) nonzero += is_zero(v) ? 0 : 1;
    r.add("krichever conditions", nonzero == 0, static_cast<double>(nonzero), Recorder::now() - start);
  });
  rec.guarded("wave determinant against tau ratio", [&](Recorder& r, double start) {
    double worst = 0.0;
    for (Complex x : {Complex(0.3, 0.2), Complex(-0.8, 0.5)})
      for (Complex z : {Complex(1.7, 0.4), Complex(-0.6, 2.1), Complex(4.0, -1.0)}) {
        worst = std::max(worst, relative(wave_det(data_c, x, times_c, z), wave_ba(data_c, x, times_c, z)));
        worst = std::max(worst, relative(adjoint_wave_det(data_c, x, times_c, z),
                                         adjoint_wave_ba(data_c, x, times_c, z)));
      }
    r.add("wave determinant against tau ratio", worst < config.tolerances.wave, worst, Recorder::now() - start);
  });
  rec.guarded("undressing chain", [&](Recorder& r, double start) {
    const auto chain = undress_chain(data, times);
    const auto& bottom = chain.levels[0];
    const bool ok = bottom.poly == Poly<Rational>::constant(Rational(1)) && bottom.base == 1 && bottom.log_scale == 0;
    chain_json["depth"] = data.n();
    chain_json["points"] = rational_list(data.p);
    chain_json["degrees"] = chain.degrees;
    r.add("undressing chain reaches tau^(0) = 1", ok, ok ? 0.0 : 1.0, Recorder::now() - start);
    const double t1 = Recorder::now();
    const auto W = wave_operator(chain);
    r.add("wave operator factorization", W.agree, W.agree ? 0.0 : 1.0, Recorder::now() - t1);
  });
  rec.guarded("kernel", [&](Recorder& r, double start) {
    const auto report = kernel_check(data, times, seed);
    const double elapsed = Recorder::now() - start;
    for (const auto& row : report.rows) r.add("kernel: " + row.name, row.pass, row.residual, elapsed);
  });
  rec.guarded("bethe equations", [&](Recorder& r, double start) {
    const auto levels = q_functions(undress_chain(data, Times<Rational>()));
    std::vector<QuasiPolynomial<Complex>> Q;
    Json roots = Json::array();
    for (const auto& level : levels) {
      Q.push_back(to_complex(level));
      roots.push_back(complex_list(level.poly.degree() > 0 ? sorted(qcd::roots(level.poly)) : std::vector<Complex>{}));
    }
    chain_json["q_roots"] = roots;
    const auto bethe = bethe_verify(Q, data_c.p, data_c.eta);
    const double worst = std::max(bethe.max_ratio, bethe.max_product);
    r.add("bethe equations", worst < config.tolerances.bethe, worst, Recorder::now() - start,
          std::to_string(bethe.rows.size()) + " roots");
  });
  rec.guarded("dressing recurrence", [&](Recorder& r, double start) {
    const auto report = dressing_recurrence_check(data_c, times_c, Complex(0.33, 0.21), Complex(2.2, -0.9),
                                                  config.tolerances.krichever);
    const double elapsed = Recorder::now() - start;
    for (const auto& row : report.rows) r.add("dressing: " + row.name, row.pass, row.residual, elapsed);
  });
}

}  // namespace

Rational parse_rational(const Json& node, const std::string& path) {
  if (node.is_number_integer()) return Rational(node.get<long>());
  if (!node.is_string()) fail_at(path, "expected a rational as \"a/b\" or an integer");
  const std::string text = node.get<std::string>();
  static const std::regex form(R"(^\s*([+-]?[0-9]+)\s*(?:/\s*([0-9]+)\s*)?$)");
  std::smatch match;
  if (!std::regex_match(text, match, form)) {
    std::size_t bad = 0;
    while (bad < text.size() && (std::isdigit(static_cast<unsigned char>(text[bad])) || text[bad] == '/' ||
                                 text[bad] == '-' || text[bad] == '+' || text[bad] == ' '))
      ++bad;
    fail_at(path, "malformed rational \"" + text + "\" at character " + std::to_string(bad));
  }
  Rational out;
  out.get_num() = mpz_class(match[1].str());
  if (match[2].matched) {
    mpz_class den(match[2].str());
    if (den == 0)
      fail_at(path, "zero denominator in \"" + text + "\" at character " + std::to_string(match.position(2)));
    out.get_den() = den;
  }
  out.canonicalize();
  return out;
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

RunConfig parse_config(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw parse_error("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + e.what());
  }
  if (!root.is_object()) fail_at("", "expected an object");

  RunConfig config;
  config.source = root;
  const Json& mode = require(root, "mode", "");
  if (!mode.is_string() || std::find(kModes.begin(), kModes.end(), mode.get<std::string>()) == kModes.end())
    fail_at("/mode", "unknown mode");
  config.mode = mode.get<std::string>();

  if (root.contains("seed")) {
    const Json& seed = root["seed"];
    if (!seed.is_number_unsigned()) fail_at("/seed", "expected a non-negative integer");
    config.seed = seed.get<std::uint64_t>();
  }
  if (root.contains("report")) {
    if (!root["report"].is_string()) fail_at("/report", "expected a path");
    config.report_path = root["report"].get<std::string>();
  }
  if (root.contains("budgets")) {
    const Json& b = root["budgets"];
    if (b.contains("max_lambda"))
      config.budgets.max_lambda = static_cast<int>(parse_integer(b["max_lambda"], "/budgets/max_lambda"));
    if (b.contains("max_dimension"))
      config.budgets.max_dimension = static_cast<std::size_t>(parse_integer(b["max_dimension"], "/budgets/max_dimension"));
    if (b.contains("brute_force_dimension"))
      config.budgets.brute_force_dimension =
          static_cast<std::size_t>(parse_integer(b["brute_force_dimension"], "/budgets/brute_force_dimension"));
    if (config.budgets.max_lambda < 0) fail_at("/budgets/max_lambda", "must be non-negative");
  }
  if (root.contains("tolerances")) {
    const Json& t = root["tolerances"];
    if (t.contains("spectral")) config.tolerances.spectral = parse_positive(t["spectral"], "/tolerances/spectral");
    if (t.contains("bethe")) config.tolerances.bethe = parse_positive(t["bethe"], "/tolerances/bethe");
    if (t.contains("krichever")) config.tolerances.krichever = parse_positive(t["krichever"], "/tolerances/krichever");
    if (t.contains("wave")) config.tolerances.wave = parse_positive(t["wave"], "/tolerances/wave");
  }

  if (config.mode == "mkp-demo") {
    config.krichever = parse_krichever(require(root, "krichever", ""));
    if (root.contains("times")) config.times = parse_rational_list(root["times"], "/times");
    config.samples = root.contains("samples") ? parse_rational_list(root["samples"], "/samples")
                                              : std::vector<Rational>{Rational(1, 7), Rational(-5, 3), Rational(2)};
    try {
      config.krichever->validate();
    } catch (const budget_exceeded&) {
      throw;
    } catch (const error& e) {
      fail_at("/krichever", e.what());
    }
  } else {
    config.chain = parse_chain(require(root, "chain", ""));
  }

  if (config.mode == "solve") {
    if (root.contains("sectors")) {
      const Json& sectors = root["sectors"];
      if (!(sectors.is_string() && sectors.get<std::string>() == "all")) {
        if (!sectors.is_array()) fail_at("/sectors", "expected \"all\" or a list of multiplicity vectors");
        for (std::size_t k = 0; k < sectors.size(); ++k) {
          const std::string path = "/sectors/" + std::to_string(k);
          auto M = parse_int_list(sectors[k], path);
          if (static_cast<int>(M.size()) != config.chain->n) fail_at(path, "expected n multiplicities");
          int total = 0;
          for (int m : M) {
            if (m < 0) fail_at(path, "multiplicities must be non-negative");
            total += m;
          }
          if (total != config.chain->N)
            fail_at(path, "multiplicities sum to " + std::to_string(total) + ", expected N = " +
                              std::to_string(config.chain->N));
          config.sectors.push_back(std::move(M));
        }
      }
    }
    if (root.contains("cross_validate")) {
      if (!root["cross_validate"].is_boolean()) fail_at("/cross_validate", "expected a boolean");
      config.cross_validate = root["cross_validate"].get<bool>();
    }
  }
  if (root.contains("bethe_roots")) {
    if (!root["bethe_roots"].is_boolean()) fail_at("/bethe_roots", "expected a boolean");
    config.bethe_roots = root["bethe_roots"].get<bool>();
  }
  return config;
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  const std::optional<std::uint64_t> seed = options.seed ? options.seed : config.seed;
  if (needs_seed(config.mode) && !seed) throw parse_error("config /seed: required for mode " + config.mode);
  const std::uint64_t effective_seed = seed.value_or(0);

  RunResult result;
  Json echo = config.source;
  if (seed) echo["seed"] = effective_seed;
  result.report["schema"] = kSchemaVersion;
  result.report["artifact"] = kArtifactVersion;
  result.report["config"] = echo;

  Recorder rec(effective_seed);
  Json states = Json::array();
  Json chain_json = Json::object();
  try {
    if (config.budgets.max_lambda > kMaxLambdaBudget)
      throw budget_exceeded("max_lambda " + std::to_string(config.budgets.max_lambda) + " exceeds the limit " +
                            std::to_string(kMaxLambdaBudget));
    if (config.budgets.max_dimension > kMaxDimension)
      throw budget_exceeded("max_dimension exceeds the limit " + std::to_string(kMaxDimension));
    if (config.chain) {
      std::size_t dim = 1;
      for (int i = 0; i < config.chain->N && dim <= config.budgets.max_dimension; ++i) dim *= config.chain->n;
      if (dim > config.budgets.max_dimension)
        throw budget_exceeded("n^N exceeds max_dimension " + std::to_string(config.budgets.max_dimension));
      try {
        config.chain->validate();
      } catch (const budget_exceeded&) {
        throw;
      } catch (const error& e) {
        throw parse_error(std::string("config /chain: ") + e.what());
      }
    }
    if (config.mode == "verify-cbr") verify_cbr(config, rec);
    if (config.mode == "verify-hirota") verify_hirota(config, rec);
    if (config.mode == "spectrum") spectrum_mode(config, effective_seed, options.threads, rec, states, false);
    if (config.mode == "duality") spectrum_mode(config, effective_seed, options.threads, rec, states, true);
    if (config.mode == "solve") solve_mode(config, effective_seed, options.threads, rec, states);
    if (config.mode == "mkp-demo") mkp_mode(config, effective_seed, rec, chain_json);
  } catch (const budget_exceeded& e) {
    result.report["checks"] = rec.take();
    result.report["budget_violation"] = e.what();
    result.report["status"] = "BUDGET";
    result.exit_code = kBudgetExceeded;
    return result;
  }
  const bool pass = rec.pass();
  result.report["checks"] = rec.take();
  if (!states.empty()) result.report["states"] = states;
  if (!chain_json.empty()) result.report["chain"] = chain_json;
  result.report["status"] = pass ? "PASS" : "FAIL";
  result.exit_code = pass ? kPass : kCheckFailed;
  return result;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Quantum spin chains, mKP tau-functions and the quantum-classical duality"};
  app.require_subcommand(1);
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline described by a config file");
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  run_cmd->add_option("config", config_path, "Config file (JSON)")->required();
  run_cmd->add_option("--out", out_path, "Report path (default: config 'report' field, else stdout)");
  run_cmd->add_option("--seed", seed, "Seed overriding the config seed");
  run_cmd->add_option("--threads", threads, "Worker threads for the joint spectrum")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParseError;
  }

  RunResult result;
  RunConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw parse_error("cannot open config " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = parse_config(buffer.str());
    result = run(config, RunOptions{seed, threads});
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return kParseError;
  }

  const std::string path = out_path.empty() ? config.report_path : out_path;
  const std::string text = result.report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write report " << path << "\n";
      return kParseError;
    }
    out << text;
  }
  std::cerr << "status " << result.report["status"].get<std::string>() << ", exit " << result.exit_code << "\n";
  return result.exit_code;
}

}  // namespace qcd::cli
