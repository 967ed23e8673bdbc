#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qcduality/duality.hpp"
#include "qcduality/mkp.hpp"
#include "qcduality/quantum.hpp"

namespace qcd::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "qcduality 1.0.0";
// Largest |lambda| a config may request for the determinant identities.
inline constexpr int kMaxLambdaBudget = 6;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kParseError = 2, kBudgetExceeded = 3 };

struct Tolerances {
  double spectral = 1e-8;  // duality, pole expansion, solver matching
  double bethe = 1e-9;     // TQ, Bethe and eigenvalue formula residuals
  double krichever = 1e-10;
  double wave = 1e-12;  // determinant against tau-ratio wave function
};

struct Budgets {
  int max_lambda = 4;
  std::size_t max_dimension = kMaxDimension;
  // Brute-force cross-validation of the solver runs only up to this n^N.
  std::size_t brute_force_dimension = 256;
};

struct RunConfig {
  std::string mode;  // verify-cbr | verify-hirota | spectrum | duality | mkp-demo | solve
  nlohmann::ordered_json source;
  std::optional<ChainSpec<Rational>> chain;
  std::optional<KricheverData<Rational>> krichever;
  std::vector<Rational> times;         // t_1..t_K for mkp-demo
  std::vector<Rational> samples;       // exact x sample points for mkp-demo
  std::vector<std::vector<int>> sectors;  // solve targets; empty means every sector
  bool cross_validate = false;
  bool bethe_roots = true;  // duality mode: also run the Bethe pipeline
  Budgets budgets;
  Tolerances tolerances;
  std::optional<std::uint64_t> seed;
  std::string report_path;
};

// Throws parse_error naming the JSON path (and character offset for
// malformed rationals or JSON syntax).
RunConfig parse_config(const std::string& text);

// "a/b", "a" or a JSON integer; path is used in diagnostics.
Rational parse_rational(const nlohmann::ordered_json& node, const std::string& path);
std::string format_rational(const Rational& q);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int threads = 1;
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = kPass;
};

// Budget violations yield kBudgetExceeded with the violation recorded in the
// report; failing checks yield kCheckFailed.
RunResult run(const RunConfig& config, const RunOptions& options);

// Full command line: run <config> [--out path] [--seed u64] [--threads k].
int main_entry(int argc, char** argv);

}  // namespace qcd::cli
