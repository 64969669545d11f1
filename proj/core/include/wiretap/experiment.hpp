#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wiretap/selector.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

enum class Method {
  exhaustive,
  random_subset,
  stepwise_no_stc,
  stepwise_stc,
};

/// Stable method name as used in config files and the CSV output.
const char* method_name(Method method);

/// Inverse of method_name. Throws ConfigError on an unknown name.
Method parse_method(const std::string& name);

/// One Monte-Carlo experiment: `trials` i.i.d. channel realizations, each
/// evaluated with every (method, l_max) combination of `methods` x
/// `lmax_sweep`. params.l_max is overridden per sweep point.
struct ExperimentConfig {
  SystemParams params;
  int trials = 1000;
  std::uint64_t master_seed = 0;
  std::vector<int> lmax_sweep;
  std::vector<Method> methods;
  std::string output_path = "results.csv";
  SelectorConfig selector;
  bool keep_samples = false;  // retain per-trial rates (tests only, not a config key)

  void validate() const;
};

/// Aggregates of one (method, l_max) sweep cell across all trials.
struct CellStats {
  Method method = Method::stepwise_stc;
  int l_max = 0;
  double mean_rate_bits = 0.0;
  double stderr_bits = 0.0;
  double mean_selected_l = 0.0;
  double mean_power = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  /// Sorted by (method name, l_max), matching the CSV row order.
  std::vector<CellStats> cells;
  /// Per-cell rate samples in trial order; filled only with keep_samples.
  std::vector<std::vector<double>> samples;
};

/// Parses a flat key=value config ('#' starts a comment). Recognized keys:
///   m, k, n, p_max, sigma2_main, sigma2_eve, trials, seed,
///   lmax_sweep, methods, weights, out
/// m, k, n, lmax_sweep and methods are required; weights defaults to uniform.
/// Throws ConfigError naming the offending key or line.
ExperimentConfig parse_config_text(const std::string& text);

/// parse_config_text applied to the contents of a file.
ExperimentConfig parse_config_file(const std::string& path);

/// Runs all trials (parallel across trials, deterministic aggregation):
/// trial t draws H then G from Rng(substream_seed(master_seed, t)); the
/// random-selection baseline uses a further substream per (trial, l_max), so
/// every cell's result is independent of which other cells are requested.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV with header
///   method,l_max,mean_rate_bits,stderr_bits,mean_selected_l,mean_power,trials
/// one row per cell, floats with 9 significant digits.
void write_csv(std::ostream& os, const ExperimentResult& result);

/// write_csv into a file; throws ConfigError if the path cannot be opened.
void write_csv_file(const std::string& path, const ExperimentResult& result);

}  // namespace wiretap
