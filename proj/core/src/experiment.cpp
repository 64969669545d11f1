#include "wiretap/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "wiretap/channel.hpp"
#include "wiretap/parallel.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

namespace {

// Stream salt for the random-selection baseline, so its draws are decoupled
// from the channel draws and from the set of requested methods.
constexpr std::uint64_t kRandomStreamSalt = 0x52414E44ULL;

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid integer '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size() || value.front() == '-') throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid unsigned integer '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid number '" + value + "'");
  }
}

std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct Sample {
  double rate = 0.0;
  double selected = 0.0;
  double power = 0.0;
};

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::exhaustive: return "exhaustive";
    case Method::random_subset: return "random";
    case Method::stepwise_no_stc: return "stepwise_no_stc";
    case Method::stepwise_stc: return "stepwise_stc";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "exhaustive") return Method::exhaustive;
  if (name == "random") return Method::random_subset;
  if (name == "stepwise_no_stc") return Method::stepwise_no_stc;
  if (name == "stepwise_stc") return Method::stepwise_stc;
  throw ConfigError("methods: unknown method '" + name + "'");
}

void ExperimentConfig::validate() const {
  params.validate();
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (lmax_sweep.empty()) throw ConfigError("lmax_sweep: must list at least one value");
  for (int l : lmax_sweep) {
    if (l < 1 || l > params.m_antennas) {
      throw ConfigError("lmax_sweep: value " + std::to_string(l) + " outside [1, m]");
    }
  }
  if (methods.empty()) throw ConfigError("methods: must list at least one method");
  if (selector.power_grid_points < 2) throw ConfigError("power_grid_points: must be >= 2");
  if (!(selector.power_refine_tol > 0.0)) throw ConfigError("power_refine_tol: must be > 0");
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    for (const auto& [k, v] : entries) {
      if (k == key) throw ConfigError("duplicate key '" + key + "'");
    }
    entries.emplace_back(key, value);
  }

  ExperimentConfig config;
  bool have_m = false, have_k = false, have_n = false;
  bool have_sweep = false, have_methods = false;
  std::string weights_value = "uniform";

  for (const auto& [key, value] : entries) {
    if (key == "m") {
      config.params.m_antennas = static_cast<int>(parse_int(key, value));
      have_m = true;
    } else if (key == "k") {
      config.params.k_users = static_cast<int>(parse_int(key, value));
      have_k = true;
    } else if (key == "n") {
      config.params.n_eve = static_cast<int>(parse_int(key, value));
      have_n = true;
    } else if (key == "p_max") {
      config.params.p_max = parse_double(key, value);
    } else if (key == "sigma2_main") {
      config.params.sigma2_main = parse_double(key, value);
    } else if (key == "sigma2_eve") {
      config.params.sigma2_eve = parse_double(key, value);
    } else if (key == "trials") {
      config.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "lmax_sweep") {
      for (const std::string& item : split_list(value)) {
        config.lmax_sweep.push_back(static_cast<int>(parse_int(key, item)));
      }
      have_sweep = true;
    } else if (key == "methods") {
      for (const std::string& item : split_list(value)) {
        config.methods.push_back(parse_method(item));
      }
      have_methods = true;
    } else if (key == "weights") {
      weights_value = value;
    } else if (key == "out") {
      config.output_path = value;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (!have_m) throw ConfigError("m: missing required key");
  if (!have_k) throw ConfigError("k: missing required key");
  if (!have_n) throw ConfigError("n: missing required key");
  if (!have_sweep) throw ConfigError("lmax_sweep: missing required key");
  if (!have_methods) throw ConfigError("methods: missing required key");

  std::sort(config.lmax_sweep.begin(), config.lmax_sweep.end());
  config.lmax_sweep.erase(
      std::unique(config.lmax_sweep.begin(), config.lmax_sweep.end()),
      config.lmax_sweep.end());
  std::sort(config.methods.begin(), config.methods.end());
  config.methods.erase(std::unique(config.methods.begin(), config.methods.end()),
                       config.methods.end());

  if (weights_value == "uniform") {
    if (config.params.k_users >= 1) {
      config.params.weights = SystemParams::uniform_weights(config.params.k_users);
    }
  } else {
    const std::vector<std::string> items = split_list(weights_value);
    config.params.weights = RealVector(static_cast<Eigen::Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) {
      config.params.weights[static_cast<Eigen::Index>(i)] = parse_double("weights", items[i]);
    }
  }

  if (!config.lmax_sweep.empty()) config.params.l_max = config.lmax_sweep.back();
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const SystemParams& base = config.params;

  // Fail fast on oversized exhaustive cells before any trial work starts.
  for (Method method : config.methods) {
    if (method != Method::exhaustive) continue;
    for (int l : config.lmax_sweep) {
      if (exhaustive_subset_count(base.m_antennas, l) > kExhaustiveSubsetBudget) {
        throw CombinatorialGuardError(
            "exhaustive: subset count for l_max=" + std::to_string(l) +
            " exceeds budget of " + std::to_string(kExhaustiveSubsetBudget));
      }
    }
  }

  // Cell layout in final CSV order: method name ascending, then l_max.
  std::vector<std::pair<Method, int>> layout;
  {
    std::vector<Method> methods = config.methods;
    std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
      return std::string(method_name(a)) < std::string(method_name(b));
    });
    for (Method method : methods) {
      for (int l : config.lmax_sweep) layout.emplace_back(method, l);
    }
  }
  const std::size_t n_cells = layout.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  // Every trial writes only into its own preallocated slot; together with the
  // sequential reduction below this makes the output independent of the
  // worker-thread count.
  std::vector<std::vector<Sample>> per_trial(n_trials, std::vector<Sample>(n_cells));
  parallel_for(n_trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = substream_seed(config.master_seed, t);
    Rng rng(trial_seed);
    ChannelPair channels;
    channels.h_main = generate_rayleigh(base.m_antennas, base.k_users, rng);
    channels.g_eve = generate_rayleigh(base.m_antennas, base.n_eve, rng);

    for (std::size_t c = 0; c < n_cells; ++c) {
      const auto [method, l] = layout[c];
      SystemParams params = base;
      params.l_max = l;
      RunTrace trace;
      switch (method) {
        case Method::exhaustive:
          trace = run_exhaustive(channels, params, config.selector);
          break;
        case Method::random_subset: {
          Rng subset_rng(substream_seed(trial_seed ^ kRandomStreamSalt,
                                        static_cast<std::uint64_t>(l)));
          trace = run_random(channels, params, l, subset_rng, config.selector);
          break;
        }
        case Method::stepwise_no_stc: {
          SelectorConfig selector = config.selector;
          selector.enforce_stc = false;
          trace = run_stepwise(channels, params, selector);
          break;
        }
        case Method::stepwise_stc: {
          SelectorConfig selector = config.selector;
          selector.enforce_stc = true;
          trace = run_stepwise(channels, params, selector);
          break;
        }
      }
      per_trial[t][c] = {trace.report.weighted_avg,
                         static_cast<double>(trace.report.selection.size()),
                         trace.report.power};
    }
  });

  ExperimentResult result;
  result.cells.resize(n_cells);
  if (config.keep_samples) result.samples.resize(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    CellStats& cell = result.cells[c];
    cell.method = layout[c].first;
    cell.l_max = layout[c].second;
    cell.trials = config.trials;

    double sum_rate = 0.0, sum_sel = 0.0, sum_pow = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
      sum_rate += per_trial[t][c].rate;
      sum_sel += per_trial[t][c].selected;
      sum_pow += per_trial[t][c].power;
    }
    const double n = static_cast<double>(n_trials);
    cell.mean_rate_bits = sum_rate / n;
    cell.mean_selected_l = sum_sel / n;
    cell.mean_power = sum_pow / n;

    if (n_trials > 1) {
      double ssd = 0.0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const double d = per_trial[t][c].rate - cell.mean_rate_bits;
        ssd += d * d;
      }
      cell.stderr_bits = std::sqrt(ssd / (n - 1.0)) / std::sqrt(n);
    } else {
      cell.stderr_bits = 0.0;
    }

    if (config.keep_samples) {
      result.samples[c].reserve(n_trials);
      for (std::size_t t = 0; t < n_trials; ++t) {
        result.samples[c].push_back(per_trial[t][c].rate);
      }
    }
  }
  return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result) {
  os << "method,l_max,mean_rate_bits,stderr_bits,mean_selected_l,mean_power,trials\n";
  for (const CellStats& cell : result.cells) {
    os << method_name(cell.method) << ',' << cell.l_max << ','
       << format_g9(cell.mean_rate_bits) << ',' << format_g9(cell.stderr_bits) << ','
       << format_g9(cell.mean_selected_l) << ',' << format_g9(cell.mean_power) << ','
       << cell.trials << '\n';
  }
}

void write_csv_file(const std::string& path, const ExperimentResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("out: cannot open '" + path + "' for writing");
  write_csv(out, result);
  out.flush();
  if (!out) throw ConfigError("out: write to '" + path + "' failed");
}

}  // namespace wiretap
