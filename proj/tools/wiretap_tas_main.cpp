#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wiretap/channel.hpp"
#include "wiretap/experiment.hpp"
#include "wiretap/selftest.hpp"
#include "wiretap/types.hpp"

namespace {

struct RunOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
};

struct SingleOptions {
  int m = 0;
  int k = 0;
  int n = 0;
  int lmax = 0;
  double pmax = 1.0;
  double sigma2 = 0.1;
  std::uint64_t seed = 0;
  bool no_stc = false;
};

int do_run(const RunOptions& opts, const CLI::App& cmd) {
  wiretap::ExperimentConfig config = wiretap::parse_config_file(opts.config_path);
  if (cmd.count("--seed") > 0) config.master_seed = opts.seed;
  if (cmd.count("--trials") > 0) config.trials = opts.trials;
  if (cmd.count("--out") > 0) config.output_path = opts.out;
  config.validate();

  const wiretap::ExperimentResult result = wiretap::run_experiment(config);
  wiretap::write_csv_file(config.output_path, result);
  std::cout << "wrote " << result.cells.size() << " rows (" << config.trials
            << " trials each) to " << config.output_path << "\n";
  return 0;
}

int do_single(const SingleOptions& opts) {
  wiretap::SystemParams params;
  params.m_antennas = opts.m;
  params.k_users = opts.k;
  params.n_eve = opts.n;
  params.l_max = opts.lmax;
  params.p_max = opts.pmax;
  params.sigma2_main = opts.sigma2;
  params.sigma2_eve = opts.sigma2;
  if (opts.k >= 1) params.weights = wiretap::SystemParams::uniform_weights(opts.k);
  params.validate();

  wiretap::Rng rng(opts.seed);
  wiretap::ChannelPair channels;
  channels.h_main = wiretap::generate_rayleigh(opts.m, opts.k, rng);
  channels.g_eve = wiretap::generate_rayleigh(opts.m, opts.n, rng);

  wiretap::SelectorConfig selector;
  selector.enforce_stc = !opts.no_stc;
  const wiretap::RunTrace trace = wiretap::run_stepwise(channels, params, selector);
  std::cout << wiretap::format_step_log(trace);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy transmit antenna selection with power control for the MIMO wiretap channel"};
  app.require_subcommand(1);

  RunOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "Run a Monte-Carlo experiment from a config file");
  run->add_option("--config", run_opts.config_path, "key=value config file")->required();
  run->add_option("--seed", run_opts.seed, "override the master seed");
  run->add_option("--trials", run_opts.trials, "override the trial count");
  run->add_option("--out", run_opts.out, "override the output CSV path");

  SingleOptions single_opts;
  CLI::App* single = app.add_subcommand(
      "single", "Run one seeded realization and print the selection step log");
  single->add_option("--m", single_opts.m, "transmit antennas")->required();
  single->add_option("--k", single_opts.k, "users")->required();
  single->add_option("--n", single_opts.n, "eavesdropper antennas")->required();
  single->add_option("--lmax", single_opts.lmax, "RF-chain budget")->required();
  single->add_option("--pmax", single_opts.pmax, "power budget (linear), default 1");
  single->add_option("--sigma2", single_opts.sigma2,
                     "noise power at users and eavesdropper, default 0.1");
  single->add_option("--seed", single_opts.seed, "channel seed, default 0");
  single->add_flag("--no-stc", single_opts.no_stc, "disable the stopping criterion");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the built-in consistency battery and report pass/fail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(run_opts, *run);
    if (single->parsed()) return do_single(single_opts);
    if (selftest->parsed()) return wiretap::run_selftest(std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
