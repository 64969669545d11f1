#include "wiretap/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/experiment.hpp"
#include "wiretap/metrics.hpp"
#include "wiretap/selector.hpp"
#include "wiretap/stepwise.hpp"

namespace wiretap {

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

ChannelPair random_channels(int m, int k, int n, Rng& rng) {
  ChannelPair ch;
  ch.h_main = generate_rayleigh(m, k, rng);
  ch.g_eve = generate_rayleigh(m, n, rng);
  return ch;
}

std::vector<int> random_selection(int m, int size, Rng& rng) {
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  for (int i = 0; i < size; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m - i)));
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

SystemParams make_params(int m, int k, int n, int l_max) {
  SystemParams params;
  params.m_antennas = m;
  params.k_users = k;
  params.n_eve = n;
  params.l_max = l_max;
  params.weights = SystemParams::uniform_weights(k);
  return params;
}

bool check_growth_identities(std::ostream& os) {
  Rng rng(0xB10C5EEDULL);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + static_cast<int>(rng.uniform_int(8));
    const int k = 1 + static_cast<int>(rng.uniform_int(4));
    const int n = 1 + static_cast<int>(rng.uniform_int(4));
    const int ell = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m - 1)));
    const SystemParams params = make_params(m, k, n, m);
    auto channels = std::make_shared<const ChannelPair>(random_channels(m, k, n, rng));
    const std::vector<int> selection = random_selection(m, ell, rng);
    const double p = 0.05 + 0.95 * rng.uniform();

    const SelectionState state = rebuild_state(channels, selection, p);
    int candidate = -1;
    for (int i = 0; i < m; ++i) {
      if (!state.contains(i)) {
        candidate = i;
        break;
      }
    }
    const GrowthEval ev = eval_candidate(state, candidate, p, params);

    std::vector<int> extended = selection;
    extended.push_back(candidate);
    const SelectionState next = rebuild_state(channels, extended, p);

    for (int u = 0; u < k; ++u) {
      const double theta_main_ref =
          (1.0 + sinr_main(next.terms, p, params.sigma2_main, u)) /
          (1.0 + sinr_main(state.terms, p, params.sigma2_main, u));
      const double theta_eve_ref =
          (1.0 + sinr_eve(next.terms, p, params.sigma2_eve, u)) /
          (1.0 + sinr_eve(state.terms, p, params.sigma2_eve, u));
      worst = std::max(worst, rel_err(ev.theta_main[u], theta_main_ref));
      worst = std::max(worst, rel_err(ev.theta_eve[u], theta_eve_ref));
    }
    const double growth_ref = unclipped_weighted_rate(next.terms, p, params) -
                              unclipped_weighted_rate(state.terms, p, params);
    worst = std::max(worst, rel_err(ev.growth, growth_ref));
  }
  const bool ok = worst < 1e-9;
  os << "selftest: growth identities vs direct recomputation  max rel err " << worst
     << "  " << (ok ? "ok" : "FAIL") << "\n";
  return ok;
}

bool check_incremental_chain(std::ostream& os) {
  Rng rng(0xCAFE1234ULL);
  const int m = 48, k = 3, n = 4;
  auto channels = std::make_shared<const ChannelPair>(random_channels(m, k, n, rng));
  SelectionState state = init_state(*channels, 0, 0.7);
  double worst_trace = 0.0;
  for (int i = 1; i < m; ++i) {
    state = extend_state(state, i);
    worst_trace = std::max(worst_trace, std::abs(precoder_trace(state.precoder) - 1.0));
  }
  const double drift = max_cache_drift(state);
  const bool ok = worst_trace < 1e-12 && drift < 1e-9;
  os << "selftest: 47-step incremental chain  trace err " << worst_trace
     << "  cache drift " << drift << "  " << (ok ? "ok" : "FAIL") << "\n";
  return ok;
}

bool check_selection_ordering(std::ostream& os) {
  Rng rng(0x0D15EA5EULL);
  const SystemParams params = make_params(6, 2, 2, 3);
  SelectorConfig config;
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelPair channels = random_channels(6, 2, 2, rng);
    const RunTrace best = run_exhaustive(channels, params, config);
    const RunTrace greedy_stc = run_stepwise(channels, params, config);
    SelectorConfig no_stc = config;
    no_stc.enforce_stc = false;
    const RunTrace greedy_plain = run_stepwise(channels, params, no_stc);
    Rng subset_rng(substream_seed(0x7777, static_cast<std::uint64_t>(trial)));
    const RunTrace rnd = run_random(channels, params, 3, subset_rng, config);

    ok = ok && best.report.weighted_avg >= greedy_stc.report.weighted_avg - 1e-9;
    ok = ok && best.report.weighted_avg >= greedy_plain.report.weighted_avg - 1e-9;
    ok = ok && best.report.weighted_avg >= rnd.report.weighted_avg - 1e-9;
    if (greedy_stc.stop_reason == StopReason::stc_triggered) {
      ok = ok && greedy_stc.stc_growth.value_or(1.0) <= 0.0;
    }
    for (const RunTrace* t : {&best, &greedy_stc, &greedy_plain, &rnd}) {
      ok = ok && t->report.power >= 0.0 && t->report.power <= params.p_max;
      ok = ok && t->report.weighted_avg >= 0.0;
    }
  }
  os << "selftest: exhaustive dominates greedy and random on 20 small instances  "
     << (ok ? "ok" : "FAIL") << "\n";
  return ok;
}

bool check_determinism(std::ostream& os) {
  ExperimentConfig config;
  config.params = make_params(8, 2, 2, 4);
  config.trials = 8;
  config.master_seed = 42;
  config.lmax_sweep = {2, 4};
  config.methods = {Method::exhaustive, Method::random_subset, Method::stepwise_no_stc,
                    Method::stepwise_stc};
  std::ostringstream first, second;
  write_csv(first, run_experiment(config));
  write_csv(second, run_experiment(config));
  const bool ok = !first.str().empty() && first.str() == second.str();
  os << "selftest: repeated mini-experiment is byte-identical  " << (ok ? "ok" : "FAIL")
     << "\n";
  return ok;
}

}  // namespace

bool run_selftest(std::ostream& os) {
  bool ok = true;
  ok = check_growth_identities(os) && ok;
  ok = check_incremental_chain(os) && ok;
  ok = check_selection_ordering(os) && ok;
  ok = check_determinism(os) && ok;
  os << (ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
  return ok;
}

}  // namespace wiretap
