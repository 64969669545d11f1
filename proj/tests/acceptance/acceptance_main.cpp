// Acceptance suite: end-to-end checks of the selection engine against
// independent reference computations, with all tolerances pinned below.
// Prints one PASS/FAIL line per criterion (criterion 4 has one line per
// sub-criterion) and exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wiretap/experiment.hpp"

using namespace wiretap;

namespace {

// Pinned acceptance tolerances and budgets.
constexpr double kIdentityTol = 1e-9;       // rel. error of incremental identities
constexpr double kDominanceTol = 1e-9;      // tie tolerance of the oracle ordering
constexpr double kNearOptimalRatio = 0.80;  // stepwise / exhaustive mean-rate floor
constexpr double kGapSigmas = 3.0;          // required lead over random TAS, in SEs
constexpr double kSelectedLo = 29.0;        // early-stop mean-selected-L band
constexpr double kSelectedHi = 45.0;
constexpr double kPowerOptTol = 1e-6;       // bits, vs the dense-grid reference
constexpr double kTraceTol = 1e-12;         // |tr(W W^H) - 1|
constexpr double kBudgetIdentitySec = 30.0;
constexpr double kBudgetDominanceSec = 120.0;
constexpr double kBudgetPowerSec = 60.0;
constexpr double kTargetSweepSec = 600.0;  // informational target, not enforced

int g_failures = 0;

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%-56s %s  %s\n", name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
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

// Criterion 1: on random instances, every single-antenna extension evaluated
// incrementally must match a from-scratch recomputation: the per-user
// multiplicative SINR-update factors for both links, and the additive update
// of the unclipped weighted rate. Returns the largest |tr(W W^H) - 1| seen,
// which feeds the criterion-6 normalization check.
double criterion_1_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  double max_err = 0.0;
  double max_trace_err = 0.0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int m = 4 + static_cast<int>(rng.uniform_int(13));
    const int k = 1 + static_cast<int>(rng.uniform_int(4));
    const int n = 1 + static_cast<int>(rng.uniform_int(4));
    const auto channels = std::make_shared<const ChannelPair>(
        oracle::random_channels(m, k, n, rng));
    const SystemParams params = make_params(m, k, n, m);
    const int ell = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m - 1)));
    const std::vector<int> subset = oracle::random_subset(m, ell, rng);
    const double p = 1.0 - rng.uniform();  // (0, 1]

    const SelectionState state = rebuild_state(channels, subset, p);
    max_trace_err =
        std::max(max_trace_err, std::abs(precoder_trace(state.precoder) - 1.0));
    const double rate_now = unclipped_weighted_rate(state.terms, p, params);
    const double rho_m = p / params.sigma2_main;
    const double rho_e = p / params.sigma2_eve;

    for (int j = 0; j < m; ++j) {
      if (state.contains(j)) continue;
      const GrowthEval ev = eval_candidate(state, j, p, params);

      std::vector<int> extended = subset;
      extended.push_back(j);
      const ComplexMatrix h2 = select_rows(channels->h_main, extended);
      const ComplexMatrix g2 = select_rows(channels->g_eve, extended);
      const Precoder prec2 = mrt_precoder(h2);
      max_trace_err =
          std::max(max_trace_err, std::abs(precoder_trace(prec2) - 1.0));
      const SinrTerms t2 = sinr_terms(h2, g2, prec2);

      for (int kk = 0; kk < k; ++kk) {
        const double t = state.terms.t_main[kk];
        const double u = state.terms.u_main[kk];
        const double tp = t2.t_main[kk];
        const double up = t2.u_main[kk];
        const double theta_m_ref =
            ((1.0 + rho_m * (tp + up)) * (1.0 + rho_m * u)) /
            ((1.0 + rho_m * up) * (1.0 + rho_m * (t + u)));
        const double theta_e_ref = (1.0 + rho_e * t2.t_eve[kk]) /
                                   (1.0 + rho_e * state.terms.t_eve[kk]);
        max_err = std::max(max_err, oracle::rel_err(ev.theta_main[kk], theta_m_ref));
        max_err = std::max(max_err, oracle::rel_err(ev.theta_eve[kk], theta_e_ref));
      }
      const double rate_ext = unclipped_weighted_rate(t2, p, params);
      max_err = std::max(max_err, oracle::rel_err(rate_ext, rate_now + ev.growth));
    }
  }
  const double dt = seconds_since(t0);
  report("criterion 1 (incremental-update identities):",
         max_err < kIdentityTol && dt < kBudgetIdentitySec,
         strf("max rel err %.3e (tol %.0e), 1000 instances, %.1f s (budget %.0f s)",
              max_err, kIdentityTol, dt, kBudgetIdentitySec));
  return max_trace_err;
}

// Criteria 2 and 3 share one batch of small instances where the exhaustive
// search is affordable: per instance the ordering
//   exhaustive >= stepwise >= mean of 100 random subsets
// must hold up to ties, and on average the stepwise rate must reach the
// pinned fraction of the exhaustive rate. The stepwise leg runs without the
// early-stopping rule so that every method is compared on subsets of the
// same size; the early-stopping variant may halt below L_max at a one-step
// local maximum, which is covered by criterion 4 instead.
void criterion_2_3_oracle_dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  const SystemParams params = make_params(8, 2, 2, 3);
  const SelectorConfig config;
  SelectorConfig no_stc = config;
  no_stc.enforce_stc = false;
  Rng rng(202);
  double sum_exhaustive = 0.0;
  double sum_stepwise = 0.0;
  double min_exh_margin = 1e300;
  double min_rand_margin = 1e300;
  int exh_violations = 0;
  int rand_violations = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const ChannelPair channels = oracle::random_channels(8, 2, 2, rng);
    const double exhaustive =
        run_exhaustive(channels, params, config).report.weighted_avg;
    const double stepwise =
        run_stepwise(channels, params, no_stc).report.weighted_avg;
    Rng subset_rng(substream_seed(777, static_cast<std::uint64_t>(instance)));
    double mean_random = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
      mean_random +=
          run_random(channels, params, 3, subset_rng, config).report.weighted_avg;
    }
    mean_random /= 100.0;

    min_exh_margin = std::min(min_exh_margin, exhaustive - stepwise);
    min_rand_margin = std::min(min_rand_margin, stepwise - mean_random);
    if (exhaustive - stepwise < -kDominanceTol) ++exh_violations;
    if (stepwise - mean_random < -kDominanceTol) ++rand_violations;
    sum_exhaustive += exhaustive;
    sum_stepwise += stepwise;
  }
  const double dt = seconds_since(t0);
  report("criterion 2 (exhaustive >= stepwise >= mean random):",
         exh_violations == 0 && rand_violations == 0 && dt < kBudgetDominanceSec,
         strf("exhaustive bound %d/200 broken (min margin %+.2e); random-mean "
              "bound %d/200 broken (min margin %+.2e); %.1f s (budget %.0f s)",
              exh_violations, min_exh_margin, rand_violations, min_rand_margin,
              dt, kBudgetDominanceSec));

  const double ratio = sum_stepwise / sum_exhaustive;
  report("criterion 3 (stepwise near-optimality):", ratio >= kNearOptimalRatio,
         strf("mean stepwise / mean exhaustive = %.4f (floor %.2f)", ratio,
              kNearOptimalRatio));
}

// Criterion 4: Monte-Carlo sweep at the reference setting M=64, K=4, N=8,
// P_max=1, sigma^2=0.1, uniform weights, 1000 trials, L_max in
// {10,...,60,64}. Checks the qualitative picture: selection gains over
// random TAS, degradation of the unconditional greedy at large L_max, and
// the early-stop behavior of the STC variant.
void criterion_4_reference_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.params = make_params(64, 4, 8, 64);
  cfg.trials = 1000;
  cfg.master_seed = 1;
  cfg.lmax_sweep = {10, 20, 30, 40, 50, 60, 64};
  cfg.methods = {Method::random_subset, Method::stepwise_no_stc,
                 Method::stepwise_stc};
  const ExperimentResult result = run_experiment(cfg);
  const double dt = seconds_since(t0);
  std::printf("criterion 4 sweep: %d trials x %zu cells in %.0f s (target %.0f s)\n",
              cfg.trials, result.cells.size(), dt, kTargetSweepSec);

  const auto cell = [&](Method method, int l) -> const CellStats& {
    for (const CellStats& c : result.cells) {
      if (c.method == method && c.l_max == l) return c;
    }
    throw std::logic_error("missing sweep cell");
  };

  // 4a: both greedy variants must lead random TAS by >= kGapSigmas combined
  // standard errors at every L_max. At L_max = M this is unattainable for the
  // no-STC variant: selecting 64 of 64 antennas is the full array for greedy
  // and random alike, so their per-trial rates coincide and the gap is zero
  // by construction. The check is applied verbatim and reports that point
  // honestly.
  bool gap_pass = true;
  double min_pass_sigmas = 1e300;
  std::string gap_detail;
  for (Method variant : {Method::stepwise_no_stc, Method::stepwise_stc}) {
    for (int l : cfg.lmax_sweep) {
      const CellStats& cv = cell(variant, l);
      const CellStats& cr = cell(Method::random_subset, l);
      const double gap = cv.mean_rate_bits - cr.mean_rate_bits;
      const double se = std::sqrt(cv.stderr_bits * cv.stderr_bits +
                                  cr.stderr_bits * cr.stderr_bits);
      if (gap >= kGapSigmas * se) {
        if (se > 0.0) min_pass_sigmas = std::min(min_pass_sigmas, gap / se);
      } else {
        gap_pass = false;
        gap_detail += strf("%s L=%d gap %+.2e < %.2e; ", method_name(variant), l,
                           gap, kGapSigmas * se);
      }
    }
  }
  report("criterion 4a (greedy leads random TAS by >= 3 SE):", gap_pass,
         gap_pass ? strf("min lead %.1f SE", min_pass_sigmas)
                  : gap_detail +
                        strf("(at L_max = M both pick the full array; "
                             "remaining points lead by >= %.0f SE)",
                             min_pass_sigmas));

  // 4b: without STC the mean rate at L_max = 64 sits below the sweep peak.
  double peak = -1e300;
  int peak_l = 0;
  for (int l : cfg.lmax_sweep) {
    const CellStats& c = cell(Method::stepwise_no_stc, l);
    if (c.mean_rate_bits > peak) {
      peak = c.mean_rate_bits;
      peak_l = l;
    }
  }
  const CellStats& no_stc_64 = cell(Method::stepwise_no_stc, 64);
  report("criterion 4b (no-STC rate degrades past its peak):",
         no_stc_64.mean_rate_bits < peak && peak_l != 64,
         strf("peak %.4f at L_max=%d vs %.4f at L_max=64", peak, peak_l,
              no_stc_64.mean_rate_bits));

  // 4c: with STC and the full budget, the mean number of antennas actually
  // selected stays inside the pinned band.
  const CellStats& stc_64 = cell(Method::stepwise_stc, 64);
  report("criterion 4c (STC mean selected L in band):",
         stc_64.mean_selected_l >= kSelectedLo &&
             stc_64.mean_selected_l <= kSelectedHi,
         strf("mean selected L = %.2f (band [%.0f, %.0f])", stc_64.mean_selected_l,
              kSelectedLo, kSelectedHi));

  // 4d: stopping early does not cost rate at the full budget.
  report("criterion 4d (STC >= no-STC at L_max=64, 1 SE slack):",
         stc_64.mean_rate_bits >=
             no_stc_64.mean_rate_bits - no_stc_64.stderr_bits,
         strf("%.4f vs %.4f - %.4f", stc_64.mean_rate_bits,
              no_stc_64.mean_rate_bits, no_stc_64.stderr_bits));
}

// Criterion 5: the two-stage power optimizer must match a 10^6-point dense
// grid search to within kPowerOptTol bits on random single-subset instances.
void criterion_5_power_control() {
  const auto t0 = std::chrono::steady_clock::now();
  const SelectorConfig config;
  Rng rng(505);
  double worst_deficit = 0.0;
  for (int instance = 0; instance < 500; ++instance) {
    const int k = (instance % 10 < 7) ? 1 : 2;  // mostly K=1 to keep the grid affordable
    const int m = 4 + static_cast<int>(rng.uniform_int(9));
    const int n = 1 + static_cast<int>(rng.uniform_int(3));
    const SystemParams params = make_params(m, k, n, m);
    const ChannelPair channels = oracle::random_channels(m, k, n, rng);
    const int size =
        1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(std::min(m, 6))));
    const std::vector<int> subset = oracle::random_subset(m, size, rng);
    const ComplexMatrix h = select_rows(channels.h_main, subset);
    const ComplexMatrix g = select_rows(channels.g_eve, subset);
    const SinrTerms terms = sinr_terms(h, g, mrt_precoder(h));

    const double p = optimize_power(terms, params, config);
    const double rate = clipped_weighted_rate(terms, p, params);
    const oracle::GridSearchResult ref =
        oracle::dense_grid_power(terms, params, 1000001);
    worst_deficit = std::max(worst_deficit, ref.rate - rate);
  }
  const double dt = seconds_since(t0);
  report("criterion 5 (power control vs 1e6-point grid):",
         worst_deficit < kPowerOptTol && dt < kBudgetPowerSec,
         strf("worst deficit %.3e bits (tol %.0e), 500 instances, %.1f s (budget %.0f s)",
              worst_deficit, kPowerOptTol, dt, kBudgetPowerSec));
}

// Criterion 6: every constructed precoder satisfies tr(W W^H) = 1 within
// kTraceTol (direct builds, rebuilt subsets, and incremental extension
// chains crossing the cache-refresh boundary), and identical config + seed
// yields byte-identical CSV output independent of rerun or thread count.
void criterion_6_invariants(double trace_err_seen) {
  double worst_trace = trace_err_seen;
  Rng rng(606);
  for (int rep = 0; rep < 24; ++rep) {
    const int m = (rep % 2 == 0) ? 24 : 40;  // odd reps cross the refresh interval
    const int k = 1 + rep % 4;
    const int n = 1 + rep % 3;
    const auto channels = std::make_shared<const ChannelPair>(
        oracle::random_channels(m, k, n, rng));
    SelectionState state = init_state(*channels, init_antenna(*channels), 0.6);
    worst_trace =
        std::max(worst_trace, std::abs(precoder_trace(state.precoder) - 1.0));
    for (int j = 0; j < m; ++j) {
      if (state.contains(j)) continue;
      state = extend_state(state, j);
      worst_trace =
          std::max(worst_trace, std::abs(precoder_trace(state.precoder) - 1.0));
    }
  }

  const ExperimentConfig cfg = parse_config_text(
      "m=10\nk=2\nn=2\ntrials=10\nseed=77\nlmax_sweep=3,6\n"
      "methods=exhaustive,random,stepwise_no_stc,stepwise_stc\n");
  const auto render = [](const ExperimentResult& result) {
    std::ostringstream os;
    write_csv(os, result);
    return os.str();
  };
  const std::string base = render(run_experiment(cfg));
  const std::string repeat = render(run_experiment(cfg));
  setenv("WIRETAP_TAS_THREADS", "1", 1);
  const std::string serial = render(run_experiment(cfg));
  setenv("WIRETAP_TAS_THREADS", "4", 1);
  const std::string wide = render(run_experiment(cfg));
  unsetenv("WIRETAP_TAS_THREADS");
  const bool deterministic = repeat == base && serial == base && wide == base;

  report("criterion 6 (trace normalization + deterministic CSV):",
         worst_trace < kTraceTol && deterministic,
         strf("max |tr(W W^H) - 1| = %.2e (tol %.0e); CSV %s", worst_trace,
              kTraceTol,
              deterministic ? "byte-identical across reruns and thread counts"
                            : "MISMATCH"));
}

}  // namespace

int main() {
  std::printf("wiretap-tas acceptance suite\n");
  try {
    const double trace_err = criterion_1_identities();
    criterion_2_3_oracle_dominance();
    criterion_4_reference_sweep();
    criterion_5_power_control();
    criterion_6_invariants(trace_err);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: unhandled error: %s\n", e.what());
    return 2;
  }
  if (g_failures == 0) {
    std::printf("acceptance: all checks passed\n");
    return 0;
  }
  std::printf("acceptance: %d check(s) failed\n", g_failures);
  return 1;
}
