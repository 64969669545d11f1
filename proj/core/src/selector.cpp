#include "wiretap/selector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wiretap/channel.hpp"

namespace wiretap {

namespace {

constexpr double kGridTieTol = 1e-12;
constexpr double kGrowthTieTol = 1e-12;

// Probe power (relative to p_max) for candidate ranking when the current
// power is exactly 0. At P = 0 every theta factor is identically 1 and all
// growth terms vanish, so ranking and the stopping test would be vacuous;
// evaluating at an infinitesimal positive power recovers the P -> 0+ limit
// of the update term, which is the sign of its derivative in P.
constexpr double kZeroPowerProbe = 1e-8;

void check_dimensions(const ChannelPair& channels, const SystemParams& params) {
  if (channels.antennas() != params.m_antennas || channels.users() != params.k_users ||
      channels.eve_antennas() != params.n_eve) {
    throw ShapeError("selector: channel dimensions do not match system parameters");
  }
}

struct ScratchMetrics {
  ComplexMatrix h_eff;
  ComplexMatrix g_eff;
  Precoder precoder;
  SinrTerms terms;
};

// Direct (non-incremental) rebuild of the metric inputs for a selection.
ScratchMetrics scratch_metrics(const ChannelPair& channels, const std::vector<int>& selection) {
  ScratchMetrics s;
  s.h_eff = select_rows(channels.h_main, selection);
  s.g_eff = select_rows(channels.g_eve, selection);
  s.precoder = mrt_precoder(s.h_eff);
  s.terms = sinr_terms(s.h_eff, s.g_eff, s.precoder);
  return s;
}

SecrecyReport zero_report(const SystemParams& params, std::vector<int> selection) {
  SecrecyReport report;
  report.per_user_rate_main = RealVector::Zero(params.k_users);
  report.per_user_rate_eve = RealVector::Zero(params.k_users);
  report.per_user_secrecy = RealVector::Zero(params.k_users);
  report.weighted_avg = 0.0;
  report.power = 0.0;
  report.selection = std::move(selection);
  return report;
}

std::uint64_t binom_clamped(int n, int k, std::uint64_t clamp) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 res = 1;
  for (int i = 1; i <= k; ++i) {
    res = res * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (res > clamp) return clamp + 1;
  }
  return static_cast<std::uint64_t>(res);
}

std::vector<int> sample_subset(int m, int l, Rng& rng) {
  // Floyd's algorithm: uniform over all l-subsets of [0, m).
  std::vector<bool> chosen(m, false);
  for (int j = m - l; j < m; ++j) {
    const int t = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(j) + 1));
    if (chosen[t]) {
      chosen[j] = true;
    } else {
      chosen[t] = true;
    }
  }
  std::vector<int> subset;
  subset.reserve(l);
  for (int i = 0; i < m; ++i) {
    if (chosen[i]) subset.push_back(i);
  }
  return subset;
}

}  // namespace

int init_antenna(const ChannelPair& channels) {
  channels.validate();
  const int m = channels.antennas();
  int best_inf = -1;      // among rows with ||G_row|| = 0: largest ||H_row||
  double best_inf_h = 0.0;
  int best_fin = -1;      // among the rest: largest ratio
  double best_fin_ratio = -1.0;
  for (int i = 0; i < m; ++i) {
    const double h_norm = channels.h_main.row(i).norm();
    if (h_norm == 0.0) continue;  // a dead antenna is never the seed
    const double g_norm = channels.g_eve.row(i).norm();
    if (g_norm == 0.0) {
      if (h_norm > best_inf_h) {
        best_inf_h = h_norm;
        best_inf = i;
      }
    } else {
      const double ratio = h_norm / g_norm;
      if (ratio > best_fin_ratio) {
        best_fin_ratio = ratio;
        best_fin = i;
      }
    }
  }
  if (best_inf >= 0) return best_inf;
  if (best_fin >= 0) return best_fin;
  throw DegenerateChannelError("init_antenna: all rows of H are zero");
}

double optimize_power(const SinrTerms& terms, const SystemParams& params,
                      const SelectorConfig& config) {
  if (config.power_grid_points < 2) {
    throw ConfigError("power_grid_points: must be >= 2");
  }
  const int n = config.power_grid_points;
  const double p_max = params.p_max;
  auto rate_at = [&](double p) { return clipped_weighted_rate(terms, p, params); };

  // Coarse grid; among ties within kGridTieTol the smallest power wins.
  std::vector<double> rates(n);
  double max_rate = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    rates[i] = rate_at(p_max * static_cast<double>(i) / (n - 1));
    max_rate = std::max(max_rate, rates[i]);
  }
  int best_idx = 0;
  for (int i = 0; i < n; ++i) {
    if (rates[i] >= max_rate - kGridTieTol) {
      best_idx = i;
      break;
    }
  }
  const double grid_p = p_max * static_cast<double>(best_idx) / (n - 1);
  const double grid_rate = rates[best_idx];

  // Golden-section refinement inside the bracket around the best grid point.
  double lo = p_max * static_cast<double>(std::max(0, best_idx - 1)) / (n - 1);
  double hi = p_max * static_cast<double>(std::min(n - 1, best_idx + 1)) / (n - 1);
  const double tol = config.power_refine_tol * p_max;
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = rate_at(c);
  double fd = rate_at(d);
  double best_p = fc >= fd ? c : d;
  double best_rate = std::max(fc, fd);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = rate_at(c);
      if (fc > best_rate) {
        best_rate = fc;
        best_p = c;
      }
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = rate_at(d);
      if (fd > best_rate) {
        best_rate = fd;
        best_p = d;
      }
    }
  }
  return best_rate > grid_rate ? best_p : grid_p;
}

double optimize_power_for_selection(const ChannelPair& channels,
                                    const std::vector<int>& selection,
                                    const SystemParams& params,
                                    const SelectorConfig& config) {
  const ScratchMetrics s = scratch_metrics(channels, selection);
  return optimize_power(s.terms, params, config);
}

RunTrace run_stepwise(const ChannelPair& channels, const SystemParams& params,
                      const SelectorConfig& config) {
  params.validate();
  check_dimensions(channels, params);

  const int first = init_antenna(channels);
  SelectionState state = init_state(channels, first, 0.0);

  // The initial state's terms come straight from the row, so they double as
  // the direct-path terms for power setting and reporting.
  SinrTerms reported_terms = state.terms;
  double p = optimize_power(reported_terms, params, config);
  state = with_power(std::move(state), p);

  RunTrace trace;
  trace.steps.push_back(
      {1, first, std::nullopt, p, clipped_weighted_rate(reported_terms, p, params)});

  const int m = params.m_antennas;
  bool stc_fired = false;
  int ell = 1;
  while (ell < params.l_max) {
    const double eval_power =
        state.power > 0.0 ? state.power : kZeroPowerProbe * params.p_max;
    double max_growth = -std::numeric_limits<double>::infinity();
    std::vector<double> growth(m, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < m; ++i) {
      if (state.contains(i)) continue;
      growth[i] = eval_candidate(state, i, eval_power, params).growth;
      max_growth = std::max(max_growth, growth[i]);
    }
    int chosen = -1;
    for (int i = 0; i < m; ++i) {
      if (!std::isnan(growth[i]) && growth[i] >= max_growth - kGrowthTieTol) {
        chosen = i;
        break;
      }
    }
    const double chosen_growth = growth[chosen];
    // The stop test applies only once the operating point is non-degenerate.
    // While the clipped rate is identically zero (power 0), stopping would
    // abandon selections whose rate turns positive a few antennas later, so
    // the loop keeps extending by probe-power ranking instead.
    if (config.enforce_stc && state.power > 0.0 && chosen_growth <= 0.0) {
      stc_fired = true;
      trace.stc_growth = chosen_growth;
      break;
    }

    state = extend_state(state, chosen);
    ++ell;
    const ScratchMetrics scratch = scratch_metrics(channels, state.selection);
    reported_terms = scratch.terms;
    p = optimize_power(reported_terms, params, config);
    state = with_power(std::move(state), p);
    trace.steps.push_back(
        {ell, chosen, chosen_growth, p, clipped_weighted_rate(reported_terms, p, params)});
  }

  trace.stop_reason = stc_fired ? StopReason::stc_triggered : StopReason::reached_l_max;
  trace.report = report_from_terms(reported_terms, state.power, params, state.selection);
  return trace;
}

std::uint64_t exhaustive_subset_count(int m, int l_max, std::optional<int> fixed_subset_size) {
  std::uint64_t total = 0;
  const int lo = fixed_subset_size.value_or(1);
  const int hi = fixed_subset_size.value_or(l_max);
  for (int l = lo; l <= hi; ++l) {
    total += binom_clamped(m, l, kExhaustiveSubsetBudget);
    if (total > kExhaustiveSubsetBudget) return kExhaustiveSubsetBudget + 1;
  }
  return total;
}

RunTrace run_exhaustive(const ChannelPair& channels, const SystemParams& params,
                        const SelectorConfig& config,
                        std::optional<int> fixed_subset_size) {
  params.validate();
  check_dimensions(channels, params);
  if (fixed_subset_size &&
      (*fixed_subset_size < 1 || *fixed_subset_size > params.m_antennas)) {
    throw InvalidSelectionError("run_exhaustive: fixed subset size out of range");
  }
  const std::uint64_t count = exhaustive_subset_count(params.m_antennas, params.l_max,
                                                      fixed_subset_size);
  if (count > kExhaustiveSubsetBudget) {
    throw CombinatorialGuardError(
        "run_exhaustive: subset count exceeds budget of " +
        std::to_string(kExhaustiveSubsetBudget));
  }

  const int m = params.m_antennas;
  const int size_lo = fixed_subset_size.value_or(1);
  const int size_hi = fixed_subset_size.value_or(params.l_max);

  double best_rate = -std::numeric_limits<double>::infinity();
  double best_power = 0.0;
  std::vector<int> best_selection;

  std::vector<int> idx;
  for (int l = size_lo; l <= size_hi; ++l) {
    // Lexicographic enumeration of l-subsets; first strict maximum wins, so
    // ties resolve to the smaller and lexicographically earlier subset.
    idx.resize(l);
    for (int i = 0; i < l; ++i) idx[i] = i;
    while (true) {
      const ComplexMatrix h_eff = select_rows(channels.h_main, idx);
      if (h_eff.squaredNorm() > 0.0) {
        const ComplexMatrix g_eff = select_rows(channels.g_eve, idx);
        const Precoder precoder = mrt_precoder(h_eff);
        const SinrTerms terms = sinr_terms(h_eff, g_eff, precoder);
        const double p = optimize_power(terms, params, config);
        const double rate = clipped_weighted_rate(terms, p, params);
        if (rate > best_rate) {
          best_rate = rate;
          best_power = p;
          best_selection = idx;
        }
      }
      // next combination
      int pos = l - 1;
      while (pos >= 0 && idx[pos] == m - l + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < l; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  if (best_selection.empty()) {
    throw DegenerateChannelError("run_exhaustive: all candidate subsets are zero channels");
  }

  RunTrace trace;
  trace.stop_reason = StopReason::exhaustive_search;
  const ScratchMetrics s = scratch_metrics(channels, best_selection);
  trace.report = report_from_terms(s.terms, best_power, params, best_selection);
  return trace;
}

RunTrace run_random(const ChannelPair& channels, const SystemParams& params,
                    int subset_size, Rng& rng, const SelectorConfig& config) {
  params.validate();
  check_dimensions(channels, params);
  if (subset_size < 1 || subset_size > params.m_antennas) {
    throw InvalidSelectionError("run_random: subset size out of range");
  }
  std::vector<int> subset = sample_subset(params.m_antennas, subset_size, rng);

  RunTrace trace;
  trace.stop_reason = StopReason::random_selection;
  const ComplexMatrix h_eff = select_rows(channels.h_main, subset);
  if (h_eff.squaredNorm() == 0.0) {
    trace.report = zero_report(params, std::move(subset));
    return trace;
  }
  const ComplexMatrix g_eff = select_rows(channels.g_eve, subset);
  const Precoder precoder = mrt_precoder(h_eff);
  const SinrTerms terms = sinr_terms(h_eff, g_eff, precoder);
  const double p = optimize_power(terms, params, config);
  trace.report = report_from_terms(terms, p, params, std::move(subset));
  return trace;
}

std::string format_step_log(const RunTrace& trace) {
  std::ostringstream os;
  char line[160];
  for (const StepRecord& s : trace.steps) {
    if (s.growth) {
      std::snprintf(line, sizeof(line),
                    "step %3d: antenna %3d  growth %+12.6e  power %.6f  rate %.6f\n",
                    s.step, s.antenna, *s.growth, s.power, s.clipped_rate);
    } else {
      std::snprintf(line, sizeof(line),
                    "step %3d: antenna %3d  growth %12s  power %.6f  rate %.6f\n",
                    s.step, s.antenna, "(init)", s.power, s.clipped_rate);
    }
    os << line;
  }
  switch (trace.stop_reason) {
    case StopReason::reached_l_max:
      os << "stop: reached l_max\n";
      break;
    case StopReason::stc_triggered:
      std::snprintf(line, sizeof(line), "stop: best growth %+12.6e <= 0\n",
                    trace.stc_growth.value_or(0.0));
      os << line;
      break;
    case StopReason::exhaustive_search:
      os << "stop: exhaustive search\n";
      break;
    case StopReason::random_selection:
      os << "stop: random selection\n";
      break;
  }
  std::snprintf(line, sizeof(line), "final: L=%d  P=%.6f  rate=%.9f  selection=[",
                static_cast<int>(trace.report.selection.size()), trace.report.power,
                trace.report.weighted_avg);
  os << line;
  for (std::size_t i = 0; i < trace.report.selection.size(); ++i) {
    if (i > 0) os << ' ';
    os << trace.report.selection[i];
  }
  os << "]\n";
  return os.str();
}

}  // namespace wiretap
