#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiretap/metrics.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/stepwise.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

struct SelectorConfig {
  // Stop once the best growth term is <= 0. The test is armed only while the
  // operating power is positive; on the zero-power plateau (clipped rate
  // identically 0) the loop keeps extending so that selections whose rate
  // turns positive at larger sizes are not abandoned.
  bool enforce_stc = true;
  int power_grid_points = 256;    // uniform grid on [0, p_max]
  double power_refine_tol = 1e-6; // golden-section width, relative to p_max
};

enum class StopReason {
  reached_l_max,
  stc_triggered,
  exhaustive_search,
  random_selection,
};

/// One accepted step of the greedy loop. `growth` is the candidate's growth
/// term evaluated at the pre-update power (or, when that power is exactly 0,
/// at an infinitesimal probe power — the P -> 0+ limit of the update term);
/// `power` and `clipped_rate` are the re-optimized power and the directly
/// recomputed rate after acceptance. The initialization step carries no
/// growth value.
struct StepRecord {
  int step = 0;
  int antenna = -1;
  std::optional<double> growth;
  double power = 0.0;
  double clipped_rate = 0.0;
};

struct RunTrace {
  std::vector<StepRecord> steps;
  SecrecyReport report;
  StopReason stop_reason = StopReason::reached_l_max;
  // Best growth seen by the final candidate sweep when STC fired.
  std::optional<double> stc_growth;
};

/// First active antenna: argmax over rows of ||H_row|| / ||G_row||. Rows with
/// a zero G row and nonzero H row count as infinite ratio and are ordered
/// among themselves by ||H_row|| descending; all ties break to the lowest
/// index; rows with zero H row are never selected. Throws
/// DegenerateChannelError when every H row is zero.
int init_antenna(const ChannelPair& channels);

/// argmax_{0 <= P <= p_max} of the clipped weighted secrecy rate: coarse
/// uniform grid, then golden-section refinement inside the best bracket.
/// Among grid points whose rate ties the maximum within 1e-12, the smallest
/// power wins.
double optimize_power(const SinrTerms& terms, const SystemParams& params,
                      const SelectorConfig& config);

/// Convenience wrapper: optimal power for an explicit antenna subset.
double optimize_power_for_selection(const ChannelPair& channels,
                                    const std::vector<int>& selection,
                                    const SystemParams& params,
                                    const SelectorConfig& config);

/// Iterative joint antenna selection and power control: initialize with the
/// best-ratio antenna and its optimal power, then repeatedly add the candidate
/// with the largest growth term (evaluated at the current power, with an
/// infinitesimal probe substituted when that power is 0) and re-optimize the
/// power, until l_max antennas are active or, with enforce_stc, the best
/// growth term is non-positive at a positive operating power.
RunTrace run_stepwise(const ChannelPair& channels, const SystemParams& params,
                      const SelectorConfig& config);

/// Exhaustive oracle: enumerate all subsets of size 1..l_max (or of exactly
/// fixed_subset_size), optimize power per subset with the same optimizer, and
/// return the global maximizer. Ties break toward the smaller, then
/// lexicographically earlier subset. Refuses instances whose subset count
/// exceeds kExhaustiveSubsetBudget.
RunTrace run_exhaustive(const ChannelPair& channels, const SystemParams& params,
                        const SelectorConfig& config,
                        std::optional<int> fixed_subset_size = std::nullopt);

/// Random-selection baseline: a uniformly random subset of the given size,
/// with power optimized for it.
RunTrace run_random(const ChannelPair& channels, const SystemParams& params,
                    int subset_size, Rng& rng, const SelectorConfig& config);

inline constexpr std::uint64_t kExhaustiveSubsetBudget = 1000000;

/// Number of subsets run_exhaustive would enumerate (saturating).
std::uint64_t exhaustive_subset_count(int m, int l_max,
                                      std::optional<int> fixed_subset_size = std::nullopt);

/// Human-readable step log, one line per accepted step.
std::string format_step_log(const RunTrace& trace);

}  // namespace wiretap
