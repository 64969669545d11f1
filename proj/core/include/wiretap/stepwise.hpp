#pragma once

#include <memory>
#include <vector>

#include "wiretap/metrics.hpp"
#include "wiretap/precoder.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

/// Incremental state of a greedy antenna selection. Holds the selected index
/// list, the effective channels, the MRT precoder, and two inner-product
/// caches from which the SINR terms are derived:
///   main_products(k, j) = h_k^T w_j          (K x K)
///   eve_products        = G_eff^T W          (N x K)
/// States are immutable values; extension produces a new state. The caches
/// are refreshed from a from-scratch rebuild every kCacheRefreshInterval
/// extensions to bound floating-point drift.
struct SelectionState {
  std::vector<int> selection;
  ComplexMatrix h_eff;  // ell x K
  ComplexMatrix g_eff;  // ell x N
  Precoder precoder;
  ComplexMatrix main_products;
  ComplexMatrix eve_products;
  SinrTerms terms;
  double power = 0.0;
  std::shared_ptr<const ChannelPair> channels;
  int extensions_since_refresh = 0;

  int size() const { return static_cast<int>(selection.size()); }
  bool contains(int antenna) const;
};

inline constexpr int kCacheRefreshInterval = 32;

/// Candidate growth quantities at one power level: the squared extension
/// factor alpha^2 = 1 / (1 + beta^2 ||h_row||^2), the per-user multiplicative
/// SINR-update factors
///   1 + gamma_k(P, L u {i}) = theta_k * (1 + gamma_k(P, L))
/// for the main link and the eavesdropper, and the resulting change of the
/// unclipped weighted secrecy rate,
///   growth = sum_k w_k * log2(theta_main[k] / theta_eve[k]).
struct GrowthEval {
  int candidate = -1;
  double alpha2 = 0.0;
  RealVector theta_main;
  RealVector theta_eve;
  double growth = 0.0;
};

/// State of a single-antenna selection {first_index} at power p.
/// Throws DegenerateChannelError if the chosen H row is zero.
SelectionState init_state(const ChannelPair& channels, int first_index, double p);

/// Extension factor alpha = beta_new / beta_prev = 1 / sqrt(1 + beta_prev^2 ||h_row||^2).
double alpha_factor(double beta_prev, const ComplexRowVector& h_row);

/// Growth quantities for appending `candidate` to the selection, at power p.
/// Weights and noise powers are taken from params. Pure function of its
/// arguments; candidate sweeps may run in parallel.
GrowthEval eval_candidate(const SelectionState& state, int candidate, double p,
                          const SystemParams& params);

/// New state with `candidate` appended. Precoder and caches are updated
/// incrementally (rank-one); power is carried over unchanged.
SelectionState extend_state(const SelectionState& state, int candidate);

/// Copy of the state operating at a different power level.
SelectionState with_power(SelectionState state, double p);

/// State rebuilt from scratch (select_rows + mrt_precoder + sinr_terms) for
/// the same selection. Reference path for cache-coherence checks.
SelectionState rebuild_state(const std::shared_ptr<const ChannelPair>& channels,
                             const std::vector<int>& selection, double p);

/// Largest relative deviation between the state's cached precoder/products/
/// terms and a from-scratch rebuild.
double max_cache_drift(const SelectionState& state);

}  // namespace wiretap
