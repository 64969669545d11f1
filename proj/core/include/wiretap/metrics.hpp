#pragma once

#include <vector>

#include "wiretap/precoder.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

/// Power-independent per-user SINR building blocks for a fixed effective
/// channel pair and precoder:
///   t_main[k] = |h_k^T w_k|^2          (desired-signal gain of user k)
///   u_main[k] = sum_{j != k} |h_k^T w_j|^2   (inter-user interference)
///   t_eve[k]  = ||G_eff^T w_k||^2      (leakage gain toward the eavesdropper)
/// where h_k and w_j are columns of the effective main channel and precoder.
struct SinrTerms {
  RealVector t_main;
  RealVector u_main;
  RealVector t_eve;

  int users() const { return static_cast<int>(t_main.size()); }
};

/// Per-user rates and secrecy rates at one (power, selection) operating point.
/// All rates are in bits per channel use; secrecy entries are clipped at 0.
struct SecrecyReport {
  RealVector per_user_rate_main;
  RealVector per_user_rate_eve;
  RealVector per_user_secrecy;
  double weighted_avg = 0.0;
  double power = 0.0;
  std::vector<int> selection;
};

SinrTerms sinr_terms(const ComplexMatrix& h_eff, const ComplexMatrix& g_eff,
                     const Precoder& precoder);

/// SINR of user k at the legitimate receiver: rho_m t_k / (1 + rho_m u_k)
/// with rho_m = p / sigma2_main. Zero power short-circuits to 0.
double sinr_main(const SinrTerms& terms, double p, double sigma2_main, int k);

/// Worst-case SINR of the eavesdropper overhearing user k: (p / sigma2_eve) * t_eve[k].
double sinr_eve(const SinrTerms& terms, double p, double sigma2_eve, int k);

/// Full report (rates, clipped secrecy rates, weighted average) from cached
/// terms. `selection` is carried through for bookkeeping only.
SecrecyReport report_from_terms(const SinrTerms& terms, double p,
                                const SystemParams& params,
                                std::vector<int> selection = {});

SecrecyReport secrecy_rate(const ComplexMatrix& h_eff, const ComplexMatrix& g_eff,
                           const Precoder& precoder, double p,
                           const SystemParams& params,
                           std::vector<int> selection = {});

/// Weighted sum of UNCLIPPED per-user secrecy rates,
///   sum_k w_k * (log2(1 + gamma_k_main) - log2(1 + gamma_k_eve)).
/// Unlike the clipped metric, this quantity admits an exact additive
/// update under single-antenna extension; the stepwise engine ranks
/// candidates with it.
double unclipped_weighted_rate(const SinrTerms& terms, double p,
                               const SystemParams& params);

/// Clipped weighted-average secrecy rate without building a full report.
double clipped_weighted_rate(const SinrTerms& terms, double p,
                             const SystemParams& params);

}  // namespace wiretap
