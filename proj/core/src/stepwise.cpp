#include "wiretap/stepwise.hpp"

#include <algorithm>
#include <cmath>

#include "wiretap/channel.hpp"

namespace wiretap {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;

SinrTerms terms_from_products(const ComplexMatrix& main_products,
                              const ComplexMatrix& eve_products) {
  const Eigen::Index k_users = main_products.cols();
  SinrTerms terms;
  terms.t_main.resize(k_users);
  terms.u_main.resize(k_users);
  terms.t_eve.resize(k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    terms.t_main[k] = std::norm(main_products(k, k));
    double interference = 0.0;
    for (Eigen::Index j = 0; j < k_users; ++j) {
      if (j != k) interference += std::norm(main_products(k, j));
    }
    terms.u_main[k] = interference;
    terms.t_eve[k] = eve_products.col(k).squaredNorm();
  }
  return terms;
}

void refresh_caches(SelectionState& state) {
  state.precoder = mrt_precoder(state.h_eff);
  state.main_products = state.h_eff.transpose() * state.precoder.w;
  state.eve_products = state.g_eff.transpose() * state.precoder.w;
  state.terms = terms_from_products(state.main_products, state.eve_products);
  state.extensions_since_refresh = 0;
}

void check_candidate(const SelectionState& state, int candidate) {
  if (!state.channels) {
    throw InvalidSelectionError("stepwise: state has no channel reference");
  }
  if (candidate < 0 || candidate >= state.channels->antennas()) {
    throw InvalidSelectionError("stepwise: candidate index " +
                                std::to_string(candidate) + " out of range");
  }
  if (state.contains(candidate)) {
    throw InvalidSelectionError("stepwise: candidate " + std::to_string(candidate) +
                                " already selected");
  }
}

inline double rel_div(double num, double den) { return num / den; }

}  // namespace

bool SelectionState::contains(int antenna) const {
  return std::find(selection.begin(), selection.end(), antenna) != selection.end();
}

SelectionState init_state(const ChannelPair& channels, int first_index, double p) {
  channels.validate();
  if (first_index < 0 || first_index >= channels.antennas()) {
    throw InvalidSelectionError("init_state: first index out of range");
  }
  SelectionState state;
  state.channels = std::make_shared<const ChannelPair>(channels);
  state.selection = {first_index};
  state.h_eff = channels.h_main.row(first_index);
  state.g_eff = channels.g_eve.row(first_index);
  state.power = p;
  refresh_caches(state);  // throws DegenerateChannelError on a zero row
  return state;
}

double alpha_factor(double beta_prev, const ComplexRowVector& h_row) {
  return 1.0 / std::sqrt(1.0 + beta_prev * beta_prev * h_row.squaredNorm());
}

GrowthEval eval_candidate(const SelectionState& state, int candidate, double p,
                          const SystemParams& params) {
  check_candidate(state, candidate);
  const int k_users = state.channels->users();
  if (params.weights.size() != k_users) {
    throw ShapeError("eval_candidate: weight count does not match user count");
  }

  const ComplexRowVector h_row = state.channels->h_main.row(candidate);
  const ComplexRowVector g_row = state.channels->g_eve.row(candidate);
  const double beta = state.precoder.beta;
  const double alpha = alpha_factor(beta, h_row);
  const double alpha2 = alpha * alpha;
  const double rho_m = p / params.sigma2_main;
  const double rho_e = p / params.sigma2_eve;

  GrowthEval eval;
  eval.candidate = candidate;
  eval.alpha2 = alpha2;
  eval.theta_main.resize(k_users);
  eval.theta_eve.resize(k_users);

  double growth = 0.0;
  ComplexVector eve_col(state.g_eff.cols());
  for (int k = 0; k < k_users; ++k) {
    // Extended inner products: h1_k^T w1_j = alpha * (h_k^T w_j + beta h_k conj(h_j)).
    const Complex hk = h_row[k];
    const Complex diag = state.main_products(k, k) + beta * hk * std::conj(hk);
    const double t_new = alpha2 * std::norm(diag);
    double u_new = 0.0;
    for (int j = 0; j < k_users; ++j) {
      if (j == k) continue;
      u_new += std::norm(state.main_products(k, j) + beta * hk * std::conj(h_row[j]));
    }
    u_new *= alpha2;

    // Extended leakage column: G1^T w1_k = alpha * (G0^T w_k + beta conj(h_k) g_row^T).
    eve_col = state.eve_products.col(k) + (beta * std::conj(hk)) * g_row.transpose();
    const double t_eve_new = alpha2 * eve_col.squaredNorm();

    const double t_old = state.terms.t_main[k];
    const double u_old = state.terms.u_main[k];
    const double t_eve_old = state.terms.t_eve[k];

    // theta factors as ratios of the positive rational forms of 1 + gamma.
    const double theta_main =
        rel_div((1.0 + rho_m * (t_new + u_new)) * (1.0 + rho_m * u_old),
                (1.0 + rho_m * u_new) * (1.0 + rho_m * (t_old + u_old)));
    const double theta_eve =
        rel_div(1.0 + rho_e * t_eve_new, 1.0 + rho_e * t_eve_old);

    eval.theta_main[k] = theta_main;
    eval.theta_eve[k] = theta_eve;
    growth += params.weights[k] * (std::log(theta_main) - std::log(theta_eve));
  }
  eval.growth = growth * kInvLn2;
  return eval;
}

SelectionState extend_state(const SelectionState& state, int candidate) {
  check_candidate(state, candidate);
  const ComplexRowVector h_row = state.channels->h_main.row(candidate);
  const ComplexRowVector g_row = state.channels->g_eve.row(candidate);
  const double beta = state.precoder.beta;
  const double alpha = alpha_factor(beta, h_row);
  const Eigen::Index ell = state.h_eff.rows();

  SelectionState next;
  next.channels = state.channels;
  next.selection = state.selection;
  next.selection.push_back(candidate);
  next.power = state.power;

  next.h_eff.resize(ell + 1, state.h_eff.cols());
  next.h_eff.topRows(ell) = state.h_eff;
  next.h_eff.row(ell) = h_row;
  next.g_eff.resize(ell + 1, state.g_eff.cols());
  next.g_eff.topRows(ell) = state.g_eff;
  next.g_eff.row(ell) = g_row;

  next.extensions_since_refresh = state.extensions_since_refresh + 1;
  if (next.extensions_since_refresh >= kCacheRefreshInterval) {
    refresh_caches(next);
    return next;
  }

  // W_{l+1} = alpha * [W_l; beta * conj(h_row)], beta_{l+1} = alpha * beta_l.
  next.precoder.beta = alpha * beta;
  next.precoder.w.resize(ell + 1, state.precoder.w.cols());
  next.precoder.w.topRows(ell) = alpha * state.precoder.w;
  next.precoder.w.row(ell) = (alpha * beta) * h_row.conjugate();

  // Rank-one updates of the product caches.
  next.main_products =
      alpha * (state.main_products + beta * (h_row.transpose() * h_row.conjugate()));
  next.eve_products =
      alpha * (state.eve_products + beta * (g_row.transpose() * h_row.conjugate()));
  next.terms = terms_from_products(next.main_products, next.eve_products);
  return next;
}

SelectionState with_power(SelectionState state, double p) {
  state.power = p;
  return state;
}

SelectionState rebuild_state(const std::shared_ptr<const ChannelPair>& channels,
                             const std::vector<int>& selection, double p) {
  if (!channels) {
    throw InvalidSelectionError("rebuild_state: null channel reference");
  }
  SelectionState state;
  state.channels = channels;
  state.selection = selection;
  state.h_eff = select_rows(channels->h_main, selection);
  state.g_eff = select_rows(channels->g_eve, selection);
  state.power = p;
  refresh_caches(state);
  return state;
}

double max_cache_drift(const SelectionState& state) {
  const SelectionState fresh = rebuild_state(state.channels, state.selection, state.power);
  auto rel = [](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
  };
  double drift = rel(state.precoder.beta, fresh.precoder.beta);
  for (Eigen::Index i = 0; i < state.precoder.w.size(); ++i) {
    const double mag = std::max({std::abs(state.precoder.w(i)), std::abs(fresh.precoder.w(i)), 1e-300});
    drift = std::max(drift, std::abs(state.precoder.w(i) - fresh.precoder.w(i)) / mag);
  }
  for (int k = 0; k < state.terms.users(); ++k) {
    drift = std::max(drift, rel(state.terms.t_main[k], fresh.terms.t_main[k]));
    drift = std::max(drift, rel(state.terms.u_main[k], fresh.terms.u_main[k]));
    drift = std::max(drift, rel(state.terms.t_eve[k], fresh.terms.t_eve[k]));
  }
  return drift;
}

}  // namespace wiretap
