#include "wiretap/metrics.hpp"

#include <cmath>

namespace wiretap {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1 / ln(2)

inline double log2_1p(double x) { return std::log1p(x) * kInvLn2; }

}  // namespace

SinrTerms sinr_terms(const ComplexMatrix& h_eff, const ComplexMatrix& g_eff,
                     const Precoder& precoder) {
  const Eigen::Index ell = h_eff.rows();
  const Eigen::Index k_users = h_eff.cols();
  if (precoder.w.rows() != ell || precoder.w.cols() != k_users) {
    throw ShapeError("sinr_terms: precoder shape does not match h_eff");
  }
  if (g_eff.rows() != ell) {
    throw ShapeError("sinr_terms: g_eff row count does not match h_eff");
  }

  // main_products(k, j) = h_k^T w_j; eve_products = G_eff^T W.
  const ComplexMatrix main_products = h_eff.transpose() * precoder.w;
  const ComplexMatrix eve_products = g_eff.transpose() * precoder.w;

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

double sinr_main(const SinrTerms& terms, double p, double sigma2_main, int k) {
  if (p == 0.0) return 0.0;
  const double rho = p / sigma2_main;
  return rho * terms.t_main[k] / (1.0 + rho * terms.u_main[k]);
}

double sinr_eve(const SinrTerms& terms, double p, double sigma2_eve, int k) {
  if (p == 0.0) return 0.0;
  return (p / sigma2_eve) * terms.t_eve[k];
}

SecrecyReport report_from_terms(const SinrTerms& terms, double p,
                                const SystemParams& params,
                                std::vector<int> selection) {
  const int k_users = terms.users();
  if (params.weights.size() != k_users) {
    throw ShapeError("report_from_terms: weight count does not match user count");
  }
  SecrecyReport report;
  report.per_user_rate_main.resize(k_users);
  report.per_user_rate_eve.resize(k_users);
  report.per_user_secrecy.resize(k_users);
  double weighted = 0.0;
  for (int k = 0; k < k_users; ++k) {
    const double rate_main = log2_1p(sinr_main(terms, p, params.sigma2_main, k));
    const double rate_eve = log2_1p(sinr_eve(terms, p, params.sigma2_eve, k));
    const double secrecy = std::max(0.0, rate_main - rate_eve);
    report.per_user_rate_main[k] = rate_main;
    report.per_user_rate_eve[k] = rate_eve;
    report.per_user_secrecy[k] = secrecy;
    weighted += params.weights[k] * secrecy;
  }
  report.weighted_avg = weighted;
  report.power = p;
  report.selection = std::move(selection);
  return report;
}

SecrecyReport secrecy_rate(const ComplexMatrix& h_eff, const ComplexMatrix& g_eff,
                           const Precoder& precoder, double p,
                           const SystemParams& params,
                           std::vector<int> selection) {
  return report_from_terms(sinr_terms(h_eff, g_eff, precoder), p, params,
                           std::move(selection));
}

double unclipped_weighted_rate(const SinrTerms& terms, double p,
                               const SystemParams& params) {
  double sum = 0.0;
  for (int k = 0; k < terms.users(); ++k) {
    const double rate_main = log2_1p(sinr_main(terms, p, params.sigma2_main, k));
    const double rate_eve = log2_1p(sinr_eve(terms, p, params.sigma2_eve, k));
    sum += params.weights[k] * (rate_main - rate_eve);
  }
  return sum;
}

double clipped_weighted_rate(const SinrTerms& terms, double p,
                             const SystemParams& params) {
  double sum = 0.0;
  for (int k = 0; k < terms.users(); ++k) {
    const double rate_main = log2_1p(sinr_main(terms, p, params.sigma2_main, k));
    const double rate_eve = log2_1p(sinr_eve(terms, p, params.sigma2_eve, k));
    sum += params.weights[k] * std::max(0.0, rate_main - rate_eve);
  }
  return sum;
}

}  // namespace wiretap
