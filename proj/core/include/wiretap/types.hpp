#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiretap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown on inconsistent matrix/vector dimensions.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown on out-of-range, duplicate, or otherwise unusable antenna indices.
struct InvalidSelectionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a channel (or channel row) is identically zero and the
/// requested operation is undefined for it.
struct DegenerateChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an exhaustive enumeration would exceed the subset budget.
struct CombinatorialGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on invalid configuration values; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Main channel (M x K) and eavesdropper channel (M x N) of one fading
/// realization. Rows index transmit antennas.
struct ChannelPair {
  ComplexMatrix h_main;
  ComplexMatrix g_eve;

  int antennas() const { return static_cast<int>(h_main.rows()); }
  int users() const { return static_cast<int>(h_main.cols()); }
  int eve_antennas() const { return static_cast<int>(g_eve.cols()); }

  void validate() const {
    if (h_main.rows() != g_eve.rows()) {
      throw ShapeError("ChannelPair: h_main and g_eve must have the same row count");
    }
    if (h_main.rows() < 1 || h_main.cols() < 1 || g_eve.cols() < 1) {
      throw ShapeError("ChannelPair: matrices must be nonempty");
    }
    if (!h_main.allFinite() || !g_eve.allFinite()) {
      throw ShapeError("ChannelPair: entries must be finite");
    }
  }
};

/// Static system description: array size, user count, eavesdropper antennas,
/// RF-chain budget, power budget, noise powers, and per-user rate weights.
struct SystemParams {
  int m_antennas = 0;
  int k_users = 0;
  int n_eve = 0;
  int l_max = 0;
  double p_max = 1.0;
  double sigma2_main = 0.1;
  double sigma2_eve = 0.1;
  RealVector weights;

  static RealVector uniform_weights(int k) {
    return RealVector::Constant(k, 1.0 / static_cast<double>(k));
  }

  void validate() const {
    if (m_antennas < 1) throw ConfigError("m: must be >= 1");
    if (k_users < 1) throw ConfigError("k: must be >= 1");
    if (n_eve < 1) throw ConfigError("n: must be >= 1");
    if (l_max < 1 || l_max > m_antennas) throw ConfigError("l_max: must lie in [1, m]");
    if (!(p_max > 0.0)) throw ConfigError("p_max: must be > 0");
    if (!(sigma2_main > 0.0)) throw ConfigError("sigma2_main: must be > 0");
    if (!(sigma2_eve > 0.0)) throw ConfigError("sigma2_eve: must be > 0");
    if (weights.size() != k_users) throw ConfigError("weights: length must equal k");
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
        throw ConfigError("weights: entries must be finite and nonnegative");
      }
    }
  }
};

}  // namespace wiretap
