#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bbarma/links.hpp"

namespace bbarma {

/// Orders and layout of a BBARMA(p, q) model with l covariates.
///
/// The parameter vector is gamma = (zeta, beta, phi_ar, theta, phi_prec) and has
/// dimension l + p + q + 2. The first dim() - 1 entries are the linear-predictor
/// parameters; the last one is the precision.
struct ModelSpec {
  int p = 0;
  int q = 0;
  int l = 0;
  LinkKind link = LinkKind::logit;
  int K = 1;

  int m() const { return p > q ? p : q; }
  int dim() const { return l + p + q + 2; }
  int n_linear() const { return l + p + q + 1; }

  int idx_zeta() const { return 0; }
  int idx_beta(int k) const { return 1 + k; }
  int idx_phi(int i) const { return 1 + l + i; }
  int idx_theta(int j) const { return 1 + l + p + j; }
  int idx_prec() const { return l + p + q + 1; }

  void validate() const;
};

struct ParamVector {
  double zeta = 0.0;
  Eigen::VectorXd beta;
  Eigen::VectorXd phi_ar;
  Eigen::VectorXd theta;
  double phi_prec = 1.0;

  /// Zero-initialised parameters of the right shape, precision 1.
  static ParamVector zeros(const ModelSpec& spec);
  static ParamVector from_vector(const ModelSpec& spec, const Eigen::VectorXd& gamma);
  Eigen::VectorXd to_vector() const;

  void validate(const ModelSpec& spec) const;
};

/// Observed signal y[0..N) in {0..K} with its scaled copy y* = y / K and
/// covariates X (N x l).
class SignalData {
 public:
  SignalData() = default;
  SignalData(std::vector<int> y, Eigen::MatrixXd X, int K);

  std::size_t size() const { return y_.size(); }
  int K() const { return K_; }
  const std::vector<int>& y() const { return y_; }
  const std::vector<double>& y_star() const { return y_star_; }
  const Eigen::MatrixXd& X() const { return X_; }
  int n_covariates() const { return static_cast<int>(X_.cols()); }

  /// log C(K, y[n]), the parameter-free part of each likelihood term.
  double log_choose(std::size_t n) const { return log_choose_[n]; }

  /// First `n` observations (and covariate rows).
  SignalData head(std::size_t n) const;

 private:
  std::vector<int> y_;
  std::vector<double> y_star_;
  std::vector<double> log_choose_;
  Eigen::MatrixXd X_;
  int K_ = 1;
};

/// Raised when the predictor recursion leaves the finite range.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Output of the predictor recursion. Rows n < m are zero.
///
/// `sens` holds d eta[n] / d lambda for lambda = (zeta, beta, phi_ar, theta),
/// one row per index, columns in parameter order.
struct FilterState {
  Eigen::VectorXd eta;
  Eigen::VectorXd mu;
  Eigen::VectorXd resid_ma;  // y*[n] - mu[n], zero for n < m
  Eigen::MatrixXd sens;
  int m = 0;

  auto sens_zeta() const { return sens.col(0); }
  auto sens_beta(const ModelSpec& s) const { return sens.middleCols(1, s.l); }
  auto sens_phi(const ModelSpec& s) const { return sens.middleCols(1 + s.l, s.p); }
  auto sens_theta(const ModelSpec& s) const { return sens.middleCols(1 + s.l + s.p, s.q); }
};

/// Runs eta[n] = zeta + x[n]'beta + sum phi_i y*[n-i] + sum theta_j r[n-j] for
/// n >= m together with the first-order sensitivity recursions.
FilterState filter(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                   bool with_sensitivities = true);

/// Per-index log-likelihood contributions l[n](mu[n], phi) for n >= m.
Eigen::VectorXd log_likelihood_terms(const ModelSpec& spec, const ParamVector& params,
                                     const SignalData& data);

/// Conditional log-likelihood. Returns 0 when N == m.
double log_likelihood(const ModelSpec& spec, const ParamVector& params, const SignalData& data);

/// Score vector U(gamma) in parameter order.
Eigen::VectorXd score(const ModelSpec& spec, const ParamVector& params, const SignalData& data);

struct LikelihoodEval {
  double loglik = 0.0;
  Eigen::VectorXd score;
};

/// Log-likelihood and score from one filter pass.
LikelihoodEval evaluate(const ModelSpec& spec, const ParamVector& params, const SignalData& data);

/// Per-index first and second derivatives of l[n] with respect to mu[n] and phi,
/// the link factors, and the first/second order eta sensitivities. Vectors have
/// length N - m and row i corresponds to index m + i.
struct DerivativeWorkspace {
  Eigen::VectorXd T_diag;       // dmu/deta = 1 / g'(mu)
  Eigen::VectorXd Upsilon;      // dl/dmu = phi * Upsilon
  Eigen::VectorXd UpsilonStar;  // d2l/dmu2
  Eigen::VectorXd UpsilonPhi;   // d2l/dmu dphi
  Eigen::VectorXd PhiStar;      // d2l/dphi2
  Eigen::VectorXd kappa;        // g'' / g'^2
  Eigen::VectorXd xi;           // weight of the outer product d eta d eta' in -Hessian
  Eigen::MatrixXd sens;         // (N-m) x n_linear first-order sensitivities
  /// d2 eta[n] / d lambda d lambda', one n_linear x n_linear block per index.
  /// Empty when q == 0 (all blocks vanish).
  std::vector<Eigen::MatrixXd> second;
};

DerivativeWorkspace derivative_workspace(const ModelSpec& spec, const ParamVector& params,
                                         const SignalData& data);

/// Negative Hessian of the conditional log-likelihood, dim x dim, exactly symmetric.
Eigen::MatrixXd observed_information(const ModelSpec& spec, const ParamVector& params,
                                     const SignalData& data);

}  // namespace bbarma
