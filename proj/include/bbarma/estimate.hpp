#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bbarma/model.hpp"

namespace bbarma {

class InitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitOptions {
  int max_iters = 500;
  /// Absolute gradient tolerance; when unset the tolerance is 1e-6 * (1 + |loglik|).
  std::optional<double> grad_tol;
  /// Starting point; defaults to ols_init.
  std::optional<ParamVector> start;
};

struct FitResult {
  ModelSpec spec;
  ParamVector params_hat;
  double loglik = 0.0;
  Eigen::MatrixXd info_matrix;
  Eigen::MatrixXd info_inverse;  // empty when the information is not positive definite
  Eigen::VectorXd std_err;       // empty when the information is not positive definite
  double aic = 0.0;
  double sic = 0.0;
  double hq = 0.0;
  int n_iters = 0;
  bool converged = false;
  bool info_singular = false;
  double grad_norm = 0.0;
  std::string message;
  std::size_t n_effective = 0;  // N - m

  bool has_std_err() const { return std_err.size() > 0; }
};

/// Least-squares starting values: regress y*[n] (n >= m) on [1, x[n], y*[n-1..n-p]],
/// theta = 0, precision = 1. Rank deficiency raises InitError naming the
/// collinear columns unless `allow_rank_deficient`, in which case the
/// minimum-norm solution is returned.
ParamVector ols_init(const ModelSpec& spec, const SignalData& data,
                     bool allow_rank_deficient = false);

/// Conditional maximum likelihood by BFGS on (lambda, log phi).
FitResult fit(const ModelSpec& spec, const SignalData& data, const FitOptions& opts = {});

/// Positive-definite inverse via Cholesky; std::nullopt if factorization fails.
std::optional<Eigen::MatrixXd> spd_inverse(const Eigen::MatrixXd& a);

struct Interval {
  double lo;
  double hi;
};

/// Wald intervals gamma_i -/+ z_{1 - alpha/2} * se_i.
std::vector<Interval> confidence_interval(const FitResult& fit, double alpha);

/// AIC, SIC and HQ for a log-likelihood with r parameters and n effective observations.
struct InformationCriteria {
  double aic;
  double sic;
  double hq;
};
InformationCriteria information_criteria(double loglik, int r, std::size_t n_eff);

/// Names of the parameters in gamma order ("zeta", "beta1", "phi1", "theta1", "precision").
std::vector<std::string> parameter_names(const ModelSpec& spec);

}  // namespace bbarma
