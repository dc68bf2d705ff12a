#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bbarma/infer.hpp"

namespace bbarma::baseline {

class DetectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gaussian ARMA(p, q) with covariates in the mean, fitted by conditional sum of squares:
///   y[n] = c + x[n]'beta + sum ar_i y[n-i] + sum ma_j e[n-j] + e[n],  e[n] = 0 for n < max(p,q).
struct ArmaFit {
  double intercept = 0.0;
  Eigen::VectorXd beta_cov;
  Eigen::VectorXd ar;
  Eigen::VectorXd ma;
  double sigma2 = 0.0;
  /// Covariance of (intercept, beta, ar, ma) from the numerical Hessian of the CSS objective.
  Eigen::MatrixXd cov_matrix;
  double css = 0.0;
  bool converged = false;
  int n_iters = 0;

  Eigen::VectorXd coefficients() const;
};

ArmaFit arma_fit(std::span<const double> y, const Eigen::MatrixXd& X, int p, int q);

/// CSS residuals e[n] for the given coefficients (zeros before max(p,q)).
std::vector<double> arma_residuals(std::span<const double> y, const Eigen::MatrixXd& X, int p,
                                   int q, const Eigen::VectorXd& coef);

/// Recursive H-step forecasts with future errors set to zero.
std::vector<double> arma_forecast(const ArmaFit& fit, std::span<const double> y,
                                  const Eigen::MatrixXd& X, const Eigen::MatrixXd& future_X, int H);

/// ARMA(p, q) with `s` as the single covariate; Wald test on its coefficient.
DetectionReport arma_detect(std::span<const double> y, std::span<const double> s, int p, int q,
                            double pfa);

/// OLS of y on (1, s) with i.i.d. Gaussian errors; Wald test on the slope.
DetectionReport gaussian_detect(std::span<const double> y, std::span<const double> s, double pfa);

/// Additive Holt-Winters state after smoothing the whole series.
struct HoltWinters {
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> seasonal;  // seasonal[k] applies to phase k (index mod period)
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int period = 1;
  std::size_t n_obs = 0;
  double sse = 0.0;

  std::vector<double> forecast(int H) const;
};

/// Smoothing constants chosen on a 0.05-step grid in (0,1) by in-sample one-step SSE.
HoltWinters holt_winters_fit(std::span<const double> y, int period);

/// Runs the additive recursions with fixed constants.
HoltWinters holt_winters_run(std::span<const double> y, int period, double alpha, double beta,
                             double gamma);

std::vector<double> holt_winters_fit_forecast(std::span<const double> y, int period, int H);

}  // namespace bbarma::baseline
