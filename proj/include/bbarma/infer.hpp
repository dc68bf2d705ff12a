#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bbarma/estimate.hpp"

namespace bbarma {

class TestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DetectionReport {
  double wald_stat = 0.0;
  int dof = 1;
  double threshold = 0.0;
  double p_value = 1.0;
  bool detected = false;
};

/// Detection threshold chi2_{dof} quantile at 1 - pfa. pfa = 0 maps to +inf and
/// pfa = 1 to 0.
double detection_threshold(double pfa, int dof);

/// Builds a report from a Wald statistic: detected iff stat > threshold.
DetectionReport make_report(double wald_stat, int dof, double pfa);

/// Wald statistic for H0: gamma_I = null_values from a covariance matrix and estimate.
double wald_statistic(const Eigen::VectorXd& estimate, const Eigen::MatrixXd& covariance,
                      const std::vector<int>& interest_idx, const Eigen::VectorXd& null_values);

/// Wald test on a fitted BBARMA model using [I^{-1}(gamma_hat)]_{II}.
DetectionReport wald_test(const FitResult& fit, const std::vector<int>& interest_idx,
                          const Eigen::VectorXd& null_values, double pfa = 0.05);

/// Candidate signal s[n] = cos(2 pi f0 n), n = 1..N.
std::vector<double> cosine_signal(std::size_t N, double f0);

/// Fits the model with `candidate` as its single covariate and tests beta1 = 0.
/// `spec.l` is forced to 1.
DetectionReport detect_signal(const SignalData& data, const std::vector<double>& candidate,
                              ModelSpec spec, double pfa, const FitOptions& opts = {});

}  // namespace bbarma
