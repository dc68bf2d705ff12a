#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "bbarma/estimate.hpp"

namespace bbarma {

class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ResidualKind {
  /// (y*[n] - mu[n]) / sqrt(Var(y[n])), with Var on the count scale.
  standardized,
  /// (y[n] - K mu[n]) / sqrt(Var(y[n])); both numerator and denominator on the count scale.
  count_scale,
};

struct Residuals {
  std::vector<double> eps;  // length N - m, index i <-> observation m + i
};

Residuals residuals(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                    ResidualKind kind = ResidualKind::standardized);

inline Residuals residuals(const FitResult& fit, const SignalData& data,
                           ResidualKind kind = ResidualKind::standardized) {
  return residuals(fit.spec, fit.params_hat, data, kind);
}

/// Sample autocorrelations rho_0..rho_max_lag.
std::vector<double> acf(std::span<const double> series, int max_lag);

/// Partial autocorrelations at lags 1..max_lag from the ACF (Durbin-Levinson).
std::vector<double> pacf(std::span<const double> series, int max_lag);

struct TestStat {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

/// Box-Pierce M * sum rho_k^2 over k = 1..lags.
double box_pierce_stat(std::span<const double> rho, std::size_t M, int lags);

/// Ljung-Box M (M + 2) * sum rho_k^2 / (M - k) over k = 1..lags.
double ljung_box_stat(std::span<const double> rho, std::size_t M, int lags);

/// ARCH Lagrange multiplier: (M - lags) * R^2 of eps^2 on a constant and `lags` own lags.
TestStat lm_arch(std::span<const double> series, int lags);

struct PortmanteauReport {
  TestStat box_pierce;
  TestStat ljung_box;
  TestStat lm_arch;
};

/// Portmanteau tests use lags - fitted_params degrees of freedom; the LM test uses `lags`.
PortmanteauReport portmanteau(std::span<const double> series, int lags, int fitted_params);

inline PortmanteauReport portmanteau(const Residuals& res, int lags, int fitted_params) {
  return portmanteau(std::span<const double>(res.eps), lags, fitted_params);
}

struct Goodness {
  double rmse = 0.0;
  double mdae = 0.0;
  double mase = 0.0;
};

/// RMSE, median absolute error and MASE (scaled by the in-sample lag-1 naive MAE).
Goodness goodness(std::span<const double> actual, std::span<const double> predicted,
                  std::span<const double> training);

}  // namespace bbarma
