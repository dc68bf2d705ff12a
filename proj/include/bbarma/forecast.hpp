#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bbarma/estimate.hpp"

namespace bbarma {

class ForecastError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Forecast {
  std::vector<double> mu_hat;  // conditional means at N+1..N+H
  std::vector<int> y_hat;      // round(mu_hat * K), half away from zero
  int horizon = 0;
};

/// h-step out-of-signal forecasts. Unobserved future signal values are replaced
/// by their forecast means and unobserved MA errors by zero. `future_X` must
/// have H rows and l columns.
Forecast forecast(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                  const Eigen::MatrixXd& future_X, int H);

inline Forecast forecast(const FitResult& fit, const SignalData& data,
                         const Eigen::MatrixXd& future_X, int H) {
  return forecast(fit.spec, fit.params_hat, data, future_X, H);
}

/// Maps a mean in (0,1) to the count scale.
int to_count(double mu, int K);

}  // namespace bbarma
