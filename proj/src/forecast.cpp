#include "bbarma/forecast.hpp"

#include <cmath>
#include <string>

namespace bbarma {

int to_count(double mu, int K) { return static_cast<int>(std::round(mu * K)); }

Forecast forecast(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                  const Eigen::MatrixXd& future_X, int H) {
  if (H < 1) throw ForecastError("forecast: horizon must be >= 1");
  if (future_X.rows() < H || future_X.cols() != spec.l) {
    throw ForecastError("forecast: need " + std::to_string(H) + " future covariate rows with " +
                        std::to_string(spec.l) + " columns");
  }
  const int N = static_cast<int>(data.size());
  if (N < spec.m()) throw ForecastError("forecast: signal shorter than the model order");

  const FilterState st = filter(spec, params, data, false);
  // Extended signal/error paths: observed values up to N, forecasts afterwards.
  std::vector<double> ys(data.y_star());
  std::vector<double> resid(st.resid_ma.data(), st.resid_ma.data() + N);
  ys.resize(static_cast<std::size_t>(N + H));
  resid.resize(static_cast<std::size_t>(N + H), 0.0);

  Forecast out;
  out.horizon = H;
  for (int h = 1; h <= H; ++h) {
    const int n = N + h - 1;
    double eta = params.zeta;
    if (spec.l > 0) eta += future_X.row(h - 1).dot(params.beta);
    for (int i = 1; i <= spec.p; ++i) eta += params.phi_ar[i - 1] * ys[n - i];
    for (int j = 1; j <= spec.q; ++j) eta += params.theta[j - 1] * resid[n - j];
    const double mu = link_inv(spec.link, eta);
    ys[n] = mu;
    out.mu_hat.push_back(mu);
    out.y_hat.push_back(to_count(mu, spec.K));
  }
  return out;
}

}  // namespace bbarma
