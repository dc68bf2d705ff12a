#include "bbarma/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bbarma/numkernel.hpp"

namespace bbarma {

Residuals residuals(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                    ResidualKind kind) {
  const FilterState st = filter(spec, params, data, false);
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const int K = spec.K;
  const double phi = params.phi_prec;
  Residuals r;
  r.eps.reserve(static_cast<std::size_t>(std::max(0, N - m)));
  for (int n = m; n < N; ++n) {
    const double mu = st.mu[n];
    const double var = K * mu * (1.0 - mu) * (K + phi) / (1.0 + phi);
    const double num = kind == ResidualKind::standardized ? data.y_star()[n] - mu
                                                          : data.y()[n] - K * mu;
    r.eps.push_back(num / std::sqrt(var));
  }
  return r;
}

std::vector<double> acf(std::span<const double> x, int max_lag) {
  const auto M = x.size();
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= M) {
    throw DiagnosticError("acf: need 0 <= max_lag < series length");
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(M);
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  if (!(denom > 0.0)) throw DiagnosticError("acf: series has zero variance");
  std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
  rho[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double s = 0.0;
    for (std::size_t n = 0; n + k < M; ++n) s += (x[n] - mean) * (x[n + k] - mean);
    rho[k] = s / denom;
  }
  return rho;
}

std::vector<double> pacf(std::span<const double> x, int max_lag) {
  const std::vector<double> rho = acf(x, max_lag);
  std::vector<double> out;
  std::vector<double> phi_prev;
  for (int k = 1; k <= max_lag; ++k) {
    double num = rho[k];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= phi_prev[j - 1] * rho[k - j];
      den -= phi_prev[j - 1] * rho[j];
    }
    const double pkk = num / den;
    std::vector<double> phi(k);
    for (int j = 1; j < k; ++j) phi[j - 1] = phi_prev[j - 1] - pkk * phi_prev[k - j - 1];
    phi[k - 1] = pkk;
    out.push_back(pkk);
    phi_prev = std::move(phi);
  }
  return out;
}

double box_pierce_stat(std::span<const double> rho, std::size_t M, int lags) {
  double s = 0.0;
  for (int k = 1; k <= lags; ++k) s += rho[k] * rho[k];
  return static_cast<double>(M) * s;
}

double ljung_box_stat(std::span<const double> rho, std::size_t M, int lags) {
  const double m = static_cast<double>(M);
  double s = 0.0;
  for (int k = 1; k <= lags; ++k) s += rho[k] * rho[k] / (m - k);
  return m * (m + 2.0) * s;
}

TestStat lm_arch(std::span<const double> x, int lags) {
  const int M = static_cast<int>(x.size());
  const int rows = M - lags;
  if (lags < 1 || rows <= lags + 1) throw DiagnosticError("lm_arch: series too short for lags");
  Eigen::MatrixXd D(rows, lags + 1);
  Eigen::VectorXd r(rows);
  for (int i = 0; i < rows; ++i) {
    const int n = lags + i;
    D(i, 0) = 1.0;
    for (int j = 1; j <= lags; ++j) D(i, j) = x[n - j] * x[n - j];
    r[i] = x[n] * x[n];
  }
  const Eigen::VectorXd coef = D.colPivHouseholderQr().solve(r);
  const double mean = r.mean();
  const double tss = (r.array() - mean).square().sum();
  const double rss = (r - D * coef).squaredNorm();
  const double r2 = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 0.0;
  TestStat t;
  t.statistic = rows * r2;
  t.dof = lags;
  t.p_value = num::chi2_sf(t.statistic, lags);
  return t;
}

PortmanteauReport portmanteau(std::span<const double> x, int lags, int fitted_params) {
  if (lags <= fitted_params || fitted_params < 0) {
    throw DiagnosticError("portmanteau: lags must exceed the number of fitted ARMA parameters");
  }
  if (x.size() <= static_cast<std::size_t>(2 * lags + 1)) {
    throw DiagnosticError("portmanteau: series too short for the requested lags");
  }
  const std::vector<double> rho = acf(x, lags);
  const int dof = lags - fitted_params;
  PortmanteauReport rep;
  rep.box_pierce.statistic = box_pierce_stat(rho, x.size(), lags);
  rep.box_pierce.dof = dof;
  rep.box_pierce.p_value = num::chi2_sf(rep.box_pierce.statistic, dof);
  rep.ljung_box.statistic = ljung_box_stat(rho, x.size(), lags);
  rep.ljung_box.dof = dof;
  rep.ljung_box.p_value = num::chi2_sf(rep.ljung_box.statistic, dof);
  rep.lm_arch = lm_arch(x, lags);
  return rep;
}

Goodness goodness(std::span<const double> actual, std::span<const double> predicted,
                  std::span<const double> training) {
  if (actual.size() != predicted.size() || actual.empty()) {
    throw DiagnosticError("goodness: actual and predicted must have equal, nonzero length");
  }
  if (training.size() < 2) throw DiagnosticError("goodness: training series too short");
  const auto H = actual.size();
  std::vector<double> abs_err(H);
  double sq = 0.0;
  for (std::size_t h = 0; h < H; ++h) {
    const double e = actual[h] - predicted[h];
    abs_err[h] = std::fabs(e);
    sq += e * e;
  }
  double naive = 0.0;
  for (std::size_t n = 1; n < training.size(); ++n) naive += std::fabs(training[n] - training[n - 1]);
  naive /= static_cast<double>(training.size() - 1);
  if (!(naive > 0.0)) throw DiagnosticError("goodness: MASE undefined for a constant training series");

  Goodness g;
  g.rmse = std::sqrt(sq / H);
  const double mae = std::accumulate(abs_err.begin(), abs_err.end(), 0.0) / H;
  std::sort(abs_err.begin(), abs_err.end());
  g.mdae = H % 2 == 1 ? abs_err[H / 2] : 0.5 * (abs_err[H / 2 - 1] + abs_err[H / 2]);
  g.mase = mae / naive;
  return g;
}

}  // namespace bbarma
