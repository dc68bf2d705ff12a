#include "bbarma/baselines.hpp"

#include <cmath>
#include <limits>

#include "bbarma/bfgs.hpp"
#include "bbarma/estimate.hpp"

namespace bbarma::baseline {
namespace {

struct ArmaLayout {
  int l, p, q;
  int m() const { return std::max(p, q); }
  int k() const { return 1 + l + p + q; }
};

// Sum of squared CSS residuals and, optionally, its gradient.
double css(std::span<const double> y, const Eigen::MatrixXd& X, const ArmaLayout& L,
           const Eigen::VectorXd& coef, Eigen::VectorXd* grad, std::vector<double>* resid = nullptr) {
  const int N = static_cast<int>(y.size());
  const int m = L.m();
  const int k = L.k();
  std::vector<double> e(N, 0.0);
  Eigen::MatrixXd de;
  if (grad) {
    de = Eigen::MatrixXd::Zero(N, k);
    grad->setZero(k);
  }
  double s = 0.0;
  for (int n = m; n < N; ++n) {
    double pred = coef[0];
    for (int j = 0; j < L.l; ++j) pred += coef[1 + j] * X(n, j);
    for (int i = 1; i <= L.p; ++i) pred += coef[L.l + i] * y[n - i];
    for (int j = 1; j <= L.q; ++j) pred += coef[L.l + L.p + j] * e[n - j];
    e[n] = y[n] - pred;
    s += e[n] * e[n];
    if (!grad) continue;
    auto row = de.row(n);
    row[0] = -1.0;
    for (int j = 0; j < L.l; ++j) row[1 + j] = -X(n, j);
    for (int i = 1; i <= L.p; ++i) row[L.l + i] = -y[n - i];
    for (int j = 1; j <= L.q; ++j) row[L.l + L.p + j] = -e[n - j];
    for (int j = 1; j <= L.q; ++j) {
      if (n - j < m) break;
      row -= coef[L.l + L.p + j] * de.row(n - j);
    }
    *grad += 2.0 * e[n] * row.transpose();
  }
  if (resid) *resid = std::move(e);
  return s;
}

Eigen::VectorXd ols_start(std::span<const double> y, const Eigen::MatrixXd& X, const ArmaLayout& L) {
  const int N = static_cast<int>(y.size());
  const int m = L.m();
  const int cols = 1 + L.l + L.p;
  Eigen::MatrixXd D(N - m, cols);
  Eigen::VectorXd r(N - m);
  for (int n = m; n < N; ++n) {
    D(n - m, 0) = 1.0;
    for (int j = 0; j < L.l; ++j) D(n - m, 1 + j) = X(n, j);
    for (int i = 1; i <= L.p; ++i) D(n - m, L.l + i) = y[n - i];
    r[n - m] = y[n];
  }
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(L.k());
  coef.head(cols) = D.colPivHouseholderQr().solve(r);
  return coef;
}

}  // namespace

Eigen::VectorXd ArmaFit::coefficients() const {
  Eigen::VectorXd c(1 + beta_cov.size() + ar.size() + ma.size());
  c << intercept, beta_cov, ar, ma;
  return c;
}

std::vector<double> arma_residuals(std::span<const double> y, const Eigen::MatrixXd& X, int p,
                                   int q, const Eigen::VectorXd& coef) {
  std::vector<double> e;
  css(y, X, ArmaLayout{static_cast<int>(X.cols()), p, q}, coef, nullptr, &e);
  return e;
}

ArmaFit arma_fit(std::span<const double> y, const Eigen::MatrixXd& X, int p, int q) {
  const ArmaLayout L{static_cast<int>(X.cols()), p, q};
  const int N = static_cast<int>(y.size());
  if (p < 0 || q < 0) throw std::invalid_argument("arma_fit: orders must be >= 0");
  if (X.rows() != N) throw std::invalid_argument("arma_fit: covariate rows do not match y");
  if (N <= p + q + L.l + 2) throw std::invalid_argument("arma_fit: series too short");
  const int M = N - L.m();
  const int k = L.k();

  const Eigen::VectorXd start = ols_start(y, X, L);
  const optim::Objective objective = [&](const Eigen::VectorXd& c, Eigen::VectorXd& g) {
    const double s = css(y, X, L, c, &g);
    if (!std::isfinite(s) || !(s > 0.0)) return std::numeric_limits<double>::infinity();
    g *= 0.5 * M / s;
    return 0.5 * M * std::log(s / M);
  };
  const optim::BfgsResult br = optim::minimize_bfgs(objective, start);

  ArmaFit f;
  f.converged = br.converged;
  f.n_iters = br.iterations;
  const Eigen::VectorXd& c = br.x;
  f.intercept = c[0];
  f.beta_cov = c.segment(1, L.l);
  f.ar = c.segment(1 + L.l, p);
  f.ma = c.segment(1 + L.l + p, q);
  Eigen::VectorXd g(k);
  f.css = css(y, X, L, c, &g);
  f.sigma2 = f.css / std::max(1, M - k);

  // Hessian of the CSS objective by central differences of its analytic gradient.
  Eigen::MatrixXd H(k, k);
  Eigen::VectorXd gp(k), gm(k);
  for (int j = 0; j < k; ++j) {
    const double h = 1e-5 * (1.0 + std::fabs(c[j]));
    Eigen::VectorXd cp = c, cm = c;
    cp[j] += h;
    cm[j] -= h;
    css(y, X, L, cp, &gp);
    css(y, X, L, cm, &gm);
    H.col(j) = (gp - gm) / (2.0 * h);
  }
  H = 0.5 * (H + H.transpose()).eval();
  if (auto inv = spd_inverse(H)) f.cov_matrix = 2.0 * f.sigma2 * *inv;
  return f;
}

std::vector<double> arma_forecast(const ArmaFit& fit, std::span<const double> y,
                                  const Eigen::MatrixXd& X, const Eigen::MatrixXd& future_X, int H) {
  const int p = static_cast<int>(fit.ar.size());
  const int q = static_cast<int>(fit.ma.size());
  const int l = static_cast<int>(fit.beta_cov.size());
  if (future_X.rows() < H || future_X.cols() != l) {
    throw std::invalid_argument("arma_forecast: future covariates missing");
  }
  std::vector<double> path(y.begin(), y.end());
  std::vector<double> e = arma_residuals(y, X, p, q, fit.coefficients());
  const int N = static_cast<int>(y.size());
  path.resize(N + H);
  e.resize(N + H, 0.0);
  std::vector<double> out;
  for (int h = 0; h < H; ++h) {
    const int n = N + h;
    double pred = fit.intercept;
    for (int j = 0; j < l; ++j) pred += fit.beta_cov[j] * future_X(h, j);
    for (int i = 1; i <= p; ++i) pred += fit.ar[i - 1] * path[n - i];
    for (int j = 1; j <= q; ++j) pred += fit.ma[j - 1] * e[n - j];
    path[n] = pred;
    out.push_back(pred);
  }
  return out;
}

DetectionReport arma_detect(std::span<const double> y, std::span<const double> s, int p, int q,
                            double pfa) {
  if (s.size() != y.size()) throw DetectorError("arma_detect: signal length mismatch");
  Eigen::MatrixXd X(static_cast<Eigen::Index>(s.size()), 1);
  for (std::size_t n = 0; n < s.size(); ++n) X(static_cast<Eigen::Index>(n), 0) = s[n];
  ArmaFit f;
  try {
    f = arma_fit(y, X, p, q);
  } catch (const std::exception& e) {
    throw DetectorError(std::string("arma_detect: ") + e.what());
  }
  if (!f.converged || f.cov_matrix.size() == 0) {
    throw DetectorError("arma_detect: fit did not converge to a regular optimum");
  }
  const double var = f.cov_matrix(1, 1);
  if (!(var > 0.0)) throw DetectorError("arma_detect: non-positive coefficient variance");
  return make_report(f.beta_cov[0] * f.beta_cov[0] / var, 1, pfa);
}

DetectionReport gaussian_detect(std::span<const double> y, std::span<const double> s, double pfa) {
  const auto n = y.size();
  if (s.size() != n) throw DetectorError("gaussian_detect: signal length mismatch");
  if (n < 10) throw DetectorError("gaussian_detect: need at least 10 observations");
  double ms = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ms += s[i];
    my += y[i];
  }
  ms /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (s[i] - ms) * (s[i] - ms);
    sxy += (s[i] - ms) * (y[i] - my);
  }
  if (!(sxx > 1e-12 * n)) throw DetectorError("gaussian_detect: candidate signal is constant");
  const double slope = sxy / sxx;
  const double icpt = my - slope * ms;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - icpt - slope * s[i];
    rss += r * r;
  }
  const double sigma2 = rss / static_cast<double>(n - 2);
  const double var = sigma2 / sxx;
  double stat = std::numeric_limits<double>::infinity();
  if (var > 0.0) stat = slope * slope / var;
  if (slope == 0.0) stat = 0.0;
  return make_report(stat, 1, pfa);
}

HoltWinters holt_winters_run(std::span<const double> y, int period, double alpha, double beta,
                             double gamma) {
  const auto N = y.size();
  if (period < 1) throw std::invalid_argument("holt_winters: period must be >= 1");
  if (N < static_cast<std::size_t>(2 * period)) {
    throw std::invalid_argument("holt_winters: need at least two full periods");
  }
  HoltWinters hw;
  hw.alpha = alpha;
  hw.beta = beta;
  hw.gamma = gamma;
  hw.period = period;
  hw.n_obs = N;
  double level = 0.0;
  for (int i = 0; i < period; ++i) level += y[i];
  level /= period;
  hw.seasonal.resize(period);
  for (int i = 0; i < period; ++i) hw.seasonal[i] = y[i] - level;
  double trend = 0.0;
  for (std::size_t n = period; n < N; ++n) {
    double& season = hw.seasonal[n % period];
    const double pred = level + trend + season;
    hw.sse += (y[n] - pred) * (y[n] - pred);
    const double prev_level = level;
    level = alpha * (y[n] - season) + (1.0 - alpha) * (level + trend);
    trend = beta * (level - prev_level) + (1.0 - beta) * trend;
    season = gamma * (y[n] - level) + (1.0 - gamma) * season;
  }
  hw.level = level;
  hw.trend = trend;
  return hw;
}

std::vector<double> HoltWinters::forecast(int H) const {
  std::vector<double> out;
  for (int h = 1; h <= H; ++h) {
    out.push_back(level + h * trend + seasonal[(n_obs + h - 1) % period]);
  }
  return out;
}

HoltWinters holt_winters_fit(std::span<const double> y, int period) {
  HoltWinters best;
  bool have = false;
  for (int a = 1; a <= 19; ++a) {
    for (int b = 1; b <= 19; ++b) {
      for (int g = 1; g <= 19; ++g) {
        HoltWinters hw = holt_winters_run(y, period, 0.05 * a, 0.05 * b, 0.05 * g);
        if (!have || hw.sse < best.sse) {
          best = std::move(hw);
          have = true;
        }
      }
    }
  }
  return best;
}

std::vector<double> holt_winters_fit_forecast(std::span<const double> y, int period, int H) {
  return holt_winters_fit(y, period).forecast(H);
}

}  // namespace bbarma::baseline
