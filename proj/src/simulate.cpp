#include "bbarma/simulate.hpp"

#include <cmath>
#include <vector>

namespace bbarma {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SignalData simulate(const ModelSpec& spec, const ParamVector& params, std::size_t N,
                    std::uint64_t seed, const Eigen::MatrixXd& X) {
  Rng rng(seed);
  return simulate(spec, params, N, rng, X);
}

SignalData simulate(const ModelSpec& spec, const ParamVector& params, std::size_t N, Rng& rng,
                    const Eigen::MatrixXd& X) {
  spec.validate();
  params.validate(spec);
  const Eigen::Index rows = static_cast<Eigen::Index>(N);
  Eigen::MatrixXd cov = X;
  if (spec.l == 0) {
    cov.resize(rows, 0);
  } else if (cov.rows() != rows || cov.cols() != spec.l) {
    throw std::invalid_argument("simulate: covariates must be N x l");
  }
  if (N <= static_cast<std::size_t>(spec.m())) throw std::invalid_argument("simulate: N must exceed m");

  const int m = spec.m();
  const int burn = m + kBurnIn;
  const int total = burn + static_cast<int>(N);
  const int K = spec.K;
  std::vector<double> ys(total, 0.0);
  std::vector<double> resid(total, 0.0);
  std::vector<int> y(total, 0);

  // The first m values seed the lags; draw them at the intercept-only mean.
  const double mu0 = link_inv(spec.link, params.zeta);
  for (int t = 0; t < m; ++t) {
    y[t] = BetaBinomial(mu0, params.phi_prec, K).sample(rng);
    ys[t] = static_cast<double>(y[t]) / K;
  }
  for (int t = m; t < total; ++t) {
    double eta = params.zeta;
    if (t >= burn && spec.l > 0) eta += cov.row(t - burn).dot(params.beta);
    for (int i = 1; i <= spec.p; ++i) eta += params.phi_ar[i - 1] * ys[t - i];
    for (int j = 1; j <= spec.q; ++j) eta += params.theta[j - 1] * resid[t - j];
    const double mu = link_inv(spec.link, eta);
    y[t] = BetaBinomial(mu, params.phi_prec, K).sample(rng);
    ys[t] = static_cast<double>(y[t]) / K;
    resid[t] = ys[t] - mu;
  }
  return SignalData(std::vector<int>(y.begin() + burn, y.end()), std::move(cov), K);
}

}  // namespace bbarma
