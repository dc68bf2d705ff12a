#include "bbarma/betabinom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bbarma/numkernel.hpp"

namespace bbarma {

BetaBinomial::BetaBinomial(double mu, double phi, int K) : mu_(mu), phi_(phi), K_(K) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("BetaBinomial: mu must lie in (0,1)");
  if (!(phi > 0.0) || !std::isfinite(phi)) {
    throw std::domain_error("BetaBinomial: phi must be positive");
  }
  if (K < 1) throw std::domain_error("BetaBinomial: K must be >= 1");
}

double BetaBinomial::log_pf(int y) const {
  if (y < 0 || y > K_) {
    throw std::domain_error("BetaBinomial::log_pf: y=" + std::to_string(y) + " outside [0, " +
                            std::to_string(K_) + "]");
  }
  using num::log_gamma;
  const double a = this->a();
  const double b = this->b();
  return log_gamma(K_ + 1.0) - log_gamma(y + 1.0) - log_gamma(K_ - y + 1.0) + log_gamma(a + y) +
         log_gamma(K_ - y + b) - log_gamma(K_ + phi_) + log_gamma(phi_) - log_gamma(a) -
         log_gamma(b);
}

double BetaBinomial::mean() const { return mu_ * K_; }

double BetaBinomial::variance() const {
  return (mu_ - mu_ * mu_) * K_ * (K_ + phi_) / (1.0 + phi_);
}

int BetaBinomial::sample(Rng& rng) const { return sample_binomial(K_, sample_beta(a(), b(), rng), rng); }

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sample_beta(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double s = x + y;
  // Both gammas can underflow for tiny shapes; fall back on the Bernoulli limit.
  if (!(s > 0.0)) return uniform01(rng) < a / (a + b) ? 1.0 : 0.0;
  return x / s;
}

int sample_binomial(int K, double p, Rng& rng) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return K;
  // Invert from the lighter tail so the start probability cannot underflow to zero
  // unless the outcome is effectively deterministic.
  const bool flip = p > 0.5;
  const double pp = flip ? 1.0 - p : p;
  const double ratio = pp / (1.0 - pp);
  double prob = std::exp(K * std::log1p(-pp));
  double cdf = prob;
  const double u = uniform01(rng);
  int y = 0;
  while (u > cdf && y < K) {
    prob *= ratio * (K - y) / (y + 1.0);
    ++y;
    cdf += prob;
  }
  return flip ? K - y : y;
}

}  // namespace bbarma
