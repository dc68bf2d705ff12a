#pragma once

#include <random>

namespace bbarma {

/// Random stream used across the library. Each worker owns one.
using Rng = std::mt19937_64;

/// Beta-binomial law of Y on {0, ..., K} in mean/precision form:
/// a = mu * phi, b = (1 - mu) * phi, E(Y) = mu * K.
class BetaBinomial {
 public:
  BetaBinomial(double mu, double phi, int K);

  double mu() const { return mu_; }
  double phi() const { return phi_; }
  int K() const { return K_; }
  double a() const { return mu_ * phi_; }
  double b() const { return (1.0 - mu_) * phi_; }

  /// log P(Y = y), evaluated entirely through log-gamma.
  double log_pf(int y) const;

  double mean() const;
  double variance() const;

  /// Exact draw: p ~ Beta(a, b), then y ~ Binomial(K, p).
  int sample(Rng& rng) const;

 private:
  double mu_;
  double phi_;
  int K_;
};

struct Moments {
  double mean;
  double variance;
};

inline Moments moments(const BetaBinomial& d) { return {d.mean(), d.variance()}; }

/// Binomial(K, p) by sequential inversion of the CDF.
int sample_binomial(int K, double p, Rng& rng);

/// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
double sample_beta(double a, double b, Rng& rng);

/// Uniform on [0, 1) built from the top 53 bits of one generator output.
double uniform01(Rng& rng);

}  // namespace bbarma
