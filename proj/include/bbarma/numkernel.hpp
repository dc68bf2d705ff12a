#pragma once

// Scalar special functions and distribution quantiles used by the likelihood,
// the information matrix and the hypothesis tests. All functions are pure and
// throw std::domain_error outside their domain.

namespace bbarma::num {

/// log Gamma(z) for z > 0.
double log_gamma(double z);

/// Digamma psi(z) = d/dz log Gamma(z), z > 0.
double digamma(double z);

/// Trigamma psi'(z), z > 0.
double trigamma(double z);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double gamma_q(double a, double x);

double chi2_cdf(double x, int dof);

/// Upper tail 1 - chi2_cdf(x, dof) without cancellation.
double chi2_sf(double x, int dof);

/// Inverse of chi2_cdf: returns x with chi2_cdf(x, dof) == prob.
double chi2_quantile(double prob, int dof);

double normal_pdf(double z);
double normal_cdf(double z);

/// Standard normal inverse CDF.
double normal_quantile(double prob);

}  // namespace bbarma::num
