#include "bbarma/infer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "bbarma/numkernel.hpp"

namespace bbarma {

double detection_threshold(double pfa, int dof) {
  if (pfa < 0.0 || pfa > 1.0) throw std::domain_error("detection_threshold: pfa in [0,1]");
  if (pfa == 0.0) return std::numeric_limits<double>::infinity();
  if (pfa == 1.0) return 0.0;
  return num::chi2_quantile(1.0 - pfa, dof);
}

DetectionReport make_report(double wald_stat, int dof, double pfa) {
  DetectionReport r;
  r.wald_stat = wald_stat;
  r.dof = dof;
  r.threshold = detection_threshold(pfa, dof);
  r.p_value = num::chi2_sf(wald_stat, dof);
  r.detected = wald_stat > r.threshold;
  return r;
}

double wald_statistic(const Eigen::VectorXd& estimate, const Eigen::MatrixXd& covariance,
                      const std::vector<int>& interest_idx, const Eigen::VectorXd& null_values) {
  const auto nu = static_cast<Eigen::Index>(interest_idx.size());
  if (nu == 0) throw TestError("wald_statistic: empty interest set");
  if (null_values.size() != nu) throw TestError("wald_statistic: null value count mismatch");
  std::set<int> seen;
  for (int i : interest_idx) {
    if (i < 0 || i >= estimate.size()) throw TestError("wald_statistic: index out of range");
    if (!seen.insert(i).second) throw TestError("wald_statistic: duplicate interest index");
  }
  Eigen::VectorXd diff(nu);
  Eigen::MatrixXd block(nu, nu);
  for (Eigen::Index a = 0; a < nu; ++a) {
    diff[a] = estimate[interest_idx[a]] - null_values[a];
    for (Eigen::Index b = 0; b < nu; ++b) block(a, b) = covariance(interest_idx[a], interest_idx[b]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success) throw TestError("wald_statistic: singular covariance block");
  const double stat = diff.dot(llt.solve(diff));
  if (!std::isfinite(stat)) throw TestError("wald_statistic: non-finite statistic");
  return std::max(0.0, stat);
}

DetectionReport wald_test(const FitResult& fit, const std::vector<int>& interest_idx,
                          const Eigen::VectorXd& null_values, double pfa) {
  if (!fit.converged) throw TestError("wald_test: fit did not converge");
  if (fit.info_inverse.size() == 0) throw TestError("wald_test: information matrix not invertible");
  const double stat =
      wald_statistic(fit.params_hat.to_vector(), fit.info_inverse, interest_idx, null_values);
  return make_report(stat, static_cast<int>(interest_idx.size()), pfa);
}

std::vector<double> cosine_signal(std::size_t N, double f0) {
  std::vector<double> s(N);
  for (std::size_t n = 0; n < N; ++n) {
    s[n] = std::cos(2.0 * std::numbers::pi * f0 * static_cast<double>(n + 1));
  }
  return s;
}

DetectionReport detect_signal(const SignalData& data, const std::vector<double>& candidate,
                              ModelSpec spec, double pfa, const FitOptions& opts) {
  if (candidate.size() != data.size()) throw TestError("detect_signal: candidate length mismatch");
  spec.l = 1;
  spec.K = data.K();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(candidate.size()), 1);
  for (std::size_t n = 0; n < candidate.size(); ++n) X(static_cast<Eigen::Index>(n), 0) = candidate[n];
  const SignalData with_s(data.y(), std::move(X), data.K());
  FitResult f;
  try {
    f = fit(spec, with_s, opts);
  } catch (const std::exception& e) {
    throw TestError(std::string("detect_signal: fit failed: ") + e.what());
  }
  return wald_test(f, {spec.idx_beta(0)}, Eigen::VectorXd::Zero(1), pfa);
}

}  // namespace bbarma
