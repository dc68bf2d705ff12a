#include "bbarma/estimate.hpp"

#include <cmath>
#include <limits>

#include "bbarma/bfgs.hpp"
#include "bbarma/numkernel.hpp"

namespace bbarma {

std::vector<std::string> parameter_names(const ModelSpec& spec) {
  std::vector<std::string> names{"zeta"};
  for (int k = 0; k < spec.l; ++k) names.push_back("beta" + std::to_string(k + 1));
  for (int i = 0; i < spec.p; ++i) names.push_back("phi" + std::to_string(i + 1));
  for (int j = 0; j < spec.q; ++j) names.push_back("theta" + std::to_string(j + 1));
  names.push_back("precision");
  return names;
}

ParamVector ols_init(const ModelSpec& spec, const SignalData& data, bool allow_rank_deficient) {
  spec.validate();
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const int rows = N - m;
  const int cols = 1 + spec.l + spec.p;
  if (rows < cols) {
    throw InitError("ols_init: need at least " + std::to_string(cols) +
                    " observations after conditioning, have " + std::to_string(rows));
  }
  if (data.n_covariates() != spec.l) throw InitError("ols_init: covariate count mismatch");

  const auto& ys = data.y_star();
  Eigen::MatrixXd D(rows, cols);
  Eigen::VectorXd r(rows);
  for (int i = 0; i < rows; ++i) {
    const int n = m + i;
    D(i, 0) = 1.0;
    for (int k = 0; k < spec.l; ++k) D(i, 1 + k) = data.X()(n, k);
    for (int j = 1; j <= spec.p; ++j) D(i, spec.l + j) = ys[n - j];
    r[i] = ys[n];
  }

  Eigen::VectorXd coef;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
  if (qr.rank() < cols) {
    if (!allow_rank_deficient) {
      std::vector<std::string> names{"intercept"};
      for (int k = 0; k < spec.l; ++k) names.push_back("x" + std::to_string(k + 1));
      for (int j = 1; j <= spec.p; ++j) names.push_back("ylag" + std::to_string(j));
      // Columns carrying weight in the null space of D are the collinear ones.
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
      const Eigen::Index null_dim = cols - qr.rank();
      const Eigen::MatrixXd kernel = svd.matrixV().rightCols(null_dim);
      std::string bad;
      for (int c = 0; c < cols; ++c) {
        if (kernel.row(c).norm() < 1e-8) continue;
        if (!bad.empty()) bad += ", ";
        bad += names[static_cast<std::size_t>(c)];
      }
      throw InitError("ols_init: rank-deficient design; collinear columns: " + bad);
    }
    coef = D.completeOrthogonalDecomposition().solve(r);
  } else {
    coef = qr.solve(r);
  }

  ParamVector pv = ParamVector::zeros(spec);
  pv.zeta = coef[0];
  pv.beta = coef.segment(1, spec.l);
  pv.phi_ar = coef.segment(1 + spec.l, spec.p);
  pv.phi_prec = 1.0;
  return pv;
}

std::optional<Eigen::MatrixXd> spd_inverse(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) return std::nullopt;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  if (!inv.allFinite()) return std::nullopt;
  return Eigen::MatrixXd(0.5 * (inv + inv.transpose()));
}

InformationCriteria information_criteria(double loglik, int r, std::size_t n_eff) {
  const double n = static_cast<double>(n_eff);
  return {-2.0 * loglik + 2.0 * r, -2.0 * loglik + r * std::log(n),
          -2.0 * loglik + 2.0 * r * std::log(std::log(n))};
}

FitResult fit(const ModelSpec& spec, const SignalData& data, const FitOptions& opts) {
  spec.validate();
  if (data.K() != spec.K) throw FitError("fit: data K does not match the model K");
  const int dim = spec.dim();
  const int nl = spec.n_linear();
  if (static_cast<int>(data.size()) <= spec.m() + dim) {
    throw FitError("fit: signal too short for " + std::to_string(dim) + " parameters");
  }

  const ParamVector start = opts.start ? *opts.start : ols_init(spec, data);
  start.validate(spec);

  // Internal coordinates: linear parameters unchanged, precision on the log scale.
  auto to_params = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd g = z;
    g[nl] = std::exp(z[nl]);
    return ParamVector::from_vector(spec, g);
  };
  const optim::Objective objective = [&](const Eigen::VectorXd& z, Eigen::VectorXd& grad) {
    const double phi = std::exp(z[nl]);
    if (!(phi > 0.0) || !std::isfinite(phi)) return std::numeric_limits<double>::infinity();
    try {
      const LikelihoodEval ev = evaluate(spec, to_params(z), data);
      if (!std::isfinite(ev.loglik)) return std::numeric_limits<double>::infinity();
      grad = -ev.score;
      grad[nl] *= phi;
      return -ev.loglik;
    } catch (const NumericError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  optim::BfgsOptions bo;
  bo.max_iters = opts.max_iters;
  // Far from the optimum the likelihood can flatten towards the binomial limit
  // (phi -> inf); bounding each step keeps the search out of that plateau.
  bo.max_step = 1.0;
  bo.grad_measure = [nl](const Eigen::VectorXd& z, const Eigen::VectorXd& g) {
    double sup = g.head(nl).lpNorm<Eigen::Infinity>();
    return std::max(sup, std::fabs(g[nl]) / std::exp(z[nl]));
  };
  if (opts.grad_tol) {
    const double tol = *opts.grad_tol;
    bo.tolerance = [tol](double) { return tol; };
  }

  Eigen::VectorXd z0 = start.to_vector();
  z0[nl] = std::log(start.phi_prec);
  const optim::BfgsResult br = optim::minimize_bfgs(objective, z0, bo);

  FitResult res;
  res.spec = spec;
  res.params_hat = to_params(br.x);
  res.loglik = -br.f;
  res.n_iters = br.iterations;
  res.converged = br.converged && std::isfinite(br.f);
  res.grad_norm = br.grad_norm;
  res.message = br.message;
  res.n_effective = data.size() - static_cast<std::size_t>(spec.m());
  const InformationCriteria ic = information_criteria(res.loglik, dim, res.n_effective);
  res.aic = ic.aic;
  res.sic = ic.sic;
  res.hq = ic.hq;

  if (!std::isfinite(br.f)) {
    res.info_singular = true;
    return res;
  }
  try {
    res.info_matrix = observed_information(spec, res.params_hat, data);
  } catch (const std::exception&) {
    res.info_singular = true;
    return res;
  }
  if (auto inv = spd_inverse(res.info_matrix)) {
    res.info_inverse = std::move(*inv);
    res.std_err = res.info_inverse.diagonal().cwiseMax(0.0).cwiseSqrt();
  } else {
    res.info_singular = true;
  }
  return res;
}

std::vector<Interval> confidence_interval(const FitResult& fit, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("confidence_interval: alpha in (0,1)");
  if (!fit.has_std_err()) throw FitError("confidence_interval: standard errors unavailable");
  const double z = num::normal_quantile(1.0 - alpha / 2.0);
  const Eigen::VectorXd g = fit.params_hat.to_vector();
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    out.push_back({g[i] - z * fit.std_err[i], g[i] + z * fit.std_err[i]});
  }
  return out;
}

}  // namespace bbarma
