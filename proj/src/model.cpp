#include "bbarma/model.hpp"

#include <cmath>

#include "bbarma/numkernel.hpp"

namespace bbarma {
namespace {

using num::digamma;
using num::log_gamma;
using num::trigamma;

// Digamma/trigamma arguments of one likelihood term.
struct TermArgs {
  double a;       // mu * phi
  double b;       // (1 - mu) * phi
  double ya;      // y + a
  double yb;      // K - y + b
};

TermArgs term_args(int y, int K, double mu, double phi) {
  const double a = mu * phi;
  const double b = (1.0 - mu) * phi;
  return {a, b, y + a, K - y + b};
}

double term_loglik(const TermArgs& t, int K, double phi, double log_choose) {
  return log_choose + log_gamma(t.ya) - log_gamma(t.a) + log_gamma(t.yb) - log_gamma(t.b) +
         log_gamma(phi) - log_gamma(K + phi);
}

}  // namespace

void ModelSpec::validate() const {
  if (p < 0 || q < 0 || l < 0) throw std::invalid_argument("ModelSpec: orders must be >= 0");
  if (K < 1) throw std::invalid_argument("ModelSpec: K must be >= 1");
}

ParamVector ParamVector::zeros(const ModelSpec& spec) {
  ParamVector pv;
  pv.beta = Eigen::VectorXd::Zero(spec.l);
  pv.phi_ar = Eigen::VectorXd::Zero(spec.p);
  pv.theta = Eigen::VectorXd::Zero(spec.q);
  pv.phi_prec = 1.0;
  return pv;
}

ParamVector ParamVector::from_vector(const ModelSpec& spec, const Eigen::VectorXd& gamma) {
  if (gamma.size() != spec.dim()) {
    throw std::invalid_argument("ParamVector::from_vector: expected " + std::to_string(spec.dim()) +
                                " entries, got " + std::to_string(gamma.size()));
  }
  ParamVector pv;
  pv.zeta = gamma[spec.idx_zeta()];
  pv.beta = gamma.segment(1, spec.l);
  pv.phi_ar = gamma.segment(1 + spec.l, spec.p);
  pv.theta = gamma.segment(1 + spec.l + spec.p, spec.q);
  pv.phi_prec = gamma[spec.idx_prec()];
  return pv;
}

Eigen::VectorXd ParamVector::to_vector() const {
  const auto l = beta.size();
  const auto p = phi_ar.size();
  const auto q = theta.size();
  Eigen::VectorXd g(l + p + q + 2);
  g[0] = zeta;
  g.segment(1, l) = beta;
  g.segment(1 + l, p) = phi_ar;
  g.segment(1 + l + p, q) = theta;
  g[l + p + q + 1] = phi_prec;
  return g;
}

void ParamVector::validate(const ModelSpec& spec) const {
  if (beta.size() != spec.l || phi_ar.size() != spec.p || theta.size() != spec.q) {
    throw std::invalid_argument("ParamVector: shape does not match the model orders");
  }
  if (!(phi_prec > 0.0) || !std::isfinite(phi_prec)) {
    throw std::invalid_argument("ParamVector: precision must be positive");
  }
}

SignalData::SignalData(std::vector<int> y, Eigen::MatrixXd X, int K)
    : y_(std::move(y)), X_(std::move(X)), K_(K) {
  if (K_ < 1) throw std::invalid_argument("SignalData: K must be >= 1");
  if (X_.rows() == 0 && X_.cols() == 0) X_.resize(static_cast<Eigen::Index>(y_.size()), 0);
  if (static_cast<std::size_t>(X_.rows()) != y_.size()) {
    throw std::invalid_argument("SignalData: covariate rows do not match signal length");
  }
  y_star_.reserve(y_.size());
  log_choose_.reserve(y_.size());
  const double lgk = log_gamma(K_ + 1.0);
  for (std::size_t n = 0; n < y_.size(); ++n) {
    const int v = y_[n];
    if (v < 0 || v > K_) {
      throw std::invalid_argument("SignalData: y[" + std::to_string(n) + "]=" + std::to_string(v) +
                                  " outside [0, " + std::to_string(K_) + "]");
    }
    y_star_.push_back(static_cast<double>(v) / K_);
    log_choose_.push_back(lgk - log_gamma(v + 1.0) - log_gamma(K_ - v + 1.0));
  }
}

SignalData SignalData::head(std::size_t n) const {
  if (n > y_.size()) throw std::invalid_argument("SignalData::head: n exceeds length");
  return SignalData(std::vector<int>(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(n)),
                    X_.topRows(static_cast<Eigen::Index>(n)), K_);
}

FilterState filter(const ModelSpec& spec, const ParamVector& params, const SignalData& data,
                   bool with_sensitivities) {
  params.validate(spec);
  if (data.n_covariates() != spec.l) {
    throw std::invalid_argument("filter: data has " + std::to_string(data.n_covariates()) +
                                " covariates, model expects " + std::to_string(spec.l));
  }
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const int nl = spec.n_linear();
  const auto& ys = data.y_star();
  const auto& X = data.X();

  FilterState st;
  st.m = m;
  st.eta = Eigen::VectorXd::Zero(N);
  st.mu = Eigen::VectorXd::Zero(N);
  st.resid_ma = Eigen::VectorXd::Zero(N);
  if (with_sensitivities) st.sens = Eigen::MatrixXd::Zero(N, nl);
  Eigen::VectorXd dmu_deta = Eigen::VectorXd::Zero(N);

  for (int n = m; n < N; ++n) {
    double eta = params.zeta;
    if (spec.l > 0) eta += X.row(n).dot(params.beta);
    for (int i = 1; i <= spec.p; ++i) eta += params.phi_ar[i - 1] * ys[n - i];
    for (int j = 1; j <= spec.q; ++j) eta += params.theta[j - 1] * st.resid_ma[n - j];
    if (!std::isfinite(eta)) throw NumericError("filter: non-finite linear predictor", n);

    const double mu = link_inv(spec.link, eta);
    st.eta[n] = eta;
    st.mu[n] = mu;
    st.resid_ma[n] = ys[n] - mu;
    dmu_deta[n] = 1.0 / link_d1(spec.link, mu);

    if (!with_sensitivities) continue;
    auto row = st.sens.row(n);
    row[spec.idx_zeta()] = 1.0;
    for (int k = 0; k < spec.l; ++k) row[spec.idx_beta(k)] = X(n, k);
    for (int i = 1; i <= spec.p; ++i) row[spec.idx_phi(i - 1)] = ys[n - i];
    for (int j = 1; j <= spec.q; ++j) row[spec.idx_theta(j - 1)] = st.resid_ma[n - j];
    for (int s = 1; s <= spec.q; ++s) {
      if (n - s < m) break;
      row -= params.theta[s - 1] * dmu_deta[n - s] * st.sens.row(n - s);
    }
  }
  return st;
}

Eigen::VectorXd log_likelihood_terms(const ModelSpec& spec, const ParamVector& params,
                                     const SignalData& data) {
  const FilterState st = filter(spec, params, data, false);
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const double phi = params.phi_prec;
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(std::max(0, N - m));
  for (int n = m; n < N; ++n) {
    const TermArgs t = term_args(data.y()[n], spec.K, st.mu[n], phi);
    terms[n - m] = term_loglik(t, spec.K, phi, data.log_choose(n));
  }
  return terms;
}

double log_likelihood(const ModelSpec& spec, const ParamVector& params, const SignalData& data) {
  return log_likelihood_terms(spec, params, data).sum();
}

LikelihoodEval evaluate(const ModelSpec& spec, const ParamVector& params, const SignalData& data) {
  const FilterState st = filter(spec, params, data, true);
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const int K = spec.K;
  const double phi = params.phi_prec;
  const double psi_phi = digamma(phi) - digamma(K + phi);

  LikelihoodEval out;
  out.score = Eigen::VectorXd::Zero(spec.dim());
  auto linear = out.score.head(spec.n_linear());
  double dphi = 0.0;
  for (int n = m; n < N; ++n) {
    const double mu = st.mu[n];
    const TermArgs t = term_args(data.y()[n], K, mu, phi);
    out.loglik += term_loglik(t, K, phi, data.log_choose(n));
    const double d_ya = digamma(t.ya) - digamma(t.a);
    const double d_yb = digamma(t.yb) - digamma(t.b);
    const double dl_dmu = phi * (d_ya - d_yb);
    const double dmu_deta = 1.0 / link_d1(spec.link, mu);
    linear += (dl_dmu * dmu_deta) * st.sens.row(n).transpose();
    dphi += mu * d_ya + (1.0 - mu) * d_yb + psi_phi;
  }
  out.score[spec.idx_prec()] = dphi;
  return out;
}

Eigen::VectorXd score(const ModelSpec& spec, const ParamVector& params, const SignalData& data) {
  return evaluate(spec, params, data).score;
}

DerivativeWorkspace derivative_workspace(const ModelSpec& spec, const ParamVector& params,
                                         const SignalData& data) {
  const FilterState st = filter(spec, params, data, true);
  const int N = static_cast<int>(data.size());
  const int m = spec.m();
  const int M = std::max(0, N - m);
  const int K = spec.K;
  const int nl = spec.n_linear();
  const double phi = params.phi_prec;
  const double tri_phi = trigamma(phi) - trigamma(K + phi);

  DerivativeWorkspace ws;
  ws.T_diag.resize(M);
  ws.Upsilon.resize(M);
  ws.UpsilonStar.resize(M);
  ws.UpsilonPhi.resize(M);
  ws.PhiStar.resize(M);
  ws.kappa.resize(M);
  ws.xi.resize(M);
  ws.sens = st.sens.bottomRows(M);
  Eigen::VectorXd dmu2(M);  // d2 mu / d eta2

  for (int i = 0; i < M; ++i) {
    const int n = m + i;
    const double mu = st.mu[n];
    const TermArgs t = term_args(data.y()[n], K, mu, phi);
    const double d_ya = digamma(t.ya) - digamma(t.a);
    const double d_yb = digamma(t.yb) - digamma(t.b);
    const double t_ya = trigamma(t.ya) - trigamma(t.a);
    const double t_yb = trigamma(t.yb) - trigamma(t.b);
    const double g1 = link_d1(spec.link, mu);
    const double g2 = link_d2(spec.link, mu);

    ws.T_diag[i] = 1.0 / g1;
    ws.Upsilon[i] = d_ya - d_yb;
    ws.UpsilonStar[i] = phi * phi * (t_ya + t_yb);
    ws.UpsilonPhi[i] = phi * (mu * t_ya - (1.0 - mu) * t_yb) + ws.Upsilon[i];
    ws.PhiStar[i] = mu * mu * t_ya + (1.0 - mu) * (1.0 - mu) * t_yb + tri_phi;
    ws.kappa[i] = g2 / (g1 * g1);
    dmu2[i] = -ws.kappa[i] * ws.T_diag[i];
    ws.xi[i] = phi * ws.Upsilon[i] * ws.kappa[i] * ws.T_diag[i] -
               ws.UpsilonStar[i] * ws.T_diag[i] * ws.T_diag[i];
  }

  if (spec.q == 0) return ws;

  // Second-order sensitivities; eta depends on the parameters nonlinearly only
  // through the MA feedback, so these vanish identically when q == 0.
  ws.second.assign(M, Eigen::MatrixXd::Zero(nl, nl));
  for (int i = 0; i < M; ++i) {
    Eigen::MatrixXd& S = ws.second[i];
    for (int j = 1; j <= spec.q; ++j) {
      const int lag = i - j;
      if (lag < 0) break;
      const int tj = spec.idx_theta(j - 1);
      const Eigen::RowVectorXd hd = ws.T_diag[lag] * ws.sens.row(lag);
      S.row(tj) -= hd;
      S.col(tj) -= hd.transpose();
    }
    for (int s = 1; s <= spec.q; ++s) {
      const int lag = i - s;
      if (lag < 0) break;
      const double th = params.theta[s - 1];
      const auto d = ws.sens.row(lag);
      S.noalias() -= (th * dmu2[lag]) * d.transpose() * d;
      S -= (th * ws.T_diag[lag]) * ws.second[lag];
    }
  }
  return ws;
}

Eigen::MatrixXd observed_information(const ModelSpec& spec, const ParamVector& params,
                                     const SignalData& data) {
  const DerivativeWorkspace ws = derivative_workspace(spec, params, data);
  const int nl = spec.n_linear();
  const int M = static_cast<int>(ws.xi.size());
  const double phi = params.phi_prec;

  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(spec.dim(), spec.dim());
  auto lin = info.topLeftCorner(nl, nl);
  lin.noalias() = ws.sens.transpose() * ws.xi.asDiagonal() * ws.sens;
  if (!ws.second.empty()) {
    for (int i = 0; i < M; ++i) lin -= (phi * ws.Upsilon[i] * ws.T_diag[i]) * ws.second[i];
  }
  const Eigen::VectorXd cross =
      -(ws.sens.transpose() * ws.T_diag.cwiseProduct(ws.UpsilonPhi));
  info.block(0, nl, nl, 1) = cross;
  info.block(nl, 0, 1, nl) = cross.transpose();
  info(nl, nl) = -ws.PhiStar.sum();
  // Enforce exact symmetry of the accumulated blocks.
  lin = 0.5 * (lin + lin.transpose()).eval();
  return info;
}

}  // namespace bbarma
