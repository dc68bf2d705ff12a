#pragma once

// Finite-difference oracles shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "bbarma/model.hpp"

namespace bbarma::testing {

// Richardson-extrapolated central difference of f along coordinate j.
template <class F>
double richardson(F&& f, const Eigen::VectorXd& x, int j) {
  const double h = 1e-3 * (1.0 + std::fabs(x[j]));
  auto central = [&](double step) {
    Eigen::VectorXd a = x, b = x;
    a[j] += step;
    b[j] -= step;
    return (f(a) - f(b)) / (2.0 * step);
  };
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

inline Eigen::VectorXd fd_score(const ModelSpec& spec, const ParamVector& params,
                                const SignalData& data) {
  const Eigen::VectorXd g = params.to_vector();
  auto ll = [&](const Eigen::VectorXd& v) {
    return log_likelihood(spec, ParamVector::from_vector(spec, v), data);
  };
  Eigen::VectorXd out(g.size());
  for (int j = 0; j < g.size(); ++j) out[j] = richardson(ll, g, j);
  return out;
}

// Negative Jacobian of the analytic score.
inline Eigen::MatrixXd fd_information(const ModelSpec& spec, const ParamVector& params,
                                      const SignalData& data) {
  const Eigen::VectorXd g = params.to_vector();
  const int d = static_cast<int>(g.size());
  Eigen::MatrixXd H(d, d);
  for (int i = 0; i < d; ++i) {
    auto si = [&](const Eigen::VectorXd& v) {
      return score(spec, ParamVector::from_vector(spec, v), data)[i];
    };
    for (int j = 0; j < d; ++j) H(i, j) = -richardson(si, g, j);
  }
  return H;
}

// max_j |a_j - b_j| / max(1, |b_j|)
inline double score_rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double e = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    e = std::max(e, std::fabs(a[j] - b[j]) / std::max(1.0, std::fabs(b[j])));
  }
  return e;
}

// max_ij |A_ij - B_ij| / sqrt(|B_ii B_jj|)
inline double info_rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double e = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const double scale = std::sqrt(std::fabs(b(i, i) * b(j, j)));
      e = std::max(e, std::fabs(a(i, j) - b(i, j)) / std::max(scale, 1e-300));
    }
  }
  return e;
}

}  // namespace bbarma::testing
