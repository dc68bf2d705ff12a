#pragma once

#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace bbarma::optim {

/// Objective to minimise: returns f(x) and writes the gradient. A non-finite
/// return value marks x as outside the feasible region.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// Convergence measure evaluated at each accepted iterate (e.g. a gradient norm
/// in a different parameterization). Converged when it returns <= the value of
/// `tolerance` at the same iterate.
using GradMeasure = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd& grad)>;
using Tolerance = std::function<double(double f)>;

struct BfgsOptions {
  int max_iters = 500;
  double step_tol = 1e-10;
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.9;   // curvature
  int max_line_search = 40;
  double max_step = std::numeric_limits<double>::infinity();  // sup-norm bound on each step
  GradMeasure grad_measure;  // default: sup-norm of grad
  Tolerance tolerance;       // default: 1e-6 * (1 + |f|)
};

struct BfgsResult {
  Eigen::VectorXd x;
  Eigen::VectorXd grad;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  std::string message;
};

/// Quasi-Newton minimisation with a dense inverse-Hessian update and a line
/// search enforcing the strong Wolfe conditions. The initial inverse Hessian is
/// I / (1 + |f(x0)|), rescaled by y's / y'y before the first update.
BfgsResult minimize_bfgs(const Objective& fn, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace bbarma::optim
