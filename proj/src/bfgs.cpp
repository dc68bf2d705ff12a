#include "bbarma/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbarma::optim {
namespace {

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  Eigen::VectorXd grad;
};

// Minimiser of the cubic interpolating (a, fa, da) and (b, fb, db), kept inside
// the safeguarded interval; falls back on bisection.
double interpolate(const Point& a, const Point& b) {
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double margin = 0.1 * (hi - lo);
  const double d1 = a.d + b.d - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.d * b.d;
  double t = 0.5 * (lo + hi);
  if (disc >= 0.0 && std::isfinite(a.f) && std::isfinite(b.f)) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.d - a.d + 2.0 * d2;
    if (denom != 0.0) {
      const double c = b.alpha - (b.alpha - a.alpha) * (b.d + d2 - d1) / denom;
      if (std::isfinite(c)) t = c;
    }
  }
  if (!(t >= lo + margin && t <= hi - margin)) t = 0.5 * (lo + hi);
  return t;
}

class LineSearch {
 public:
  LineSearch(const Objective& fn, const Eigen::VectorXd& x, const Eigen::VectorXd& dir, double f0,
             double d0, const BfgsOptions& opts, int& evals)
      : fn_(fn), x_(x), dir_(dir), f0_(f0), d0_(d0), opts_(opts), evals_(evals) {}

  // Returns true with `out` set when a strong-Wolfe point (or, failing that, a
  // point with sufficient decrease) was found.
  bool run(double alpha0, Point& out) {
    Point prev{0.0, f0_, d0_, {}};
    const double alpha_max = opts_.max_step / dir_.lpNorm<Eigen::Infinity>();
    double alpha = std::min(alpha0, alpha_max);
    for (int i = 0; i < opts_.max_line_search; ++i) {
      Point cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + opts_.c1 * alpha * d0_ || (i > 0 && cur.f >= prev.f)) {
        return zoom(prev, cur, out);
      }
      if (std::fabs(cur.d) <= -opts_.c2 * d0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.d >= 0.0) return zoom(cur, prev, out);
      if (alpha >= alpha_max) {
        out = std::move(cur);
        return true;
      }
      prev = std::move(cur);
      alpha = std::min(2.0 * alpha, alpha_max);
    }
    if (prev.alpha > 0.0) {
      out = std::move(prev);
      return true;
    }
    return false;
  }

 private:
  Point eval(double alpha) {
    Point p;
    p.alpha = alpha;
    p.grad.resize(x_.size());
    ++evals_;
    p.f = fn_(x_ + alpha * dir_, p.grad);
    if (!std::isfinite(p.f) || !p.grad.allFinite()) {
      p.f = std::numeric_limits<double>::infinity();
      p.d = std::numeric_limits<double>::quiet_NaN();
    } else {
      p.d = p.grad.dot(dir_);
    }
    return p;
  }

  bool zoom(Point lo, Point hi, Point& out) {
    for (int i = 0; i < opts_.max_line_search; ++i) {
      const double alpha = std::isfinite(hi.f) ? interpolate(lo, hi) : 0.5 * (lo.alpha + hi.alpha);
      if (std::fabs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
      Point cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + opts_.c1 * alpha * d0_ || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      if (std::fabs(cur.d) <= -opts_.c2 * d0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.d * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    if (lo.alpha > 0.0) {
      out = std::move(lo);
      return true;
    }
    return false;
  }

  const Objective& fn_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& dir_;
  double f0_;
  double d0_;
  const BfgsOptions& opts_;
  int& evals_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& fn, Eigen::VectorXd x0, const BfgsOptions& opts) {
  const auto n = x0.size();
  const GradMeasure measure = opts.grad_measure
                                  ? opts.grad_measure
                                  : [](const Eigen::VectorXd&, const Eigen::VectorXd& g) {
                                      return g.lpNorm<Eigen::Infinity>();
                                    };
  const Tolerance tolerance =
      opts.tolerance ? opts.tolerance : [](double f) { return 1e-6 * (1.0 + std::fabs(f)); };

  BfgsResult res;
  res.x = std::move(x0);
  res.grad.resize(n);
  res.f = fn(res.x, res.grad);
  res.evaluations = 1;
  if (!std::isfinite(res.f) || !res.grad.allFinite()) {
    res.message = "objective not finite at the starting point";
    return res;
  }

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd H = identity / (1.0 + std::fabs(res.f));
  bool scaled = false;
  bool restarted = false;

  for (int it = 0;; ++it) {
    res.grad_norm = measure(res.x, res.grad);
    if (res.grad_norm <= tolerance(res.f)) {
      res.converged = true;
      res.message = "gradient tolerance reached";
      return res;
    }
    if (it >= opts.max_iters) {
      res.message = "iteration limit reached";
      return res;
    }
    res.iterations = it + 1;

    Eigen::VectorXd dir = -H * res.grad;
    double d0 = dir.dot(res.grad);
    if (!(d0 < 0.0)) {
      H = identity / (1.0 + std::fabs(res.f));
      scaled = false;
      dir = -H * res.grad;
      d0 = dir.dot(res.grad);
    }

    Point next;
    LineSearch ls(fn, res.x, dir, res.f, d0, opts, res.evaluations);
    if (!ls.run(1.0, next)) {
      if (restarted) {
        res.message = "line search failed";
        return res;
      }
      restarted = true;
      H = identity / (1.0 + std::fabs(res.f));
      scaled = false;
      continue;
    }
    restarted = false;

    const Eigen::VectorXd s = next.alpha * dir;
    const Eigen::VectorXd y = next.grad - res.grad;
    res.x += s;
    res.f = next.f;
    res.grad = std::move(next.grad);

    if (s.lpNorm<Eigen::Infinity>() <= opts.step_tol) {
      res.grad_norm = measure(res.x, res.grad);
      res.converged = true;
      res.message = "parameter step below tolerance";
      return res;
    }

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        H = identity * (sy / y.squaredNorm());
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * y;
      H += (rho * rho * y.dot(Hy) + rho) * (s * s.transpose()) -
           rho * (Hy * s.transpose() + s * Hy.transpose());
    }
  }
}

}  // namespace bbarma::optim
