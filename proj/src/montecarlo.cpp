#include "bbarma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bbarma/baselines.hpp"
#include "bbarma/infer.hpp"
#include "bbarma/simulate.hpp"

namespace bbarma::mc {

std::vector<double> default_pfa_grid() {
  return {0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

ScenarioConfig scenario(const std::string& name, std::size_t N) {
  ScenarioConfig c;
  c.name = name;
  c.N = N;
  c.spec.K = 255;
  c.spec.link = LinkKind::logit;
  c.pfa_grid = default_pfa_grid();
  auto arma11 = [&](double zeta, double phi1, double theta1, double prec) {
    c.spec.p = 1;
    c.spec.q = 1;
    c.true_params = ParamVector::zeros(c.spec);
    c.true_params.zeta = zeta;
    c.true_params.phi_ar[0] = phi1;
    c.true_params.theta[0] = theta1;
    c.true_params.phi_prec = prec;
  };
  if (name == "I") {
    c.spec.p = 1;
    c.spec.q = 0;
    c.true_params = ParamVector::zeros(c.spec);
    c.true_params.zeta = 1.0;
    c.true_params.phi_ar[0] = 1.0;
    c.true_params.phi_prec = 20.0;
  } else if (name == "II") {
    arma11(0.2, 0.5, 0.3, 15.0);
  } else if (name == "III") {
    arma11(0.2, 0.5, 0.3, 15.0);
    c.signal = SignalConfig{0.5, 0.5};
  } else if (name == "IV") {
    arma11(1.0, 2.0, 1.0, 50.0);
    c.signal = SignalConfig{0.1, 0.7};
  } else {
    throw std::invalid_argument("unknown scenario '" + name + "'");
  }
  return c;
}

namespace {

struct EstimationRep {
  bool ok = false;
  Eigen::VectorXd estimate;
  std::vector<int> covered;
  int iterations = 0;
};

}  // namespace

EstimationTable mc_estimation(const ScenarioConfig& config, Execution exec) {
  if (config.replications < 1) throw std::invalid_argument("mc_estimation: replications >= 1");
  const ModelSpec& spec = config.spec;
  const Eigen::VectorXd truth = config.true_params.to_vector();
  std::vector<EstimationRep> reps(static_cast<std::size_t>(config.replications));

  for_each_replication(config.replications, exec, config.workers, [&](int i) {
    EstimationRep& rep = reps[static_cast<std::size_t>(i)];
    try {
      const SignalData data =
          simulate(spec, config.true_params, config.N, derive_seed(config.seed, static_cast<std::uint64_t>(i)));
      const FitResult f = fit(spec, data);
      if (!f.converged || !f.has_std_err()) return;
      const auto ci = confidence_interval(f, config.alpha);
      rep.estimate = f.params_hat.to_vector();
      rep.covered.resize(ci.size());
      for (std::size_t j = 0; j < ci.size(); ++j) {
        rep.covered[j] = ci[j].lo <= truth[static_cast<Eigen::Index>(j)] &&
                         truth[static_cast<Eigen::Index>(j)] <= ci[j].hi;
      }
      rep.iterations = f.n_iters;
      rep.ok = true;
    } catch (const std::exception&) {
      rep.ok = false;
    }
  });

  EstimationTable table;
  table.scenario = config.name;
  table.N = config.N;
  table.replications = config.replications;
  const auto names = parameter_names(spec);
  const int dim = spec.dim();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd cov = Eigen::VectorXd::Zero(dim);
  int ok = 0;
  double iters = 0.0;
  for (const auto& rep : reps) {
    if (!rep.ok) {
      ++table.failures;
      continue;
    }
    ++ok;
    iters += rep.iterations;
    const Eigen::VectorXd err = rep.estimate - truth;
    sum += rep.estimate;
    sq += err.cwiseProduct(err);
    for (int j = 0; j < dim; ++j) cov[j] += rep.covered[static_cast<std::size_t>(j)];
  }
  const double denom = ok > 0 ? ok : std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j < dim; ++j) {
    ParamSummary s;
    s.name = names[static_cast<std::size_t>(j)];
    s.true_value = truth[j];
    s.mean = sum[j] / denom;
    s.bias = s.mean - truth[j];
    s.mse = sq[j] / denom;
    s.coverage = cov[j] / denom;
    table.params.push_back(s);
  }
  table.mean_iterations = iters / denom;
  return table;
}

double trapezoid_area(const std::vector<RocPoint>& pts) {
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].pfa_hat - pts[i - 1].pfa_hat) * 0.5 * (pts[i].pd_hat + pts[i - 1].pd_hat);
  }
  return area;
}

RocCurve roc_from_statistics(const std::string& detector, const std::vector<double>& h0,
                             const std::vector<double>& h1, const std::vector<double>& grid,
                             int dof) {
  RocCurve c;
  c.detector = detector;
  c.usable_h0 = static_cast<int>(h0.size());
  c.usable_h1 = static_cast<int>(h1.size());
  auto rate = [](const std::vector<double>& stats, double thr) {
    if (stats.empty()) return 0.0;
    std::size_t hits = 0;
    for (double s : stats) hits += s > thr ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(stats.size());
  };
  for (double a : grid) {
    const double thr = detection_threshold(a, dof);
    RocPoint p{a, rate(h0, thr), rate(h1, thr)};
    if (a >= 1.0) {
      p.pfa_hat = 1.0;
      p.pd_hat = 1.0;
    }
    c.points.push_back(p);
  }
  auto has = [&](double x, double y) {
    return std::any_of(c.points.begin(), c.points.end(),
                       [&](const RocPoint& p) { return p.pfa_hat == x && p.pd_hat == y; });
  };
  if (!has(0.0, 0.0)) c.points.push_back({0.0, 0.0, 0.0});
  if (!has(1.0, 1.0)) c.points.push_back({1.0, 1.0, 1.0});
  std::sort(c.points.begin(), c.points.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.pfa_hat != b.pfa_hat) return a.pfa_hat < b.pfa_hat;
    return a.pd_hat < b.pd_hat;
  });
  c.area = trapezoid_area(c.points);
  return c;
}

std::string to_string(Detector d) {
  switch (d) {
    case Detector::bbarma: return "bbarma";
    case Detector::arma: return "arma";
    case Detector::gaussian: return "gaussian";
  }
  return "?";
}

Detector parse_detector(const std::string& name) {
  if (name == "bbarma") return Detector::bbarma;
  if (name == "arma") return Detector::arma;
  if (name == "gaussian") return Detector::gaussian;
  throw std::invalid_argument("unknown detector '" + name + "'");
}

namespace {

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();

double detector_statistic(Detector d, const ModelSpec& spec, const SignalData& data,
                          const std::vector<double>& s) {
  try {
    switch (d) {
      case Detector::bbarma: return detect_signal(data, s, spec, 0.05).wald_stat;
      case Detector::arma:
        return baseline::arma_detect(data.y_star(), s, spec.p, spec.q, 0.05).wald_stat;
      case Detector::gaussian: return baseline::gaussian_detect(data.y_star(), s, 0.05).wald_stat;
    }
  } catch (const std::exception&) {
  }
  return kFailed;
}

}  // namespace

RocResult mc_roc(const ScenarioConfig& config, const std::vector<Detector>& detectors,
                 Execution exec) {
  if (config.replications < 1) throw std::invalid_argument("mc_roc: replications >= 1");
  ModelSpec gen = config.spec;
  gen.l = 1;
  ParamVector present = config.true_params;
  present.beta = Eigen::VectorXd::Constant(1, config.signal ? config.signal->beta1 : 0.0);
  ParamVector absent = present;
  absent.beta.setZero();
  const double f0 = config.signal ? config.signal->f0 : 0.5;
  const std::vector<double> s = cosine_signal(config.N, f0);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(config.N), 1);
  for (std::size_t n = 0; n < config.N; ++n) X(static_cast<Eigen::Index>(n), 0) = s[n];

  const std::size_t R = static_cast<std::size_t>(config.replications);
  const std::size_t D = detectors.size();
  std::vector<double> h0(R * D, kFailed), h1(R * D, kFailed);

  for_each_replication(config.replications, exec, config.workers, [&](int i) {
    const auto u = static_cast<std::uint64_t>(i);
    try {
      const SignalData with = simulate(gen, present, config.N, derive_seed(config.seed, 2 * u), X);
      const SignalData without =
          simulate(gen, absent, config.N, derive_seed(config.seed, 2 * u + 1), X);
      for (std::size_t d = 0; d < D; ++d) {
        h1[i * D + d] = detector_statistic(detectors[d], config.spec, with, s);
        h0[i * D + d] = detector_statistic(detectors[d], config.spec, without, s);
      }
    } catch (const std::exception&) {
    }
  });

  RocResult out;
  out.scenario = config.name;
  const auto grid = config.pfa_grid.empty() ? default_pfa_grid() : config.pfa_grid;
  for (std::size_t d = 0; d < D; ++d) {
    std::vector<double> a0, a1;
    int failures = 0;
    for (std::size_t i = 0; i < R; ++i) {
      const double v0 = h0[i * D + d];
      const double v1 = h1[i * D + d];
      if (std::isnan(v0)) ++failures; else a0.push_back(v0);
      if (std::isnan(v1)) ++failures; else a1.push_back(v1);
    }
    RocCurve c = roc_from_statistics(to_string(detectors[d]), a0, a1, grid);
    c.failures = failures;
    out.curves.push_back(std::move(c));
  }
  return out;
}

}  // namespace bbarma::mc
