#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbarma/estimate.hpp"

namespace bbarma::mc {

/// How replication loops run. Both produce bitwise-identical results: every
/// replication owns its random stream and results are reduced in index order.
enum class Execution { serial, parallel };

struct SignalConfig {
  double beta1 = 0.0;
  double f0 = 0.0;
};

struct ScenarioConfig {
  std::string name;
  ModelSpec spec;           // generating model (l = 0; the signal adds one covariate)
  ParamVector true_params;  // without beta when a signal is configured
  std::optional<SignalConfig> signal;
  std::size_t N = 500;
  int replications = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.10;  // confidence-interval level for coverage rates
  std::vector<double> pfa_grid;
  int workers = 0;  // 0: OpenMP default
};

/// Built-in scenarios "I".."IV"; throws on an unknown name.
ScenarioConfig scenario(const std::string& name, std::size_t N = 500);

/// The nominal false-alarm grid {0, .05, .1, .15, .2, .3, ..., .9, 1}.
std::vector<double> default_pfa_grid();

struct ParamSummary {
  std::string name;
  double true_value = 0.0;
  double mean = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  double coverage = 0.0;
};

struct EstimationTable {
  std::string scenario;
  std::size_t N = 0;
  int replications = 0;
  int failures = 0;
  std::vector<ParamSummary> params;
  double mean_iterations = 0.0;
};

/// Simulate -> fit cycles; per-parameter mean, bias, MSE and Wald-interval coverage.
EstimationTable mc_estimation(const ScenarioConfig& config, Execution exec = Execution::parallel);

struct RocPoint {
  double alpha = 0.0;  // nominal false-alarm level
  double pfa_hat = 0.0;
  double pd_hat = 0.0;
};

struct RocCurve {
  std::string detector;
  std::vector<RocPoint> points;  // sorted by (pfa_hat, pd_hat), includes (0,0) and (1,1)
  double area = 0.0;
  int failures = 0;   // replications excluded because a fit failed
  int usable_h0 = 0;  // replications contributing to pfa_hat
  int usable_h1 = 0;  // replications contributing to pd_hat
};

/// Trapezoid area under sorted points.
double trapezoid_area(const std::vector<RocPoint>& points);

/// Assembles a curve from Wald statistics under H0 (signal absent) and H1 (present).
/// Non-finite entries in the inputs are not expected; callers drop failed fits.
RocCurve roc_from_statistics(const std::string& detector, const std::vector<double>& stats_h0,
                             const std::vector<double>& stats_h1, const std::vector<double>& grid,
                             int dof = 1);

struct RocResult {
  std::string scenario;
  std::vector<RocCurve> curves;  // bbarma, arma, gaussian
};

enum class Detector { bbarma, arma, gaussian };
std::string to_string(Detector d);
Detector parse_detector(const std::string& name);

/// Per replication: simulate the signal-present and signal-absent series, fit every
/// requested detector to both, and trace PD against the empirical PFA over the grid.
RocResult mc_roc(const ScenarioConfig& config,
                 const std::vector<Detector>& detectors = {Detector::bbarma, Detector::arma,
                                                           Detector::gaussian},
                 Execution exec = Execution::parallel);

/// Runs body(i) for i in [0, n) either serially or on an OpenMP worker pool.
template <class Body>
void for_each_replication(int n, Execution exec, int workers, Body&& body);

}  // namespace bbarma::mc

#include "bbarma/detail/montecarlo_impl.hpp"
