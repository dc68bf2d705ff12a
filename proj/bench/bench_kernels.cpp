// Serial reference versus OpenMP execution of the Monte Carlo drivers, plus
// the per-signal likelihood kernels they spend their time in.

#include <benchmark/benchmark.h>

#include "bbarma/montecarlo.hpp"
#include "bbarma/model.hpp"
#include "bbarma/simulate.hpp"

namespace {

using namespace bbarma;

mc::Execution exec_of(const benchmark::State& st) {
  return st.range(0) == 0 ? mc::Execution::serial : mc::Execution::parallel;
}

void BM_McEstimation(benchmark::State& st) {
  auto c = mc::scenario("II", 300);
  c.replications = 64;
  c.seed = 3;
  for (auto _ : st) benchmark::DoNotOptimize(mc::mc_estimation(c, exec_of(st)));
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_McEstimation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_McRoc(benchmark::State& st) {
  auto c = mc::scenario("IV", 100);
  c.replications = 64;
  c.seed = 3;
  const std::vector<mc::Detector> dets{mc::Detector::bbarma, mc::Detector::gaussian};
  for (auto _ : st) benchmark::DoNotOptimize(mc::mc_roc(c, dets, exec_of(st)));
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_McRoc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

struct Fixture {
  mc::ScenarioConfig c = mc::scenario("II", 500);
  SignalData data = simulate(c.spec, c.true_params, 500, 17, Eigen::MatrixXd(500, 0));
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_LogLikelihood(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(log_likelihood(f.c.spec, f.c.true_params, f.data));
}
BENCHMARK(BM_LogLikelihood);

void BM_Score(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(f.c.spec, f.c.true_params, f.data));
}
BENCHMARK(BM_Score);

void BM_ObservedInformation(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) {
    benchmark::DoNotOptimize(observed_information(f.c.spec, f.c.true_params, f.data));
  }
}
BENCHMARK(BM_ObservedInformation);

}  // namespace

BENCHMARK_MAIN();
