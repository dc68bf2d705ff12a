// Command-line front end: simulation, fitting, detection, forecasting,
// diagnostics and the Monte Carlo drivers. Every command writes a JSON report
// and plot-ready CSVs into --out-dir.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbarma/baselines.hpp"
#include "bbarma/diagnostics.hpp"
#include "bbarma/forecast.hpp"
#include "bbarma/infer.hpp"
#include "bbarma/io.hpp"
#include "bbarma/montecarlo.hpp"
#include "bbarma/simulate.hpp"

namespace fs = std::filesystem;
using namespace bbarma;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int reps = 1000;
  int workers = 0;
  std::string out_dir = ".";
  int p = 1;
  int q = 1;
  std::string link = "logit";
  int max_iters = 500;
  std::optional<double> grad_tol;
  int K = 0;
};

struct SignalArgs {
  std::string file;
  std::vector<std::string> covariates;
};

ModelSpec model_spec(const Globals& g, int l) {
  ModelSpec s;
  s.p = g.p;
  s.q = g.q;
  s.l = l;
  s.link = parse_link(g.link);
  s.K = g.K;
  s.validate();
  return s;
}

FitOptions fit_options(const Globals& g) {
  FitOptions o;
  o.max_iters = g.max_iters;
  o.grad_tol = g.grad_tol;
  return o;
}

SignalData load(const Globals& g, const SignalArgs& a) {
  if (g.K < 1) throw std::invalid_argument("--k is required: declare the maximum count K");
  return io::ingest_csv(a.file, g.K, a.covariates);
}

fs::path out(const Globals& g, const std::string& name) { return fs::path(g.out_dir) / name; }

void emit(const Globals& g, const std::string& command, json payload) {
  const fs::path path = out(g, command + ".json");
  io::write_json(path, io::report(command, std::move(payload)));
  std::cout << "wrote " << path.string() << "\n";
}

FitResult fit_or_throw(const ModelSpec& spec, const SignalData& d, const Globals& g) {
  FitResult f = fit(spec, d, fit_options(g));
  if (!f.converged) std::cerr << "warning: fit did not converge (" << f.message << ")\n";
  if (f.info_singular) std::cerr << "warning: information matrix is singular at the estimate\n";
  return f;
}

Eigen::MatrixXd cosine_matrix(std::size_t N, double f0) {
  const auto s = cosine_signal(N, f0);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(N), 1);
  for (std::size_t n = 0; n < N; ++n) X(static_cast<Eigen::Index>(n), 0) = s[n];
  return X;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string scenario = "I";
  std::size_t N = 500;
  std::vector<double> params;  // overrides the scenario's gamma
  std::optional<double> freq;
};

void run_simulate(const Globals& g, const SimulateArgs& a) {
  auto c = mc::scenario(a.scenario, a.N);
  ModelSpec spec = c.spec;
  ParamVector truth = c.true_params;
  Eigen::MatrixXd X(static_cast<Eigen::Index>(a.N), 0);
  const bool with_signal = c.signal.has_value() || a.freq.has_value();
  if (with_signal) {
    spec.l = 1;
    truth.beta = Eigen::VectorXd::Constant(1, c.signal ? c.signal->beta1 : 0.0);
    X = cosine_matrix(a.N, a.freq ? *a.freq : c.signal->f0);
  }
  if (!a.params.empty()) {
    if (static_cast<int>(a.params.size()) != spec.dim()) {
      throw std::invalid_argument("--params needs " + std::to_string(spec.dim()) + " values");
    }
    truth = ParamVector::from_vector(spec, Eigen::Map<const Eigen::VectorXd>(a.params.data(),
                                                                              spec.dim()));
  }
  const SignalData d = simulate(spec, truth, a.N, g.seed, X);
  io::write_signal_csv(out(g, "signal.csv"), d, {"s"});
  emit(g, "simulate",
       {{"scenario", a.scenario},
        {"N", a.N},
        {"seed", g.seed},
        {"K", spec.K},
        {"model", {{"p", spec.p}, {"q", spec.q}, {"l", spec.l}, {"link", to_string(spec.link)}}},
        {"parameters", io::to_json(truth, spec)},
        {"signal_file", out(g, "signal.csv").string()}});
}

// fit -----------------------------------------------------------------------

void run_fit(const Globals& g, const SignalArgs& a) {
  const SignalData d = load(g, a);
  const ModelSpec spec = model_spec(g, d.n_covariates());
  const FitResult f = fit_or_throw(spec, d, g);
  io::write_fitted_csv(out(g, "fitted.csv"), f, d, residuals(f, d));
  emit(g, "fit", io::to_json(f));
}

// detect --------------------------------------------------------------------

struct DetectArgs {
  std::string candidate = "cos";
  double freq = 0.5;
  double pfa = 0.05;
  std::string detector = "bbarma";
};

void run_detect(const Globals& g, const SignalArgs& a, const DetectArgs& da) {
  if (da.candidate != "cos") throw std::invalid_argument("unsupported candidate '" + da.candidate + "'");
  const SignalData d = load(g, a);
  const auto s = cosine_signal(d.size(), da.freq);
  DetectionReport r;
  switch (mc::parse_detector(da.detector)) {
    case mc::Detector::bbarma: {
      ModelSpec spec = model_spec(g, 1);
      FitOptions o = fit_options(g);
      r = detect_signal(SignalData(d.y(), Eigen::MatrixXd(d.size(), 0), d.K()), s, spec, da.pfa, o);
      break;
    }
    case mc::Detector::arma: r = baseline::arma_detect(d.y_star(), s, g.p, g.q, da.pfa); break;
    case mc::Detector::gaussian: r = baseline::gaussian_detect(d.y_star(), s, da.pfa); break;
  }
  json j = io::to_json(r);
  j["detector"] = da.detector;
  j["candidate"] = {{"kind", da.candidate}, {"freq", da.freq}};
  j["pfa"] = da.pfa;
  emit(g, "detect", j);
}

// forecast ------------------------------------------------------------------

struct ForecastArgs {
  int H = 12;
  std::string future_file;
  std::string forecaster = "bbarma";
  int period = 12;
};

void run_forecast(const Globals& g, const SignalArgs& a, const ForecastArgs& fa) {
  const SignalData d = load(g, a);
  Eigen::MatrixXd future(fa.H, d.n_covariates());
  if (d.n_covariates() > 0) {
    if (fa.future_file.empty()) throw std::invalid_argument("--future-covariates is required");
    const io::CsvTable t = io::read_csv(fa.future_file);
    future = io::read_covariates(t, a.covariates);
    if (future.rows() < fa.H) throw ForecastError("future covariate file has fewer than H rows");
    future.conservativeResize(fa.H, Eigen::NoChange);
  }
  Forecast fc;
  fc.horizon = fa.H;
  json j;
  if (fa.forecaster == "bbarma") {
    const FitResult f = fit_or_throw(model_spec(g, d.n_covariates()), d, g);
    fc = forecast(f, d, future, fa.H);
    j["fit"] = io::to_json(f);
  } else {
    std::vector<double> path;
    if (fa.forecaster == "arma") {
      const auto af = baseline::arma_fit(d.y_star(), d.X(), g.p, g.q);
      path = baseline::arma_forecast(af, d.y_star(), d.X(), future, fa.H);
    } else if (fa.forecaster == "holt-winters") {
      path = baseline::holt_winters_fit_forecast(d.y_star(), fa.period, fa.H);
    } else {
      throw std::invalid_argument("unknown forecaster '" + fa.forecaster + "'");
    }
    for (double v : path) {
      const double mu = std::clamp(v, 0.0, 1.0);
      fc.mu_hat.push_back(mu);
      fc.y_hat.push_back(to_count(mu, d.K()));
    }
  }
  io::write_forecast_csv(out(g, "forecast.csv"), fc, d.size());
  j["forecaster"] = fa.forecaster;
  j["forecast"] = io::to_json(fc);
  emit(g, "forecast", j);
}

// diagnose ------------------------------------------------------------------

struct DiagnoseArgs {
  int lags = 20;
  std::string residual_kind = "standardized";
};

void run_diagnose(const Globals& g, const SignalArgs& a, const DiagnoseArgs& da) {
  const SignalData d = load(g, a);
  const ModelSpec spec = model_spec(g, d.n_covariates());
  const FitResult f = fit_or_throw(spec, d, g);
  const ResidualKind kind =
      da.residual_kind == "count" ? ResidualKind::count_scale : ResidualKind::standardized;
  const Residuals res = residuals(f, d, kind);
  const auto rho = acf(res.eps, da.lags);
  const auto phi = pacf(res.eps, da.lags);
  const PortmanteauReport rep = portmanteau(res, da.lags, spec.p + spec.q);
  io::write_correlogram_csv(out(g, "correlogram.csv"), rho, phi);
  io::write_fitted_csv(out(g, "fitted.csv"), f, d, res);
  double mean = 0;
  for (double e : res.eps) mean += e;
  emit(g, "diagnose",
       {{"fit", io::to_json(f)},
        {"residual_kind", da.residual_kind},
        {"residual_mean", mean / static_cast<double>(res.eps.size())},
        {"lags", da.lags},
        {"tests", io::to_json(rep)}});
}

// Monte Carlo drivers -------------------------------------------------------

struct McArgs {
  std::string scenario = "I";
  std::size_t N = 500;
  double alpha = 0.10;
  std::vector<std::string> detectors;
  bool serial = false;
};

mc::ScenarioConfig mc_config(const Globals& g, const McArgs& a) {
  auto c = mc::scenario(a.scenario, a.N);
  c.replications = g.reps;
  c.seed = g.seed;
  c.workers = g.workers;
  c.alpha = a.alpha;
  return c;
}

void run_mc_estimate(const Globals& g, const McArgs& a) {
  const auto table = mc::mc_estimation(mc_config(g, a), a.serial ? mc::Execution::serial
                                                                 : mc::Execution::parallel);
  io::write_estimation_csv(out(g, "estimation.csv"), table);
  emit(g, "mc-estimate", io::to_json(table));
}

void run_mc_roc(const Globals& g, const McArgs& a) {
  std::vector<mc::Detector> dets;
  for (const auto& d : a.detectors) dets.push_back(mc::parse_detector(d));
  if (dets.empty()) dets = {mc::Detector::bbarma, mc::Detector::arma, mc::Detector::gaussian};
  auto c = mc_config(g, a);
  if (!c.signal) throw std::invalid_argument("mc-roc needs a scenario with a signal (III or IV)");
  const auto roc = mc::mc_roc(c, dets, a.serial ? mc::Execution::serial : mc::Execution::parallel);
  io::write_roc_csv(out(g, "roc.csv"), roc);
  json j = io::to_json(roc);
  if (roc.curves.size() > 1 && roc.curves[0].detector == "bbarma") {
    const double ref = roc.curves[0].area;
    for (std::size_t i = 1; i < roc.curves.size(); ++i) {
      j["area_deficit_percent"][roc.curves[i].detector] = 100.0 * (ref - roc.curves[i].area) / ref;
    }
  }
  emit(g, "mc-roc", j);
}

void add_signal_options(CLI::App* sub, SignalArgs& a) {
  sub->add_option("--signal-file", a.file, "CSV with an integer column y")->required()->check(CLI::ExistingFile);
  sub->add_option("--covariates", a.covariates, "covariate column names, in model order")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BBARMA modelling of bounded count signals"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value configuration file");

  Globals g;
  app.add_option("--seed", g.seed, "master random seed");
  app.add_option("--reps", g.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  app.add_option("--workers", g.workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--p", g.p, "AR order")->check(CLI::NonNegativeNumber);
  app.add_option("--q", g.q, "MA order")->check(CLI::NonNegativeNumber);
  app.add_option("--link", g.link, "link function")->check(CLI::IsMember({"logit", "probit", "cloglog"}));
  app.add_option("--max-iters", g.max_iters, "BFGS iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--grad-tol", g.grad_tol, "absolute gradient tolerance");
  app.add_option("--k", g.K, "maximum count K of the signal");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate a signal from a built-in scenario");
  c_sim->add_option("--scenario", sim.scenario)->check(CLI::IsMember({"I", "II", "III", "IV"}));
  c_sim->add_option("--n", sim.N, "signal length")->check(CLI::PositiveNumber);
  c_sim->add_option("--params", sim.params, "override gamma = zeta,beta,phi,theta,precision")->delimiter(',');
  c_sim->add_option("--freq", sim.freq, "add a cosine covariate with this frequency");

  SignalArgs fit_sig;
  auto* c_fit = app.add_subcommand("fit", "conditional maximum-likelihood fit");
  add_signal_options(c_fit, fit_sig);

  SignalArgs det_sig;
  DetectArgs det;
  auto* c_det = app.add_subcommand("detect", "Wald detection of a candidate signal");
  add_signal_options(c_det, det_sig);
  c_det->add_option("--candidate", det.candidate, "candidate signal shape")->check(CLI::IsMember({"cos"}));
  c_det->add_option("--freq", det.freq, "candidate frequency f0");
  c_det->add_option("--pfa", det.pfa, "probability of false alarm")->check(CLI::Range(0.0, 1.0));
  c_det->add_option("--detector", det.detector)->check(CLI::IsMember({"bbarma", "arma", "gaussian"}));

  SignalArgs fc_sig;
  ForecastArgs fc;
  auto* c_fc = app.add_subcommand("forecast", "out-of-signal forecasts");
  c_fc->set_help_flag("--help", "print this help message and exit");
  add_signal_options(c_fc, fc_sig);
  c_fc->add_option("--h", fc.H, "horizon")->check(CLI::PositiveNumber);
  c_fc->add_option("--future-covariates", fc.future_file, "CSV with the covariate columns for N+1..N+H");
  c_fc->add_option("--forecaster", fc.forecaster)->check(CLI::IsMember({"bbarma", "arma", "holt-winters"}));
  c_fc->add_option("--period", fc.period, "Holt-Winters season length")->check(CLI::PositiveNumber);

  SignalArgs dg_sig;
  DiagnoseArgs dg;
  auto* c_dg = app.add_subcommand("diagnose", "residual correlogram and portmanteau tests");
  add_signal_options(c_dg, dg_sig);
  c_dg->add_option("--lags", dg.lags)->check(CLI::PositiveNumber);
  c_dg->add_option("--residuals", dg.residual_kind)->check(CLI::IsMember({"standardized", "count"}));

  McArgs mce;
  auto* c_mce = app.add_subcommand("mc-estimate", "Monte Carlo estimation table");
  c_mce->add_option("--scenario", mce.scenario)->check(CLI::IsMember({"I", "II", "III", "IV"}));
  c_mce->add_option("--n", mce.N)->check(CLI::PositiveNumber);
  c_mce->add_option("--alpha", mce.alpha, "confidence-interval level")->check(CLI::Range(0.0, 1.0));
  c_mce->add_flag("--serial", mce.serial, "run replications on one thread");

  McArgs mcr;
  mcr.scenario = "III";
  mcr.N = 100;
  auto* c_mcr = app.add_subcommand("mc-roc", "Monte Carlo ROC comparison of detectors");
  c_mcr->add_option("--scenario", mcr.scenario)->check(CLI::IsMember({"III", "IV"}));
  c_mcr->add_option("--n", mcr.N)->check(CLI::PositiveNumber);
  c_mcr->add_option("--detector", mcr.detectors, "repeatable; default all")
      ->check(CLI::IsMember({"bbarma", "arma", "gaussian"}));
  c_mcr->add_flag("--serial", mcr.serial, "run replications on one thread");

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(g.out_dir);
    if (c_sim->parsed()) run_simulate(g, sim);
    if (c_fit->parsed()) run_fit(g, fit_sig);
    if (c_det->parsed()) run_detect(g, det_sig, det);
    if (c_fc->parsed()) run_forecast(g, fc_sig, fc);
    if (c_dg->parsed()) run_diagnose(g, dg_sig, dg);
    if (c_mce->parsed()) run_mc_estimate(g, mce);
    if (c_mcr->parsed()) run_mc_roc(g, mcr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
