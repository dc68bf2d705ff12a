#include "bbarma/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bbarma::io {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && ptr == end;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(10);
  return out;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    ++row;
    if (cells.size() != t.header.size()) {
      throw IngestError("expected " + std::to_string(t.header.size()) + " fields, found " +
                            std::to_string(cells.size()),
                        row);
    }
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw IngestError("empty file, header missing", 0);
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

Eigen::MatrixXd read_covariates(const CsvTable& table, const std::vector<std::string>& columns) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(table.rows.size()),
                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int idx = table.column(columns[c]);
    if (idx < 0) throw IngestError("missing covariate column '" + columns[c] + "'", 0);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      double v = 0.0;
      if (!parse_double(table.rows[r][static_cast<std::size_t>(idx)], v) || !std::isfinite(v)) {
        throw IngestError("non-numeric value in column '" + columns[c] + "'", r + 1);
      }
      X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return X;
}

SignalData to_signal(const CsvTable& table, int K, const std::vector<std::string>& covariates) {
  if (K < 1) throw IngestError("K must be declared and >= 1", 0);
  const int yc = table.column("y");
  if (yc < 0) throw IngestError("required column 'y' missing", 0);
  std::vector<int> y;
  y.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    double v = 0.0;
    const std::string& cell = table.rows[r][static_cast<std::size_t>(yc)];
    if (!parse_double(cell, v)) throw IngestError("y is not a number: '" + cell + "'", r + 1);
    if (v != std::floor(v)) throw IngestError("y is not an integer: '" + cell + "'", r + 1);
    if (v < 0 || v > K) {
      throw IngestError("y=" + cell + " outside [0, " + std::to_string(K) + "]", r + 1);
    }
    y.push_back(static_cast<int>(v));
  }
  return SignalData(std::move(y), read_covariates(table, covariates), K);
}

SignalData ingest_csv(const std::filesystem::path& path, int K,
                      const std::vector<std::string>& covariates) {
  return to_signal(read_csv(path), K, covariates);
}

void write_signal_csv(const std::filesystem::path& path, const SignalData& data,
                      const std::vector<std::string>& names) {
  auto out = open_out(path);
  out << "n,y";
  for (int k = 0; k < data.n_covariates(); ++k) {
    out << ',' << (static_cast<std::size_t>(k) < names.size() ? names[k] : "x" + std::to_string(k + 1));
  }
  out << '\n';
  for (std::size_t n = 0; n < data.size(); ++n) {
    out << n + 1 << ',' << data.y()[n];
    for (int k = 0; k < data.n_covariates(); ++k) out << ',' << data.X()(static_cast<Eigen::Index>(n), k);
    out << '\n';
  }
}

nlohmann::json to_json(const ParamVector& params, const ModelSpec& spec) {
  nlohmann::json j = nlohmann::json::object();
  const auto names = parameter_names(spec);
  const Eigen::VectorXd g = params.to_vector();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = g[static_cast<Eigen::Index>(i)];
  return j;
}

nlohmann::json to_json(const FitResult& f) {
  nlohmann::json j;
  j["model"] = {{"p", f.spec.p}, {"q", f.spec.q}, {"l", f.spec.l}, {"K", f.spec.K},
                {"link", to_string(f.spec.link)}};
  j["estimates"] = to_json(f.params_hat, f.spec);
  if (f.has_std_err()) {
    nlohmann::json se = nlohmann::json::object();
    const auto names = parameter_names(f.spec);
    for (std::size_t i = 0; i < names.size(); ++i) se[names[i]] = f.std_err[static_cast<Eigen::Index>(i)];
    j["std_err"] = se;
  } else {
    j["std_err"] = nullptr;
  }
  j["loglik"] = f.loglik;
  j["aic"] = f.aic;
  j["sic"] = f.sic;
  j["hq"] = f.hq;
  j["iterations"] = f.n_iters;
  j["converged"] = f.converged;
  j["info_singular"] = f.info_singular;
  j["grad_norm"] = f.grad_norm;
  j["message"] = f.message;
  j["n_effective"] = f.n_effective;
  return j;
}

nlohmann::json to_json(const DetectionReport& r) {
  return {{"wald_stat", r.wald_stat}, {"dof", r.dof},         {"threshold", r.threshold},
          {"p_value", r.p_value},     {"detected", r.detected}};
}

nlohmann::json to_json(const Forecast& fc) {
  return {{"horizon", fc.horizon}, {"mu_hat", fc.mu_hat}, {"y_hat", fc.y_hat}};
}

nlohmann::json to_json(const PortmanteauReport& rep) {
  auto t = [](const TestStat& s) {
    return nlohmann::json{{"statistic", s.statistic}, {"p_value", s.p_value}, {"dof", s.dof}};
  };
  return {{"box_pierce", t(rep.box_pierce)}, {"ljung_box", t(rep.ljung_box)}, {"lm_arch", t(rep.lm_arch)}};
}

nlohmann::json to_json(const mc::EstimationTable& table) {
  nlohmann::json j;
  j["scenario"] = table.scenario;
  j["N"] = table.N;
  j["replications"] = table.replications;
  j["failures"] = table.failures;
  j["mean_iterations"] = table.mean_iterations;
  j["parameters"] = nlohmann::json::array();
  for (const auto& p : table.params) {
    j["parameters"].push_back({{"name", p.name},
                               {"true", p.true_value},
                               {"mean", p.mean},
                               {"bias", p.bias},
                               {"mse", p.mse},
                               {"coverage", p.coverage}});
  }
  return j;
}

nlohmann::json to_json(const mc::RocResult& roc) {
  nlohmann::json j;
  j["scenario"] = roc.scenario;
  j["detectors"] = nlohmann::json::array();
  for (const auto& c : roc.curves) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back({{"alpha", p.alpha}, {"pfa_hat", p.pfa_hat}, {"pd_hat", p.pd_hat}});
    j["detectors"].push_back({{"detector", c.detector},
                              {"area", c.area},
                              {"failures", c.failures},
                              {"usable_h0", c.usable_h0},
                              {"usable_h1", c.usable_h1},
                              {"points", pts}});
  }
  return j;
}

nlohmann::json report(const std::string& command, nlohmann::json payload) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["result"] = std::move(payload);
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_estimation_csv(const std::filesystem::path& path, const mc::EstimationTable& table) {
  auto out = open_out(path);
  out << "scenario,N,parameter,true,mean,bias,mse,coverage\n";
  for (const auto& p : table.params) {
    out << table.scenario << ',' << table.N << ',' << p.name << ',' << p.true_value << ',' << p.mean
        << ',' << p.bias << ',' << p.mse << ',' << p.coverage << '\n';
  }
}

void write_roc_csv(const std::filesystem::path& path, const mc::RocResult& roc) {
  auto out = open_out(path);
  out << "detector,alpha,pfa_hat,pd_hat\n";
  for (const auto& c : roc.curves) {
    for (const auto& p : c.points) {
      out << c.detector << ',' << p.alpha << ',' << p.pfa_hat << ',' << p.pd_hat << '\n';
    }
  }
}

void write_fitted_csv(const std::filesystem::path& path, const FitResult& fit,
                      const SignalData& data, const Residuals& res) {
  const FilterState st = filter(fit.spec, fit.params_hat, data, false);
  auto out = open_out(path);
  out << "n,y,fitted,residual\n";
  const int m = fit.spec.m();
  for (std::size_t n = static_cast<std::size_t>(m); n < data.size(); ++n) {
    out << n + 1 << ',' << data.y()[n] << ',' << st.mu[static_cast<Eigen::Index>(n)] * fit.spec.K
        << ',' << res.eps[n - static_cast<std::size_t>(m)] << '\n';
  }
}

void write_forecast_csv(const std::filesystem::path& path, const Forecast& fc, std::size_t N) {
  auto out = open_out(path);
  out << "n,h,mu_hat,y_hat\n";
  for (int h = 0; h < fc.horizon; ++h) {
    out << N + h + 1 << ',' << h + 1 << ',' << fc.mu_hat[h] << ',' << fc.y_hat[h] << '\n';
  }
}

void write_correlogram_csv(const std::filesystem::path& path, const std::vector<double>& acf,
                           const std::vector<double>& pacf) {
  auto out = open_out(path);
  out << "lag,acf,pacf\n";
  for (std::size_t k = 0; k < acf.size(); ++k) {
    out << k << ',' << acf[k] << ',';
    if (k >= 1 && k - 1 < pacf.size()) out << pacf[k - 1];
    out << '\n';
  }
}

}  // namespace bbarma::io
