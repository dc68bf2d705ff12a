#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bbarma/diagnostics.hpp"
#include "bbarma/estimate.hpp"
#include "bbarma/forecast.hpp"
#include "bbarma/infer.hpp"
#include "bbarma/montecarlo.hpp"

namespace bbarma::io {

/// Version tag written into every JSON report.
inline constexpr int kReportSchemaVersion = 1;

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Parsed comma-separated table: header names and numeric rows as strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Builds SignalData from a table with an integer column `y` in [0, K]. Every
/// column named in `covariates` becomes a covariate (in the given order).
/// Row numbers in errors are 1-based data rows (the header is row 0).
SignalData to_signal(const CsvTable& table, int K, const std::vector<std::string>& covariates = {});

SignalData ingest_csv(const std::filesystem::path& path, int K,
                      const std::vector<std::string>& covariates = {});

/// Reads an H x l covariate block from the named columns.
Eigen::MatrixXd read_covariates(const CsvTable& table, const std::vector<std::string>& columns);

void write_signal_csv(const std::filesystem::path& path, const SignalData& data,
                      const std::vector<std::string>& covariate_names = {});

nlohmann::json to_json(const ParamVector& params, const ModelSpec& spec);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const DetectionReport& report);
nlohmann::json to_json(const Forecast& fc);
nlohmann::json to_json(const PortmanteauReport& rep);
nlohmann::json to_json(const mc::EstimationTable& table);
nlohmann::json to_json(const mc::RocResult& roc);

/// Wraps a payload with {"schema_version", "command"}.
nlohmann::json report(const std::string& command, nlohmann::json payload);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// CSV writers for plotting.
void write_estimation_csv(const std::filesystem::path& path, const mc::EstimationTable& table);
void write_roc_csv(const std::filesystem::path& path, const mc::RocResult& roc);
void write_fitted_csv(const std::filesystem::path& path, const FitResult& fit,
                      const SignalData& data, const Residuals& res);
void write_forecast_csv(const std::filesystem::path& path, const Forecast& fc, std::size_t N);
void write_correlogram_csv(const std::filesystem::path& path, const std::vector<double>& acf,
                           const std::vector<double>& pacf);

}  // namespace bbarma::io
