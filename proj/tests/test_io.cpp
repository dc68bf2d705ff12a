#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbarma/io.hpp"
#include "bbarma/simulate.hpp"
#include "doctest.h"

using namespace bbarma;
using namespace bbarma::io;

namespace {

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::size_t error_row(const std::string& text, int K) {
  try {
    to_signal(parse(text), K);
  } catch (const IngestError& e) {
    return e.row();
  }
  return 0;
}

}  // namespace

TEST_CASE("small file parses") {
  const SignalData d = to_signal(parse("n,y\n1,0\n2,3\n3,5\n"), 5);
  CHECK(d.size() == 3);
  CHECK(d.y()[2] == 5);
  CHECK(d.n_covariates() == 0);
}

TEST_CASE("covariate columns are read in the requested order") {
  const CsvTable t = parse("y,a,b\n1,0.5,-1\n2,1.5,2e-1\n");
  const SignalData d = to_signal(t, 4, {"b", "a"});
  CHECK(d.X()(0, 0) == -1.0);
  CHECK(d.X()(1, 0) == 0.2);
  CHECK(d.X()(1, 1) == 1.5);
  CHECK_THROWS_AS(to_signal(t, 4, {"c"}), IngestError);
}

TEST_CASE("ingestion errors carry the row") {
  CHECK(error_row("y\n1\n6\n", 5) == 2);
  CHECK(error_row("y\n1\n2\n-1\n", 5) == 3);
  CHECK(error_row("y\n1.5\n", 5) == 1);
  CHECK(error_row("y\nabc\n", 5) == 1);
  CHECK_THROWS_AS(parse("y,x\n1,2\n3\n"), IngestError);
  CHECK_THROWS_AS(to_signal(parse("x\n1\n"), 5), IngestError);
  CHECK_THROWS_AS(to_signal(parse("y\n1\n"), 0), IngestError);
  CHECK_THROWS_AS(parse(""), IngestError);
}

TEST_CASE("signal CSV round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "bbarma_io_test";
  std::filesystem::remove_all(dir);
  ModelSpec s{1, 0, 1, LinkKind::logit, 31};
  ParamVector p = ParamVector::zeros(s);
  p.zeta = 0.3;
  p.beta << -1.0;
  p.phi_ar << 0.2;
  p.phi_prec = 27;
  Eigen::MatrixXd X(40, 1);
  for (int n = 0; n < 40; ++n) X(n, 0) = std::cos(2 * M_PI * (n + 1) / 12.0);
  const SignalData d = simulate(s, p, 40, 1, X);
  write_signal_csv(dir / "signal.csv", d, {"cos12"});
  const SignalData back = ingest_csv(dir / "signal.csv", 31, {"cos12"});
  CHECK(back.y() == d.y());
  CHECK((back.X() - d.X()).cwiseAbs().maxCoeff() < 1e-9);
  std::filesystem::remove_all(dir);
}

TEST_CASE("JSON reports are versioned") {
  ModelSpec s{0, 1, 0, LinkKind::logit, 10};
  ParamVector p = ParamVector::zeros(s);
  p.theta << 0.4;
  const auto j = report("fit", to_json(p, s));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["command"] == "fit");
  CHECK(j["result"]["theta1"] == 0.4);
  CHECK(j["result"]["precision"] == 1.0);
  const auto det = to_json(make_report(5.0, 1, 0.05));
  CHECK(det["detected"] == true);
}

TEST_CASE("ROC CSV has one row per point") {
  mc::RocResult r;
  r.scenario = "III";
  r.curves.push_back(mc::roc_from_statistics("gaussian", {0.1, 5.0}, {4.0, 9.0},
                                             mc::default_pfa_grid()));
  const auto path = std::filesystem::temp_directory_path() / "bbarma_roc_test.csv";
  write_roc_csv(path, r);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "detector,alpha,pfa_hat,pd_hat");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(r.curves[0].points.size()));
  std::filesystem::remove(path);
}
