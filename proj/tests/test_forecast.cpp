#include <cmath>

#include "bbarma/forecast.hpp"
#include "bbarma/montecarlo.hpp"
#include "bbarma/simulate.hpp"
#include "doctest.h"

using namespace bbarma;

TEST_CASE("rounding to counts") {
  CHECK(to_count(0.5, 255) == 128);
  CHECK(to_count(0.5, 2) == 1);
  CHECK(to_count(1e-12, 31) == 0);
  CHECK(to_count(1.0 - 1e-12, 31) == 31);
}

TEST_CASE("closed form without dynamics") {
  ModelSpec s{0, 0, 1, LinkKind::probit, 50};
  ParamVector p = ParamVector::zeros(s);
  p.zeta = 0.2;
  p.beta << -0.7;
  p.phi_prec = 10;
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(80, 1);
  const SignalData d = simulate(s, p, 80, 1, X);
  Eigen::MatrixXd F(5, 1);
  F << 0.1, -0.3, 1.0, 0.0, 2.0;
  const Forecast fc = forecast(s, p, d, F, 5);
  REQUIRE(fc.horizon == 5);
  for (int h = 0; h < 5; ++h) {
    CHECK(fc.mu_hat[h] == link_inv(s.link, 0.2 - 0.7 * F(h, 0)));
    CHECK(fc.y_hat[h] == to_count(fc.mu_hat[h], 50));
  }
}

TEST_CASE("one-step forecast by hand") {
  const auto c = mc::scenario("II", 200);
  const SignalData d = simulate(c.spec, c.true_params, 200, 3);
  const FitResult f = fit(c.spec, d);
  const FilterState st = filter(c.spec, f.params_hat, d, false);
  const double ys = d.y_star().back();
  const double eta = f.params_hat.zeta + f.params_hat.phi_ar[0] * ys +
                     f.params_hat.theta[0] * (ys - st.mu[199]);
  const Forecast fc = forecast(f, d, Eigen::MatrixXd(1, 0), 1);
  CHECK(std::fabs(fc.mu_hat[0] - link_inv(c.spec.link, eta)) < 1e-15);
}

TEST_CASE("rolling one-step forecasts equal the extended filter") {
  ModelSpec s{2, 2, 1, LinkKind::logit, 31};
  ParamVector p = ParamVector::zeros(s);
  p.zeta = 0.3;
  p.beta << -0.5;
  p.phi_ar << 0.4, -0.1;
  p.theta << 0.6, 0.2;
  p.phi_prec = 25;
  Eigen::MatrixXd X(120, 1);
  for (int n = 0; n < 120; ++n) X(n, 0) = std::cos(2 * M_PI * (n + 1) / 12.0);
  const SignalData d = simulate(s, p, 120, 17, X);
  const FilterState st = filter(s, p, d, false);
  for (std::size_t n = 90; n < 120; ++n) {
    const Forecast fc = forecast(s, p, d.head(n), X.row(static_cast<Eigen::Index>(n)), 1);
    CHECK(std::fabs(fc.mu_hat[0] - st.mu[static_cast<Eigen::Index>(n)]) <= 1e-12);
  }
}

TEST_CASE("multi-step forecasts stay in range and feed back their own means") {
  const auto c = mc::scenario("I", 300);
  const SignalData d = simulate(c.spec, c.true_params, 300, 6);
  const Forecast fc = forecast(c.spec, c.true_params, d, Eigen::MatrixXd(12, 0), 12);
  double prev = d.y_star().back();
  for (int h = 0; h < 12; ++h) {
    const double mu = link_inv(c.spec.link, c.true_params.zeta + c.true_params.phi_ar[0] * prev);
    CHECK(std::fabs(fc.mu_hat[h] - mu) < 1e-15);
    CHECK(fc.y_hat[h] >= 0);
    CHECK(fc.y_hat[h] <= 255);
    prev = fc.mu_hat[h];
  }
}

TEST_CASE("forecast errors") {
  ModelSpec s{0, 0, 1, LinkKind::logit, 5};
  ParamVector p = ParamVector::zeros(s);
  SignalData d({1, 2, 3}, Eigen::MatrixXd::Zero(3, 1), 5);
  CHECK_THROWS_AS(forecast(s, p, d, Eigen::MatrixXd::Zero(2, 1), 3), ForecastError);
  CHECK_THROWS_AS(forecast(s, p, d, Eigen::MatrixXd::Zero(3, 2), 3), ForecastError);
  CHECK_THROWS_AS(forecast(s, p, d, Eigen::MatrixXd::Zero(0, 1), 0), ForecastError);
}
