#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bbarma/betabinom.hpp"
#include "bbarma/numkernel.hpp"
#include "doctest.h"

using namespace bbarma;

namespace {

std::vector<double> pmf(const BetaBinomial& d) {
  std::vector<double> p;
  for (int y = 0; y <= d.K(); ++y) p.push_back(std::exp(d.log_pf(y)));
  return p;
}

}  // namespace

TEST_CASE("uniform case") {
  BetaBinomial d(0.5, 2.0, 2);
  for (int y = 0; y <= 2; ++y) CHECK(std::fabs(d.log_pf(y) - std::log(1.0 / 3.0)) < 1e-13);
}

TEST_CASE("log_pf rejects out-of-range outcomes and invalid parameters") {
  BetaBinomial d(0.3, 5.0, 10);
  CHECK_THROWS_AS(d.log_pf(-1), std::domain_error);
  CHECK_THROWS_AS(d.log_pf(11), std::domain_error);
  CHECK_THROWS(BetaBinomial(0.0, 1.0, 5));
  CHECK_THROWS(BetaBinomial(0.5, -1.0, 5));
  CHECK_THROWS(BetaBinomial(0.5, 1.0, 0));
}

TEST_CASE("reflection symmetry") {
  for (double mu : {0.1, 0.37, 0.9}) {
    BetaBinomial d(mu, 7.0, 25), r(1.0 - mu, 7.0, 25);
    for (int y = 0; y <= 25; ++y) CHECK(std::fabs(d.log_pf(y) - r.log_pf(25 - y)) < 1e-10);
  }
}

TEST_CASE("normalization and brute-force moments on the grid") {
  for (double mu : {0.1, 0.5, 0.9}) {
    for (double phi : {1.0, 15.0, 100.0}) {
      for (int K : {1, 25, 255}) {
        BetaBinomial d(mu, phi, K);
        const auto p = pmf(d);
        double s = 0, m1 = 0, m2 = 0;
        for (int y = 0; y <= K; ++y) {
          s += p[y];
          m1 += y * p[y];
          m2 += double(y) * y * p[y];
        }
        CHECK(std::fabs(s - 1.0) < 1e-10);
        const auto mo = moments(d);
        CHECK(std::fabs(m1 - mo.mean) <= 1e-8 * mo.mean);
        CHECK(std::fabs(m2 - m1 * m1 - mo.variance) <= 1e-8 * mo.variance);
      }
    }
  }
}

TEST_CASE("moment examples") {
  BetaBinomial d(0.5, 15.0, 255);
  CHECK(d.mean() == 127.5);
  CHECK(std::fabs(d.variance() - 1075.78125) < 1e-9);
  BetaBinomial wide(0.3, 1e6, 40);
  CHECK(std::fabs(wide.variance() / (40 * 0.3 * 0.7) - 1.0) < 0.01);
  BetaBinomial d2(0.9, 4.0, 25);
  double s = 0;
  for (double v : pmf(d2)) s += v;
  CHECK(std::fabs(s - 1.0) < 1e-12);
}

TEST_CASE("shape flexibility") {
  const auto skew = pmf(BetaBinomial(0.9, 4.0, 25));
  CHECK(std::max_element(skew.begin(), skew.end()) - skew.begin() == 25);
  CHECK(skew[24] < skew[25]);
  CHECK(skew[20] < skew[21]);
  const auto peaked = pmf(BetaBinomial(0.5, 100.0, 25));
  const auto mode = std::max_element(peaked.begin(), peaked.end()) - peaked.begin();
  CHECK((mode == 12 || mode == 13));
  CHECK(std::fabs(peaked[12] - peaked[13]) < 1e-14);
}

TEST_CASE("sampler mean within three standard errors") {
  BetaBinomial d(0.9, 20.0, 255);
  Rng rng(12345);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += d.sample(rng);
  CHECK(std::fabs(sum / n - 229.5) < 3.0 * std::sqrt(d.variance() / n));
}

TEST_CASE("sampler passes a chi-squared goodness-of-fit test") {
  BetaBinomial d(0.5, 4.0, 25);
  Rng rng(2024);
  const int n = 100000;
  std::vector<int> counts(26, 0);
  for (int i = 0; i < n; ++i) ++counts[d.sample(rng)];
  const auto p = pmf(d);
  double chi2 = 0;
  for (int y = 0; y <= 25; ++y) {
    const double e = n * p[y];
    chi2 += (counts[y] - e) * (counts[y] - e) / e;
  }
  CHECK(num::chi2_sf(chi2, 25) > 0.01);
}

TEST_CASE("sampler is deterministic under a fixed seed") {
  BetaBinomial d(0.3, 10.0, 255);
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) CHECK(d.sample(a) == d.sample(b));
}

TEST_CASE("binomial and beta helpers") {
  Rng rng(99);
  CHECK(sample_binomial(10, 0.0, rng) == 0);
  CHECK(sample_binomial(10, 1.0, rng) == 10);
  double s = 0;
  for (int i = 0; i < 20000; ++i) s += sample_beta(2.0, 6.0, rng);
  CHECK(std::fabs(s / 20000 - 0.25) < 0.005);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
