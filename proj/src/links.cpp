#include "bbarma/links.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbarma/numkernel.hpp"

namespace bbarma {
namespace {

void require_unit(double mu, const char* fn) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::domain_error(std::string(fn) + ": mu must lie in (0,1)");
  }
}

}  // namespace

LinkKind parse_link(std::string_view name) {
  if (name == "logit") return LinkKind::logit;
  if (name == "probit") return LinkKind::probit;
  if (name == "cloglog") return LinkKind::cloglog;
  throw std::invalid_argument("unknown link '" + std::string(name) + "'");
}

std::string to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::logit: return "logit";
    case LinkKind::probit: return "probit";
    case LinkKind::cloglog: return "cloglog";
  }
  return "?";
}

double link(LinkKind kind, double mu) {
  require_unit(mu, "link");
  switch (kind) {
    case LinkKind::logit: return std::log(mu / (1.0 - mu));
    case LinkKind::probit: return num::normal_quantile(mu);
    case LinkKind::cloglog: return std::log(-std::log1p(-mu));
  }
  return 0.0;
}

double link_inv(LinkKind kind, double eta) {
  double mu = 0.5;
  switch (kind) {
    case LinkKind::logit:
      mu = eta >= 0.0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
      break;
    case LinkKind::probit: mu = num::normal_cdf(eta); break;
    case LinkKind::cloglog: mu = -std::expm1(-std::exp(eta)); break;
  }
  if (std::isnan(mu)) return mu;
  return std::clamp(mu, kMuClamp, 1.0 - kMuClamp);
}

double link_d1(LinkKind kind, double mu) {
  require_unit(mu, "link_d1");
  switch (kind) {
    case LinkKind::logit: return 1.0 / (mu * (1.0 - mu));
    case LinkKind::probit: return 1.0 / num::normal_pdf(num::normal_quantile(mu));
    case LinkKind::cloglog: {
      const double L = -std::log1p(-mu);
      return 1.0 / ((1.0 - mu) * L);
    }
  }
  return 0.0;
}

double link_d2(LinkKind kind, double mu) {
  require_unit(mu, "link_d2");
  switch (kind) {
    case LinkKind::logit: {
      const double v = mu * (1.0 - mu);
      return -(1.0 - 2.0 * mu) / (v * v);
    }
    case LinkKind::probit: {
      const double z = num::normal_quantile(mu);
      const double f = num::normal_pdf(z);
      return z / (f * f);
    }
    case LinkKind::cloglog: {
      const double L = -std::log1p(-mu);
      const double w = (1.0 - mu) * L;
      return (L - 1.0) / (w * w);
    }
  }
  return 0.0;
}

}  // namespace bbarma
