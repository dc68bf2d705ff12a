#pragma once

#include <string>
#include <string_view>

namespace bbarma {

/// Link family g : (0,1) -> R.
enum class LinkKind { logit, probit, cloglog };

/// Lower/upper clamp applied to every inverse-link output.
inline constexpr double kMuClamp = 1e-12;

LinkKind parse_link(std::string_view name);
std::string to_string(LinkKind kind);

double link(LinkKind kind, double mu);

/// Inverse link, saturating at [kMuClamp, 1 - kMuClamp].
double link_inv(LinkKind kind, double eta);

/// g'(mu)
double link_d1(LinkKind kind, double mu);

/// g''(mu)
double link_d2(LinkKind kind, double mu);

}  // namespace bbarma
