#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "bbarma/betabinom.hpp"
#include "bbarma/model.hpp"

namespace bbarma {

/// Warm-up draws discarded before the retained signal, in addition to m.
inline constexpr int kBurnIn = 50;

/// Independent seed for stream `stream` of a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Draws y[0..N) from the BBARMA recursion with y[n] ~ BetaBinomial(mu[n], phi, K).
/// `X` (N x l) supplies covariates for the retained part; warm-up steps use zero
/// covariates.
SignalData simulate(const ModelSpec& spec, const ParamVector& params, std::size_t N,
                    std::uint64_t seed, const Eigen::MatrixXd& X = Eigen::MatrixXd());

SignalData simulate(const ModelSpec& spec, const ParamVector& params, std::size_t N, Rng& rng,
                    const Eigen::MatrixXd& X = Eigen::MatrixXd());

}  // namespace bbarma
