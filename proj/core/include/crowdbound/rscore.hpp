#pragma once

#include <cstddef>
#include <span>

namespace crowdbound {

/// Heavy-tailedness feature of a set of estimates: the relative log
/// likelihood of a fitted log-normal versus a fitted normal. r = 1 says the
/// data are certainly better described by the log-normal, r = 0 by the
/// normal, r = 0.5 that the two fit equally well.
struct RScore {
  double r = 0.5;
  double ll_lognormal = 0.0;
  double ll_normal = 0.0;
  std::size_t n_obs = 0;
};

/// Logistic of the log-likelihood difference: 1 / (1 + exp(ll_n - ll_ln)).
/// Exactly 0.5 when the likelihoods are equal.
double r_from_log_likelihoods(double ll_lognormal, double ll_normal);

/// Fits both families to the same data and scores them. Data must be
/// strictly positive with at least 3 observations and nonzero variance.
RScore r_score(std::span<const double> data);

}  // namespace crowdbound
