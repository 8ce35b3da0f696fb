#include "crowdbound/rscore.hpp"

#include <cmath>

#include "crowdbound/distributions.hpp"

namespace crowdbound {

double r_from_log_likelihoods(double ll_lognormal, double ll_normal) {
  if (ll_lognormal == ll_normal) return 0.5;
  return 1.0 / (1.0 + std::exp(ll_normal - ll_lognormal));
}

RScore r_score(std::span<const double> data) {
  const FitResult lognormal = fit_mle(Family::LogNormal, data);
  const FitResult normal = fit_mle(Family::Normal, data);

  RScore score;
  score.ll_lognormal = lognormal.log_likelihood;
  score.ll_normal = normal.log_likelihood;
  score.n_obs = data.size();
  score.r = r_from_log_likelihoods(score.ll_lognormal, score.ll_normal);
  return score;
}

}  // namespace crowdbound
