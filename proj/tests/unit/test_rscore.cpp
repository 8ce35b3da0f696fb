#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "crowdbound/distributions.hpp"
#include "crowdbound/errors.hpp"
#include "crowdbound/rscore.hpp"
#include "testutil.hpp"

using namespace crowdbound;

namespace {

// First `count` strictly positive draws of a normal stream.
std::vector<double> positive_normal_draws(double mean, double sd, std::size_t count,
                                          std::uint64_t seed) {
  const auto spec = DistributionSpec::normal(mean, sd);
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t index = 0; out.size() < count; ++index) {
    const double x = sample_at(spec, seed, index);
    if (x > 0.0) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("lognormal data score near one") {
  const auto data = sample(DistributionSpec::log_normal(0.0, 1.0), 1000, 31);
  const RScore score = r_score(data);
  CHECK(score.r > 0.99);
  CHECK(score.n_obs == 1000);
  CHECK(score.ll_lognormal > score.ll_normal);
}

TEST_CASE("normal data score near zero") {
  // sd = 20 keeps the draws positive while making the thin tail actually
  // distinguishable from a log-normal at this sample size
  const auto data = positive_normal_draws(100.0, 20.0, 1000, 32);
  const RScore score = r_score(data);
  CHECK(score.r < 0.01);
  CHECK(score.ll_normal > score.ll_lognormal);
}

TEST_CASE("equal likelihoods pin r to one half exactly") {
  CHECK(r_from_log_likelihoods(-123.456, -123.456) == 0.5);
  CHECK(r_from_log_likelihoods(0.0, 0.0) == 0.5);
}

TEST_CASE("r matches the logistic of the likelihood difference") {
  // mild dispersion keeps the likelihood gap small enough that r stays
  // strictly inside (0, 1) in double precision
  const auto data = sample(DistributionSpec::log_normal(0.0, 0.3), 100, 33);
  const RScore score = r_score(data);
  const double expected = 1.0 / (1.0 + std::exp(score.ll_normal - score.ll_lognormal));
  CHECK(std::abs(score.r - expected) < 1e-12);
  CHECK(score.r > 0.0);
  CHECK(score.r < 1.0);
}

TEST_CASE("r is invariant under positive rescaling") {
  testutil::Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> data(50);
    for (double& x : data) x = std::exp(rng.uniform(-1.0, 1.5));
    const double c = std::exp(rng.uniform(-3.0, 3.0));

    const double base = r_score(data).r;
    std::vector<double> scaled(data);
    for (double& x : scaled) x *= c;
    CHECK(std::abs(r_score(scaled).r - base) < 1e-9);
  }
}

TEST_CASE("median r rises with lognormal dispersion") {
  const double sigmas[] = {0.1, 0.5, 1.0, 2.0};
  std::vector<double> medians;
  for (double sigma : sigmas) {
    std::vector<double> rs;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto data = sample(DistributionSpec::log_normal(0.0, sigma), 100, 1000 + seed);
      rs.push_back(r_score(data).r);
    }
    std::sort(rs.begin(), rs.end());
    medians.push_back(0.5 * (rs[24] + rs[25]));
  }
  for (std::size_t i = 1; i < medians.size(); ++i) {
    CHECK(medians[i] >= medians[i - 1]);
  }
}

TEST_CASE("r_score error paths") {
  const double nonpositive[] = {1.0, 0.0, 2.0};
  CHECK_THROWS_AS(r_score(nonpositive), SupportError);
  const double short_data[] = {1.0, 2.0};
  CHECK_THROWS_AS(r_score(short_data), InsufficientDataError);
  const double constant[] = {3.0, 3.0, 3.0, 3.0};
  CHECK_THROWS_AS(r_score(constant), DegenerateDataError);
}
