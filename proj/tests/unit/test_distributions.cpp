#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crowdbound/distributions.hpp"
#include "crowdbound/errors.hpp"
#include "testutil.hpp"

using namespace crowdbound;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(DistributionSpec::normal(0.0, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(DistributionSpec::normal(0.0, -1.0).validate(), DomainError);
  CHECK_THROWS_AS(DistributionSpec::pareto(-1.0, 2.0).validate(), DomainError);
  CHECK_THROWS_AS(DistributionSpec::pareto(0.0, 2.0).validate(), DomainError);
  CHECK_THROWS_AS(sample(DistributionSpec::log_normal(0.0, -2.0), 5, 1), DomainError);
  CHECK_THROWS_AS(cdf(DistributionSpec::log_laplace(0.0, 0.0), 1.0), DomainError);
  CHECK_NOTHROW(DistributionSpec::log_normal(-3.0, 0.5).validate());
}

TEST_CASE("degenerate lognormal sampling collapses to exp(mu)") {
  const auto spec = DistributionSpec::log_normal(0.0, 1e-12);
  const auto draws = sample(spec, 3, 42);
  for (double x : draws) CHECK(x == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lognormal log-mean matches law of large numbers") {
  const auto spec = DistributionSpec::log_normal(0.0, 1.0);
  const auto draws = sample(spec, 100000, 7);
  double mean_log = 0.0;
  for (double x : draws) mean_log += std::log(x);
  mean_log /= static_cast<double>(draws.size());
  CHECK(std::abs(mean_log) < 3.0 / std::sqrt(100000.0));
}

TEST_CASE("pareto empirical cdf matches closed form") {
  const auto spec = DistributionSpec::pareto(1.0, 2.0);
  const auto draws = sample(spec, 100000, 11);
  double below = 0.0;
  for (double x : draws) {
    CHECK(x >= 1.0);
    if (x <= 2.0) below += 1.0;
  }
  CHECK(below / 100000.0 == doctest::Approx(0.75).epsilon(0.0134));  // 0.01 absolute
}

TEST_CASE("cdf anchor values") {
  CHECK(cdf(DistributionSpec::log_normal(0.0, 1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf(DistributionSpec::pareto(1.0, 2.0), 2.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(cdf(DistributionSpec::log_laplace(0.0, 1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // below support
  CHECK(cdf(DistributionSpec::log_normal(0.0, 1.0), -1.0) == 0.0);
  CHECK(cdf(DistributionSpec::pareto(1.0, 2.0), 0.5) == 0.0);
  CHECK(cdf(DistributionSpec::log_laplace(0.0, 1.0), 0.0) == 0.0);
}

TEST_CASE("cdf is monotone and cdf + survival = 1") {
  const DistributionSpec specs[] = {
      DistributionSpec::normal(1.0, 2.0),
      DistributionSpec::log_normal(0.3, 1.5),
      DistributionSpec::pareto(0.8, 1.3),
      DistributionSpec::log_laplace(-0.2, 0.7),
  };
  for (const auto& spec : specs) {
    double prev = 0.0;
    for (double q = 0.02; q < 1.0; q += 0.02) {
      const double x = quantile(spec, q);
      const double c = cdf(spec, x);
      CHECK(c >= prev);
      CHECK(std::abs(c + survival(spec, x) - 1.0) < 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("pdf integrates to the cdf") {
  testutil::Rng rng(2024);
  const DistributionSpec specs[] = {
      DistributionSpec::normal(0.5, 1.5),
      DistributionSpec::log_normal(0.0, 1.0),
      DistributionSpec::pareto(1.0, 2.5),
      DistributionSpec::log_laplace(0.0, 0.8),
  };
  for (const auto& spec : specs) {
    const double lo = quantile(spec, 1e-12);
    for (int k = 0; k < 10; ++k) {
      const double q = rng.uniform(0.05, 0.95);
      const double x = quantile(spec, q);
      const double integral =
          testutil::integrate([&](double t) { return pdf(spec, t); }, lo, x, 1e-11);
      CHECK(std::abs(integral + 1e-12 - cdf(spec, x)) < 1e-6);
    }
  }
}

TEST_CASE("quantile/cdf round trip") {
  const DistributionSpec specs[] = {
      DistributionSpec::normal(-1.0, 0.5),
      DistributionSpec::log_normal(0.7, 2.0),
      DistributionSpec::pareto(2.0, 0.5),
      DistributionSpec::log_laplace(1.0, 1.5),
  };
  for (const auto& spec : specs) {
    for (double q : {0.01, 0.5, 0.99}) {
      CHECK(std::abs(cdf(spec, quantile(spec, q)) - q) < 1e-9);
    }
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto spec = DistributionSpec::log_laplace(0.2, 0.9);
  const auto a = sample(spec, 64, 123);
  const auto b = sample(spec, 64, 123);
  const auto c = sample(spec, 64, 124);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("normal mle closed form") {
  const double data[] = {1.0, 2.0, 3.0};
  const FitResult fit = fit_mle(Family::Normal, data);
  CHECK(fit.spec.p1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.spec.p2 == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(fit.n_obs == 3);
  double ll = 0.0;
  for (double x : data) ll += log_pdf(fit.spec, x);
  CHECK(fit.log_likelihood == doctest::Approx(ll).epsilon(1e-12));
}

TEST_CASE("lognormal mle is the normal mle of the logs") {
  const double e = std::exp(1.0);
  const double data[] = {e, e, e * e, e * e};
  const FitResult fit = fit_mle(Family::LogNormal, data);
  CHECK(fit.spec.p1 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.spec.p2 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lognormal mle recovers generating parameters") {
  const auto spec = DistributionSpec::log_normal(0.5, 1.2);
  const auto draws = sample(spec, 10000, 99);
  const FitResult fit = fit_mle(Family::LogNormal, draws);
  CHECK(std::abs(fit.spec.p1 - 0.5) < 0.05);
  CHECK(std::abs(fit.spec.p2 - 1.2) < 0.05);
}

TEST_CASE("change of variables links the two likelihoods") {
  testutil::Rng rng(5);
  std::vector<double> data(200);
  double log_sum = 0.0;
  for (double& x : data) {
    x = std::exp(rng.uniform(-1.0, 2.0));
    log_sum += std::log(x);
  }
  std::vector<double> logs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) logs[i] = std::log(data[i]);

  const double ll_ln = fit_mle(Family::LogNormal, data).log_likelihood;
  const double ll_n_logs = fit_mle(Family::Normal, logs).log_likelihood;
  CHECK(std::abs(ll_ln - (ll_n_logs - log_sum)) < 1e-9);
}

TEST_CASE("fit_mle error paths") {
  const double two[] = {1.0, 2.0};
  CHECK_THROWS_AS(fit_mle(Family::Normal, two), InsufficientDataError);
  const double with_nonpositive[] = {1.0, -2.0, 3.0};
  CHECK_THROWS_AS(fit_mle(Family::LogNormal, with_nonpositive), SupportError);
  const double constant[] = {2.5, 2.5, 2.5, 2.5};
  CHECK_THROWS_AS(fit_mle(Family::Normal, constant), DegenerateDataError);
  const double fine[] = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_mle(Family::Pareto, fine), DomainError);
  CHECK_THROWS_AS(sample(DistributionSpec::normal(0.0, 1.0), 0, 1), DomainError);
}
