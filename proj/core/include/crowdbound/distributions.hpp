#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace crowdbound {

enum class Family { Normal, LogNormal, Pareto, LogLaplace };

const char* family_name(Family family) noexcept;

/// Parameterized initial-estimate distribution.
///
/// The meaning of (p1, p2) is family specific:
///   Normal      p1 = mean,            p2 = standard deviation
///   LogNormal   p1 = mean of log,     p2 = sd of log
///   Pareto      p1 = scale x_m,       p2 = tail index alpha
///   LogLaplace  p1 = location of log, p2 = scale of log
/// p2 must be positive for every family; Pareto additionally needs p1 > 0.
struct DistributionSpec {
  Family family = Family::LogNormal;
  double p1 = 0.0;
  double p2 = 1.0;

  static DistributionSpec normal(double mean, double sd) { return {Family::Normal, mean, sd}; }
  static DistributionSpec log_normal(double mu, double sigma) {
    return {Family::LogNormal, mu, sigma};
  }
  static DistributionSpec pareto(double x_m, double alpha) {
    return {Family::Pareto, x_m, alpha};
  }
  static DistributionSpec log_laplace(double location, double scale) {
    return {Family::LogLaplace, location, scale};
  }

  /// Throws DomainError if the parameters are outside the family's domain.
  void validate() const;

  std::string describe() const;
};

double pdf(const DistributionSpec& spec, double x);
double log_pdf(const DistributionSpec& spec, double x);

/// P[X <= x]; 0 below the support, monotone nondecreasing, -> 1 as x -> inf.
double cdf(const DistributionSpec& spec, double x);

/// P[X > x], computed directly for accuracy deep in the upper tail.
double survival(const DistributionSpec& spec, double x);

/// Inverse CDF for q in (0, 1).
double quantile(const DistributionSpec& spec, double q);

/// Draw at position `index` of the counter-based stream `seed` (inverse-CDF
/// transform of rng::uniform01). All sampling in the toolkit goes through
/// this, which is what makes results independent of threading.
double sample_at(const DistributionSpec& spec, std::uint64_t seed, std::uint64_t index);

/// `count` i.i.d. draws; bit-identical for identical (spec, count, seed).
std::vector<double> sample(const DistributionSpec& spec, std::size_t count, std::uint64_t seed);

struct FitResult {
  DistributionSpec spec;
  double log_likelihood = 0.0;
  std::size_t n_obs = 0;
};

/// Maximum-likelihood fit. Only Normal and LogNormal are supported; the
/// variance estimate is the ML (1/n) one so likelihood comparisons stay exact.
FitResult fit_mle(Family family, std::span<const double> data);

}  // namespace crowdbound
