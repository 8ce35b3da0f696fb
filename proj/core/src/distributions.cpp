#include "crowdbound/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crowdbound/errors.hpp"
#include "crowdbound/rng.hpp"

namespace crowdbound {

namespace {

constexpr double kHalfLogTwoPi = 0.9189385332046727417803297;  // ln(2*pi)/2
constexpr double kSqrt2 = std::numbers::sqrt2;

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double standard_normal_survival(double z) { return 0.5 * std::erfc(z / kSqrt2); }

// Acklam's rational approximation of the standard normal quantile, polished
// with one Halley step against erfc. Accurate to a few ulp across (0, 1).
double standard_normal_quantile(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement: e = Phi(x) - p, u = e / phi(x).
  const double e = 0.5 * std::erfc(-x / kSqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

// Laplace CDF/quantile on the log scale back LogLaplace.
double laplace_cdf(double y, double location, double scale) {
  const double t = (y - location) / scale;
  return t < 0.0 ? 0.5 * std::exp(t) : 1.0 - 0.5 * std::exp(-t);
}

double laplace_survival(double y, double location, double scale) {
  const double t = (y - location) / scale;
  return t < 0.0 ? 1.0 - 0.5 * std::exp(t) : 0.5 * std::exp(-t);
}

double laplace_quantile(double q, double location, double scale) {
  return q < 0.5 ? location + scale * std::log(2.0 * q)
                 : location - scale * std::log(2.0 * (1.0 - q));
}

}  // namespace

const char* family_name(Family family) noexcept {
  switch (family) {
    case Family::Normal:
      return "normal";
    case Family::LogNormal:
      return "lognormal";
    case Family::Pareto:
      return "pareto";
    case Family::LogLaplace:
      return "loglaplace";
  }
  return "?";
}

void DistributionSpec::validate() const {
  if (!std::isfinite(p1) || !std::isfinite(p2)) {
    throw DomainError(describe() + ": parameters must be finite");
  }
  if (p2 <= 0.0) {
    throw DomainError(describe() + ": p2 must be positive");
  }
  if (family == Family::Pareto && p1 <= 0.0) {
    throw DomainError(describe() + ": Pareto scale x_m must be positive");
  }
}

std::string DistributionSpec::describe() const {
  return std::string(family_name(family)) + "(" + std::to_string(p1) + ", " + std::to_string(p2) +
         ")";
}

double log_pdf(const DistributionSpec& spec, double x) {
  spec.validate();
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  switch (spec.family) {
    case Family::Normal: {
      const double z = (x - spec.p1) / spec.p2;
      return -kHalfLogTwoPi - std::log(spec.p2) - 0.5 * z * z;
    }
    case Family::LogNormal: {
      if (x <= 0.0) return neg_inf;
      const double lx = std::log(x);
      const double z = (lx - spec.p1) / spec.p2;
      return -kHalfLogTwoPi - std::log(spec.p2) - 0.5 * z * z - lx;
    }
    case Family::Pareto: {
      if (x < spec.p1) return neg_inf;
      return std::log(spec.p2) + spec.p2 * std::log(spec.p1) - (spec.p2 + 1.0) * std::log(x);
    }
    case Family::LogLaplace: {
      if (x <= 0.0) return neg_inf;
      const double lx = std::log(x);
      return -std::log(2.0 * spec.p2) - std::abs(lx - spec.p1) / spec.p2 - lx;
    }
  }
  return neg_inf;
}

double pdf(const DistributionSpec& spec, double x) {
  const double lp = log_pdf(spec, x);
  return std::isinf(lp) ? 0.0 : std::exp(lp);
}

double cdf(const DistributionSpec& spec, double x) {
  spec.validate();
  switch (spec.family) {
    case Family::Normal:
      return standard_normal_cdf((x - spec.p1) / spec.p2);
    case Family::LogNormal:
      if (x <= 0.0) return 0.0;
      return standard_normal_cdf((std::log(x) - spec.p1) / spec.p2);
    case Family::Pareto:
      if (x <= spec.p1) return 0.0;
      return -std::expm1(spec.p2 * std::log(spec.p1 / x));
    case Family::LogLaplace:
      if (x <= 0.0) return 0.0;
      return laplace_cdf(std::log(x), spec.p1, spec.p2);
  }
  return 0.0;
}

double survival(const DistributionSpec& spec, double x) {
  spec.validate();
  switch (spec.family) {
    case Family::Normal:
      return standard_normal_survival((x - spec.p1) / spec.p2);
    case Family::LogNormal:
      if (x <= 0.0) return 1.0;
      return standard_normal_survival((std::log(x) - spec.p1) / spec.p2);
    case Family::Pareto:
      if (x <= spec.p1) return 1.0;
      return std::pow(spec.p1 / x, spec.p2);
    case Family::LogLaplace:
      if (x <= 0.0) return 1.0;
      return laplace_survival(std::log(x), spec.p1, spec.p2);
  }
  return 1.0;
}

double quantile(const DistributionSpec& spec, double q) {
  spec.validate();
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("quantile requires q in (0, 1)");
  }
  switch (spec.family) {
    case Family::Normal:
      return spec.p1 + spec.p2 * standard_normal_quantile(q);
    case Family::LogNormal:
      return std::exp(spec.p1 + spec.p2 * standard_normal_quantile(q));
    case Family::Pareto:
      return spec.p1 * std::pow(1.0 - q, -1.0 / spec.p2);
    case Family::LogLaplace:
      return std::exp(laplace_quantile(q, spec.p1, spec.p2));
  }
  return 0.0;
}

double sample_at(const DistributionSpec& spec, std::uint64_t seed, std::uint64_t index) {
  return quantile(spec, rng::uniform01(seed, index));
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  if (count == 0) {
    throw DomainError("sample requires count >= 1");
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = quantile(spec, rng::uniform01(seed, i));
  }
  return out;
}

FitResult fit_mle(Family family, std::span<const double> data) {
  if (family != Family::Normal && family != Family::LogNormal) {
    throw DomainError("fit_mle supports the Normal and LogNormal families only");
  }
  if (data.size() < 3) {
    throw InsufficientDataError("fit_mle needs at least 3 observations, got " +
                                std::to_string(data.size()));
  }

  std::vector<double> values(data.begin(), data.end());
  if (family == Family::LogNormal) {
    for (double& v : values) {
      if (v <= 0.0) {
        throw SupportError("LogNormal fit requires strictly positive data");
      }
      v = std::log(v);
    }
  }

  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (sd <= 1e-12 * (std::abs(mean) + 1e-300)) {
    throw DegenerateDataError("fit_mle: data have (numerically) zero variance");
  }

  FitResult result;
  result.spec = DistributionSpec{family, mean, sd};
  result.n_obs = data.size();
  double ll = 0.0;
  for (double x : data) ll += log_pdf(result.spec, x);
  result.log_likelihood = ll;
  return result;
}

}  // namespace crowdbound
