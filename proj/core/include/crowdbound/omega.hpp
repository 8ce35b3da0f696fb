#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crowdbound/distributions.hpp"
#include "crowdbound/influence.hpp"

namespace crowdbound {

/// Monte Carlo estimate of the probability that the omega-centralized
/// collective estimate beats the equal-weight one.
struct OmegaEstimate {
  double value = 0.0;      // in [0, 1]
  double std_error = 0.0;  // sqrt(value * (1 - value) / reps)
  std::size_t reps = 0;
};

/// Maximized analytical floor on the win probability.
struct BoundResult {
  double value = 0.0;
  double beta_star = 0.0;      // maximizing threshold
  double feasible_from = 0.0;  // constraint boundary theta / (1 - omega)
};

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 2;
};

struct PhaseGrid {
  std::vector<double> mu_axis;
  std::vector<double> sigma_axis;
  std::vector<OmegaEstimate> cells;  // row-major: mu index * sigma count + sigma index

  const OmegaEstimate& at(std::size_t mu_idx, std::size_t sigma_idx) const {
    return cells[mu_idx * sigma_axis.size() + sigma_idx];
  }

  /// CSV with header mu,sigma,omega_value,std_error,reps, one row per cell.
  std::string to_csv() const;
  static PhaseGrid from_csv(const std::string& csv);
};

enum class Loss { Absolute, Squared };

struct LossComparison {
  double centralized = 0.0;
  double decentralized = 0.0;
};

/// P[|a(omega) - theta| < |a(0) - theta|] over `reps` groups of n draws.
/// Agent 1 is the first draw of each group; ties count as non-events.
/// Deterministic in (spec, theta, n, omega, reps, seed).
OmegaEstimate estimate_omega(const DistributionSpec& spec, double theta, std::size_t n,
                             Centralization omega, std::size_t reps, std::uint64_t seed);

/// sup over beta > theta/(1-omega) of F(beta) * (1 - F(n beta)^(n-1)),
/// located by a log-spaced coarse grid plus golden-section refinement.
/// Requires a positively supported family and omega < 1.
BoundResult lower_bound(const DistributionSpec& spec, double theta, std::size_t n,
                        Centralization omega);

/// estimate_omega over a (mu, sigma) grid. Cell streams are derived
/// statelessly from (seed, i, j), so the result is bit-identical for any
/// thread count. max_threads = 0 picks hardware concurrency.
PhaseGrid phase_diagram(Family family, const AxisRange& mu_range, const AxisRange& sigma_range,
                        double theta, std::size_t n, Centralization omega, std::size_t reps,
                        std::uint64_t seed, unsigned max_threads = 0);

/// Mean loss of the centralized and decentralized estimates on the same
/// draws (paired design).
LossComparison expected_loss_compare(const DistributionSpec& spec, double theta, std::size_t n,
                                     Centralization omega, Loss loss, std::size_t reps,
                                     std::uint64_t seed);

namespace detail {

/// Runs fn(0..count-1) across up to max_threads workers (0 = hardware).
void parallel_for(std::size_t count, unsigned max_threads, const std::function<void(std::size_t)>& fn);

}  // namespace detail
}  // namespace crowdbound
