#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace crowdbound {

/// Interpolation parameter between equal-voice aggregation (0) and a single
/// dictator (1); equals Freeman centralization on the one-influencer family.
class Centralization {
 public:
  explicit Centralization(double omega);  // throws DomainError outside [0, 1]

  double value() const noexcept { return omega_; }

 private:
  double omega_;
};

/// Convex influence weights, stored sorted nonincreasing (agents are indexed
/// in decreasing order of influence).
class InfluenceWeights {
 public:
  explicit InfluenceWeights(std::vector<double> weights);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const noexcept { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

/// Row-stochastic listening matrix; entry (i, j) is how much agent i weighs
/// agent j when revising.
class InfluenceMatrix {
 public:
  InfluenceMatrix(std::size_t n, std::vector<double> row_major);

  static InfluenceMatrix uniform(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const noexcept { return w_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> w_;
};

enum class Topology { Complete, Star, Circle, Empty };

/// Collective estimate omega * a[0] + (1 - omega) * mean(a). The influential
/// agent is the first element. Exact at omega = 0, omega = 1 and n = 1.
double collective_estimate(std::span<const double> estimates, Centralization omega);

/// Weight family with w_1 = omega + (1 - omega)/n and the rest (1 - omega)/n.
InfluenceWeights weights_from_centralization(std::size_t n, Centralization omega);

/// Freeman-style centralization sum(w_max - w_i) / (n - 1); inverse of
/// weights_from_centralization on its family.
Centralization centralization_from_weights(const InfluenceWeights& weights);

/// Stationary distribution pi with pi W = pi, node-indexed. Throws
/// ReducibleChainError when the chain is reducible or periodic.
std::vector<double> stationary_distribution(const InfluenceMatrix& matrix, double tol = 1e-12);

/// Asymptotic DeGroot influence of each agent: the stationary distribution,
/// reordered by decreasing influence.
InfluenceWeights degroot_influence(const InfluenceMatrix& matrix, double tol = 1e-12);

/// Canonical listening matrix for a topology: self-weight 1 - tie_strength,
/// the rest spread evenly over the listed neighbors.
InfluenceMatrix topology_matrix(Topology kind, std::size_t n, double tie_strength);

/// DeGroot influence of the canonical topology matrix. Empty has no ties, so
/// it returns uniform (null) influence directly.
InfluenceWeights topology_weights(Topology kind, std::size_t n, double tie_strength);

}  // namespace crowdbound
