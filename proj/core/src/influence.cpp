#include "crowdbound/influence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "crowdbound/errors.hpp"

namespace crowdbound {

namespace {

constexpr double kSumTol = 1e-12;
constexpr std::size_t kMaxPowerIterations = 1'000'000;

// Period of a strongly connected digraph: gcd over edges (u, v) of
// dist(u) + 1 - dist(v) for BFS distances from an arbitrary root.
bool is_aperiodic(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<long long> dist(n, -1);
  std::vector<std::size_t> queue{0};
  dist[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long long g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : adj[u]) {
      g = std::gcd(g, std::llabs(dist[u] + 1 - dist[v]));
    }
  }
  return g == 1;
}

bool reaches_all(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t v : adj[queue[head]]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace

Centralization::Centralization(double omega) : omega_(omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw DomainError("centralization omega must lie in [0, 1], got " + std::to_string(omega));
  }
}

InfluenceWeights::InfluenceWeights(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) {
    throw EmptyInputError("influence weights must be nonempty");
  }
  double sum = 0.0;
  for (double w : w_) {
    if (!(w >= 0.0)) {
      throw DomainError("influence weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw DomainError("influence weights must sum to 1, got " + std::to_string(sum));
  }
  std::sort(w_.begin(), w_.end(), std::greater<>());
}

InfluenceMatrix::InfluenceMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), w_(std::move(row_major)) {
  if (n_ == 0) {
    throw EmptyInputError("influence matrix must be nonempty");
  }
  if (w_.size() != n_ * n_) {
    throw DomainError("influence matrix storage must be n*n");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(w_[i * n_ + j] >= 0.0)) {
        throw DomainError("influence matrix entries must be nonnegative");
      }
      sum += w_[i * n_ + j];
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      throw DomainError("influence matrix row " + std::to_string(i) + " sums to " +
                        std::to_string(sum) + ", expected 1");
    }
  }
}

InfluenceMatrix InfluenceMatrix::uniform(std::size_t n) {
  return {n, std::vector<double>(n * n, 1.0 / static_cast<double>(n))};
}

double collective_estimate(std::span<const double> estimates, Centralization omega) {
  if (estimates.empty()) {
    throw EmptyInputError("collective_estimate requires at least one estimate");
  }
  const double om = omega.value();
  if (estimates.size() == 1 || om == 1.0) {
    return estimates[0];
  }
  double sum = 0.0;
  for (double a : estimates) sum += a;
  const double mean = sum / static_cast<double>(estimates.size());
  if (om == 0.0) {
    return mean;
  }
  return om * estimates[0] + (1.0 - om) * mean;
}

InfluenceWeights weights_from_centralization(std::size_t n, Centralization omega) {
  if (n == 0) {
    throw DomainError("weights_from_centralization requires n >= 1");
  }
  const double shared = (1.0 - omega.value()) / static_cast<double>(n);
  std::vector<double> w(n, shared);
  w[0] = omega.value() + shared;
  return InfluenceWeights(std::move(w));
}

Centralization centralization_from_weights(const InfluenceWeights& weights) {
  const std::size_t n = weights.size();
  if (n < 2) {
    throw UndefinedCentralizationError("centralization is undefined for a single agent");
  }
  const double w_max = weights[0];
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w_max - weights[i];
  double omega = sum / static_cast<double>(n - 1);
  omega = std::clamp(omega, 0.0, 1.0);
  return Centralization(omega);
}

std::vector<double> stationary_distribution(const InfluenceMatrix& matrix, double tol) {
  const std::size_t n = matrix.size();
  if (!(tol > 0.0)) {
    throw DomainError("stationary_distribution requires tol > 0");
  }

  std::vector<std::vector<std::size_t>> adj(n), radj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix.at(i, j) > 0.0) {
        adj[i].push_back(j);
        radj[j].push_back(i);
      }
    }
  }
  if (!reaches_all(adj) || !reaches_all(radj)) {
    throw ReducibleChainError("influence chain is reducible; fixed point is not unique");
  }
  if (!is_aperiodic(adj)) {
    throw ReducibleChainError("influence chain is periodic; power iteration cannot settle");
  }

  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < kMaxPowerIterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = pi[i];
      if (p == 0.0) continue;
      for (std::size_t j : adj[i]) {
        next[j] += p * matrix.at(i, j);
      }
    }
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) change += std::abs(next[j] - pi[j]);
    pi.swap(next);
    if (change < tol) {
      double sum = 0.0;
      for (double p : pi) sum += p;
      for (double& p : pi) p /= sum;
      return pi;
    }
  }
  throw ReducibleChainError("power iteration did not converge within the iteration budget");
}

InfluenceWeights degroot_influence(const InfluenceMatrix& matrix, double tol) {
  return InfluenceWeights(stationary_distribution(matrix, tol));
}

InfluenceMatrix topology_matrix(Topology kind, std::size_t n, double tie_strength) {
  if (n < 2) {
    throw DomainError("topology_matrix requires n >= 2");
  }
  if (!(tie_strength > 0.0 && tie_strength <= 1.0)) {
    throw DomainError("tie_strength must lie in (0, 1]");
  }
  std::vector<double> w(n * n, 0.0);
  const double self = 1.0 - tie_strength;
  switch (kind) {
    case Topology::Empty:
      for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
      break;
    case Topology::Complete: {
      const double share = tie_strength / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = (i == j) ? self : share;
      }
      break;
    }
    case Topology::Star: {
      const double share = tie_strength / static_cast<double>(n - 1);
      w[0] = self;
      for (std::size_t j = 1; j < n; ++j) w[j] = share;
      for (std::size_t i = 1; i < n; ++i) {
        w[i * n + i] = self;
        w[i * n + 0] = tie_strength;
      }
      break;
    }
    case Topology::Circle:
      for (std::size_t i = 0; i < n; ++i) {
        w[i * n + i] += self;
        w[i * n + (i + 1) % n] += tie_strength / 2.0;
        w[i * n + (i + n - 1) % n] += tie_strength / 2.0;
      }
      break;
  }
  return {n, std::move(w)};
}

InfluenceWeights topology_weights(Topology kind, std::size_t n, double tie_strength) {
  if (n < 2) {
    throw DomainError("topology_weights requires n >= 2");
  }
  if (!(tie_strength > 0.0 && tie_strength <= 1.0)) {
    throw DomainError("tie_strength must lie in (0, 1]");
  }
  if (kind == Topology::Empty || kind == Topology::Complete) {
    // Empty: isolated individuals never revise, so everyone keeps an equal
    // (null) say. Complete: uniform by symmetry. Returning the exact uniform
    // vector keeps the centralization of both at exactly zero.
    return InfluenceWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  return degroot_influence(topology_matrix(kind, n, tie_strength), 1e-13);
}

}  // namespace crowdbound
