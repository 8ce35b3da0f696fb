#include "crowdbound/linalg.hpp"

#include <cmath>
#include <string>

#include "crowdbound/errors.hpp"

namespace crowdbound::linalg {

LeastSquares solve_least_squares(const Matrix& x, std::span<const double> y) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) {
    throw DomainError("solve_least_squares: y length does not match rows");
  }
  if (n < p || p == 0) {
    throw DomainError("solve_least_squares: needs rows >= cols >= 1");
  }

  Matrix a = x;
  std::vector<double> rhs(y.begin(), y.end());

  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const double rank_tol = 1e-12 * std::max(scale, 1.0) * static_cast<double>(n);

  // Householder triangularization, reflectors applied to rhs on the fly.
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm <= rank_tol) {
      throw CollinearityError("design matrix is rank deficient at column " + std::to_string(k));
    }
    const double alpha = a(k, k) > 0.0 ? -norm : norm;
    // v = x_k - alpha e_k, normalized so v[k] = 1.
    const double vk = a(k, k) - alpha;
    a(k, k) = alpha;
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) /= vk;
    const double tau = -vk / alpha;  // 2 / ||v||^2 * vk^2, classic form

    for (std::size_t j = k + 1; j < p; ++j) {
      double dot = a(k, j);
      for (std::size_t i = k + 1; i < n; ++i) dot += a(i, k) * a(i, j);
      dot *= tau;
      a(k, j) -= dot;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * a(i, k);
    }
    double dot = rhs[k];
    for (std::size_t i = k + 1; i < n; ++i) dot += a(i, k) * rhs[i];
    dot *= tau;
    rhs[k] -= dot;
    for (std::size_t i = k + 1; i < n; ++i) rhs[i] -= dot * a(i, k);
  }

  LeastSquares out;
  out.beta.assign(p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    double acc = rhs[k];
    for (std::size_t j = k + 1; j < p; ++j) acc -= a(k, j) * out.beta[j];
    out.beta[k] = acc / a(k, k);
  }

  for (std::size_t i = p; i < n; ++i) out.rss += rhs[i] * rhs[i];

  // (X^T X)^-1 = R^-1 R^-T from the triangular factor.
  Matrix rinv(p, p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    rinv(k, k) = 1.0 / a(k, k);
    for (std::size_t j = k + 1; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t m = k + 1; m <= j; ++m) acc += a(k, m) * rinv(m, j);
      rinv(k, j) = -acc / a(k, k);
    }
  }
  out.cov.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t m = j; m < p; ++m) acc += rinv(i, m) * rinv(j, m);
      out.cov[i * p + j] = acc;
      out.cov[j * p + i] = acc;
    }
  }
  return out;
}

}  // namespace crowdbound::linalg
