#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace crowdbound {

/// Dense row-major matrix, just big enough for regression design matrices.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

namespace linalg {

struct LeastSquares {
  std::vector<double> beta;
  double rss = 0.0;               // squared residual norm
  std::vector<double> cov;        // (X^T X)^-1, p x p row-major, unscaled
};

/// min ||X beta - y||_2 via Householder QR. Throws CollinearityError when X
/// is rank deficient. Requires rows >= cols.
LeastSquares solve_least_squares(const Matrix& x, std::span<const double> y);

}  // namespace linalg
}  // namespace crowdbound
