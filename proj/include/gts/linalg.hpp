#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace gts {

// Dense row-major matrix of doubles. Deliberately minimal: the library only
// needs symmetric factorizations of small matrices and contiguous point
// storage, not a general linear algebra stack.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double max_norm(const Matrix& a) {
  double mx = 0.0;
  for (double v : a.data()) mx = std::max(mx, std::abs(v));
  return mx;
}

// Cholesky factorization A = L L^T of a symmetric positive definite matrix.
// Fails when any pivot (the Schur-complement diagonal before taking the square
// root) drops below rel_pivot_tol times the max-norm of A, which is the
// library-wide singularity criterion.
struct Cholesky {
  Matrix lower;
  double log_det = 0.0;  // log determinant of A

  // Solves A x = b in place.
  void solve(std::vector<double>& b) const {
    const std::size_t d = lower.rows();
    for (std::size_t i = 0; i < d; ++i) {
      double s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= lower(i, j) * b[j];
      b[i] = s / lower(i, i);
    }
    for (std::size_t i = d; i-- > 0;) {
      double s = b[i];
      for (std::size_t j = i + 1; j < d; ++j) s -= lower(j, i) * b[j];
      b[i] = s / lower(i, i);
    }
  }

  // Solves L z = b in place (forward substitution only), so that
  // z_i - z_j preserves the quadratic form of A^{-1}.
  void whiten(std::vector<double>& b) const {
    const std::size_t d = lower.rows();
    for (std::size_t i = 0; i < d; ++i) {
      double s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= lower(i, j) * b[j];
      b[i] = s / lower(i, i);
    }
  }
};

inline std::optional<Cholesky> cholesky(const Matrix& a, double rel_pivot_tol = 1e-12) {
  const std::size_t d = a.rows();
  if (d == 0 || a.cols() != d) return std::nullopt;
  const double tol = rel_pivot_tol * max_norm(a);
  Cholesky f;
  f.lower = Matrix(d, d, 0.0);
  f.log_det = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.lower(i, k) * f.lower(j, k);
      if (i == j) {
        if (!(s > tol) || !std::isfinite(s)) return std::nullopt;
        f.lower(i, i) = std::sqrt(s);
        f.log_det += std::log(s);
      } else {
        f.lower(i, j) = s / f.lower(j, j);
      }
    }
  }
  return f;
}

}  // namespace gts
