#pragma once

#include "ssnreg/types.hpp"

namespace ssnreg {

/// Rescale every column of x to unit l2 norm in place; returns the original norms.
/// Throws InvalidArgument if a column is identically zero.
Vector normalize_columns(Matrix& x);

/**
 * Least-squares data (X, y) with column-normalized X and the cached
 * gradient anchor y_tilde = X^T y.
 *
 * The Gram matrix X^T X is never formed; products with it go through two
 * matrix-vector products.
 */
class Problem {
 public:
  /// Column norms must be 1 within `norm_tolerance`.
  Problem(Matrix x, Vector y, double norm_tolerance = 1e-10);

  Index n() const { return x_.rows(); }
  Index p() const { return x_.cols(); }
  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  const Vector& y_tilde() const { return y_tilde_; }

  /// ||X^T y||_inf, the smallest lambda with an all-zero solution.
  double lambda_max() const;

  /// X beta, skipping zero entries of beta.
  Vector predict(const Vector& beta) const;
  /// X^T X beta.
  Vector gram_times(const Vector& beta) const;
  /// 1/2 ||X beta - y||^2.
  double half_rss(const Vector& beta) const;

  void check_coefficients(const Vector& beta, const char* what) const;

 private:
  Matrix x_;
  Vector y_;
  Vector y_tilde_;
};

}  // namespace ssnreg
