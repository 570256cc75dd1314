#include "ssnreg/problem.hpp"

#include <cmath>
#include <string>

#include "ssnreg/error.hpp"

namespace ssnreg {

Vector normalize_columns(Matrix& x) {
  Vector scale(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw InvalidArgument("column " + std::to_string(j) + " has zero or non-finite norm");
    }
    x.col(j) /= norm;
    scale[j] = norm;
  }
  return scale;
}

Problem::Problem(Matrix x, Vector y, double norm_tolerance)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) {
    throw DimensionMismatch("X has " + std::to_string(x_.rows()) + " rows but y has " +
                            std::to_string(y_.size()) + " entries");
  }
  if (x_.rows() == 0 || x_.cols() == 0) throw InvalidArgument("empty design matrix");
  if (!x_.allFinite() || !y_.allFinite()) throw InvalidArgument("non-finite entries in X or y");
  for (Index j = 0; j < x_.cols(); ++j) {
    const double norm = x_.col(j).norm();
    if (std::abs(norm - 1.0) > norm_tolerance) {
      throw InvalidArgument("column " + std::to_string(j) + " is not unit norm (norm " +
                            std::to_string(norm) + ")");
    }
  }
  // Column dots match the coordinate-descent update, so the first sweep from
  // zero sees exactly these correlations.
  y_tilde_.resize(x_.cols());
  for (Index j = 0; j < x_.cols(); ++j) y_tilde_[j] = x_.col(j).dot(y_);
}

double Problem::lambda_max() const { return y_tilde_.lpNorm<Eigen::Infinity>(); }

void Problem::check_coefficients(const Vector& beta, const char* what) const {
  if (beta.size() != p()) {
    throw DimensionMismatch(std::string(what) + " has length " + std::to_string(beta.size()) +
                            ", expected p = " + std::to_string(p()));
  }
}

Vector Problem::predict(const Vector& beta) const {
  check_coefficients(beta, "beta");
  Vector fitted = Vector::Zero(n());
  for (Index j = 0; j < p(); ++j) {
    if (beta[j] != 0.0) fitted.noalias() += beta[j] * x_.col(j);
  }
  return fitted;
}

Vector Problem::gram_times(const Vector& beta) const {
  const Vector fitted = predict(beta);
  Vector out(p());
  out.noalias() = x_.transpose() * fitted;
  return out;
}

double Problem::half_rss(const Vector& beta) const {
  return 0.5 * (predict(beta) - y_).squaredNorm();
}

}  // namespace ssnreg
