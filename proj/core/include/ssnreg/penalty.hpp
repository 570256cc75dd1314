#pragma once

#include <cmath>
#include <string_view>

#include "ssnreg/error.hpp"
#include "ssnreg/types.hpp"

namespace ssnreg {

enum class Penalty { Mcp, Scad };

std::string_view to_string(Penalty family);
Penalty parse_penalty(std::string_view name);

/**
 * Folded-concave penalty p(t; lambda, gamma).
 *
 * MCP requires gamma > 1, SCAD requires gamma > 2, and lambda must be
 * strictly positive. The constructor enforces these, so any live
 * PenaltySpec is valid.
 */
class PenaltySpec {
 public:
  PenaltySpec(Penalty family, double lambda, double gamma);

  static PenaltySpec mcp(double lambda, double gamma = 2.7) {
    return {Penalty::Mcp, lambda, gamma};
  }
  static PenaltySpec scad(double lambda, double gamma = 3.7) {
    return {Penalty::Scad, lambda, gamma};
  }
  static double default_gamma(Penalty family) {
    return family == Penalty::Mcp ? 2.7 : 3.7;
  }

  Penalty family() const { return family_; }
  double lambda() const { return lambda_; }
  double gamma() const { return gamma_; }

  /// Same family and concavity at a different penalty level.
  PenaltySpec with_lambda(double lambda) const { return {family_, lambda, gamma_}; }

 private:
  Penalty family_;
  double lambda_;
  double gamma_;
};

inline PenaltySpec::PenaltySpec(Penalty family, double lambda, double gamma)
    : family_(family), lambda_(lambda), gamma_(gamma) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("penalty lambda must be a finite positive number");
  }
  const double min_gamma = family == Penalty::Mcp ? 1.0 : 2.0;
  if (!(gamma > min_gamma) || !std::isfinite(gamma)) {
    throw InvalidArgument(family == Penalty::Mcp ? "MCP requires gamma > 1"
                                                 : "SCAD requires gamma > 2");
  }
}

/// sign(0) = 0.
inline double sign(double t) { return static_cast<double>((t > 0.0) - (t < 0.0)); }

inline double soft_threshold(double t, double lambda) {
  const double mag = std::abs(t) - lambda;
  return mag > 0.0 ? sign(t) * mag : 0.0;
}

/// p(|t|; lambda, gamma), the closed-form antiderivative of the penalty integrand.
inline double penalty_value(double t, const PenaltySpec& spec) {
  const double a = std::abs(t);
  const double lam = spec.lambda();
  const double g = spec.gamma();
  if (spec.family() == Penalty::Mcp) {
    if (a <= g * lam) return lam * a - a * a / (2.0 * g);
    return 0.5 * g * lam * lam;
  }
  if (a <= lam) return lam * a;
  if (a <= g * lam) return (2.0 * g * lam * a - a * a - lam * lam) / (2.0 * (g - 1.0));
  return 0.5 * lam * lam * (g + 1.0);
}

inline double penalty_derivative(double t, const PenaltySpec& spec) {
  const double a = std::abs(t);
  const double lam = spec.lambda();
  const double g = spec.gamma();
  if (spec.family() == Penalty::Mcp) {
    const double slope = lam - a / g;
    return slope > 0.0 ? sign(t) * slope : 0.0;
  }
  if (a <= lam) return sign(t) * lam;
  if (a < g * lam) return sign(t) * (g * lam - a) / (g - 1.0);
  return 0.0;
}

/**
 * Scalar thresholding operator argmin_z 1/2 (z - t)^2 + p(z; lambda, gamma).
 *
 * Branch boundaries follow the active-set partition: |t| <= lambda is the
 * dead zone, |t| >= gamma lambda is the identity zone, and for SCAD the
 * middle branch starts at |t| = 2 lambda. The closed forms agree at every
 * boundary, so the choice only matters for bitwise consistency with the
 * partition.
 */
inline double threshold(double t, const PenaltySpec& spec) {
  const double a = std::abs(t);
  const double lam = spec.lambda();
  const double g = spec.gamma();
  if (a <= lam) return 0.0;
  if (a >= g * lam) return t;
  if (spec.family() == Penalty::Mcp) {
    return sign(t) * (a - lam) / (1.0 - 1.0 / g);
  }
  if (a < 2.0 * lam) return sign(t) * (a - lam);
  return sign(t) * ((g - 1.0) * a - g * lam) / (g - 2.0);
}

/**
 * Element of the Newton derivative of threshold(.) at t.
 *
 * The derivative is piecewise constant; at the breakpoints we return the
 * value of the branch the partition assigns the point to: |t| = lambda
 * gives 0, SCAD |t| = 2 lambda gives the middle slope, |t| = gamma lambda
 * gives 1.
 */
inline double newton_derivative(double t, const PenaltySpec& spec) {
  const double a = std::abs(t);
  const double lam = spec.lambda();
  const double g = spec.gamma();
  if (a <= lam) return 0.0;
  if (a >= g * lam) return 1.0;
  if (spec.family() == Penalty::Mcp) return 1.0 / (1.0 - 1.0 / g);
  if (a < 2.0 * lam) return 1.0;
  return 1.0 / (1.0 - 1.0 / (g - 1.0));
}

inline Vector threshold_vector(const Vector& z, const PenaltySpec& spec) {
  return z.unaryExpr([&spec](double t) { return threshold(t, spec); });
}

/// Sum of penalty_value over the entries of beta.
inline double penalty_sum(const Vector& beta, const PenaltySpec& spec) {
  double total = 0.0;
  for (Index i = 0; i < beta.size(); ++i) total += penalty_value(beta[i], spec);
  return total;
}

}  // namespace ssnreg
