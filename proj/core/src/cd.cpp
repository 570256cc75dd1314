#include "ssnreg/cd.hpp"

#include <cmath>

#include "ssnreg/error.hpp"

namespace ssnreg {

double cd_sweep(const Problem& problem, const PenaltySpec& spec, Vector& beta, Vector& residual) {
  problem.check_coefficients(beta, "beta");
  if (residual.size() != problem.n()) throw DimensionMismatch("residual must have length n");
  const Matrix& x = problem.x();
  double moved = 0.0;
  for (Index i = 0; i < problem.p(); ++i) {
    const double z = x.col(i).dot(residual) + beta[i];
    const double updated = threshold(z, spec);
    const double delta = updated - beta[i];
    if (delta != 0.0) {
      residual.noalias() -= delta * x.col(i);
      beta[i] = updated;
      moved += delta * delta;
    }
  }
  return std::sqrt(moved);
}

Solution cd_solve(const Problem& problem, const PenaltySpec& spec, const Vector& beta0,
                  const CdOptions& opts) {
  problem.check_coefficients(beta0, "initial beta");
  if (opts.max_iter < 1) throw InvalidArgument("CD sweep cap must be >= 1");
  if (!(opts.tol > 0.0)) throw InvalidArgument("CD tolerance must be > 0");

  Solution sol;
  sol.beta = beta0;
  Vector residual = problem.y() - problem.predict(sol.beta);
  sol.converged_by = StopReason::IterCap;
  for (int k = 1; k <= opts.max_iter; ++k) {
    const double moved = cd_sweep(problem, spec, sol.beta, residual);
    sol.iters = k;
    if (moved <= opts.tol) {
      sol.converged_by = StopReason::StepTolerance;
      break;
    }
  }
  sol.d = dual_from_beta(problem, sol.beta);
  sol.partition = partition(sol.beta + sol.d, spec);
  sol.kkt_inf = kkt_max_violation(problem, sol.beta, sol.d, spec);
  return sol;
}

}  // namespace ssnreg
