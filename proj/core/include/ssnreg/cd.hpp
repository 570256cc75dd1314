#pragma once

#include "ssnreg/ssn.hpp"

namespace ssnreg {

struct CdOptions {
  /// Sweep cap J per solve.
  int max_iter = 10000;
  /// Stop when ||beta^{k+1} - beta^k||_2 <= tol.
  double tol = 1e-3;
};

/**
 * One cyclic sweep i = 0..p-1:
 *   z_i = X_i^T r + beta_i,  beta_i <- T(z_i),  r <- r - (delta beta_i) X_i.
 *
 * `residual` must equal y - X beta on entry and is kept in sync.
 * Returns ||beta_after - beta_before||_2.
 */
double cd_sweep(const Problem& problem, const PenaltySpec& spec, Vector& beta, Vector& residual);

/// Coordinate descent from beta0. d is recomputed as y_tilde - G beta at exit.
Solution cd_solve(const Problem& problem, const PenaltySpec& spec, const Vector& beta0,
                  const CdOptions& opts = {});

}  // namespace ssnreg
