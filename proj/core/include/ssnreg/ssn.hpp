#pragma once

#include <optional>

#include "ssnreg/gram_cache.hpp"
#include "ssnreg/kkt.hpp"

namespace ssnreg {

enum class StopReason {
  ActiveSetFixed,  // SSN: partition repeated
  StepTolerance,   // CD: ||beta^{k+1} - beta^k||_2 <= delta
  IterCap,         // iteration cap reached, or SSN 2-cycle detected
};

std::string_view to_string(StopReason reason);

struct SsnOptions {
  /// Iteration cap J for warm-started solves (paths). Values up to 5 are typical.
  int max_iter = 1;
  /// Iteration cap for cold starts from (0, X^T y).
  int cold_max_iter = 50;
  /// Relative ridge added to the reduced block when its Cholesky fails.
  double ridge_lift = 1e-8;
  /// Abort when |A_k| exceeds this. 0 selects min(n, 2 floor(n / log p)).
  Index max_active = 0;
  /// Keep every iterate (beta; d) in SsnSolution::iterates.
  bool record_iterates = false;
};

/// Result of one fixed-(lambda, gamma) solve. Shared by SSN and CD.
struct Solution {
  Vector beta;
  Vector d;
  int iters = 0;
  StopReason converged_by = StopReason::IterCap;
  double kkt_inf = 0.0;
  /// A ridge lift was needed for at least one reduced solve.
  bool lifted = false;
  /// The loop stopped on a 2-cycle of partitions.
  bool cycled = false;
  ActivePartition partition;
  /// z^0, z^1, ..., stacked as (beta; d), when requested.
  std::vector<Vector> iterates;
};
using SsnSolution = Solution;

struct ReducedSolve {
  Vector x;
  bool lifted = false;
};

/**
 * Solve gram_block * x = rhs by Cholesky.
 *
 * If the plain factorization fails the block is lifted by
 * ridge_lift * trace / |A| on the diagonal and refactored; `lifted` reports
 * it. Throws SingularReducedSystem if that also fails.
 */
ReducedSolve solve_reduced_system(const Matrix& gram_block, const Vector& rhs, double ridge_lift);

/// min(n, 2 floor(n / log p)), with p <= 2 mapped to n.
Index default_max_active(Index n, Index p);

/// One semismooth Newton step for MCP from `state`.
PrimalDualState ssn_step_mcp(const Problem& problem, const PrimalDualState& state,
                             const PenaltySpec& spec, double ridge_lift = 1e-8);
/// One semismooth Newton step for SCAD from `state`.
PrimalDualState ssn_step_scad(const Problem& problem, const PrimalDualState& state,
                              const PenaltySpec& spec, double ridge_lift = 1e-8);

/**
 * Semismooth Newton iteration on the KKT system F(beta; d) = 0.
 *
 * Iterates until the partition (with signs) repeats, a 2-cycle of
 * partitions appears, or the iteration cap is hit. The cold-start overload
 * starts from (0, X^T y) with opts.cold_max_iter; the warm-start overload
 * uses opts.max_iter.
 */
Solution ssn_solve(const Problem& problem, const PenaltySpec& spec, const SsnOptions& opts = {});
Solution ssn_solve(const Problem& problem, const PenaltySpec& spec, const Vector& beta0,
                   const Vector& d0, const SsnOptions& opts);
/// Warm-start overload reusing a caller-owned Gram column cache.
Solution ssn_solve(GramColumnCache& cache, const PenaltySpec& spec, const Vector& beta0,
                   const Vector& d0, const SsnOptions& opts);

}  // namespace ssnreg
