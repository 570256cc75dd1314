#pragma once

#include <cstdint>

#include "ssnreg/penalty.hpp"
#include "ssnreg/problem.hpp"

namespace ssnreg {

/**
 * Active-set partition of w = beta + d.
 *
 * MCP:  B = {|w| <= lambda}, A1 = {lambda < |w| < gamma lambda},
 *       A2 = {|w| >= gamma lambda}.
 * SCAD: B = {|w| <= lambda}, A1 = {lambda < |w| < 2 lambda},
 *       A2 = {2 lambda <= |w| < gamma lambda}, A3 = {|w| >= gamma lambda}.
 *
 * `code` tags each index with its set (0 for B, k for Ak). On the sets
 * where the Newton step depends on sign(w) the tag carries that sign, so
 * two partitions compare equal only when the next step would be the same
 * linear system.
 */
struct ActivePartition {
  Penalty family = Penalty::Mcp;
  std::vector<std::int8_t> code;
  IndexList inactive;  // B
  IndexList a1;
  IndexList a2;
  IndexList a3;        // SCAD only
  IndexList active;    // A, ascending

  Index size() const { return static_cast<Index>(code.size()); }
  bool same_regimes(const ActivePartition& other) const { return code == other.code; }
  friend bool operator==(const ActivePartition& a, const ActivePartition& b) {
    return a.family == b.family && a.code == b.code;
  }
};

/// Primal-dual iterate (beta, d) plus the partition it was classified into.
struct PrimalDualState {
  Vector beta;
  Vector d;
  ActivePartition partition;
  int iter = 0;
};

/// d = y_tilde - X^T (X beta), via two matrix-vector products.
Vector dual_from_beta(const Problem& problem, const Vector& beta);

ActivePartition partition_mcp(const Vector& w, const PenaltySpec& spec);
ActivePartition partition_scad(const Vector& w, const PenaltySpec& spec);
/// Dispatches on spec.family().
ActivePartition partition(const Vector& w, const PenaltySpec& spec);

/// F(beta; d) = [beta - T(beta + d); G beta + d - y_tilde], length 2p.
Vector kkt_residual(const Problem& problem, const Vector& beta, const Vector& d,
                    const PenaltySpec& spec);
inline Vector kkt_residual(const Problem& problem, const PrimalDualState& state,
                           const PenaltySpec& spec) {
  return kkt_residual(problem, state.beta, state.d, spec);
}

double kkt_max_violation(const Problem& problem, const Vector& beta, const Vector& d,
                         const PenaltySpec& spec);
inline double kkt_max_violation(const Problem& problem, const PrimalDualState& state,
                                const PenaltySpec& spec) {
  return kkt_max_violation(problem, state.beta, state.d, spec);
}

/// 1/2 ||X beta - y||^2 + sum_i p(beta_i; lambda, gamma).
double penalized_objective(const Problem& problem, const Vector& beta, const PenaltySpec& spec);

/// Number of exactly nonzero entries.
Index support_size(const Vector& beta);
IndexList support(const Vector& beta);

}  // namespace ssnreg
