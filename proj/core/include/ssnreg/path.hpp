#pragma once

#include <optional>
#include <string>

#include "ssnreg/cd.hpp"
#include "ssnreg/ssn.hpp"

namespace ssnreg {

enum class SolverKind { Ssn, Cd };
enum class Selector { Vsc, Hbic, None };

std::string_view to_string(SolverKind solver);
std::string_view to_string(Selector selector);
SolverKind parse_solver(std::string_view name);
Selector parse_selector(std::string_view name);

struct PathOptions {
  /// lambda_min / lambda_max.
  double alpha = 1e-5;
  /// Number of grid intervals M; the grid has M + 1 points.
  int grid_size = 100;
  /// SSN iterations per lambda (J).
  int max_iter = 1;
  double ridge_lift = 1e-8;
  CdOptions cd;
  /// Stop once ||beta||_0 exceeds this. 0 selects floor(n / log p).
  Index support_cap = 0;
};

/// floor(n / log p); n when p <= 2 makes the ratio meaningless.
Index default_support_cap(Index n, Index p);

/// lambda_t = lambda_0 rho^t, t = 0..M, lambda_0 = ||X^T y||_inf, rho = alpha^(1/M).
std::vector<double> lambda_grid(const Problem& problem, const PathOptions& opts);
std::vector<double> lambda_grid(double lambda_max, double alpha, int grid_size);

struct PathPoint {
  double lambda = 0.0;
  Vector beta;
  Vector d;
  int iters = 0;
  double kkt_inf = 0.0;
  Index support_size = 0;
  StopReason stop = StopReason::IterCap;
  bool lifted = false;
};

struct PathFailure {
  Index index = 0;
  double lambda = 0.0;
  std::string message;
};

struct PathResult {
  std::vector<PathPoint> points;
  Index n = 0;
  Index p = 0;
  Index support_cap = 0;
  bool terminated_early = false;
  std::optional<PathFailure> failure;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  std::vector<double> lambdas() const;
  std::vector<Index> support_sizes() const;
};

/**
 * Warm-started path over lambda_grid(). Each lambda starts from the previous
 * solution. The path stops after the first point whose support exceeds the
 * cap; a solver error truncates the path at the failing lambda, records it in
 * `failure`, and keeps the points computed so far.
 */
PathResult solve_path(const Problem& problem, Penalty family, double gamma, SolverKind solver,
                      const PathOptions& opts = {});

struct SelectionResult {
  Index index = 0;
  double lambda = 0.0;
  Vector beta;
  Index support_size = 0;
  double score = 0.0;  // vote count (VSC) or criterion value (HBIC)
};

/// Voting selection: most frequent support size in 1..cap, smallest lambda at that size.
/// Ties between sizes go to the smaller size.
SelectionResult select_vsc(const PathResult& path);

/// log(RSS / n) + ||beta||_0 log(log n) log(p) / n.
double hbic(double rss, Index support, Index n, Index p);
/// HBIC minimizer over the stored path; ties go to the larger lambda.
SelectionResult select_hbic(const PathResult& path, const Problem& problem);

SelectionResult select(const PathResult& path, const Problem& problem, Selector selector);

}  // namespace ssnreg
