#include "ssnreg/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ssnreg/error.hpp"

namespace ssnreg {

std::string_view to_string(SolverKind solver) { return solver == SolverKind::Ssn ? "ssn" : "cd"; }

std::string_view to_string(Selector selector) {
  switch (selector) {
    case Selector::Vsc: return "vsc";
    case Selector::Hbic: return "hbic";
    case Selector::None: return "none";
  }
  return "none";
}

SolverKind parse_solver(std::string_view name) {
  if (name == "ssn") return SolverKind::Ssn;
  if (name == "cd") return SolverKind::Cd;
  throw InvalidArgument("unknown solver '" + std::string(name) + "' (expected ssn or cd)");
}

Selector parse_selector(std::string_view name) {
  if (name == "vsc") return Selector::Vsc;
  if (name == "hbic") return Selector::Hbic;
  if (name == "none") return Selector::None;
  throw InvalidArgument("unknown selector '" + std::string(name) + "' (expected vsc, hbic or none)");
}

Index default_support_cap(Index n, Index p) {
  if (p <= 2) return n;
  return static_cast<Index>(std::floor(static_cast<double>(n) / std::log(static_cast<double>(p))));
}

std::vector<double> lambda_grid(double lambda_max, double alpha, int grid_size) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (grid_size < 1) throw InvalidArgument("grid size M must be >= 1");
  if (!(lambda_max > 0.0)) throw EmptySignal("||X^T y||_inf is zero; y is orthogonal to every column");
  const double log_rho = std::log(alpha) / grid_size;
  std::vector<double> grid(static_cast<std::size_t>(grid_size) + 1);
  for (int t = 0; t <= grid_size; ++t) grid[static_cast<std::size_t>(t)] = lambda_max * std::exp(log_rho * t);
  return grid;
}

std::vector<double> lambda_grid(const Problem& problem, const PathOptions& opts) {
  return lambda_grid(problem.lambda_max(), opts.alpha, opts.grid_size);
}

std::vector<double> PathResult::lambdas() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(pt.lambda);
  return out;
}

std::vector<Index> PathResult::support_sizes() const {
  std::vector<Index> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(pt.support_size);
  return out;
}

PathResult solve_path(const Problem& problem, Penalty family, double gamma, SolverKind solver,
                      const PathOptions& opts) {
  const std::vector<double> grid = lambda_grid(problem, opts);
  PathResult path;
  path.n = problem.n();
  path.p = problem.p();
  path.support_cap = opts.support_cap > 0 ? opts.support_cap : default_support_cap(path.n, path.p);

  SsnOptions ssn_opts;
  ssn_opts.max_iter = opts.max_iter;
  ssn_opts.ridge_lift = opts.ridge_lift;
  GramColumnCache cache(problem);

  Vector beta = Vector::Zero(problem.p());
  Vector d = problem.y_tilde();
  for (std::size_t t = 0; t < grid.size(); ++t) {
    const PenaltySpec spec(family, grid[t], gamma);
    Solution sol;
    try {
      sol = solver == SolverKind::Ssn ? ssn_solve(cache, spec, beta, d, ssn_opts)
                                      : cd_solve(problem, spec, beta, opts.cd);
    } catch (const Error& e) {
      path.failure = PathFailure{static_cast<Index>(t), grid[t], e.what()};
      path.terminated_early = true;
      break;
    }
    beta = sol.beta;
    d = sol.d;
    PathPoint pt;
    pt.lambda = grid[t];
    pt.iters = sol.iters;
    pt.kkt_inf = sol.kkt_inf;
    pt.support_size = support_size(sol.beta);
    pt.stop = sol.converged_by;
    pt.lifted = sol.lifted;
    pt.beta = std::move(sol.beta);
    pt.d = std::move(sol.d);
    path.points.push_back(std::move(pt));
    if (path.points.back().support_size > path.support_cap) {
      path.terminated_early = t + 1 < grid.size();
      break;
    }
  }
  return path;
}

namespace {

SelectionResult make_selection(const PathResult& path, std::size_t t, double score) {
  const PathPoint& pt = path.points[t];
  return SelectionResult{static_cast<Index>(t), pt.lambda, pt.beta, pt.support_size, score};
}

}  // namespace

SelectionResult select_vsc(const PathResult& path) {
  if (path.empty()) throw InvalidArgument("cannot select from an empty path");
  // size -> (votes, index of the smallest lambda with that size)
  std::map<Index, std::pair<Index, std::size_t>> votes;
  for (std::size_t t = 1; t < path.points.size(); ++t) {
    const Index size = path.points[t].support_size;
    if (size < 1 || size > path.support_cap) continue;
    auto& [count, last] = votes[size];
    ++count;
    last = t;  // lambdas decrease along the path
  }
  if (votes.empty()) {
    throw NoNonzeroSolution("no path point has a support size in [1, " +
                            std::to_string(path.support_cap) + "]");
  }
  auto best = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it) {
    if (it->second.first > best->second.first) best = it;  // strict: smaller size wins ties
  }
  return make_selection(path, best->second.second, static_cast<double>(best->second.first));
}

double hbic(double rss, Index support, Index n, Index p) {
  const double nd = static_cast<double>(n);
  return std::log(rss / nd) +
         static_cast<double>(support) * std::log(std::log(nd)) * std::log(static_cast<double>(p)) / nd;
}

SelectionResult select_hbic(const PathResult& path, const Problem& problem) {
  if (path.empty()) throw InvalidArgument("cannot select from an empty path");
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < path.points.size(); ++t) {
    const PathPoint& pt = path.points[t];
    const double rss = 2.0 * problem.half_rss(pt.beta);
    const double score = hbic(rss, pt.support_size, problem.n(), problem.p());
    if (score < best_score || (t == 0 && !(score >= best_score))) {
      best = t;
      best_score = score;
    }
  }
  return make_selection(path, best, best_score);
}

SelectionResult select(const PathResult& path, const Problem& problem, Selector selector) {
  switch (selector) {
    case Selector::Vsc: return select_vsc(path);
    case Selector::Hbic: return select_hbic(path, problem);
    case Selector::None: break;
  }
  throw InvalidArgument("no selector requested");
}

}  // namespace ssnreg
