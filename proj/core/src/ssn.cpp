#include "ssnreg/ssn.hpp"

#include <cmath>
#include <string>

#include "ssnreg/error.hpp"

namespace ssnreg {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ActiveSetFixed: return "active_set_fixed";
    case StopReason::StepTolerance: return "step_tolerance";
    case StopReason::IterCap: return "iter_cap";
  }
  return "unknown";
}

ReducedSolve solve_reduced_system(const Matrix& gram_block, const Vector& rhs, double ridge_lift) {
  if (gram_block.rows() != gram_block.cols() || gram_block.rows() != rhs.size()) {
    throw DimensionMismatch("reduced system must be square and match the right-hand side");
  }
  ReducedSolve out;
  if (rhs.size() == 0) return out;

  Eigen::LLT<Matrix> llt(gram_block);
  if (llt.info() == Eigen::Success) {
    out.x = llt.solve(rhs);
    return out;
  }
  const double m = static_cast<double>(gram_block.rows());
  const double lift = ridge_lift * std::abs(gram_block.trace()) / m;
  if (lift > 0.0) {
    Matrix lifted = gram_block;
    lifted.diagonal().array() += lift;
    llt.compute(lifted);
    if (llt.info() == Eigen::Success) {
      out.x = llt.solve(rhs);
      out.lifted = true;
      return out;
    }
  }
  throw SingularReducedSystem("Cholesky factorization of the reduced Newton block (size " +
                              std::to_string(gram_block.rows()) +
                              ") failed; sparse-eigenvalue regularity violated");
}

Index default_max_active(Index n, Index p) {
  if (p <= 2) return n;
  const auto cap = static_cast<Index>(std::floor(static_cast<double>(n) / std::log(static_cast<double>(p))));
  return std::min(n, 2 * cap);
}

namespace {

struct Step {
  Vector beta;
  Vector d;
  bool lifted = false;
};

double code_sign(std::int8_t code) { return code < 0 ? -1.0 : 1.0; }

// One Newton step with the partition already classified. Rows and columns of
// the reduced block are in ascending index order; the regime of each index
// decides its diagonal shift, right-hand side and dual update.
Step newton_step(GramColumnCache& cache, const ActivePartition& part, const PenaltySpec& spec,
                 double ridge_lift) {
  const Problem& problem = cache.problem();
  const Vector& y_tilde = problem.y_tilde();
  const IndexList& active = part.active;
  const Index m = static_cast<Index>(active.size());
  const double lam = spec.lambda();
  const double g = spec.gamma();
  const bool mcp = spec.family() == Penalty::Mcp;

  Matrix block = cache.block(active);
  Vector rhs(m);
  for (Index r = 0; r < m; ++r) {
    const Index i = active[static_cast<std::size_t>(r)];
    const std::int8_t code = part.code[static_cast<std::size_t>(i)];
    const double s = code_sign(code);
    const int regime = std::abs(code);
    if (mcp) {
      if (regime == 1) {
        block(r, r) -= 1.0 / g;
        rhs[r] = y_tilde[i] - lam * s;
      } else {
        rhs[r] = y_tilde[i];
      }
    } else if (regime == 1) {
      rhs[r] = y_tilde[i] - lam * s;
    } else if (regime == 2) {
      block(r, r) -= 1.0 / (g - 1.0);
      rhs[r] = y_tilde[i] - g * lam / (g - 1.0) * s;
    } else {
      rhs[r] = y_tilde[i];
    }
  }

  ReducedSolve solved = solve_reduced_system(block, rhs, ridge_lift);

  Step step;
  step.lifted = solved.lifted;
  step.beta = Vector::Zero(problem.p());
  step.d = y_tilde - cache.times(active, solved.x);
  for (Index r = 0; r < m; ++r) {
    const Index i = active[static_cast<std::size_t>(r)];
    const std::int8_t code = part.code[static_cast<std::size_t>(i)];
    const double s = code_sign(code);
    const int regime = std::abs(code);
    const double b = solved.x[r];
    step.beta[i] = b;
    if (mcp) {
      step.d[i] = regime == 1 ? -b / g + lam * s : 0.0;
    } else if (regime == 1) {
      step.d[i] = lam * s;
    } else if (regime == 2) {
      step.d[i] = -b / (g - 1.0) + g * lam / (g - 1.0) * s;
    } else {
      step.d[i] = 0.0;
    }
  }
  return step;
}

// ||F||_inf using cached Gram columns for G beta (supp(beta) is always cached
// after a step, and a warm-start support is pulled in on demand).
double kkt_inf_cached(GramColumnCache& cache, const Vector& beta, const Vector& d,
                      const PenaltySpec& spec) {
  const IndexList supp = support(beta);
  Vector coef(static_cast<Index>(supp.size()));
  for (std::size_t k = 0; k < supp.size(); ++k) coef[static_cast<Index>(k)] = beta[supp[k]];
  const Vector gb = cache.times(supp, coef);
  const Vector& y_tilde = cache.problem().y_tilde();
  double worst = 0.0;
  for (Index i = 0; i < beta.size(); ++i) {
    worst = std::max(worst, std::abs(beta[i] - threshold(beta[i] + d[i], spec)));
    worst = std::max(worst, std::abs(gb[i] + d[i] - y_tilde[i]));
  }
  return worst;
}

Vector stack(const Vector& beta, const Vector& d) {
  Vector z(beta.size() + d.size());
  z << beta, d;
  return z;
}

PrimalDualState public_step(const Problem& problem, const PrimalDualState& state,
                            const PenaltySpec& spec, double ridge_lift, Penalty expected) {
  if (spec.family() != expected) {
    throw InvalidArgument("ssn step called with a spec of the wrong penalty family");
  }
  problem.check_coefficients(state.beta, "beta");
  problem.check_coefficients(state.d, "d");
  GramColumnCache cache(problem);
  PrimalDualState next;
  next.partition = partition(state.beta + state.d, spec);
  Step step = newton_step(cache, next.partition, spec, ridge_lift);
  next.beta = std::move(step.beta);
  next.d = std::move(step.d);
  next.iter = state.iter + 1;
  return next;
}

}  // namespace

PrimalDualState ssn_step_mcp(const Problem& problem, const PrimalDualState& state,
                             const PenaltySpec& spec, double ridge_lift) {
  return public_step(problem, state, spec, ridge_lift, Penalty::Mcp);
}

PrimalDualState ssn_step_scad(const Problem& problem, const PrimalDualState& state,
                              const PenaltySpec& spec, double ridge_lift) {
  return public_step(problem, state, spec, ridge_lift, Penalty::Scad);
}

Solution ssn_solve(GramColumnCache& cache, const PenaltySpec& spec, const Vector& beta0,
                   const Vector& d0, const SsnOptions& opts) {
  const Problem& problem = cache.problem();
  problem.check_coefficients(beta0, "initial beta");
  problem.check_coefficients(d0, "initial d");
  if (opts.max_iter < 1) throw InvalidArgument("SSN iteration cap must be >= 1");
  if (opts.ridge_lift < 0.0) throw InvalidArgument("ridge lift must be >= 0");
  const Index max_active =
      opts.max_active > 0 ? opts.max_active : default_max_active(problem.n(), problem.p());

  Solution sol;
  sol.beta = beta0;
  sol.d = d0;
  if (opts.record_iterates) sol.iterates.push_back(stack(sol.beta, sol.d));

  ActivePartition current = partition(sol.beta + sol.d, spec);
  std::optional<ActivePartition> previous;
  Vector prev_beta;
  Vector prev_d;
  sol.converged_by = StopReason::IterCap;

  for (int k = 1; k <= opts.max_iter; ++k) {
    if (static_cast<Index>(current.active.size()) > max_active) {
      throw OversizedActiveSet("active set of size " + std::to_string(current.active.size()) +
                               " exceeds the cap " + std::to_string(max_active) +
                               " at lambda = " + std::to_string(spec.lambda()));
    }
    Step step = newton_step(cache, current, spec, opts.ridge_lift);
    sol.lifted = sol.lifted || step.lifted;
    prev_beta = std::move(sol.beta);
    prev_d = std::move(sol.d);
    sol.beta = std::move(step.beta);
    sol.d = std::move(step.d);
    sol.iters = k;
    if (opts.record_iterates) sol.iterates.push_back(stack(sol.beta, sol.d));

    ActivePartition next = partition(sol.beta + sol.d, spec);
    if (next.same_regimes(current)) {
      sol.converged_by = StopReason::ActiveSetFixed;
      current = std::move(next);
      break;
    }
    if (previous && next.same_regimes(*previous)) {
      // Two-cycle: keep whichever of the last two iterates has the smaller residual.
      sol.cycled = true;
      const double now = kkt_inf_cached(cache, sol.beta, sol.d, spec);
      const double before = kkt_inf_cached(cache, prev_beta, prev_d, spec);
      if (before < now) {
        sol.beta = std::move(prev_beta);
        sol.d = std::move(prev_d);
      } else {
        current = std::move(next);
      }
      break;
    }
    previous = std::move(current);
    current = std::move(next);
  }

  sol.partition = partition(sol.beta + sol.d, spec);
  sol.kkt_inf = kkt_inf_cached(cache, sol.beta, sol.d, spec);
  return sol;
}

Solution ssn_solve(const Problem& problem, const PenaltySpec& spec, const Vector& beta0,
                   const Vector& d0, const SsnOptions& opts) {
  GramColumnCache cache(problem);
  return ssn_solve(cache, spec, beta0, d0, opts);
}

Solution ssn_solve(const Problem& problem, const PenaltySpec& spec, const SsnOptions& opts) {
  SsnOptions cold = opts;
  cold.max_iter = opts.cold_max_iter;
  return ssn_solve(problem, spec, Vector::Zero(problem.p()), problem.y_tilde(), cold);
}

}  // namespace ssnreg
