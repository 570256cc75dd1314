#include <doctest.h>

#include <ssnreg/ssnreg.hpp>

#include "fixtures.hpp"

using namespace ssnreg;

TEST_SUITE("cd") {

TEST_CASE("cd_sweep examples") {
  Matrix x(2, 1);
  x << 1.0, 0.0;
  Vector y(2);
  y << 3.0, 0.0;
  const Problem col(x, y);
  Vector beta = Vector::Zero(1);
  Vector r = col.y();
  cd_sweep(col, PenaltySpec::mcp(1.0, 3.0), beta, r);
  CHECK(beta[0] == 3.0);

  const Problem orth = fixtures::orthonormal_problem(20, 51);
  for (const PenaltySpec& spec : {PenaltySpec::mcp(1.5, 2.7), PenaltySpec::scad(1.5, 3.7)}) {
    Vector b = Vector::Zero(20);
    Vector res = orth.y();
    cd_sweep(orth, spec, b, res);
    CHECK((b - threshold_vector(orth.y_tilde(), spec)).lpNorm<Eigen::Infinity>() <= 1e-12);
    const double step = cd_sweep(orth, spec, b, res);
    CHECK(step <= 1e-10);
  }
}

TEST_CASE("a KKT fixed point is a sweep fixed point") {
  const Problem prob = fixtures::simulated_problem({60, 120, 0.3, 0.1, 4, 52});
  const PenaltySpec spec = PenaltySpec::mcp(0.3 * prob.lambda_max(), 2.7);
  const PathResult path = solve_path(prob, Penalty::Mcp, 2.7, SolverKind::Ssn, {});
  const PathPoint& pt = path.points[path.size() / 2];
  REQUIRE(pt.stop == StopReason::ActiveSetFixed);
  const PenaltySpec at = spec.with_lambda(pt.lambda);
  Vector beta = pt.beta;
  Vector r = prob.y() - prob.x() * beta;
  CHECK(cd_sweep(prob, at, beta, r) <= 1e-10);
}

TEST_CASE("residual integrity and objective monotonicity") {
  for (Penalty fam : {Penalty::Mcp, Penalty::Scad}) {
    const Problem prob = fixtures::simulated_problem({50, 100, 0.5, 0.5, 5, 53});
    const PenaltySpec spec(fam, 0.2 * prob.lambda_max(), PenaltySpec::default_gamma(fam));
    Vector beta = Vector::Zero(100);
    Vector r = prob.y();
    double prev = oracle::objective(prob.x(), prob.y(), beta, fixtures::to_oracle(fam), spec.lambda(), spec.gamma());
    for (int sweep = 0; sweep < 50; ++sweep) {
      cd_sweep(prob, spec, beta, r);
      CHECK(((prob.y() - prob.x() * beta) - r).lpNorm<Eigen::Infinity>() <= 1e-8);
      const double obj = oracle::objective(prob.x(), prob.y(), beta, fixtures::to_oracle(fam), spec.lambda(), spec.gamma());
      CHECK(obj <= prev + 1e-10);
      prev = obj;
    }
  }
}

TEST_CASE("cd_solve") {
  const Problem prob = fixtures::simulated_problem({40, 80, 0.2, 0.1, 3, 54});
  const Solution zero = cd_solve(prob, PenaltySpec::scad(prob.lambda_max(), 3.7), Vector::Zero(80));
  CHECK(zero.beta.isZero(0.0));
  CHECK(zero.iters == 1);
  CHECK(zero.converged_by == StopReason::StepTolerance);

  const Problem orth = fixtures::orthonormal_problem(30, 55);
  const Solution two = cd_solve(orth, PenaltySpec::mcp(1.0, 2.7), Vector::Zero(30));
  CHECK(two.iters == 2);

  const PenaltySpec spec = PenaltySpec::mcp(0.3 * prob.lambda_max(), 2.7);
  const Solution sol = cd_solve(prob, spec, Vector::Zero(80));
  CHECK((sol.d - dual_from_beta(prob, sol.beta)).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(std::isfinite(sol.kkt_inf));
  CHECK(sol.kkt_inf == doctest::Approx(kkt_max_violation(prob, sol.beta, sol.d, spec)).epsilon(1e-12));

  CdOptions capped;
  capped.max_iter = 1;
  capped.tol = 1e-300;
  const Solution one = cd_solve(prob, spec, Vector::Zero(80), capped);
  CHECK(one.iters == 1);
  CHECK(one.converged_by == StopReason::IterCap);
}

TEST_CASE("LASSO limit on orthonormal designs") {
  const Problem orth = fixtures::orthonormal_problem(40, 56);
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    const PenaltySpec spec = PenaltySpec::mcp(lam, 1e6);
    Vector soft = orth.y_tilde().unaryExpr([lam](double t) { return soft_threshold(t, lam); });
    SsnOptions wide;
    wide.max_active = 40;
    const Solution cd = cd_solve(orth, spec, Vector::Zero(40));
    const Solution ssn = ssn_solve(orth, spec, wide);
    CHECK(support(cd.beta) == support(soft));
    CHECK(support(ssn.beta) == support(soft));
  }
}

TEST_CASE("CD and SSN paths select the same supports at desk scale") {
  SimConfig cfg{200, 1000, 0.3, 0.1, 14, 57};
  const Problem prob = fixtures::simulated_problem(cfg);
  PathOptions opts;
  opts.grid_size = 200;
  const PathResult ssn = solve_path(prob, Penalty::Mcp, 2.7, SolverKind::Ssn, opts);
  const PathResult cd = solve_path(prob, Penalty::Mcp, 2.7, SolverKind::Cd, opts);
  const std::size_t common = std::min(ssn.size(), cd.size());
  REQUIRE(common > 10);
  std::size_t same = 0;
  for (std::size_t t = 0; t < common; ++t) same += support(ssn.points[t].beta) == support(cd.points[t].beta);
  CHECK(static_cast<double>(same) >= 0.9 * static_cast<double>(common));
  CHECK(support(select_vsc(ssn).beta) == support(select_vsc(cd).beta));
}

}  // TEST_SUITE
