#include "ssnreg/kkt.hpp"

#include <cmath>
#include <string>

namespace ssnreg {

namespace {

std::int8_t signed_code(std::int8_t regime, double w) {
  return static_cast<std::int8_t>(w < 0.0 ? -regime : regime);
}

void check_family(const PenaltySpec& spec, Penalty expected) {
  if (spec.family() != expected) {
    throw InvalidArgument(std::string("partition for ") + std::string(to_string(expected)) +
                          " called with a " + std::string(to_string(spec.family())) + " spec");
  }
}

}  // namespace

Vector dual_from_beta(const Problem& problem, const Vector& beta) {
  problem.check_coefficients(beta, "beta");
  return problem.y_tilde() - problem.gram_times(beta);
}

ActivePartition partition_mcp(const Vector& w, const PenaltySpec& spec) {
  check_family(spec, Penalty::Mcp);
  const double lam = spec.lambda();
  const double upper = spec.gamma() * lam;
  ActivePartition part;
  part.family = Penalty::Mcp;
  part.code.assign(static_cast<std::size_t>(w.size()), 0);
  for (Index i = 0; i < w.size(); ++i) {
    const double a = std::abs(w[i]);
    auto& code = part.code[static_cast<std::size_t>(i)];
    if (a <= lam) {
      part.inactive.push_back(i);
      continue;
    }
    if (a < upper) {
      code = signed_code(1, w[i]);
      part.a1.push_back(i);
    } else {
      code = 2;
      part.a2.push_back(i);
    }
    part.active.push_back(i);
  }
  return part;
}

ActivePartition partition_scad(const Vector& w, const PenaltySpec& spec) {
  check_family(spec, Penalty::Scad);
  const double lam = spec.lambda();
  const double upper = spec.gamma() * lam;
  ActivePartition part;
  part.family = Penalty::Scad;
  part.code.assign(static_cast<std::size_t>(w.size()), 0);
  for (Index i = 0; i < w.size(); ++i) {
    const double a = std::abs(w[i]);
    auto& code = part.code[static_cast<std::size_t>(i)];
    if (a <= lam) {
      part.inactive.push_back(i);
      continue;
    }
    if (a < 2.0 * lam) {
      code = signed_code(1, w[i]);
      part.a1.push_back(i);
    } else if (a < upper) {
      code = signed_code(2, w[i]);
      part.a2.push_back(i);
    } else {
      code = 3;
      part.a3.push_back(i);
    }
    part.active.push_back(i);
  }
  return part;
}

ActivePartition partition(const Vector& w, const PenaltySpec& spec) {
  return spec.family() == Penalty::Mcp ? partition_mcp(w, spec) : partition_scad(w, spec);
}

Vector kkt_residual(const Problem& problem, const Vector& beta, const Vector& d,
                    const PenaltySpec& spec) {
  problem.check_coefficients(beta, "beta");
  problem.check_coefficients(d, "d");
  const Index p = problem.p();
  Vector f(2 * p);
  for (Index i = 0; i < p; ++i) f[i] = beta[i] - threshold(beta[i] + d[i], spec);
  f.tail(p) = problem.gram_times(beta) + d - problem.y_tilde();
  return f;
}

double kkt_max_violation(const Problem& problem, const Vector& beta, const Vector& d,
                         const PenaltySpec& spec) {
  return kkt_residual(problem, beta, d, spec).lpNorm<Eigen::Infinity>();
}

double penalized_objective(const Problem& problem, const Vector& beta, const PenaltySpec& spec) {
  return problem.half_rss(beta) + penalty_sum(beta, spec);
}

Index support_size(const Vector& beta) {
  Index count = 0;
  for (Index i = 0; i < beta.size(); ++i) count += beta[i] != 0.0;
  return count;
}

IndexList support(const Vector& beta) {
  IndexList out;
  for (Index i = 0; i < beta.size(); ++i) {
    if (beta[i] != 0.0) out.push_back(i);
  }
  return out;
}

}  // namespace ssnreg
