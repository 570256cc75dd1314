#include "ssnreg/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ssnreg/error.hpp"
#include "ssnreg/problem.hpp"

namespace ssnreg {

void SimConfig::validate() const {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (p < 1) throw InvalidArgument("p must be >= 1");
  if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("correlation r must lie in [0, 1)");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be >= 0");
  if (sparsity < 0 || sparsity > p) throw InvalidArgument("sparsity T must lie in [0, p]");
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
  // splitmix64 finalizer over a combination of both inputs
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix generate_design_raw(const SimConfig& config) {
  config.validate();
  Rng rng = make_stream(config.seed, 1);
  std::normal_distribution<double> normal;
  const double r = config.r;
  const double innovation = std::sqrt(1.0 - r * r);
  Matrix x(config.n, config.p);
  for (Index i = 0; i < config.n; ++i) {
    double prev = normal(rng);
    x(i, 0) = prev;
    for (Index j = 1; j < config.p; ++j) {
      prev = r * prev + innovation * normal(rng);
      x(i, j) = prev;
    }
  }
  return x;
}

Design generate_design(const SimConfig& config) {
  Design design;
  design.x = generate_design_raw(config);
  design.scale = normalize_columns(design.x);
  return design;
}

Vector generate_signal(const SimConfig& config) {
  config.validate();
  Rng rng = make_stream(config.seed, 2);
  Vector beta = Vector::Zero(config.p);
  if (config.sparsity == 0) return beta;

  // partial Fisher-Yates: the first T slots are a uniform T-subset
  std::vector<Index> order(static_cast<std::size_t>(config.p));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index k = 0; k < config.sparsity; ++k) {
    std::uniform_int_distribution<Index> pick(k, config.p - 1);
    std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick(rng))]);
  }
  std::uniform_real_distribution<double> exponent(0.0, 1.0);
  std::bernoulli_distribution positive(0.5);
  for (Index k = 0; k < config.sparsity; ++k) {
    const double magnitude = std::pow(10.0, exponent(rng));
    beta[order[static_cast<std::size_t>(k)]] = positive(rng) ? magnitude : -magnitude;
  }
  return beta;
}

Vector generate_response(const Matrix& x, const Vector& beta, double sigma, std::uint64_t seed) {
  if (x.cols() != beta.size()) throw DimensionMismatch("beta length must equal the column count of X");
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  Vector y = x * beta;
  if (sigma == 0.0) return y;
  Rng rng = make_stream(seed, 3);
  std::normal_distribution<double> normal;
  for (Index i = 0; i < y.size(); ++i) y[i] += sigma * normal(rng);
  return y;
}

Dataset simulate(const SimConfig& config) {
  Design design = generate_design(config);
  Dataset data;
  data.beta_true = generate_signal(config);
  data.y = generate_response(design.x, design.scale.cwiseProduct(data.beta_true), config.sigma,
                             config.seed);
  data.x = std::move(design.x);
  data.scale = std::move(design.scale);
  return data;
}

Metrics evaluate_metrics(const Vector& beta_hat, const Vector& beta_true, const Matrix& x,
                         const Vector& y, double elapsed_seconds) {
  if (beta_hat.size() != beta_true.size() || x.cols() != beta_hat.size() || x.rows() != y.size()) {
    throw DimensionMismatch("metric inputs have inconsistent dimensions");
  }
  Metrics m;
  bool same_support = true;
  for (Index i = 0; i < beta_hat.size(); ++i) {
    const bool est = beta_hat[i] != 0.0;
    m.ms += est;
    same_support = same_support && est == (beta_true[i] != 0.0);
  }
  m.cm = same_support;
  const Vector err = beta_hat - beta_true;
  m.ae = err.size() ? err.lpNorm<Eigen::Infinity>() : 0.0;
  const double truth_norm = beta_true.norm();
  if (truth_norm > 0.0) {
    m.re = err.norm() / truth_norm;
  } else {
    m.re = err.norm();
    m.re_absolute = true;
  }
  m.pe = (x * beta_hat - y).norm();
  m.time = elapsed_seconds;
  return m;
}

}  // namespace ssnreg
