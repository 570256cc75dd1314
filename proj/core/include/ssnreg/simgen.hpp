#pragma once

#include <cstdint>
#include <random>

#include "ssnreg/types.hpp"

namespace ssnreg {

/// Synthetic-data shape (n, p, r, sigma, T) plus the RNG seed.
struct SimConfig {
  Index n = 200;
  Index p = 1000;
  double r = 0.0;
  double sigma = 0.0;
  Index sparsity = 0;  // T
  std::uint64_t seed = 0;

  void validate() const;
};

using Rng = std::mt19937_64;

/// Independent generator for one named stream of a seed. Streams: 1 design, 2 signal, 3 noise.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Deterministic 64-bit mix of (master, salt), for deriving per-replication seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt);

/// Rows i.i.d. N(0, Sigma) with Sigma_jk = r^|j-k|, built by the AR(1) recursion. Not normalized.
Matrix generate_design_raw(const SimConfig& config);

struct Design {
  Matrix x;      // unit-norm columns
  Vector scale;  // column norms before normalization
};

/// generate_design_raw() with every column rescaled to unit l2 norm.
Design generate_design(const SimConfig& config);

/// T-sparse signal on a uniformly drawn support; nonzeros are +-10^u, u ~ U[0, 1].
Vector generate_signal(const SimConfig& config);

/// y = X beta + sigma * eps, eps ~ N(0, I_n) from the noise stream of `seed`.
Vector generate_response(const Matrix& x, const Vector& beta, double sigma, std::uint64_t seed);

/**
 * A full synthetic problem. `x` has unit-norm columns, `beta_true` lives on
 * the raw column scale, and y = X_raw beta_true + eps = x (scale .* beta_true) + eps.
 * A coefficient estimated on `x` maps back to the raw scale by dividing by `scale`.
 */
struct Dataset {
  Matrix x;
  Vector scale;
  Vector beta_true;
  Vector y;

  Matrix raw_design() const { return x * scale.asDiagonal(); }
  Vector to_raw(const Vector& beta_normalized) const { return beta_normalized.cwiseQuotient(scale); }
};

Dataset simulate(const SimConfig& config);

struct Metrics {
  Index ms = 0;          // |A_hat|
  bool cm = false;       // A_hat == A
  double ae = 0.0;       // ||beta_hat - beta_true||_inf
  double re = 0.0;       // ||beta_hat - beta_true||_2 / ||beta_true||_2
  bool re_absolute = false;  // beta_true == 0, so re holds the absolute l2 error
  double pe = 0.0;       // ||X beta_hat - y||_2
  double time = 0.0;     // seconds
};

/// All vectors and X must be on the same coefficient scale.
Metrics evaluate_metrics(const Vector& beta_hat, const Vector& beta_true, const Matrix& x,
                         const Vector& y, double elapsed_seconds);

}  // namespace ssnreg
