#pragma once

#include <unordered_map>

#include "ssnreg/problem.hpp"

namespace ssnreg {

/**
 * Lazily computed columns of G = X^T X.
 *
 * A column is computed once (one O(np) product) the first time its index
 * becomes active and reused while the solver stays on the same problem.
 * When the cache reaches `max_columns` it is cleared before new columns are
 * admitted, so memory stays at p * max_columns doubles.
 */
class GramColumnCache {
 public:
  explicit GramColumnCache(const Problem& problem, Index max_columns = 0);

  const Problem& problem() const { return *problem_; }

  /// Make sure every index in `indices` has a cached column.
  void ensure(const IndexList& indices);

  /// Column j of G. ensure() must have been called for j.
  auto column(Index j) const { return storage_.col(slot_.at(j)); }

  /// G restricted to rows and columns `indices`.
  Matrix block(const IndexList& indices);

  /// G_{:, indices} * coef, a p-vector.
  Vector times(const IndexList& indices, const Vector& coef);

  Index cached_columns() const { return static_cast<Index>(slot_.size()); }

 private:
  const Problem* problem_;
  Index max_columns_;
  Matrix storage_;
  std::unordered_map<Index, Index> slot_;
};

}  // namespace ssnreg
