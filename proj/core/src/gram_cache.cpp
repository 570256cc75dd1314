#include "ssnreg/gram_cache.hpp"

#include <algorithm>

namespace ssnreg {

GramColumnCache::GramColumnCache(const Problem& problem, Index max_columns)
    : problem_(&problem),
      max_columns_(max_columns > 0 ? max_columns
                                   : std::min(problem.p(), std::max<Index>(64, problem.n()))) {}

void GramColumnCache::ensure(const IndexList& indices) {
  Index missing = 0;
  for (Index j : indices) missing += slot_.count(j) == 0;
  if (missing == 0) return;

  if (cached_columns() + missing > max_columns_) {
    slot_.clear();
    missing = static_cast<Index>(indices.size());
  }
  const Index needed = cached_columns() + missing;
  if (storage_.cols() < needed) {
    const Index grown = std::max(needed, std::min(max_columns_, 2 * storage_.cols()));
    storage_.conservativeResize(problem_->p(), std::max(grown, needed));
  }

  const Matrix& x = problem_->x();
  for (Index j : indices) {
    if (slot_.count(j) != 0) continue;
    const Index s = cached_columns();
    storage_.col(s).noalias() = x.transpose() * x.col(j);
    slot_.emplace(j, s);
  }
}

Matrix GramColumnCache::block(const IndexList& indices) {
  ensure(indices);
  const Index m = static_cast<Index>(indices.size());
  Matrix out(m, m);
  for (Index c = 0; c < m; ++c) {
    const auto col = column(indices[static_cast<std::size_t>(c)]);
    for (Index r = 0; r < m; ++r) out(r, c) = col[indices[static_cast<std::size_t>(r)]];
  }
  return out;
}

Vector GramColumnCache::times(const IndexList& indices, const Vector& coef) {
  ensure(indices);
  Vector out = Vector::Zero(problem_->p());
  for (std::size_t c = 0; c < indices.size(); ++c) {
    out.noalias() += coef[static_cast<Index>(c)] * column(indices[c]);
  }
  return out;
}

}  // namespace ssnreg
