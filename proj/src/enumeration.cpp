#include "wsne/enumeration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsne {

int kappa(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("kappa: delta must lie in (0, 1)");
  }
  const double raw = 2.0 * std::log(1.0 / delta) / (delta * delta);
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

std::uint64_t k_uniform_count(Index d, int k) {
  if (d < 1 || k < 1) {
    throw std::invalid_argument("k_uniform_count: d and k must be positive");
  }
  // C(d + k - 1, k) computed incrementally with overflow saturation.
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(k); ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(d) - 1 + i;
    if (result > cap / num) return cap;
    result = result * num / i;
  }
  return result;
}

KUniformEnumerator::KUniformEnumerator(Index d, int k) : d_(d), k_(k) {
  if (d < 1 || k < 1) {
    throw std::invalid_argument("KUniformEnumerator: d and k must be positive");
  }
  counts_.assign(static_cast<std::size_t>(d), 0);
}

void KUniformEnumerator::materialize() {
  Vector p(d_);
  for (Index i = 0; i < d_; ++i) {
    p[i] = static_cast<double>(counts_[static_cast<std::size_t>(i)]) /
           static_cast<double>(k_);
  }
  current_ = MixedStrategy(std::move(p));
}

bool KUniformEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    counts_.back() = k_;
    materialize();
    return true;
  }
  // Successor in lexicographic order: move one unit of mass left of the last
  // nonzero slot and flush what remains of that slot to the end.
  Index last = d_ - 1;
  while (counts_[static_cast<std::size_t>(last)] == 0) --last;
  if (last == 0) {
    done_ = true;
    return false;
  }
  const int moved = counts_[static_cast<std::size_t>(last)];
  counts_[static_cast<std::size_t>(last)] = 0;
  counts_[static_cast<std::size_t>(last - 1)] += 1;
  counts_.back() = moved - 1;
  materialize();
  return true;
}

Subgame restrict_rows(const BimatrixGame& game, const std::vector<Index>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("restrict_rows: empty row set");
  }
  for (Index i : rows) {
    if (i < 0 || i >= game.rows()) {
      throw std::invalid_argument("restrict_rows: row index out of range");
    }
  }
  Matrix r(static_cast<Index>(rows.size()), game.cols());
  Matrix c(static_cast<Index>(rows.size()), game.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    r.row(static_cast<Index>(k)) = game.R().row(rows[k]);
    c.row(static_cast<Index>(k)) = game.C().row(rows[k]);
  }
  return {BimatrixGame(std::move(r), std::move(c)), rows};
}

MixedStrategy lift_row_strategy(const MixedStrategy& sub_strategy,
                                const std::vector<Index>& row_index_map,
                                Index full_dim) {
  if (sub_strategy.dim() != static_cast<Index>(row_index_map.size())) {
    throw std::invalid_argument("lift_row_strategy: map size mismatch");
  }
  Vector lifted = Vector::Zero(full_dim);
  for (Index i = 0; i < sub_strategy.dim(); ++i) {
    const Index target = row_index_map[static_cast<std::size_t>(i)];
    if (target < 0 || target >= full_dim) {
      throw std::invalid_argument("lift_row_strategy: index out of range");
    }
    lifted[target] += sub_strategy.probs[i];
  }
  return MixedStrategy(std::move(lifted), sub_strategy.support_tol);
}

}  // namespace wsne
