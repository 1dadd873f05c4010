#pragma once

#include "wsne/types.hpp"

#include <cstdint>
#include <functional>

namespace wsne {

// Grid resolution ceil(2 ln(1/delta) / delta^2), clamped to at least 1.
// Requires 0 < delta < 1.
int kappa(double delta);

// Number of k-uniform strategies in dimension d: C(d + k - 1, k).
// Saturates at UINT64_MAX on overflow.
std::uint64_t k_uniform_count(Index d, int k);

// Streams every d-dimensional strategy whose probabilities are multiples of
// 1/k, in ascending lexicographic order of the composition vectors, starting
// from (0, ..., 0, k).  Use like:
//   KUniformEnumerator e(d, k);
//   while (e.next()) { use(e.current()); }
class KUniformEnumerator {
 public:
  KUniformEnumerator(Index d, int k);

  bool next();
  const MixedStrategy& current() const { return current_; }
  const std::vector<int>& counts() const { return counts_; }

 private:
  Index d_;
  int k_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> counts_;
  MixedStrategy current_;

  void materialize();
};

// Row-restricted view of a game: keeps the listed rows (in the given order)
// and all columns.  row_index_map[i] is the original index of subgame row i.
struct Subgame {
  BimatrixGame game;
  std::vector<Index> row_index_map;
};

Subgame restrict_rows(const BimatrixGame& game, const std::vector<Index>& rows);

// Embeds a strategy over subgame rows back into the full row space.
MixedStrategy lift_row_strategy(const MixedStrategy& sub_strategy,
                                const std::vector<Index>& row_index_map,
                                Index full_dim);

}  // namespace wsne
