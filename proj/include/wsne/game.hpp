#pragma once

#include "wsne/types.hpp"

namespace wsne {

// Regrets of a profile (x, y).  row_best is the best pure-row payoff against
// y, row_worst_support the worst payoff among rows x actually plays.
// wsne_epsilon is the well-supported regret, ne_epsilon the plain one;
// ne_epsilon <= wsne_epsilon always.
struct RegretReport {
  double row_best = 0.0;
  double row_worst_support = 0.0;
  double row_regret = 0.0;
  double col_best = 0.0;
  double col_worst_support = 0.0;
  double col_regret = 0.0;
  double wsne_epsilon = 0.0;
  double ne_epsilon = 0.0;
};

// Affine per-player rescaling of raw payoffs onto [0, 1].  A constant matrix
// maps to all zeros and sets the player's degenerate flag.
NormalizedGame normalize(const Matrix& raw_r, const Matrix& raw_c);

// Payoff of each pure row against y: R y.
Vector pure_row_payoffs(const Matrix& r, const MixedStrategy& y);

// Payoff of each pure column against x: x^T C.
Vector pure_col_payoffs(const Matrix& c, const MixedStrategy& x);

// (x^T R y, x^T C y).
std::pair<double, double> expected_payoffs(const BimatrixGame& game,
                                           const StrategyProfile& profile);

RegretReport wsne_report(const BimatrixGame& game,
                         const StrategyProfile& profile);

}  // namespace wsne
