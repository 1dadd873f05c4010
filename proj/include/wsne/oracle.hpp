#pragma once

#include "wsne/game.hpp"

#include <cstdint>
#include <optional>

namespace wsne {

struct NashCertificate {
  StrategyProfile profile;
  double row_payoff = 0.0;
  double col_payoff = 0.0;
  std::vector<Index> row_support;
  std::vector<Index> col_support;
};

// Exhaustive support enumeration for exact equilibria on small games.
// Tries every support pair with |S_r| = |S_c| <= max_support, solves the
// indifference systems, and keeps solutions that are valid distributions and
// best-response-consistent within tol.  Singular systems are skipped, not
// perturbed.  Guarded to games with at most 8 rows and columns.
std::vector<NashCertificate> exact_nash_support_enumeration(
    const BimatrixGame& game, Index max_support, double tol = 1e-8);

// Exact value of the zero-sum game with row payoff M, by enumerating every
// square subsystem (each yields a candidate maximin mixture) plus the pure
// rows, and taking the best guaranteed floor.  Independent of the LP path.
double zero_sum_value_by_enumeration(const Matrix& m);

struct GridMinimum {
  double epsilon = 0.0;
  StrategyProfile argmin;
};

// Minimum wsne_epsilon over all pairs of k-uniform strategies, scanning in
// lexicographic order (first minimizer wins).  Refuses grids with more than
// 1e7 profile pairs.
GridMinimum min_wsne_epsilon_over_grid(const BimatrixGame& game, int k);

struct SubgamePayoffCheck {
  bool holds = false;
  std::size_t equilibria_found = 0;
  std::vector<NashCertificate> violators;
};

// Checks that every exact equilibrium of the row-restricted subgame pays
// both players more than 1/2 - tol.  Supports the analysis of the grid
// branch: when that branch is reached, restricted equilibria must be
// high-paying.
SubgamePayoffCheck check_subgame_payoff_lemma(const BimatrixGame& game,
                                              const std::vector<Index>& row_support,
                                              double tol = 1e-6);

}  // namespace wsne
