#pragma once

#include "wsne/game.hpp"
#include "wsne/lp.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace wsne {

// Which case of the solver produced the output.  The 3x cases apply when the
// row player's zero-sum value is the larger one, the 4x cases are their
// column-side mirrors.  kDegenerate marks the trivial shortcut taken when
// 1/2 + delta exceeds 1, where any profile meets the guarantee.
enum class Branch { k3a, k3b, k3c, k4a, k4b, k4c, kDegenerate };

std::string branch_name(Branch b);

struct AlgorithmDiagnostics {
  double row_zero_sum_value = 0.0;  // x*^T R y*
  double col_zero_sum_value = 0.0;  // xhat^T C yhat
  std::vector<Index> row_support;   // supp(x*)
  std::vector<Index> col_support;   // supp(yhat)
  int kappa_used = 0;               // grid resolution on branch c, else 0
  std::uint64_t profiles_enumerated = 0;
  bool full_space_fallback = false;
};

struct AlgorithmOutcome {
  StrategyProfile profile;
  Branch branch = Branch::k3a;
  double certified_epsilon = 0.0;  // wsne_report on the full game
  RegretReport report;
  AlgorithmDiagnostics diagnostics;
};

// The k-uniform search of branch c exhausted both passes; per the supporting
// lemma this indicates a bug or a tolerance breach, never expected.
class EnumerationExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// First (in w-major lexicographic order) pair of k-uniform strategies with
// full-game wsne_epsilon <= target_eps, where w ranges over the given rows
// (lifted back to all m rows) and z over all columns.  profiles_checked, when
// given, accumulates the number of pairs evaluated.
std::optional<StrategyProfile> search_k_uniform_wsne(
    const BimatrixGame& game, const std::vector<Index>& row_support, int k,
    double target_eps, std::uint64_t* profiles_checked = nullptr);

// Computes a (1/2 + delta)-well-supported Nash equilibrium.  Solves the two
// auxiliary zero-sum games (R, -R) and (-C, C), then takes the first case
// that applies on the side with the larger value: (a) the value is at most
// 1/2, (b) a low-threat mixture over the winner's support exists, (c) a
// kappa(delta)-uniform grid search.  kappa_override > 0 replaces the grid
// resolution of case (c).
AlgorithmOutcome approximate_wsne(const BimatrixGame& game, double delta,
                                  const SolverConfig& cfg = {},
                                  int kappa_override = 0);

}  // namespace wsne
