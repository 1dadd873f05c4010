#pragma once

#include "wsne/types.hpp"

#include <optional>
#include <stdexcept>

namespace wsne {

struct SolverConfig {
  double feasibility_tol = 1e-9;
  double value_tol = 1e-6;
  int max_iterations = 200000;
};

// Pivoting gave up before reaching an optimum.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optimal play in the zero-sum game where the row player's payoff is M.
// x maximizes min_j (x^T M)_j, y minimizes max_i (M y)_i, and value is the
// common optimum:  min_j (x^T M)_j >= value - tol,  max_i (M y)_i <= value + tol.
struct ZeroSumSolution {
  MixedStrategy x;
  MixedStrategy y;
  double value = 0.0;
};

// M may hold any finite entries; it is shifted internally so the standard
// game LP applies.  With the fixed pivot rule the result is deterministic.
// A constant matrix returns uniform strategies.
ZeroSumSolution solve_zero_sum(const Matrix& m, const SolverConfig& cfg = {});

// Some x with support inside `allowed_rows` keeping every column of C at or
// below `threshold`:  (x^T C)_j <= threshold + feasibility_tol for all j.
// Returns nullopt when no such mixture exists.  Solved as the zero-sum game
// in which the mixture suppresses the worst column.
std::optional<MixedStrategy> find_low_threat_mixture(
    const Matrix& c, const std::vector<Index>& allowed_rows, double threshold,
    const SolverConfig& cfg = {});

namespace detail {

// maximize c.z  s.t.  A z <= b, z >= 0, with b >= 0 (slack basis feasible).
// Dantzig entering rule with a Bland fallback against cycling.
struct SimplexResult {
  Vector z;
  double objective = 0.0;
  int iterations = 0;
};

SimplexResult simplex_max(const Matrix& a, const Vector& b, const Vector& c,
                          const SolverConfig& cfg);

// The column-player side of solve_zero_sum: y minimizing max_i (M y)_i.
std::pair<MixedStrategy, double> minimax_strategy(const Matrix& m,
                                                  const SolverConfig& cfg);

// The row-player side: x maximizing min_j (x^T M)_j.
std::pair<MixedStrategy, double> maximin_strategy(const Matrix& m,
                                                  const SolverConfig& cfg);

}  // namespace detail

}  // namespace wsne
