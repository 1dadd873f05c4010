#include "wsne/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wsne {
namespace detail {

namespace {

constexpr double kReducedCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;

}  // namespace

SimplexResult simplex_max(const Matrix& a, const Vector& b, const Vector& c,
                          const SolverConfig& cfg) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("simplex_max: shape mismatch");
  }
  if (m == 0 || n == 0) {
    throw std::invalid_argument("simplex_max: empty program");
  }
  if (b.minCoeff() < 0.0) {
    throw std::invalid_argument("simplex_max: b must be nonnegative");
  }

  // Tableau: constraint rows | slack block | rhs; objective row last.
  Matrix t = Matrix::Zero(m + 1, n + m + 1);
  t.block(0, 0, m, n) = a;
  t.block(0, n, m, m) = Matrix::Identity(m, m);
  t.col(n + m).head(m) = b;
  t.row(m).head(n) = -c.transpose();

  std::vector<Index> basis(m);
  for (Index i = 0; i < m; ++i) basis[i] = n + i;

  const int bland_after = 50 * static_cast<int>(m + n) + 200;
  int iterations = 0;
  for (;;) {
    // Entering column.
    Index enter = -1;
    if (iterations < bland_after) {
      double best = -kReducedCostTol;
      for (Index j = 0; j < n + m; ++j) {
        if (t(m, j) < best) {
          best = t(m, j);
          enter = j;
        }
      }
    } else {
      for (Index j = 0; j < n + m; ++j) {
        if (t(m, j) < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) break;

    // Ratio test; ties resolved by smallest basis index (anti-cycling).
    Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) > kPivotTol) {
        const double ratio = t(i, n + m) / t(i, enter);
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      throw SolverError("simplex_max: unbounded program");
    }

    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) {
        t.row(i) -= t(i, enter) * t.row(leave);
      }
    }
    basis[leave] = enter;

    if (++iterations > cfg.max_iterations) {
      throw SolverError("simplex_max: iteration limit exceeded");
    }
  }

  SimplexResult res;
  res.z = Vector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    if (basis[i] < n) {
      res.z[basis[i]] = std::max(0.0, t(i, n + m));
    }
  }
  res.objective = t(m, n + m);
  res.iterations = iterations;
  return res;
}

std::pair<MixedStrategy, double> minimax_strategy(const Matrix& m,
                                                  const SolverConfig& cfg) {
  if (m.size() == 0) {
    throw std::invalid_argument("minimax_strategy: empty matrix");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("minimax_strategy: non-finite entries");
  }
  if (m.maxCoeff() == m.minCoeff()) {
    return {MixedStrategy::uniform(m.cols()), m(0, 0)};
  }

  // Shift so the value is strictly positive, then the classic game LP:
  //   max 1.w  s.t.  M' w <= 1, w >= 0   with y = w / (1.w), value = 1/(1.w).
  const double shift = 1.0 - m.minCoeff();
  const Matrix shifted = m.array() + shift;
  const SimplexResult lp =
      simplex_max(shifted, Vector::Ones(m.rows()), Vector::Ones(m.cols()), cfg);
  if (lp.objective <= 0.0) {
    throw SolverError("minimax_strategy: degenerate LP optimum");
  }
  Vector y = lp.z / lp.z.sum();
  return {MixedStrategy(std::move(y)), 1.0 / lp.objective - shift};
}

std::pair<MixedStrategy, double> maximin_strategy(const Matrix& m,
                                                  const SolverConfig& cfg) {
  // The row player's maximin problem is the column player's minimax problem
  // of -M^T.
  auto [x, v] = minimax_strategy(Matrix(-m.transpose()), cfg);
  return {std::move(x), -v};
}

}  // namespace detail

ZeroSumSolution solve_zero_sum(const Matrix& m, const SolverConfig& cfg) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("solve_zero_sum: empty matrix");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("solve_zero_sum: non-finite entries");
  }
  if (m.maxCoeff() == m.minCoeff()) {
    return {MixedStrategy::uniform(m.rows()), MixedStrategy::uniform(m.cols()),
            m(0, 0)};
  }
  auto [y, vy] = detail::minimax_strategy(m, cfg);
  auto [x, vx] = detail::maximin_strategy(m, cfg);
  return {std::move(x), std::move(y), 0.5 * (vx + vy)};
}

std::optional<MixedStrategy> find_low_threat_mixture(
    const Matrix& c, const std::vector<Index>& allowed_rows, double threshold,
    const SolverConfig& cfg) {
  if (allowed_rows.empty()) {
    throw std::invalid_argument("find_low_threat_mixture: no allowed rows");
  }
  for (Index i : allowed_rows) {
    if (i < 0 || i >= c.rows()) {
      throw std::invalid_argument("find_low_threat_mixture: row index out of range");
    }
  }
  const Index s = static_cast<Index>(allowed_rows.size());
  Matrix sub(s, c.cols());
  for (Index k = 0; k < s; ++k) sub.row(k) = c.row(allowed_rows[k]);

  // x suppresses every column below the threshold iff the game where x earns
  // threshold - (x^T C)_j has nonnegative maximin value.
  const Matrix f = threshold - sub.array();
  auto [x_sub, v] = detail::maximin_strategy(f, cfg);
  if (v < -cfg.feasibility_tol) {
    return std::nullopt;
  }
  Vector lifted = Vector::Zero(c.rows());
  for (Index k = 0; k < s; ++k) lifted[allowed_rows[k]] = x_sub.probs[k];
  return MixedStrategy(std::move(lifted));
}

}  // namespace wsne
