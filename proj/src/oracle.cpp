#include "wsne/oracle.hpp"

#include "wsne/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wsne {

namespace {

constexpr Index kMaxOracleSize = 8;

// All index subsets of {0..n-1} of the given size, lexicographic.
void for_each_subset(Index n, Index size,
                     const std::function<void(const std::vector<Index>&)>& fn) {
  std::vector<Index> subset(static_cast<std::size_t>(size));
  std::function<void(Index, Index)> rec = [&](Index start, Index depth) {
    if (depth == size) {
      fn(subset);
      return;
    }
    for (Index i = start; i + (size - depth) <= n; ++i) {
      subset[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Solves for a mixture q on `own_support` equalizing the opponent's payoff
// across `opp_support` in matrix form: payoff of opponent action t against q
// is sum_s q[s] * P(s, t).  Returns (q, common value) or nullopt when the
// system is singular.
std::optional<std::pair<Vector, double>> solve_indifference(
    const Matrix& p, const std::vector<Index>& own_support,
    const std::vector<Index>& opp_support) {
  const Index s = static_cast<Index>(own_support.size());
  Matrix a = Matrix::Zero(s + 1, s + 1);
  Vector rhs = Vector::Zero(s + 1);
  for (Index e = 0; e < s; ++e) {
    for (Index v = 0; v < s; ++v) {
      a(e, v) = p(own_support[static_cast<std::size_t>(v)],
                  opp_support[static_cast<std::size_t>(e)]);
    }
    a(e, s) = -1.0;
  }
  a.row(s).head(s).setOnes();
  rhs[s] = 1.0;

  Eigen::FullPivLU<Matrix> lu(a);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return std::nullopt;
  Vector sol = lu.solve(rhs);
  if (!sol.allFinite()) return std::nullopt;
  return std::make_pair(sol.head(s).eval(), sol[s]);
}

std::optional<MixedStrategy> as_strategy(const Vector& weights,
                                         const std::vector<Index>& support,
                                         Index dim, double tol) {
  Vector full = Vector::Zero(dim);
  for (Index k = 0; k < weights.size(); ++k) {
    const double w = weights[k];
    if (w < -tol) return std::nullopt;
    full[support[static_cast<std::size_t>(k)]] = std::max(0.0, w);
  }
  const double sum = full.sum();
  if (std::abs(sum - 1.0) > 1e-6 || sum <= 0.0) return std::nullopt;
  full /= sum;
  return MixedStrategy(std::move(full));
}

}  // namespace

std::vector<NashCertificate> exact_nash_support_enumeration(
    const BimatrixGame& game, Index max_support, double tol) {
  if (game.rows() > kMaxOracleSize || game.cols() > kMaxOracleSize) {
    throw std::invalid_argument(
        "exact_nash_support_enumeration: game too large for the oracle");
  }
  const Index cap = std::min({max_support, game.rows(), game.cols()});
  std::vector<NashCertificate> found;

  for (Index size = 1; size <= cap; ++size) {
    for_each_subset(game.rows(), size, [&](const std::vector<Index>& sr) {
      for_each_subset(game.cols(), size, [&](const std::vector<Index>& sc) {
        // y makes the supported rows indifferent, x the supported columns.
        // P(row r, col c) layout: rows own the R-system, columns the C-system.
        auto y_sol = solve_indifference(game.R().transpose(), sc, sr);
        if (!y_sol) return;
        auto x_sol = solve_indifference(game.C(), sr, sc);
        if (!x_sol) return;

        auto y = as_strategy(y_sol->first, sc, game.cols(), tol);
        auto x = as_strategy(x_sol->first, sr, game.rows(), tol);
        if (!x || !y) return;

        const Vector row_payoffs = game.R() * y->probs;
        const Vector col_payoffs = game.C().transpose() * x->probs;
        const double vr = y_sol->second;
        const double vc = x_sol->second;
        if (row_payoffs.maxCoeff() > vr + tol) return;
        if (col_payoffs.maxCoeff() > vc + tol) return;

        NashCertificate cert;
        cert.profile = {*x, *y};
        cert.row_payoff = x->probs.dot(row_payoffs);
        cert.col_payoff = y->probs.dot(col_payoffs);
        cert.row_support = x->support();
        cert.col_support = y->support();
        found.push_back(std::move(cert));
      });
    });
  }
  return found;
}

double zero_sum_value_by_enumeration(const Matrix& m) {
  if (m.rows() > kMaxOracleSize || m.cols() > kMaxOracleSize) {
    throw std::invalid_argument(
        "zero_sum_value_by_enumeration: matrix too large for the oracle");
  }
  double best = -std::numeric_limits<double>::infinity();

  // Pure rows.
  for (Index i = 0; i < m.rows(); ++i) {
    best = std::max(best, m.row(i).minCoeff());
  }

  // Every square subsystem: x on rows S_r equalizing the columns S_c.  Some
  // optimal basic mixture always appears among these candidates.
  const Index cap = std::min(m.rows(), m.cols());
  for (Index size = 2; size <= cap; ++size) {
    for_each_subset(m.rows(), size, [&](const std::vector<Index>& sr) {
      for_each_subset(m.cols(), size, [&](const std::vector<Index>& sc) {
        auto sol = solve_indifference(m, sr, sc);
        if (!sol) return;
        Vector x = sol->first;
        double sum = 0.0;
        for (Index k = 0; k < x.size(); ++k) {
          if (x[k] < -1e-9) return;
          sum += std::max(0.0, x[k]);
        }
        if (std::abs(sum - 1.0) > 1e-6) return;
        Vector full = Vector::Zero(m.rows());
        for (Index k = 0; k < x.size(); ++k) {
          full[sr[static_cast<std::size_t>(k)]] = std::max(0.0, x[k]) / sum;
        }
        best = std::max(best, (m.transpose() * full).minCoeff());
      });
    });
  }
  return best;
}

GridMinimum min_wsne_epsilon_over_grid(const BimatrixGame& game, int k) {
  const std::uint64_t rows = k_uniform_count(game.rows(), k);
  const std::uint64_t cols = k_uniform_count(game.cols(), k);
  if (rows > 10000000ULL / cols) {
    throw std::invalid_argument(
        "min_wsne_epsilon_over_grid: grid exceeds 1e7 profile pairs");
  }

  GridMinimum best;
  best.epsilon = std::numeric_limits<double>::infinity();
  KUniformEnumerator xs(game.rows(), k);
  while (xs.next()) {
    KUniformEnumerator ys(game.cols(), k);
    while (ys.next()) {
      StrategyProfile p{xs.current(), ys.current()};
      const double eps = wsne_report(game, p).wsne_epsilon;
      if (eps < best.epsilon) {
        best.epsilon = eps;
        best.argmin = std::move(p);
      }
    }
  }
  return best;
}

SubgamePayoffCheck check_subgame_payoff_lemma(const BimatrixGame& game,
                                              const std::vector<Index>& row_support,
                                              double tol) {
  const Subgame sub = restrict_rows(game, row_support);
  const Index cap = std::min(sub.game.rows(), sub.game.cols());
  std::vector<NashCertificate> eqs =
      exact_nash_support_enumeration(sub.game, cap);

  SubgamePayoffCheck check;
  check.equilibria_found = eqs.size();
  check.holds = true;
  for (auto& eq : eqs) {
    if (eq.row_payoff <= 0.5 - tol || eq.col_payoff <= 0.5 - tol) {
      check.holds = false;
      check.violators.push_back(std::move(eq));
    }
  }
  return check;
}

}  // namespace wsne
