#include "wsne/algorithm.hpp"

#include "wsne/enumeration.hpp"

#include <stdexcept>
#include <utility>

namespace wsne {

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::k3a: return "3a";
    case Branch::k3b: return "3b";
    case Branch::k3c: return "3c";
    case Branch::k4a: return "4a";
    case Branch::k4b: return "4b";
    case Branch::k4c: return "4c";
    case Branch::kDegenerate: return "3a-degenerate";
  }
  return "?";
}

std::optional<StrategyProfile> search_k_uniform_wsne(
    const BimatrixGame& game, const std::vector<Index>& row_support, int k,
    double target_eps, std::uint64_t* profiles_checked) {
  if (row_support.empty()) {
    throw std::invalid_argument("search_k_uniform_wsne: empty row support");
  }
  for (Index i : row_support) {
    if (i < 0 || i >= game.rows()) {
      throw std::invalid_argument("search_k_uniform_wsne: row out of range");
    }
  }
  const Index s = static_cast<Index>(row_support.size());
  KUniformEnumerator rows(s, k);
  while (rows.next()) {
    const MixedStrategy w =
        lift_row_strategy(rows.current(), row_support, game.rows());
    KUniformEnumerator cols(game.cols(), k);
    while (cols.next()) {
      StrategyProfile candidate{w, cols.current()};
      if (profiles_checked) ++*profiles_checked;
      if (wsne_report(game, candidate).wsne_epsilon <= target_eps) {
        return candidate;
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<Index> all_rows(Index m) {
  std::vector<Index> v(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// Cases a/b/c on the side whose zero-sum value is the larger one.  `game` is
// already oriented so that the row player holds the larger value; `mirrored`
// says the orientation was swapped and the result must be swapped back.
AlgorithmOutcome run_major_side(const BimatrixGame& game,
                                const ZeroSumSolution& own,
                                const ZeroSumSolution& other, double v_own,
                                double v_other, double delta, int grid_k,
                                const SolverConfig& cfg, bool mirrored) {
  AlgorithmOutcome out;
  out.diagnostics.row_zero_sum_value = mirrored ? v_other : v_own;
  out.diagnostics.col_zero_sum_value = mirrored ? v_own : v_other;
  // own: equilibrium of (R, -R) in the oriented game; x* = own.x, y* = own.y.
  // other: equilibrium of (-C, C); xhat = other.x, yhat = other.y.
  out.diagnostics.row_support = own.x.support();
  out.diagnostics.col_support = other.y.support();

  auto finish = [&](StrategyProfile oriented_profile, Branch oriented_branch) {
    if (mirrored) {
      out.profile = {std::move(oriented_profile.col), std::move(oriented_profile.row)};
      switch (oriented_branch) {
        case Branch::k3a: out.branch = Branch::k4a; break;
        case Branch::k3b: out.branch = Branch::k4b; break;
        case Branch::k3c: out.branch = Branch::k4c; break;
        default: out.branch = oriented_branch; break;
      }
      std::swap(out.diagnostics.row_support, out.diagnostics.col_support);
    } else {
      out.profile = std::move(oriented_profile);
      out.branch = oriented_branch;
    }
    return out;
  };

  // (a) the larger value is itself at most 1/2.
  if (v_own <= 0.5) {
    return finish({other.x, own.y}, Branch::k3a);
  }

  // (b) mix over supp(x*) so that no column pays more than 1/2.
  const std::vector<Index> support = own.x.support();
  if (auto low = find_low_threat_mixture(game.C(), support, 0.5, cfg)) {
    return finish({std::move(*low), own.y}, Branch::k3b);
  }

  // (c) grid search over supp(x*) x all columns, then a full-space fallback.
  out.diagnostics.kappa_used = grid_k;
  const double target = 0.5 + delta;
  if (auto hit = search_k_uniform_wsne(game, support, grid_k, target,
                                       &out.diagnostics.profiles_enumerated)) {
    return finish(std::move(*hit), Branch::k3c);
  }
  out.diagnostics.full_space_fallback = true;
  if (auto hit = search_k_uniform_wsne(game, all_rows(game.rows()), grid_k,
                                       target,
                                       &out.diagnostics.profiles_enumerated)) {
    return finish(std::move(*hit), Branch::k3c);
  }
  throw EnumerationExhausted(
      "approximate_wsne: grid search found no profile at the target epsilon");
}

}  // namespace

AlgorithmOutcome approximate_wsne(const BimatrixGame& game, double delta,
                                  const SolverConfig& cfg, int kappa_override) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("approximate_wsne: delta must lie in (0, 1)");
  }

  AlgorithmOutcome out;
  if (0.5 + delta > 1.0) {
    // Any profile is a (1/2 + delta)-WSNE once the bound passes 1.
    out.profile = {MixedStrategy::pure(game.rows(), 0),
                   MixedStrategy::pure(game.cols(), 0)};
    out.branch = Branch::kDegenerate;
    out.report = wsne_report(game, out.profile);
    out.certified_epsilon = out.report.wsne_epsilon;
    return out;
  }

  const int grid_k = kappa_override > 0 ? kappa_override : kappa(delta);

  const ZeroSumSolution row_game = solve_zero_sum(game.R(), cfg);
  // In (-C, C) the column player defends C; solving 1 - C keeps entries in
  // [0, 1] and yields the same strategies.
  const ZeroSumSolution col_aux = solve_zero_sum(Matrix(1.0 - game.C().array()), cfg);
  const double v_row = row_game.x.probs.dot(game.R() * row_game.y.probs);
  const double v_col = col_aux.x.probs.dot(game.C() * col_aux.y.probs);

  if (v_row >= v_col) {
    out = run_major_side(game, row_game, col_aux, v_row, v_col, delta, grid_k,
                         cfg, false);
  } else {
    // The column side mirrors the row side in the transposed game.
    const BimatrixGame flipped = game.transposed();
    const ZeroSumSolution own{col_aux.y, col_aux.x, v_col};
    const ZeroSumSolution other{row_game.y, row_game.x, v_row};
    out = run_major_side(flipped, own, other, v_col, v_row, delta, grid_k, cfg,
                         true);
  }
  out.report = wsne_report(game, out.profile);
  out.certified_epsilon = out.report.wsne_epsilon;
  return out;
}

}  // namespace wsne
