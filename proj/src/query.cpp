#include "wsne/query.hpp"

#include "wsne/enumeration.hpp"
#include "wsne/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wsne {

namespace {

// Inverse-CDF draw; the explicit walk keeps results identical across
// standard library implementations.
Index draw_index(const Vector& probs, std::mt19937_64& rng) {
  const double u = uniform01(rng) * probs.sum();
  double acc = 0.0;
  for (Index i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

}  // namespace

std::pair<double, double> CountingOracle::query(Index i, Index j) {
  if (memoize_) {
    const std::uint64_t key =
        static_cast<std::uint64_t>(i) << 32 | static_cast<std::uint64_t>(j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto result = base_.query(i, j);
    cache_.emplace(key, result);
    bump(i, j);
    return result;
  }
  auto result = base_.query(i, j);
  bump(i, j);
  return result;
}

void CountingOracle::bump(Index, Index) {
  ++stats_.total;
  switch (phase_) {
    case QueryPhase::kZeroSumR: ++stats_.phase_zero_sum_r; break;
    case QueryPhase::kZeroSumC: ++stats_.phase_zero_sum_c; break;
    case QueryPhase::kSubgame: ++stats_.phase_subgame; break;
    case QueryPhase::kAudit: ++stats_.phase_audit; break;
  }
}

PartialGame::PartialGame(Index m, Index n)
    : m_(m), n_(n), r_(Matrix::Zero(m, n)), c_(Matrix::Zero(m, n)),
      known_(Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false)) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("PartialGame: empty shape");
  }
}

void PartialGame::record(Index i, Index j, double r, double c) {
  check(i, j);
  r_(i, j) = r;
  c_(i, j) = c;
  known_(i, j) = true;
}

bool PartialGame::known(Index i, Index j) const {
  check(i, j);
  return known_(i, j);
}

double PartialGame::r(Index i, Index j) const {
  check(i, j);
  if (!known_(i, j)) {
    throw std::logic_error("PartialGame: read of an unqueried cell");
  }
  return r_(i, j);
}

double PartialGame::c(Index i, Index j) const {
  check(i, j);
  if (!known_(i, j)) {
    throw std::logic_error("PartialGame: read of an unqueried cell");
  }
  return c_(i, j);
}

void PartialGame::check(Index i, Index j) const {
  if (i < 0 || i >= m_ || j < 0 || j >= n_) {
    throw std::out_of_range("PartialGame: cell index out of range");
  }
}

int sampling_size(Index n, double eps, double sampling_constant) {
  if (n < 1 || !(eps > 0.0) || !(eps < 1.0) || sampling_constant <= 0.0) {
    throw std::invalid_argument("sampling_size: bad arguments");
  }
  const double raw = sampling_constant *
                     std::log(2.0 * static_cast<double>(n) + 2.0) / (eps * eps);
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

MixedStrategy sample_k_uniform(const MixedStrategy& x, int k,
                               std::mt19937_64& rng) {
  if (k < 1) {
    throw std::invalid_argument("sample_k_uniform: k must be positive");
  }
  std::vector<int> counts(static_cast<std::size_t>(x.dim()), 0);
  for (int t = 0; t < k; ++t) {
    ++counts[static_cast<std::size_t>(draw_index(x.probs, rng))];
  }
  Vector p(x.dim());
  for (Index i = 0; i < x.dim(); ++i) {
    p[i] = static_cast<double>(counts[static_cast<std::size_t>(i)]) /
           static_cast<double>(k);
  }
  return MixedStrategy(std::move(p), x.support_tol);
}

namespace {

Matrix query_full_auxiliary(PayoffOracle& oracle, ZeroSumOrientation orientation) {
  Matrix g(oracle.rows(), oracle.cols());
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < g.cols(); ++j) {
      auto [r, c] = oracle.query(i, j);
      g(i, j) = orientation == ZeroSumOrientation::kRowGame ? r : 1.0 - c;
    }
  }
  return g;
}

MixedStrategy trim_strategy(const Vector& probs, double keep_mass) {
  std::vector<Index> order(static_cast<std::size_t>(probs.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return probs[a] > probs[b]; });
  Vector kept = Vector::Zero(probs.size());
  double acc = 0.0;
  for (Index idx : order) {
    kept[idx] = probs[idx];
    acc += probs[idx];
    if (acc >= keep_mass) break;
  }
  return MixedStrategy(kept / kept.sum());
}

ZeroSumQueryResult solve_via_mwu(PayoffOracle& oracle,
                                 ZeroSumOrientation orientation, double eps,
                                 std::uint64_t seed, const MwuConfig& mwu) {
  const Index m = oracle.rows();
  const Index n = oracle.cols();
  const double big_n = static_cast<double>(std::max<Index>({m, n, 2}));
  const double budget =
      mwu.query_budget_factor * big_n * std::log(big_n) / std::pow(eps, 4.0);
  const int rounds = std::max(
      1, static_cast<int>(budget / static_cast<double>(m + n)));

  const double eta_row = std::sqrt(8.0 * std::log(std::max<double>(2.0, m)) /
                                   static_cast<double>(rounds));
  const double eta_col = std::sqrt(8.0 * std::log(std::max<double>(2.0, n)) /
                                   static_cast<double>(rounds));

  std::mt19937_64 rng(seed);
  Vector wr = Vector::Ones(m);
  Vector wc = Vector::Ones(n);
  Vector avg_x = Vector::Zero(m);
  Vector avg_y = Vector::Zero(n);
  double value_acc = 0.0;

  for (int t = 0; t < rounds; ++t) {
    const Vector p = wr / wr.sum();
    const Vector q = wc / wc.sum();
    const Index it = draw_index(p, rng);
    const Index jt = draw_index(q, rng);

    // One sampled column for the maximizer, one sampled row for the minimizer.
    Vector col_payoffs(m);
    for (Index i = 0; i < m; ++i) {
      auto [r, c] = oracle.query(i, jt);
      col_payoffs[i] = orientation == ZeroSumOrientation::kRowGame ? r : 1.0 - c;
    }
    Vector row_payoffs(n);
    for (Index j = 0; j < n; ++j) {
      auto [r, c] = oracle.query(it, j);
      row_payoffs[j] = orientation == ZeroSumOrientation::kRowGame ? r : 1.0 - c;
    }

    avg_x += p;
    avg_y += q;
    value_acc += 0.5 * (p.dot(col_payoffs) + q.dot(row_payoffs));

    wr = (wr.array() * (eta_row * col_payoffs.array()).exp()).matrix();
    wc = (wc.array() * (-eta_col * row_payoffs.array()).exp()).matrix();
    wr /= wr.sum();
    wc /= wc.sum();
  }

  ZeroSumQueryResult out;
  out.profile.row = trim_strategy(avg_x / static_cast<double>(rounds), mwu.keep_mass);
  out.profile.col = trim_strategy(avg_y / static_cast<double>(rounds), mwu.keep_mass);
  const double aux_value = value_acc / static_cast<double>(rounds);
  out.value = orientation == ZeroSumOrientation::kRowGame ? aux_value
                                                          : 1.0 - aux_value;
  const double regret_bound =
      std::sqrt(std::log(std::max<double>(2.0, m)) / (2.0 * rounds)) +
      std::sqrt(std::log(std::max<double>(2.0, n)) / (2.0 * rounds));
  out.low_confidence = regret_bound > eps;
  return out;
}

}  // namespace

ZeroSumQueryResult zero_sum_wsne_via_queries(PayoffOracle& oracle,
                                             ZeroSumOrientation orientation,
                                             double eps, std::uint64_t seed,
                                             ZeroSumQueryImpl impl,
                                             const SolverConfig& cfg,
                                             const MwuConfig& mwu) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("zero_sum_wsne_via_queries: eps must lie in (0, 1)");
  }
  if (impl == ZeroSumQueryImpl::kSampledMwu) {
    return solve_via_mwu(oracle, orientation, eps, seed, mwu);
  }
  const Matrix g = query_full_auxiliary(oracle, orientation);
  const ZeroSumSolution sol = solve_zero_sum(g, cfg);
  ZeroSumQueryResult out;
  const double aux_value = sol.x.probs.dot(g * sol.y.probs);
  out.value = orientation == ZeroSumOrientation::kRowGame ? aux_value
                                                          : 1.0 - aux_value;
  out.profile = {sol.x, sol.y};
  return out;
}

namespace {

PartialGame query_rows(PayoffOracle& oracle, const std::vector<Index>& rows) {
  PartialGame partial(oracle.rows(), oracle.cols());
  for (Index i : rows) {
    for (Index j = 0; j < oracle.cols(); ++j) {
      auto [r, c] = oracle.query(i, j);
      partial.record(i, j, r, c);
    }
  }
  return partial;
}

}  // namespace

QueriedSubgame build_queried_subgame(CountingOracle& oracle,
                                     const std::vector<Index>& row_support) {
  if (row_support.empty()) {
    throw std::invalid_argument("build_queried_subgame: empty row support");
  }
  for (Index i : row_support) {
    if (i < 0 || i >= oracle.rows()) {
      throw std::invalid_argument("build_queried_subgame: row out of range");
    }
  }
  const QueryStats before = oracle.stats();
  PartialGame partial = query_rows(oracle, row_support);
  const QueryStats after = oracle.stats();
  QueryStats delta;
  delta.total = after.total - before.total;
  delta.phase_zero_sum_r = after.phase_zero_sum_r - before.phase_zero_sum_r;
  delta.phase_zero_sum_c = after.phase_zero_sum_c - before.phase_zero_sum_c;
  delta.phase_subgame = after.phase_subgame - before.phase_subgame;
  delta.phase_audit = after.phase_audit - before.phase_audit;
  return {std::move(partial), delta};
}

namespace {

struct OrientedStepResult {
  StrategyProfile profile;  // in the oriented coordinates
  Branch branch = Branch::k3a;
  std::vector<Index> sampled_support;
  std::uint64_t profiles_enumerated = 0;
  int kappa_used = 0;
  int attempts = 1;
};

// Cases a/b/c of the query algorithm in oriented coordinates (the view's row
// player owns the larger zero-sum value).  Queries the sampled support's
// rows, then applies the case split using only revealed payoffs.
OrientedStepResult run_query_major_side(
    PayoffOracle& view, CountingOracle& counter, const StrategyProfile& own,
    const StrategyProfile& other, double v_own, double eps, double delta,
    int grid_k, std::mt19937_64& rng, const QueryAlgorithmOptions& opts) {
  OrientedStepResult res;
  const Index n = view.cols();

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    res.attempts = attempt + 1;
    const int k = sampling_size(std::max(view.rows(), n), eps,
                                opts.sampling_constant);
    const MixedStrategy xs = sample_k_uniform(own.row, k, rng);
    const MixedStrategy ys = sample_k_uniform(own.col, k, rng);
    const std::vector<Index> support = xs.support();

    counter.set_phase(QueryPhase::kSubgame);
    PartialGame partial = query_rows(view, support);
    res.sampled_support = support;

    // (a) the larger value is at most 1/2: the zero-sum strategies already
    // defend both players.
    if (v_own <= 0.5) {
      res.profile = {other.row, own.col};
      res.branch = Branch::k3a;
      return res;
    }

    const Index s = static_cast<Index>(support.size());
    Matrix c_sub(s, n);
    Matrix r_sub(s, n);
    for (Index a = 0; a < s; ++a) {
      for (Index j = 0; j < n; ++j) {
        c_sub(a, j) = partial.c(support[static_cast<std::size_t>(a)], j);
        r_sub(a, j) = partial.r(support[static_cast<std::size_t>(a)], j);
      }
    }

    // (b) low-threat mixture over the sampled support, revealed columns only.
    std::vector<Index> sub_rows(static_cast<std::size_t>(s));
    for (Index a = 0; a < s; ++a) sub_rows[static_cast<std::size_t>(a)] = a;
    if (auto low = find_low_threat_mixture(c_sub, sub_rows, 0.5, opts.solver)) {
      Vector lifted = Vector::Zero(view.rows());
      for (Index a = 0; a < s; ++a) {
        lifted[support[static_cast<std::size_t>(a)]] = low->probs[a];
      }
      res.profile = {MixedStrategy(std::move(lifted)), ys};
      res.branch = Branch::k3b;
      return res;
    }

    // (c) grid search over the revealed submatrix: every supported action of
    // both players must clear 1/2 - 3 eps - delta.
    res.kappa_used = grid_k;
    const double floor = 0.5 - 3.0 * eps - delta;
    KUniformEnumerator ws(s, grid_k);
    while (ws.next()) {
      const std::vector<Index> w_support = ws.current().support();
      const Vector col_pay = c_sub.transpose() * ws.current().probs;
      KUniformEnumerator zs(n, grid_k);
      while (zs.next()) {
        ++res.profiles_enumerated;
        const Vector row_pay = r_sub * zs.current().probs;
        bool ok = true;
        for (Index a : w_support) {
          if (row_pay[a] < floor) { ok = false; break; }
        }
        if (ok) {
          for (Index j : zs.current().support()) {
            if (col_pay[j] < floor) { ok = false; break; }
          }
        }
        if (ok) {
          Vector lifted = Vector::Zero(view.rows());
          for (Index a = 0; a < s; ++a) {
            lifted[support[static_cast<std::size_t>(a)]] = ws.current().probs[a];
          }
          res.profile = {MixedStrategy(std::move(lifted)), zs.current()};
          res.branch = Branch::k3c;
          return res;
        }
      }
    }
    // Exhausted: unlucky sample, retry with fresh draws.
  }
  throw QueryFailure(
      "approximate_wsne_query: grid search exhausted after all retries");
}

}  // namespace

QueryAlgorithmResult approximate_wsne_query(PayoffOracle& oracle, double eps,
                                            double delta, std::uint64_t seed,
                                            const QueryAlgorithmOptions& opts) {
  if (!(eps > 0.0) || !(eps < 1.0) || !(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument(
        "approximate_wsne_query: eps and delta must lie in (0, 1)");
  }

  CountingOracle counter(oracle, opts.memoize);
  const int grid_k = opts.kappa_override > 0 ? opts.kappa_override : kappa(delta);

  counter.set_phase(QueryPhase::kZeroSumR);
  const ZeroSumQueryResult zr = zero_sum_wsne_via_queries(
      counter, ZeroSumOrientation::kRowGame, eps, derive_seed(seed, 1),
      opts.impl, opts.solver, opts.mwu);
  counter.set_phase(QueryPhase::kZeroSumC);
  const ZeroSumQueryResult zc = zero_sum_wsne_via_queries(
      counter, ZeroSumOrientation::kColumnGame, eps, derive_seed(seed, 2),
      opts.impl, opts.solver, opts.mwu);

  QueryAlgorithmResult result;
  result.low_confidence = zr.low_confidence || zc.low_confidence;
  result.guarantee_bound = std::min(1.0, 0.5 + 3.0 * eps + delta);
  result.outcome.diagnostics.row_zero_sum_value = zr.value;
  result.outcome.diagnostics.col_zero_sum_value = zc.value;
  result.outcome.diagnostics.row_support = zr.profile.row.support();
  result.outcome.diagnostics.col_support = zc.profile.col.support();

  std::mt19937_64 rng(derive_seed(seed, 3));
  OrientedStepResult step;
  bool mirrored = false;
  if (zr.value >= zc.value) {
    step = run_query_major_side(counter, counter, zr.profile, zc.profile,
                                zr.value, eps, delta, grid_k, rng, opts);
    result.outcome.profile = step.profile;
  } else {
    mirrored = true;
    TransposedOracle flipped(counter);
    const StrategyProfile own{zc.profile.col, zc.profile.row};
    const StrategyProfile other{zr.profile.col, zr.profile.row};
    step = run_query_major_side(flipped, counter, own, other, zc.value, eps,
                                delta, grid_k, rng, opts);
    result.outcome.profile = {step.profile.col, step.profile.row};
  }

  switch (step.branch) {
    case Branch::k3a:
      result.outcome.branch = mirrored ? Branch::k4a : Branch::k3a;
      break;
    case Branch::k3b:
      result.outcome.branch = mirrored ? Branch::k4b : Branch::k3b;
      break;
    default:
      result.outcome.branch = mirrored ? Branch::k4c : Branch::k3c;
      break;
  }
  result.outcome.diagnostics.kappa_used = step.kappa_used;
  result.outcome.diagnostics.profiles_enumerated = step.profiles_enumerated;
  result.attempts = step.attempts;
  result.sampled_support = step.sampled_support;

  result.outcome.certified_epsilon = std::numeric_limits<double>::quiet_NaN();
  if (opts.audit) {
    counter.set_phase(QueryPhase::kAudit);
    Matrix r(oracle.rows(), oracle.cols());
    Matrix c(oracle.rows(), oracle.cols());
    for (Index i = 0; i < r.rows(); ++i) {
      for (Index j = 0; j < r.cols(); ++j) {
        auto [rv, cv] = counter.query(i, j);
        r(i, j) = rv;
        c(i, j) = cv;
      }
    }
    const BimatrixGame full(std::move(r), std::move(c));
    result.outcome.report = wsne_report(full, result.outcome.profile);
    result.outcome.certified_epsilon = result.outcome.report.wsne_epsilon;
    result.audited = true;
  }

  result.stats = counter.stats();
  return result;
}

}  // namespace wsne
