#pragma once

#include "wsne/algorithm.hpp"
#include "wsne/game.hpp"
#include "wsne/lp.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <unordered_map>

namespace wsne {

// A payoff query reveals both players' payoffs at one pure profile.
class PayoffOracle {
 public:
  virtual ~PayoffOracle() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual std::pair<double, double> query(Index i, Index j) = 0;
};

class MatrixOracle : public PayoffOracle {
 public:
  explicit MatrixOracle(BimatrixGame game) : game_(std::move(game)) {}
  Index rows() const override { return game_.rows(); }
  Index cols() const override { return game_.cols(); }
  std::pair<double, double> query(Index i, Index j) override {
    return {game_.R()(i, j), game_.C()(i, j)};
  }

 private:
  BimatrixGame game_;
};

enum class QueryPhase { kZeroSumR, kZeroSumC, kSubgame, kAudit };

struct QueryStats {
  std::uint64_t total = 0;
  std::uint64_t phase_zero_sum_r = 0;
  std::uint64_t phase_zero_sum_c = 0;
  std::uint64_t phase_subgame = 0;
  std::uint64_t phase_audit = 0;
};

// Counts every query against the current phase.  With memoize on, repeated
// cells are served from the cache and not counted again; off by default so
// counts reflect the plain query model.
class CountingOracle : public PayoffOracle {
 public:
  explicit CountingOracle(PayoffOracle& base, bool memoize = false)
      : base_(base), memoize_(memoize) {}

  Index rows() const override { return base_.rows(); }
  Index cols() const override { return base_.cols(); }
  std::pair<double, double> query(Index i, Index j) override;

  void set_phase(QueryPhase phase) { phase_ = phase; }
  const QueryStats& stats() const { return stats_; }

 private:
  void bump(Index i, Index j);

  PayoffOracle& base_;
  bool memoize_;
  QueryPhase phase_ = QueryPhase::kZeroSumR;
  QueryStats stats_;
  std::unordered_map<std::uint64_t, std::pair<double, double>> cache_;
};

// Swaps the players of an oracle in place: query(i, j) -> (c, r) at (j, i).
class TransposedOracle : public PayoffOracle {
 public:
  explicit TransposedOracle(PayoffOracle& base) : base_(base) {}
  Index rows() const override { return base_.cols(); }
  Index cols() const override { return base_.rows(); }
  std::pair<double, double> query(Index i, Index j) override {
    auto [r, c] = base_.query(j, i);
    return {c, r};
  }

 private:
  PayoffOracle& base_;
};

// Payoffs revealed so far.  Reading an unqueried cell is a hard error.
class PartialGame {
 public:
  PartialGame(Index m, Index n);

  Index rows() const { return m_; }
  Index cols() const { return n_; }
  void record(Index i, Index j, double r, double c);
  bool known(Index i, Index j) const;
  double r(Index i, Index j) const;
  double c(Index i, Index j) const;

 private:
  Index m_;
  Index n_;
  Matrix r_;
  Matrix c_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> known_;

  void check(Index i, Index j) const;
};

// Number of pure-strategy draws used to sparsify a mixed strategy:
// ceil(sampling_constant * ln(2n + 2) / eps^2).
int sampling_size(Index n, double eps, double sampling_constant = 12.0);

// Empirical distribution of k draws from x.  Deterministic given the
// generator state; supp(result) is contained in supp(x).
MixedStrategy sample_k_uniform(const MixedStrategy& x, int k,
                               std::mt19937_64& rng);

enum class ZeroSumQueryImpl { kExactFull, kSampledMwu };

struct ZeroSumQueryResult {
  StrategyProfile profile;  // x maximizes, y minimizes, in game coordinates
  double value = 0.0;       // estimate of the auxiliary game's value
  bool low_confidence = false;
};

enum class ZeroSumOrientation { kRowGame, kColumnGame };

struct MwuConfig {
  double query_budget_factor = 8.0;  // budget = factor * N log N / eps^4
  double keep_mass = 0.98;           // averaged strategies trimmed to this mass
};

// Approximate equilibrium of one auxiliary zero-sum game under the query
// model.  kRowGame solves (R, -R) and reports rpay(x, y); kColumnGame solves
// (-C, C) and reports cpay(x, y).  kExactFull queries every cell and solves
// exactly; kSampledMwu runs budgeted multiplicative-weights self-play where
// each round queries one sampled row and one sampled column (best effort, no
// formal guarantee).
ZeroSumQueryResult zero_sum_wsne_via_queries(
    PayoffOracle& oracle, ZeroSumOrientation orientation, double eps,
    std::uint64_t seed, ZeroSumQueryImpl impl = ZeroSumQueryImpl::kExactFull,
    const SolverConfig& cfg = {}, const MwuConfig& mwu = {});

struct QueriedSubgame {
  PartialGame game;
  QueryStats delta;
};

// Queries every cell in the given rows (all columns) and returns the result
// along with the number of queries spent.
QueriedSubgame build_queried_subgame(CountingOracle& oracle,
                                     const std::vector<Index>& row_support);

// The sampling step of the query algorithm failed to place a grid profile
// even after re-sampling; possible but unlikely per the success probability.
class QueryFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QueryAlgorithmOptions {
  ZeroSumQueryImpl impl = ZeroSumQueryImpl::kExactFull;
  bool audit = false;
  bool memoize = false;
  int max_retries = 3;
  double sampling_constant = 12.0;
  int kappa_override = 0;
  SolverConfig solver;
  MwuConfig mwu;
};

struct QueryAlgorithmResult {
  AlgorithmOutcome outcome;  // certified_epsilon is NaN unless audited
  QueryStats stats;
  int attempts = 1;
  bool audited = false;
  double guarantee_bound = 0.0;  // min(1, 1/2 + 3 eps + delta)
  bool low_confidence = false;
  std::vector<Index> sampled_support;  // rows (columns if mirrored) queried in full
};

// Query-model version of approximate_wsne: solves both auxiliary games with
// eps-approximate query solvers, sparsifies the winning side's strategies by
// sampling, queries the sampled support's rows (or columns, mirrored), and
// runs the a/b/c case split on the revealed submatrix.  The result is a
// (1/2 + 3 eps + delta)-WSNE with high probability; audit mode queries the
// remaining cells and certifies the true regret.
QueryAlgorithmResult approximate_wsne_query(PayoffOracle& oracle, double eps,
                                            double delta, std::uint64_t seed,
                                            const QueryAlgorithmOptions& opts = {});

}  // namespace wsne
