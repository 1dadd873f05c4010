#include "wsne/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsne {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) +
                                ": non-finite entries are not allowed");
  }
}

}  // namespace

MixedStrategy::MixedStrategy(Vector p, double tol) : probs(std::move(p)), support_tol(tol) {
  if (probs.size() == 0) {
    throw std::invalid_argument("MixedStrategy: empty vector");
  }
  if (!probs.allFinite()) {
    throw std::invalid_argument("MixedStrategy: non-finite entry");
  }
  for (Index i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0.0) {
      // Tolerate solver dust, reject anything meaningfully negative.
      if (probs[i] < -1e-12) {
        throw std::invalid_argument("MixedStrategy: negative probability");
      }
      probs[i] = 0.0;
    }
  }
  if (std::abs(probs.sum() - 1.0) > kStrategySumTol) {
    throw std::invalid_argument("MixedStrategy: probabilities do not sum to 1");
  }
  if (probs.maxCoeff() <= support_tol) {
    throw std::invalid_argument("MixedStrategy: empty support");
  }
}

std::vector<Index> MixedStrategy::support() const {
  std::vector<Index> s;
  for (Index i = 0; i < probs.size(); ++i) {
    if (probs[i] > support_tol) s.push_back(i);
  }
  return s;
}

Index MixedStrategy::support_size() const {
  Index n = 0;
  for (Index i = 0; i < probs.size(); ++i) {
    if (probs[i] > support_tol) ++n;
  }
  return n;
}

MixedStrategy MixedStrategy::uniform(Index d) {
  return MixedStrategy(Vector::Constant(d, 1.0 / static_cast<double>(d)));
}

MixedStrategy MixedStrategy::pure(Index d, Index i) {
  Vector p = Vector::Zero(d);
  p[i] = 1.0;
  return MixedStrategy(std::move(p));
}

BimatrixGame::BimatrixGame(Matrix r, Matrix c) : r_(std::move(r)), c_(std::move(c)) {
  if (r_.rows() == 0 || r_.cols() == 0) {
    throw std::invalid_argument("BimatrixGame: empty payoff matrix");
  }
  if (r_.rows() != c_.rows() || r_.cols() != c_.cols()) {
    throw std::invalid_argument("BimatrixGame: R and C shapes differ");
  }
  require_finite(r_, "BimatrixGame");
  require_finite(c_, "BimatrixGame");
  if (r_.minCoeff() < 0.0 || r_.maxCoeff() > 1.0 || c_.minCoeff() < 0.0 ||
      c_.maxCoeff() > 1.0) {
    throw std::invalid_argument("BimatrixGame: payoffs must lie in [0, 1]");
  }
}

BimatrixGame BimatrixGame::transposed() const {
  return BimatrixGame(c_.transpose(), r_.transpose());
}

namespace {

std::pair<double, double> normalize_one(Matrix& m) {
  const double lo = m.minCoeff();
  const double hi = m.maxCoeff();
  if (hi == lo) {
    m.setZero();
    return {lo, 0.0};
  }
  m = (m.array() - lo) / (hi - lo);
  return {lo, hi - lo};
}

}  // namespace

NormalizedGame normalize(const Matrix& raw_r, const Matrix& raw_c) {
  if (raw_r.rows() == 0 || raw_r.cols() == 0) {
    throw std::invalid_argument("normalize: empty payoff matrix");
  }
  if (raw_r.rows() != raw_c.rows() || raw_r.cols() != raw_c.cols()) {
    throw std::invalid_argument("normalize: R and C shapes differ");
  }
  require_finite(raw_r, "normalize");
  require_finite(raw_c, "normalize");

  Matrix r = raw_r;
  Matrix c = raw_c;
  NormalizationRecord rec;
  auto [rs, rsc] = normalize_one(r);
  auto [cs, csc] = normalize_one(c);
  rec.row_shift = rs;
  rec.row_scale = rsc == 0.0 ? 1.0 : rsc;
  rec.row_degenerate = rsc == 0.0;
  rec.col_shift = cs;
  rec.col_scale = csc == 0.0 ? 1.0 : csc;
  rec.col_degenerate = csc == 0.0;
  return {BimatrixGame(std::move(r), std::move(c)), rec};
}

Vector pure_row_payoffs(const Matrix& r, const MixedStrategy& y) {
  if (y.dim() != r.cols()) {
    throw std::invalid_argument("pure_row_payoffs: dimension mismatch");
  }
  return r * y.probs;
}

Vector pure_col_payoffs(const Matrix& c, const MixedStrategy& x) {
  if (x.dim() != c.rows()) {
    throw std::invalid_argument("pure_col_payoffs: dimension mismatch");
  }
  return c.transpose() * x.probs;
}

std::pair<double, double> expected_payoffs(const BimatrixGame& game,
                                           const StrategyProfile& profile) {
  const Vector row_payoffs = pure_row_payoffs(game.R(), profile.col);
  const Vector col_payoffs = pure_col_payoffs(game.C(), profile.row);
  if (profile.row.dim() != game.rows()) {
    throw std::invalid_argument("expected_payoffs: row strategy dimension");
  }
  return {profile.row.probs.dot(row_payoffs), profile.col.probs.dot(col_payoffs)};
}

RegretReport wsne_report(const BimatrixGame& game, const StrategyProfile& profile) {
  if (profile.row.dim() != game.rows() || profile.col.dim() != game.cols()) {
    throw std::invalid_argument("wsne_report: profile shape does not match game");
  }
  const Vector row_payoffs = pure_row_payoffs(game.R(), profile.col);
  const Vector col_payoffs = pure_col_payoffs(game.C(), profile.row);

  RegretReport rep;
  rep.row_best = row_payoffs.maxCoeff();
  rep.col_best = col_payoffs.maxCoeff();

  double row_worst = std::numeric_limits<double>::infinity();
  for (Index i : profile.row.support()) row_worst = std::min(row_worst, row_payoffs[i]);
  double col_worst = std::numeric_limits<double>::infinity();
  for (Index j : profile.col.support()) col_worst = std::min(col_worst, col_payoffs[j]);
  rep.row_worst_support = row_worst;
  rep.col_worst_support = col_worst;

  rep.row_regret = rep.row_best - rep.row_worst_support;
  rep.col_regret = rep.col_best - rep.col_worst_support;
  rep.wsne_epsilon = std::max(rep.row_regret, rep.col_regret);

  const double row_expected = profile.row.probs.dot(row_payoffs);
  const double col_expected = profile.col.probs.dot(col_payoffs);
  rep.ne_epsilon = std::max(0.0, std::max(rep.row_best - row_expected,
                                          rep.col_best - col_expected));
  return rep;
}

}  // namespace wsne
