#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace wsne {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultSupportTol = 1e-9;
inline constexpr double kStrategySumTol = 1e-9;

// Probability vector over one player's pure strategies.  Entries below
// support_tol do not count as support.
struct MixedStrategy {
  Vector probs;
  double support_tol = kDefaultSupportTol;

  MixedStrategy() = default;
  explicit MixedStrategy(Vector p, double tol = kDefaultSupportTol);

  Index dim() const { return probs.size(); }
  std::vector<Index> support() const;
  Index support_size() const;

  static MixedStrategy uniform(Index d);
  static MixedStrategy pure(Index d, Index i);
};

struct StrategyProfile {
  MixedStrategy row;
  MixedStrategy col;
};

// Payoff matrix pair (R, C) of equal shape with entries in [0, 1].
// R is the row player's payoff, C the column player's.
class BimatrixGame {
 public:
  BimatrixGame(Matrix r, Matrix c);

  Index rows() const { return r_.rows(); }
  Index cols() const { return r_.cols(); }
  const Matrix& R() const { return r_; }
  const Matrix& C() const { return c_; }

  // Swaps the players: returns (C^T, R^T).
  BimatrixGame transposed() const;

 private:
  Matrix r_;
  Matrix c_;
};

struct NormalizationRecord {
  double row_shift = 0.0;
  double row_scale = 1.0;
  double col_shift = 0.0;
  double col_scale = 1.0;
  bool row_degenerate = false;
  bool col_degenerate = false;
};

struct NormalizedGame {
  BimatrixGame game;
  NormalizationRecord record;
};

}  // namespace wsne
