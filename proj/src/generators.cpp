#include "wsne/generators.hpp"

#include <stdexcept>

#include "wsne/random.hpp"

namespace wsne {

GameKind parse_game_kind(const std::string& name) {
  if (name == "uniform") return GameKind::kUniform;
  if (name == "zero-sum") return GameKind::kZeroSum;
  if (name == "constant") return GameKind::kConstant;
  if (name == "force-3c") return GameKind::kForce3c;
  throw std::invalid_argument("unknown game kind: " + name);
}

std::string game_kind_name(GameKind kind) {
  switch (kind) {
    case GameKind::kUniform: return "uniform";
    case GameKind::kZeroSum: return "zero-sum";
    case GameKind::kConstant: return "constant";
    case GameKind::kForce3c: return "force-3c";
  }
  throw std::logic_error("unreachable");
}

namespace {

Matrix random_matrix(Index m, Index n, std::mt19937_64& rng, double lo,
                     double hi) {
  Matrix out(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = lo + (hi - lo) * uniform01(rng);
    }
  }
  return out;
}

}  // namespace

BimatrixGame generate_game(GameKind kind, Index m, Index n,
                           std::uint64_t seed) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("generate_game: dimensions must be positive");
  }
  std::mt19937_64 rng(seed);
  switch (kind) {
    case GameKind::kUniform: {
      Matrix r = random_matrix(m, n, rng, 0.0, 1.0);
      Matrix c = random_matrix(m, n, rng, 0.0, 1.0);
      return BimatrixGame(std::move(r), std::move(c));
    }
    case GameKind::kZeroSum: {
      Matrix r = random_matrix(m, n, rng, 0.0, 1.0);
      Matrix c = 1.0 - r.array();
      return BimatrixGame(std::move(r), std::move(c));
    }
    case GameKind::kConstant: {
      const double v = uniform01(rng);
      return BimatrixGame(Matrix::Constant(m, n, v), Matrix::Constant(m, n, v));
    }
    case GameKind::kForce3c: {
      Matrix r = random_matrix(m, n, rng, 0.55, 1.0);
      Matrix c = random_matrix(m, n, rng, 0.55, 1.0);
      return BimatrixGame(std::move(r), std::move(c));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace wsne
