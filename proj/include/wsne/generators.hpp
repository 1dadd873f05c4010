#pragma once

#include "wsne/types.hpp"

#include <cstdint>
#include <string>

namespace wsne {

// Test-corpus families.  kForce3c draws every payoff from [0.55, 1], which
// pushes both zero-sum values above 1/2 and makes every column payoff exceed
// 1/2, so no low-threat mixture exists and the grid-search case must fire.
enum class GameKind { kUniform, kZeroSum, kConstant, kForce3c };

GameKind parse_game_kind(const std::string& name);
std::string game_kind_name(GameKind kind);

// Deterministic for a given (kind, m, n, seed): entries are drawn row-major,
// R before C, from mt19937_64.
BimatrixGame generate_game(GameKind kind, Index m, Index n, std::uint64_t seed);

}  // namespace wsne
