#pragma once

#include "wsne/game.hpp"
#include "wsne/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace wsne {

// Malformed input (bad JSON, wrong shapes, non-finite numbers).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedGame {
  BimatrixGame game;
  // Set when the raw payoffs fell outside [0, 1] and were normalized.
  std::optional<NormalizationRecord> normalization;
};

// Game files: { "rows": m, "cols": n, "R": [[...]], "C": [[...]] }.
// Payoffs already in [0, 1] are taken verbatim; anything else is normalized
// per player.  NaN/Inf anywhere is rejected.
LoadedGame parse_game(const std::string& text);
LoadedGame load_game(const std::string& path);
std::string game_to_json(const BimatrixGame& game);
void save_game(const std::string& path, const BimatrixGame& game);

// Profile files: { "x": [...], "y": [...] }.
StrategyProfile parse_profile(const std::string& text);
StrategyProfile load_profile(const std::string& path);
std::string profile_to_json(const StrategyProfile& profile);
void save_profile(const std::string& path, const StrategyProfile& profile);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal form (std::to_chars); deterministic across
// platforms, used for CSV cells and human-readable reports.
std::string format_double(double v);

}  // namespace wsne
