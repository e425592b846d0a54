#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kantian/game.hpp"

namespace kantian::cli {

/// Stable exit codes.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

/// Parses a game-spec document:
///   {"n": 2, "family": "QuadraticPublicGoods",
///    "params": {"a": 1, "b": 1, "gamma": 0.5}, "externality_sign": 1}
/// Scalar parameters broadcast to per-player vectors. Throws GameSpecError.
Game parse_game_spec(std::string_view json_text);
Game load_game_spec(const std::filesystem::path& path);

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kantian::cli
