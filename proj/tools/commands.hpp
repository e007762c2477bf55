#pragma once

#include <CLI11.hpp>

namespace rmc::cli {

enum Exit : int { kOk = 0, kParam = 2, kNotFound = 3, kRefused = 4 };

/// Registers every subcommand; the returned function runs whichever one was parsed.
std::function<int()> register_commands(CLI::App& app);

}  // namespace rmc::cli
