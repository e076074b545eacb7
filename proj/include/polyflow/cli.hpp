#pragma once

#include <string>
#include <vector>

namespace polyflow {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

// Entry point behind main(): `args` excludes the program name. Subcommands:
// selftest, flow, check, enumerate. Never throws; failures map to the exit
// codes above with a message on stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace polyflow
