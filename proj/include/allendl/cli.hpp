// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace allendl {

/// Exit codes shared by every subcommand.
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitAborted = 30;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 1;

/// Runs the command line tool; out/err receive what would go to
/// stdout/stderr. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace allendl
