// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace ratmat::cli
{

/// Entry point of the xp tool: `run`, `poles` and `bound` subcommands.
/// Returns the process exit code; all output goes to the given streams.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace ratmat::cli
