// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ESPIRA_CLI_HPP
#define ESPIRA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace espira
{

// Exit codes of run_cli.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRecovery = 2;

///
/// Command-line front end. `args` excludes the program name. Subcommands: synth, recover,
/// compare, bench, approx. Output files are written atomically; reports go to `out`, one-line
/// diagnostics to `err`.
///
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace espira

#endif  // ESPIRA_CLI_HPP
