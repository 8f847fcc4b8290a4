// Copyright 2026 The Labov Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LABOV_TOOLS_CLI_H_
#define LABOV_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace labov {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// "0..99" (inclusive), "1,2,5" or "7". Throws std::invalid_argument.
std::vector<std::uint64_t> ParseSeeds(std::string_view text);

// Runs the command line; args excludes the program name. Machine output
// goes to `out`, diagnostics to `err`. Tables are the default format when
// `out_is_terminal` is set, JSON otherwise.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err, bool out_is_terminal = false);

}  // namespace labov

#endif  // LABOV_TOOLS_CLI_H_
