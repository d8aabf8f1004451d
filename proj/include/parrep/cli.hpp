// Copyright 2026 The parrep-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Entry point of the parrep-lab command line tool.

#ifndef PARREP_CLI_HPP_
#define PARREP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace parrep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

inline constexpr int kSchemaVersion = 1;

// Runs one invocation. `args` excludes the program name. The report goes to
// `out` unless -o names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Drops the "timestamp" member of a JSON report, or the timestamp rows of a
// CSV report, so that two runs can be compared byte for byte.
std::string strip_timestamp(const std::string& report);

}  // namespace parrep::cli

#endif  // PARREP_CLI_HPP_
