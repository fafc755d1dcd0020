//
// Copyright 2026 The fedpgn Authors
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
//

#ifndef FEDPGN_CLI_APP_H_
#define FEDPGN_CLI_APP_H_

#include <ostream>
#include <string>
#include <vector>

namespace fedpgn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;   // bad config, arguments or input files
inline constexpr int kExitNumeric = 3;  // training diverged

// Entry point of the fedpgn tool. `args` excludes the program name.
// Subcommands: run, accountant, landscape, partition.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fedpgn

#endif  // FEDPGN_CLI_APP_H_
