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

#ifndef FEDPGN_CLI_CONFIG_FILE_H_
#define FEDPGN_CLI_CONFIG_FILE_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fedpgn/engine/config.h"
#include "json.hpp"

namespace fedpgn {

// A `dotted.path=value` assignment from the command line.
struct Override {
  std::string path;
  std::string value;
};

// Splits "a.b=c" at the first '='. Throws ConfigError without one.
Override ParseOverride(const std::string& text);

// Builds a RunConfig from a YAML document plus overrides (applied after the
// file, last write wins). A `profile` key, wherever it appears, selects the
// defaults that every other key then modifies. Unknown keys, non-scalar
// leaves and unparsable values raise ConfigError naming the dotted path.
// The result is validated.
RunConfig LoadRunConfig(const std::string& yaml_text,
                        const std::vector<Override>& overrides = {});
RunConfig LoadRunConfigFile(const std::filesystem::path& path,
                            const std::vector<Override>& overrides = {});

// Every key with its resolved value. Optional keys left to their default
// rule are null.
nlohmann::json RunConfigToJson(const RunConfig& cfg);

// The same tree as YAML; LoadRunConfig(RunConfigToYaml(c)) reproduces c.
std::string RunConfigToYaml(const RunConfig& cfg);

// Every accepted dotted key, in document order.
std::vector<std::string> ConfigKeys();

}  // namespace fedpgn

#endif  // FEDPGN_CLI_CONFIG_FILE_H_
