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

#ifndef FEDPGN_CLI_RUN_DIRECTORY_H_
#define FEDPGN_CLI_RUN_DIRECTORY_H_

#include <filesystem>

#include "fedpgn/engine/config.h"
#include "fedpgn/engine/simulation.h"
#include "fedpgn/probes/landscape.h"
#include "json.hpp"

namespace fedpgn {

inline constexpr const char* kResolvedConfigFile = "config.resolved";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kNormsFile = "norms.csv";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kCheckpointFile = "checkpoint.fpgn";
inline constexpr const char* kLandscapeFile = "landscape.csv";

// Creates `dir` if needed. An existing non-empty directory is refused with
// ConfigError unless `force`, in which case only the run's own artifact
// files are removed.
void PrepareRunDirectory(const std::filesystem::path& dir, bool force);

// Runs the simulation and writes config.resolved, metrics.csv, norms.csv,
// summary.json, checkpoint.fpgn and, when probes.landscape is set,
// landscape.csv. Every file is a pure function of the config.
RunResult ExecuteRun(const RunConfig& cfg, const std::filesystem::path& dir,
                     bool force);

// Landscape slice of `params` on the config's evaluation sample, with the
// directions drawn from the config's probe stream.
LandscapeGrid RunLandscape(const RunConfig& cfg, const Model& model,
                           const Dataset& train, const ParamVector& params);

// Accuracy / loss / epsilon summary written to summary.json.
nlohmann::json BuildSummary(const RunConfig& cfg, const Simulation& sim,
                            const RunResult& result,
                            const nlohmann::json& probes);

// JSON number, or null for NaN and "unbounded" for +inf.
nlohmann::json JsonNumber(double v);

}  // namespace fedpgn

#endif  // FEDPGN_CLI_RUN_DIRECTORY_H_
