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

#include "fedpgn/cli/run_directory.h"

#include <cmath>
#include <fstream>

#include "fedpgn/cli/config_file.h"
#include "fedpgn/errors.h"
#include "fedpgn/numerics/checkpoint.h"
#include "fedpgn/probes/landscape.h"
#include "fedpgn/probes/norm_report.h"

namespace fedpgn {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("out: cannot write '" + path.string() + "'");
  return out;
}

json MetricsRowJson(const MetricsRow& r) {
  auto opt = [](const std::optional<double>& v) -> json {
    return v ? JsonNumber(*v) : json(nullptr);
  };
  return {{"round", r.round},
          {"train_loss", JsonNumber(r.train_loss)},
          {"test_acc", JsonNumber(r.test_acc)},
          {"grad_norm", JsonNumber(r.grad_norm)},
          {"mean_preclip_norm", opt(r.mean_preclip_norm)},
          {"median_preclip_norm", opt(r.median_preclip_norm)},
          {"clip_C", opt(r.clip_threshold)},
          {"epsilon", JsonNumber(r.epsilon)}};
}

}  // namespace

json JsonNumber(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "unbounded" : "-unbounded";
  return v;
}

void PrepareRunDirectory(const fs::path& dir, bool force) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw ConfigError("out: '" + dir.string() + "' is not a directory");
    }
    if (!fs::is_empty(dir)) {
      if (!force) {
        throw ConfigError("out: run directory '" + dir.string() +
                          "' is not empty (pass --force to overwrite)");
      }
      for (const char* name :
           {kResolvedConfigFile, kMetricsFile, kNormsFile, kSummaryFile,
            kCheckpointFile, kLandscapeFile}) {
        fs::remove(dir / name);
      }
    }
  } else {
    fs::create_directories(dir);
  }
}

json BuildSummary(const RunConfig& cfg, const Simulation& sim,
                  const RunResult& result, const json& probes) {
  json privacy = {{"sigma", cfg.noise_multiplier},
                  {"q", cfg.SamplingRate()},
                  {"delta", cfg.ResolvedDelta()},
                  {"rounds", cfg.rounds},
                  {"mixture", ToString(cfg.mixture)},
                  {"epsilon", JsonNumber(result.privacy.epsilon)},
                  {"alpha_star", JsonNumber(result.privacy.alpha_star)},
                  {"epsilon_bar", JsonNumber(result.privacy.epsilon_bar)}};
  json partition = {{"attempts", sim.partition().attempts},
                    {"rebalanced", sim.partition().rebalanced},
                    {"min_client_size", sim.partition().min_client_size}};
  json out = {{"algo", AlgorithmName(cfg.algorithm)},
              {"config", RunConfigToJson(cfg)},
              {"final", MetricsRowJson(result.metrics.back())},
              {"privacy", privacy},
              {"caveats", result.caveats},
              {"partition", partition},
              {"local_steps", sim.local_steps()},
              {"dimension", sim.model().dimension()},
              {"train_size", sim.train().size()},
              {"test_size", sim.test().size()},
              {"probes", probes}};
  if (!result.norms.empty()) {
    const NormReport report = BuildNormReport(
        result.norms,
        HistogramEdges(std::max_element(result.norms.begin(), result.norms.end(),
                                        [](const NormRecord& a,
                                           const NormRecord& b) {
                                          return a.preclip_norm < b.preclip_norm;
                                        })
                           ->preclip_norm));
    out["preclip_norms"] = {{"mean", report.mean}, {"median", report.median}};
  }
  return out;
}

LandscapeGrid RunLandscape(const RunConfig& cfg, const Model& model,
                           const Dataset& train, const ParamVector& params) {
  const ModelObjective objective(
      model, EvaluationSample(train, cfg.probes.eval_samples,
                              cfg.seeds.training));
  const GridSpec spec{cfg.probes.grid, cfg.probes.limit,
                      cfg.probes.two_dimensional};
  Rng dir_rng(cfg.seeds.training, {2, 0, StreamPurpose::kProbe});
  return LandscapeSlice(objective, params, spec, dir_rng);
}

RunResult ExecuteRun(const RunConfig& cfg, const fs::path& dir, bool force) {
  cfg.Validate();
  PrepareRunDirectory(dir, force);
  {
    std::ofstream out = OpenOut(dir / kResolvedConfigFile);
    out << RunConfigToYaml(cfg);
  }
  Simulation sim(cfg);
  RunResult result = sim.Run();
  {
    std::ofstream out = OpenOut(dir / kMetricsFile);
    WriteMetricsCsv(out, result.metrics);
  }
  {
    std::ofstream out = OpenOut(dir / kNormsFile);
    WriteNormsCsv(out, result.norms);
  }
  WriteCheckpoint(dir / kCheckpointFile, result.final_params);

  const ModelObjective objective(
      sim.model(), EvaluationSample(sim.train(), cfg.probes.eval_samples,
                                    cfg.seeds.training));
  Rng sharp_rng(cfg.seeds.training, {1, 0, StreamPurpose::kProbe});
  const SharpnessReport sharp = SharpnessProxy(
      objective, result.final_params, cfg.probes.rho_probe, sharp_rng);
  json probes = {{"eval_samples", objective.sample().size()},
                 {"rho_probe", cfg.probes.rho_probe},
                 {"grad_norm", JsonNumber(sharp.grad_norm)},
                 {"max_rise", JsonNumber(sharp.max_rise)}};
  if (cfg.probes.landscape) {
    const LandscapeGrid grid =
        RunLandscape(cfg, sim.model(), sim.train(), result.final_params);
    std::ofstream out = OpenOut(dir / kLandscapeFile);
    WriteLandscapeCsv(out, grid);
  }
  {
    std::ofstream out = OpenOut(dir / kSummaryFile);
    out << BuildSummary(cfg, sim, result, probes).dump(2) << '\n';
  }
  return result;
}

}  // namespace fedpgn
