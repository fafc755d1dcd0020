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

#ifndef FEDPGN_ENGINE_SIMULATION_H_
#define FEDPGN_ENGINE_SIMULATION_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fedpgn/data/dataset.h"
#include "fedpgn/data/partition.h"
#include "fedpgn/engine/config.h"
#include "fedpgn/engine/federated.h"
#include "fedpgn/numerics/model.h"

namespace fedpgn {

struct RoundDiagnostics {
  std::size_t round = 0;  // index of the executed round
  std::vector<std::size_t> clients;
  std::vector<double> preclip_norms;  // aligned with `clients`
  double clip_threshold = 0.0;
  double local_lr = 0.0;
  double global_lr = 0.0;
  // Mean over clients and steps of the (perturbed) minibatch gradients.
  ParamVector mean_step_grad;
  double mean_local_loss = 0.0;
};

// One line of metrics.csv. `round` counts completed rounds, so row 0 is the
// initial model; its update-norm columns are empty.
struct MetricsRow {
  std::size_t round = 0;
  double train_loss = 0.0;
  double test_acc = 0.0;
  double grad_norm = 0.0;
  std::optional<double> mean_preclip_norm;
  std::optional<double> median_preclip_norm;
  std::optional<double> clip_threshold;
  double epsilon = 0.0;
};

struct NormRecord {
  std::size_t round = 0;
  std::size_t client = 0;
  double preclip_norm = 0.0;
};

struct RunResult {
  std::vector<MetricsRow> metrics;
  std::vector<NormRecord> norms;
  ParamVector final_params;
  PrivacyEstimate privacy;
  std::vector<std::string> caveats;
};

// Train / test datasets described by the config. Synthetic test data uses an
// independent stream under the data seed. A csv run without test_path is
// evaluated on its training file.
std::pair<Dataset, Dataset> BuildDatasets(const RunConfig& cfg);

class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);
  Simulation(const RunConfig& cfg, Dataset train, Dataset test);
  Simulation(const RunConfig& cfg, std::pair<Dataset, Dataset> data);

  const RunConfig& config() const { return cfg_; }
  const Model& model() const { return model_; }
  const Dataset& train() const { return train_; }
  const Dataset& test() const { return test_; }
  const Partition& partition() const { return partition_; }
  // K after resolving a local_epochs alias.
  std::size_t local_steps() const { return local_steps_; }
  const std::vector<std::string>& caveats() const { return caveats_; }

  RoundState InitialState() const;

  // Executes round state.round and advances `state` to the next round.
  // `updates`, when given, receives every client's update chain.
  // Throws NumericError (with round and client) on divergence.
  RoundDiagnostics Step(RoundState& state,
                        std::vector<ClientUpdate>* updates = nullptr) const;

  MetricsRow Evaluate(const RoundState& state,
                      const RoundDiagnostics* last_round) const;

  using Observer =
      std::function<void(const RoundState&, const RoundDiagnostics&)>;
  RunResult Run(const Observer& observer = {}) const;

 private:
  void Init();

  RunConfig cfg_;
  Dataset train_;
  Dataset test_;
  Model model_;
  Partition partition_;
  std::size_t local_steps_ = 1;
  std::optional<ServerSmoother> smoother_;
  std::vector<std::string> caveats_;
};

void WriteMetricsCsv(std::ostream& os, const std::vector<MetricsRow>& rows);
void WriteNormsCsv(std::ostream& os, const std::vector<NormRecord>& rows);

}  // namespace fedpgn

#endif  // FEDPGN_ENGINE_SIMULATION_H_
