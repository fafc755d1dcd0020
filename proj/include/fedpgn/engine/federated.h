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

#ifndef FEDPGN_ENGINE_FEDERATED_H_
#define FEDPGN_ENGINE_FEDERATED_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fedpgn/accountant/rdp_accountant.h"
#include "fedpgn/data/dataset.h"
#include "fedpgn/data/partition.h"
#include "fedpgn/engine/config.h"
#include "fedpgn/numerics/model.h"
#include "fedpgn/numerics/param_vector.h"
#include "fedpgn/numerics/rng.h"
#include "fedpgn/smoothing/laplacian.h"

namespace fedpgn {

// Server state entering round `round`: the global model x and the
// pseudo-gradient g produced by the previous aggregation (zero at round 0).
struct RoundState {
  std::size_t round = 0;
  ParamVector x_global;
  ParamVector g_server;
  PrivacyLedger ledger;
};

// One client's contribution to a round, at every stage of the privatization
// chain.
struct ClientUpdate {
  std::size_t client = 0;
  ParamVector raw;       // x_K - x + (1 - beta) K eta g
  ParamVector clipped;   // raw * min(1, C / ||raw||)
  ParamVector noised;    // clipped + N(0, sigma^2 C^2 / S)
  ParamVector restored;  // noised - (1 - beta) K eta g
  double preclip_norm = 0.0;
};

// Everything local training needs besides the round state.
struct LocalContext {
  const Model* model = nullptr;
  const Dataset* train = nullptr;
  const Partition* partition = nullptr;
  std::size_t batch_size = 1;
  std::size_t local_steps = 1;
  double local_lr = 0.1;
  std::uint64_t training_seed = 0;
};

struct LocalResult {
  // x_K - x_global. Tracked directly rather than as a difference of two
  // nearly equal iterates, so small updates keep full relative precision.
  ParamVector displacement;
  // Sum over steps of the (perturbed) minibatch gradients.
  ParamVector step_grad_sum;
  double mean_loss = 0.0;
  std::size_t steps = 0;

  ParamVector FinalParams(const ParamVector& x_global) const {
    return Add(x_global, displacement);
  }
};

// S distinct ids drawn uniformly from {0, ..., N-1}, sorted ascending.
// Throws ConfigError unless 1 <= S <= N.
std::vector<std::size_t> SampleClients(std::size_t num_clients,
                                       std::size_t sampled, Rng& rng);

// K local steps of the variant's update rule from state.x_global. Minibatches
// come from the (round, client, batch) stream. Throws NumericError when a
// minibatch loss is not finite.
LocalResult LocalTrain(const RoundState& state, const AlgorithmSpec& spec,
                       std::size_t client, const LocalContext& ctx);

// (1 - beta) K eta g_server, or an empty vector when beta == 1.
ParamVector MomentumTerm(const RoundState& state, const AlgorithmSpec& spec,
                         std::size_t local_steps, double local_lr);

ParamVector MakeRawUpdate(const LocalResult& local, const RoundState& state,
                          const AlgorithmSpec& spec, std::size_t local_steps,
                          double local_lr);

ParamVector RestoreUpdate(const ParamVector& noised, const RoundState& state,
                          const AlgorithmSpec& spec, std::size_t local_steps,
                          double local_lr);

// A^{-1} applied to the whole vector or independently per parameter block.
class ServerSmoother {
 public:
  ServerSmoother(double sigma_ls, std::vector<std::size_t> block_sizes);
  ParamVector Apply(const ParamVector& v) const;

 private:
  std::vector<std::size_t> block_sizes_;
  std::vector<LaplacianSmoother> smoothers_;
};

struct Aggregate {
  ParamVector g_next;
  ParamVector x_next;
};

// g' = -(1 / (eta S K)) sum_i Delta_i, summed in ascending client id order
// whatever the order of `updates`; optionally smoothed; x' = x - gamma g'.
// Throws ConfigError unless exactly `sampled` updates with distinct ids are
// given.
Aggregate AggregateUpdates(std::span<const ClientUpdate> updates,
                           const RoundState& state, std::size_t sampled,
                           std::size_t local_steps, double local_lr,
                           double global_lr, const ServerSmoother* smoother);

}  // namespace fedpgn

#endif  // FEDPGN_ENGINE_FEDERATED_H_
