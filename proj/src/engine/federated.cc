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

#include "fedpgn/engine/federated.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fedpgn/errors.h"

namespace fedpgn {

std::vector<std::size_t> SampleClients(std::size_t num_clients,
                                       std::size_t sampled, Rng& rng) {
  if (sampled < 1 || sampled > num_clients) {
    throw ConfigError("sampled clients must satisfy 1 <= S <= N (S=" +
                      std::to_string(sampled) +
                      ", N=" + std::to_string(num_clients) + ")");
  }
  std::vector<std::size_t> ids(num_clients);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  for (std::size_t i = 0; i < sampled; ++i) {
    const std::size_t j = i + rng.UniformIndex(num_clients - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(sampled);
  std::sort(ids.begin(), ids.end());
  return ids;
}

LocalResult LocalTrain(const RoundState& state, const AlgorithmSpec& spec,
                       std::size_t client, const LocalContext& ctx) {
  const Model& model = *ctx.model;
  const std::size_t d = state.x_global.size();
  const double beta = spec.EffectiveBeta();
  const double rho = spec.EffectiveRho();

  // The ascent shift along g_server does not change within the round.
  ParamVector base = state.x_global;
  if (spec.variant == Variant::kDpFedPgn && rho > 0.0) {
    const double norm = L2Norm(state.g_server);
    if (norm > kZeroNormTolerance) Axpy(rho / norm, state.g_server, base);
  }

  Rng batch_rng(ctx.training_seed,
                {state.round, client, StreamPurpose::kBatch});
  LocalResult out;
  out.displacement = ParamVector::Zeros(d);
  out.step_grad_sum = ParamVector::Zeros(d);
  double loss_sum = 0.0;
  for (std::size_t k = 0; k < ctx.local_steps; ++k) {
    const DataBatch batch = NextBatch(*ctx.partition, *ctx.train, client,
                                      ctx.batch_size, batch_rng);
    ParamVector point = Add(base, out.displacement);
    LossAndGradient lg = model.LossAndGrad(point.span(), batch);
    ParamVector grad = std::move(lg.grad);
    if (spec.variant == Variant::kDpFedSam && rho > 0.0) {
      grad = PerturbedGrad(model, point, grad, rho, batch);
    }
    loss_sum += lg.loss;
    Axpy(1.0, grad, out.step_grad_sum);
    if (beta != 1.0) {
      grad = Scale(grad, beta);
      Axpy(1.0 - beta, state.g_server, grad);
    }
    Axpy(-ctx.local_lr, grad, out.displacement);
  }
  out.steps = ctx.local_steps;
  out.mean_loss = loss_sum / static_cast<double>(ctx.local_steps);
  return out;
}

ParamVector MomentumTerm(const RoundState& state, const AlgorithmSpec& spec,
                         std::size_t local_steps, double local_lr) {
  const double beta = spec.EffectiveBeta();
  if (beta == 1.0) return {};
  return Scale(state.g_server,
               (1.0 - beta) * static_cast<double>(local_steps) * local_lr);
}

ParamVector MakeRawUpdate(const LocalResult& local, const RoundState& state,
                          const AlgorithmSpec& spec, std::size_t local_steps,
                          double local_lr) {
  const ParamVector m = MomentumTerm(state, spec, local_steps, local_lr);
  if (m.empty()) return local.displacement;
  return Add(local.displacement, m);
}

ParamVector RestoreUpdate(const ParamVector& noised, const RoundState& state,
                          const AlgorithmSpec& spec, std::size_t local_steps,
                          double local_lr) {
  const ParamVector m = MomentumTerm(state, spec, local_steps, local_lr);
  if (m.empty()) return noised;
  return Sub(noised, m);
}

ServerSmoother::ServerSmoother(double sigma_ls,
                               std::vector<std::size_t> block_sizes)
    : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) throw ConfigError("smoother needs a block");
  smoothers_.reserve(block_sizes_.size());
  for (std::size_t n : block_sizes_) smoothers_.emplace_back(n, sigma_ls);
}

ParamVector ServerSmoother::Apply(const ParamVector& v) const {
  const std::size_t total =
      std::accumulate(block_sizes_.begin(), block_sizes_.end(), std::size_t{0});
  if (total != v.size()) throw ConfigError("smoother block sizes mismatch");
  if (smoothers_.size() == 1) return smoothers_[0].Apply(v.span());
  ParamVector out(v.size());
  std::size_t offset = 0;
  for (std::size_t b = 0; b < smoothers_.size(); ++b) {
    const ParamVector part =
        smoothers_[b].Apply(v.span().subspan(offset, block_sizes_[b]));
    std::copy(part.begin(), part.end(), out.begin() + offset);
    offset += block_sizes_[b];
  }
  return out;
}

Aggregate AggregateUpdates(std::span<const ClientUpdate> updates,
                           const RoundState& state, std::size_t sampled,
                           std::size_t local_steps, double local_lr,
                           double global_lr, const ServerSmoother* smoother) {
  if (updates.size() != sampled) {
    throw ConfigError("aggregate expected " + std::to_string(sampled) +
                      " updates, got " + std::to_string(updates.size()));
  }
  std::vector<std::size_t> order(updates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return updates[a].client < updates[b].client;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (updates[order[i]].client == updates[order[i - 1]].client) {
      throw ConfigError("aggregate got duplicate client " +
                        std::to_string(updates[order[i]].client));
    }
  }
  ParamVector sum = ParamVector::Zeros(state.x_global.size());
  for (std::size_t i : order) Axpy(1.0, updates[i].restored, sum);

  Aggregate out;
  out.g_next = Scale(sum, -1.0 / (local_lr * static_cast<double>(sampled) *
                                  static_cast<double>(local_steps)));
  if (smoother != nullptr) out.g_next = smoother->Apply(out.g_next);
  out.x_next = state.x_global;
  Axpy(-global_lr, out.g_next, out.x_next);
  return out;
}

}  // namespace fedpgn
