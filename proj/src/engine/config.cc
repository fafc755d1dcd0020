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

#include "fedpgn/engine/config.h"

#include <cmath>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

}  // namespace

std::string AlgorithmName(const AlgorithmSpec& spec) {
  switch (spec.variant) {
    case Variant::kDpFedAvg:
      return "dp-fedavg";
    case Variant::kDpFedSam:
      return "dp-fedsam";
    case Variant::kDpFedPgn:
      return spec.laplacian ? "dp-fedpgn-ls" : "dp-fedpgn";
  }
  return "unknown";
}

void ApplyAlgorithmName(const std::string& name, AlgorithmSpec& spec) {
  if (name == "dp-fedavg") {
    spec.variant = Variant::kDpFedAvg;
    spec.laplacian = false;
  } else if (name == "dp-fedsam") {
    spec.variant = Variant::kDpFedSam;
    spec.laplacian = false;
  } else if (name == "dp-fedpgn") {
    spec.variant = Variant::kDpFedPgn;
    spec.laplacian = false;
  } else if (name == "dp-fedpgn-ls") {
    spec.variant = Variant::kDpFedPgn;
    spec.laplacian = true;
  } else {
    throw ConfigError("algo: unknown algorithm '" + name +
                      "' (expected dp-fedavg, dp-fedsam, dp-fedpgn, dp-fedpgn-ls)");
  }
}

void RunConfig::Validate() const {
  Require(algorithm.rho >= 0.0 && std::isfinite(algorithm.rho),
          "algorithm.rho", "must be finite and >= 0");
  Require(algorithm.beta > 0.0 && algorithm.beta <= 1.0, "algorithm.beta",
          "must be in (0, 1]");
  Require(algorithm.sigma_ls >= 0.0 && std::isfinite(algorithm.sigma_ls),
          "algorithm.sigma_ls", "must be finite and >= 0");
  Require(num_clients >= 2, "federation.clients", "must be >= 2");
  Require(sampled_clients >= 1 && sampled_clients <= num_clients,
          "federation.sampled", "must satisfy 1 <= S <= N");
  Require(local_steps >= 1, "federation.local_steps", "must be >= 1");
  Require(!local_epochs || *local_epochs >= 1, "federation.local_epochs",
          "must be >= 1");
  Require(batch_size >= 1, "federation.batch_size", "must be >= 1");
  Require(local_lr > 0.0 && std::isfinite(local_lr), "federation.local_lr",
          "must be > 0");
  Require(!global_lr || (*global_lr > 0.0 && std::isfinite(*global_lr)),
          "federation.global_lr", "must be > 0");
  Require(lr_decay > 0.0 && lr_decay <= 1.0, "federation.lr_decay",
          "must be in (0, 1]");
  Require(clip.mode == ClipMode::kMedian || clip.threshold > 0.0,
          "privacy.clip", "must be 'median' or a positive threshold");
  Require(noise_multiplier >= 0.0 && std::isfinite(noise_multiplier),
          "privacy.noise_multiplier", "must be finite and >= 0");
  Require(!(noise_multiplier > 0.0 && clip.mode == ClipMode::kFixed &&
            std::isinf(clip.threshold)),
          "privacy.clip", "noise needs a finite clipping threshold");
  const double d = ResolvedDelta();
  Require(d > 0.0 && d < 1.0, "privacy.delta", "must be in (0, 1)");
  Require(model.kind == ModelKind::kSoftmaxRegression || model.hidden_width >= 1,
          "model.hidden", "must be >= 1 for the mlp");
  if (dataset.kind == DatasetKind::kCsv) {
    Require(!dataset.path.empty(), "dataset.path",
            "is required when dataset.kind is csv");
  }
  Require(dataset.synthetic.num_classes >= 2, "dataset.classes", "must be >= 2");
  Require(dataset.synthetic.input_dim >= 1 ||
              dataset.kind == DatasetKind::kCsv,
          "dataset.features", "must be >= 1");
  if (dataset.kind == DatasetKind::kSynthetic) {
    Require(dataset.synthetic.per_class >= 1, "dataset.per_class", "must be >= 1");
    Require(dataset.test_per_class >= 1, "dataset.test_per_class", "must be >= 1");
    Require(dataset.synthetic.spread >= 0.0, "dataset.spread", "must be >= 0");
  }
  Require(partition_alpha > 0.0 && std::isfinite(partition_alpha),
          "partition.alpha", "must be > 0");
  Require(probes.grid >= 3, "probes.grid", "must be >= 3");
  Require(probes.limit > 0.0, "probes.limit", "must be > 0");
  Require(probes.rho_probe > 0.0 && std::isfinite(probes.rho_probe),
          "probes.rho_probe", "must be > 0");
  Require(probes.eval_samples >= 1, "probes.eval_samples", "must be >= 1");
}

double RunConfig::LocalLr(std::size_t round) const {
  return local_lr * std::pow(lr_decay, static_cast<double>(round));
}

double RunConfig::GlobalLr(std::size_t round, std::size_t steps) const {
  if (global_lr) return *global_lr * std::pow(lr_decay, static_cast<double>(round));
  return LocalLr(round) * static_cast<double>(steps);
}

RunConfig ProfileDefaults(const std::string& profile) {
  RunConfig cfg;
  if (profile == "full") return cfg;
  if (profile == "desk") {
    cfg.num_clients = 50;
    cfg.sampled_clients = 10;
    cfg.local_steps = 20;
    cfg.rounds = 100;
    cfg.dataset.synthetic.per_class = 1000;
    return cfg;
  }
  throw ConfigError("profile: unknown profile '" + profile +
                    "' (expected full or desk)");
}

}  // namespace fedpgn
