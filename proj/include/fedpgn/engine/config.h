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

#ifndef FEDPGN_ENGINE_CONFIG_H_
#define FEDPGN_ENGINE_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "fedpgn/accountant/rdp_accountant.h"
#include "fedpgn/data/synthetic.h"
#include "fedpgn/dp/mechanism.h"
#include "fedpgn/numerics/model.h"

namespace fedpgn {

enum class Variant { kDpFedAvg, kDpFedSam, kDpFedPgn };

// Local update rule of one algorithm arm.
//   dp-fedavg: plain local SGD (beta and rho are ignored).
//   dp-fedsam: each step ascends rho along the normalized minibatch gradient
//              before taking the gradient; no server-momentum blend.
//   dp-fedpgn: each step uses beta * grad(x + rho g/||g||) + (1 - beta) g
//              with g the previous server pseudo-gradient.
// `laplacian` turns on server-side smoothing of the aggregate (the -ls arm).
struct AlgorithmSpec {
  Variant variant = Variant::kDpFedPgn;
  double rho = 0.2;
  double beta = 0.3;
  bool laplacian = false;
  double sigma_ls = 0.01;
  bool per_layer_smoothing = false;

  // beta as it enters the update rule: 1 for the variants without momentum.
  double EffectiveBeta() const {
    return variant == Variant::kDpFedPgn ? beta : 1.0;
  }
  double EffectiveRho() const {
    return variant == Variant::kDpFedAvg ? 0.0 : rho;
  }
};

// "dp-fedavg", "dp-fedsam", "dp-fedpgn" or "dp-fedpgn-ls".
std::string AlgorithmName(const AlgorithmSpec& spec);
// Inverse of AlgorithmName; sets `laplacian` for the -ls name. Throws
// ConfigError for unknown names.
void ApplyAlgorithmName(const std::string& name, AlgorithmSpec& spec);

enum class DatasetKind { kSynthetic, kCsv };

struct DatasetConfig {
  DatasetKind kind = DatasetKind::kSynthetic;
  // 10 x 5000 rows: 100 rows per client on average with 500 clients. A csv
  // dataset uses only num_classes; its width is inferred.
  ClusterSpec synthetic{10, 32, 5000, 1.0};
  std::size_t test_per_class = 200;
  std::string path;                // csv training file
  std::string test_path;           // optional csv test file
  bool header = false;
};

struct Seeds {
  std::uint64_t data = 1;
  std::uint64_t partition = 2;
  std::uint64_t training = 3;
};

struct ProbeConfig {
  bool landscape = false;
  std::size_t grid = 41;
  double limit = 1.0;
  std::size_t eval_samples = 512;
  bool two_dimensional = true;
  double rho_probe = 0.5;  // radius of the directional sharpness probe
};

// Every knob of one training run. Defaults are the full-scale profile
// (N=500, 10% participation, B=50, K=50, R=300, sigma=0.8, rho=0.2,
// beta=0.3, lr decay 0.998).
struct RunConfig {
  AlgorithmSpec algorithm;
  std::size_t num_clients = 500;
  std::size_t sampled_clients = 50;
  std::size_t local_steps = 50;
  std::optional<std::size_t> local_epochs;  // if set, overrides local_steps
  std::size_t rounds = 300;
  std::size_t batch_size = 50;
  double local_lr = 0.1;
  std::optional<double> global_lr;  // default: local_lr * K each round
  double lr_decay = 0.998;
  ClipPolicy clip = ClipPolicy::Median();
  double noise_multiplier = 0.8;
  std::optional<double> delta;  // default 1 / N
  MixtureReading mixture = MixtureReading::kStandard;
  ModelSpec model;  // input_dim / num_classes are taken from the dataset
  DatasetConfig dataset;
  double partition_alpha = 0.1;
  std::optional<std::size_t> min_client_size;  // default max(B, 10)
  Seeds seeds;
  ProbeConfig probes;

  // Throws ConfigError naming the offending field.
  void Validate() const;

  double SamplingRate() const {
    return static_cast<double>(sampled_clients) /
           static_cast<double>(num_clients);
  }
  double ResolvedDelta() const {
    return delta.value_or(1.0 / static_cast<double>(num_clients));
  }
  std::size_t ResolvedMinClientSize() const {
    return min_client_size.value_or(std::max<std::size_t>(batch_size, 10));
  }
  double LocalLr(std::size_t round) const;
  // global_lr decays with the same factor as local_lr when set explicitly.
  double GlobalLr(std::size_t round, std::size_t steps) const;
};

// Named presets. "full" is the default-constructed config; "desk" shrinks
// the federation to N=50, R=100 for laptop-scale runs.
RunConfig ProfileDefaults(const std::string& profile);

}  // namespace fedpgn

#endif  // FEDPGN_ENGINE_CONFIG_H_
