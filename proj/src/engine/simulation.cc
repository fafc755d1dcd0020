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

#include "fedpgn/engine/simulation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fedpgn/data/synthetic.h"
#include "fedpgn/dp/mechanism.h"
#include "fedpgn/errors.h"
#include "fedpgn/numerics/format.h"

namespace fedpgn {
namespace {

ModelSpec ResolveModelSpec(const RunConfig& cfg, const Dataset& ds) {
  ModelSpec spec = cfg.model;
  spec.input_dim = ds.num_features();
  spec.num_classes = ds.num_classes();
  if (spec.kind == ModelKind::kSoftmaxRegression) spec.hidden_width = 0;
  return spec;
}

double LowerMedian(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace

std::pair<Dataset, Dataset> BuildDatasets(const RunConfig& cfg) {
  cfg.Validate();
  const DatasetConfig& dc = cfg.dataset;
  if (dc.kind == DatasetKind::kSynthetic) {
    Dataset train = SynthClusters(dc.synthetic, cfg.seeds.data);
    ClusterSpec test_spec = dc.synthetic;
    test_spec.per_class = dc.test_per_class;
    Dataset test = SynthClusters(
        test_spec,
        DeriveStreamKey(cfg.seeds.data, {0, 0, StreamPurpose::kTestData}));
    return {std::move(train), std::move(test)};
  }
  CsvSchema schema;
  schema.num_classes = dc.synthetic.num_classes;
  schema.num_features = 0;
  schema.has_header = dc.header;
  Dataset train = IngestCsv(dc.path, schema);
  if (dc.test_path.empty()) {
    Dataset test = train;
    return {std::move(train), std::move(test)};
  }
  schema.num_features = train.num_features();
  Dataset test = IngestCsv(dc.test_path, schema);
  return {std::move(train), std::move(test)};
}

Simulation::Simulation(const RunConfig& cfg)
    : Simulation(cfg, BuildDatasets(cfg)) {}

Simulation::Simulation(const RunConfig& cfg, std::pair<Dataset, Dataset> data)
    : Simulation(cfg, std::move(data.first), std::move(data.second)) {}

Simulation::Simulation(const RunConfig& cfg, Dataset train, Dataset test)
    : cfg_(cfg),
      train_(std::move(train)),
      test_(std::move(test)),
      model_(ResolveModelSpec(cfg, train_)) {
  Init();
}

void Simulation::Init() {
  cfg_.Validate();
  if (test_.num_features() != train_.num_features() ||
      test_.num_classes() != train_.num_classes()) {
    throw ConfigError("dataset.test_path: test set shape differs from train");
  }
  PartitionOptions popts;
  popts.min_client_size = cfg_.ResolvedMinClientSize();
  partition_ = DirichletPartition(train_, cfg_.num_clients,
                                  cfg_.partition_alpha, cfg_.seeds.partition,
                                  popts);
  local_steps_ = cfg_.local_steps;
  if (cfg_.local_epochs) {
    const std::size_t mean_shard =
        (train_.size() + cfg_.num_clients - 1) / cfg_.num_clients;
    const std::size_t per_epoch =
        (mean_shard + cfg_.batch_size - 1) / cfg_.batch_size;
    local_steps_ = *cfg_.local_epochs * std::max<std::size_t>(per_epoch, 1);
  }
  if (cfg_.algorithm.laplacian) {
    std::vector<std::size_t> sizes;
    if (cfg_.algorithm.per_layer_smoothing) {
      for (const ParamBlock& b : model_.Blocks()) sizes.push_back(b.length);
    } else {
      sizes.push_back(model_.dimension());
    }
    smoother_.emplace(cfg_.algorithm.sigma_ls, std::move(sizes));
  }

  if (cfg_.clip.mode == ClipMode::kMedian) {
    caveats_.push_back(
        "clip threshold is the per-round median of pre-clip norms, which is "
        "data dependent and not privatized; epsilon is nominal");
  }
  caveats_.push_back(
      "clients are sampled as a fixed-size subset of S; accounted at rate "
      "q = S/N under the subsampled Gaussian bound");
  if (cfg_.mixture == MixtureReading::kLiteral) {
    caveats_.push_back(
        "literal mixture reading: the sampling rate enters as q^2");
  }
  if (cfg_.noise_multiplier == 0.0) {
    caveats_.push_back("noise multiplier is 0: no privacy guarantee");
  }
  if (cfg_.dataset.kind == DatasetKind::kCsv && cfg_.dataset.test_path.empty()) {
    caveats_.push_back("no test_path: test accuracy is measured on training data");
  }
}

RoundState Simulation::InitialState() const {
  Rng init_rng(cfg_.seeds.training, {0, 0, StreamPurpose::kModelInit});
  PrivacyLedger ledger(cfg_.noise_multiplier, cfg_.SamplingRate(),
                       cfg_.ResolvedDelta(), DefaultAlphaGrid(), cfg_.mixture);
  for (const std::string& c : caveats_) ledger.AddCaveat(c);
  return RoundState{0, model_.Initialize(init_rng),
                    ParamVector::Zeros(model_.dimension()), std::move(ledger)};
}

RoundDiagnostics Simulation::Step(RoundState& state,
                                  std::vector<ClientUpdate>* updates_out) const {
  const std::size_t r = state.round;
  RoundDiagnostics diag;
  diag.round = r;
  diag.local_lr = cfg_.LocalLr(r);
  diag.global_lr = cfg_.GlobalLr(r, local_steps_);

  Rng sampling_rng(cfg_.seeds.training,
                   {r, 0, StreamPurpose::kClientSampling});
  diag.clients =
      SampleClients(cfg_.num_clients, cfg_.sampled_clients, sampling_rng);

  LocalContext ctx;
  ctx.model = &model_;
  ctx.train = &train_;
  ctx.partition = &partition_;
  ctx.batch_size = cfg_.batch_size;
  ctx.local_steps = local_steps_;
  ctx.local_lr = diag.local_lr;
  ctx.training_seed = cfg_.seeds.training;

  const AlgorithmSpec& spec = cfg_.algorithm;
  std::vector<ClientUpdate> updates(diag.clients.size());
  diag.mean_step_grad = ParamVector::Zeros(model_.dimension());
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < diag.clients.size(); ++i) {
    const std::size_t client = diag.clients[i];
    LocalResult local;
    try {
      local = LocalTrain(state, spec, client, ctx);
    } catch (const NumericError& e) {
      throw NumericError("round " + std::to_string(r) + ", client " +
                         std::to_string(client) + ": " + e.what());
    }
    ClientUpdate& u = updates[i];
    u.client = client;
    u.raw = MakeRawUpdate(local, state, spec, local_steps_, diag.local_lr);
    u.preclip_norm = L2Norm(u.raw);
    if (!std::isfinite(u.preclip_norm)) {
      throw NumericError("round " + std::to_string(r) + ", client " +
                         std::to_string(client) +
                         ": update norm is not finite");
    }
    Axpy(1.0, local.step_grad_sum, diag.mean_step_grad);
    loss_sum += local.mean_loss;
    diag.preclip_norms.push_back(u.preclip_norm);
  }
  const double steps_total =
      static_cast<double>(diag.clients.size() * local_steps_);
  diag.mean_step_grad = Scale(diag.mean_step_grad, 1.0 / steps_total);
  diag.mean_local_loss = loss_sum / static_cast<double>(diag.clients.size());

  diag.clip_threshold = ResolveClipThreshold(diag.preclip_norms, cfg_.clip);
  const NoiseSpec noise{cfg_.noise_multiplier};
  for (ClientUpdate& u : updates) {
    u.clipped = std::isinf(diag.clip_threshold) ? u.raw
                                                : Clip(u.raw, diag.clip_threshold);
    Rng noise_rng(cfg_.seeds.training, {r, u.client, StreamPurpose::kNoise});
    u.noised = AddNoise(u.clipped, noise, diag.clip_threshold,
                        cfg_.sampled_clients, noise_rng);
    u.restored = RestoreUpdate(u.noised, state, spec, local_steps_, diag.local_lr);
  }

  Aggregate agg = AggregateUpdates(
      updates, state, cfg_.sampled_clients, local_steps_, diag.local_lr,
      diag.global_lr, smoother_ ? &*smoother_ : nullptr);
  if (!agg.x_next.AllFinite() || !agg.g_next.AllFinite()) {
    throw NumericError("round " + std::to_string(r) +
                       ": global model diverged (non-finite parameters)");
  }
  state.x_global = std::move(agg.x_next);
  state.g_server = std::move(agg.g_next);
  state.ledger.Advance(1);
  state.round = r + 1;
  if (updates_out != nullptr) *updates_out = std::move(updates);
  return diag;
}

MetricsRow Simulation::Evaluate(const RoundState& state,
                                const RoundDiagnostics* last_round) const {
  MetricsRow row;
  row.round = state.round;
  row.train_loss = model_.Loss(state.x_global.span(), FullBatch(train_));
  row.test_acc = model_.Accuracy(state.x_global.span(), test_);
  row.grad_norm = L2Norm(state.g_server);
  if (last_round != nullptr) {
    const auto& norms = last_round->preclip_norms;
    double sum = 0.0;
    for (double n : norms) sum += n;
    row.mean_preclip_norm = sum / static_cast<double>(norms.size());
    row.median_preclip_norm = LowerMedian(norms);
    row.clip_threshold = last_round->clip_threshold;
  }
  row.epsilon = state.round == 0 ? 0.0 : state.ledger.Current().epsilon;
  return row;
}

RunResult Simulation::Run(const Observer& observer) const {
  RunResult result;
  RoundState state = InitialState();
  result.metrics.push_back(Evaluate(state, nullptr));
  for (std::size_t r = 0; r < cfg_.rounds; ++r) {
    const RoundDiagnostics diag = Step(state);
    for (std::size_t i = 0; i < diag.clients.size(); ++i) {
      result.norms.push_back({r, diag.clients[i], diag.preclip_norms[i]});
    }
    result.metrics.push_back(Evaluate(state, &diag));
    if (observer) observer(state, diag);
  }
  result.final_params = state.x_global;
  result.privacy = state.ledger.Current();
  if (cfg_.rounds == 0) result.privacy = {0.0, 0.0, 0.0};
  result.caveats = state.ledger.caveats();
  return result;
}

void WriteMetricsCsv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << "round,train_loss,test_acc,grad_norm,mean_preclip_norm,"
        "median_preclip_norm,clip_C,epsilon\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  for (const MetricsRow& r : rows) {
    os << r.round << ',' << FormatDouble(r.train_loss) << ','
       << FormatDouble(r.test_acc) << ',' << FormatDouble(r.grad_norm) << ','
       << opt(r.mean_preclip_norm) << ',' << opt(r.median_preclip_norm) << ','
       << opt(r.clip_threshold) << ',' << FormatDouble(r.epsilon) << '\n';
  }
}

void WriteNormsCsv(std::ostream& os, const std::vector<NormRecord>& rows) {
  os << "round,client,preclip_norm\n";
  for (const NormRecord& r : rows) {
    os << r.round << ',' << r.client << ',' << FormatDouble(r.preclip_norm)
       << '\n';
  }
}

}  // namespace fedpgn
