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

#include "fedpgn/cli/app.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "fedpgn/accountant/rdp_accountant.h"
#include "fedpgn/cli/config_file.h"
#include "fedpgn/cli/run_directory.h"
#include "fedpgn/data/partition.h"
#include "fedpgn/engine/simulation.h"
#include "fedpgn/errors.h"
#include "fedpgn/numerics/checkpoint.h"
#include "fedpgn/probes/landscape.h"
#include "json.hpp"

namespace fedpgn {
namespace {

using json = nlohmann::json;

struct ConfigArgs {
  std::string config_path;
  std::vector<std::string> sets;

  RunConfig Load() const {
    std::vector<Override> overrides;
    for (const std::string& s : sets) overrides.push_back(ParseOverride(s));
    if (config_path.empty()) return LoadRunConfig("", overrides);
    return LoadRunConfigFile(config_path, overrides);
  }
};

void AddConfigOptions(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--config", args.config_path, "YAML run configuration");
  cmd->add_option("--set", args.sets,
                  "Override a config key, e.g. --set federation.rounds=10")
      ->take_all();
}

struct AccountantArgs {
  std::optional<double> q;
  std::optional<std::size_t> clients;
  std::optional<std::size_t> sampled;
  double sigma = 0.8;
  std::size_t rounds = 1;
  std::optional<double> delta;
  std::string mixture = "standard";
  bool calibrate = false;
  std::optional<double> target_eps;
};

int CmdAccountant(const AccountantArgs& a, std::ostream& out) {
  double q;
  std::vector<std::string> caveats;
  if (a.q) {
    if (a.clients || a.sampled) {
      throw ConfigError("--q: give either --q or --clients/--sampled");
    }
    q = *a.q;
  } else {
    if (!a.clients || !a.sampled) {
      throw ConfigError("--q: required unless --clients and --sampled are given");
    }
    if (*a.clients == 0 || *a.sampled == 0 || *a.sampled > *a.clients) {
      throw ConfigError("--sampled: must satisfy 1 <= S <= N");
    }
    q = static_cast<double>(*a.sampled) / static_cast<double>(*a.clients);
    caveats.push_back(
        "clients are sampled as a fixed-size subset of S; accounted at rate "
        "q = S/N under the subsampled Gaussian bound");
  }
  double delta;
  if (a.delta) {
    delta = *a.delta;
  } else if (a.clients) {
    delta = 1.0 / static_cast<double>(*a.clients);
  } else {
    throw ConfigError("--delta: required unless --clients is given");
  }
  MixtureReading reading;
  if (a.mixture == "standard") {
    reading = MixtureReading::kStandard;
  } else if (a.mixture == "literal") {
    reading = MixtureReading::kLiteral;
    caveats.push_back("literal mixture reading: the sampling rate enters as q^2");
  } else {
    throw ConfigError("--mixture: expected standard or literal");
  }
  const std::vector<double> grid = DefaultAlphaGrid();
  json report = {{"q", q},          {"rounds", a.rounds},
                 {"delta", delta},  {"mixture", ToString(reading)}};
  double sigma = a.sigma;
  if (a.calibrate) {
    if (!a.target_eps) throw ConfigError("--target-eps: required with --calibrate");
    sigma = CalibrateSigma(*a.target_eps, q, a.rounds, delta, grid, reading);
    report["target_epsilon"] = *a.target_eps;
  }
  if (sigma == 0.0) caveats.push_back("noise multiplier is 0: no privacy guarantee");
  const PrivacyEstimate est =
      ComposeAndConvert(q, sigma, a.rounds, delta, grid, reading);
  report["sigma"] = sigma;
  report["epsilon"] = JsonNumber(est.epsilon);
  report["alpha_star"] = JsonNumber(est.alpha_star);
  report["epsilon_bar"] = JsonNumber(est.epsilon_bar);
  report["caveats"] = caveats;
  out << report.dump(2) << '\n';
  return kExitOk;
}

int CmdRun(const ConfigArgs& cargs, const std::string& out_dir, bool force,
           std::ostream& out) {
  const RunConfig cfg = cargs.Load();
  const RunResult result = ExecuteRun(cfg, out_dir, force);
  const MetricsRow& last = result.metrics.back();
  json line = {{"out", out_dir},
               {"algo", AlgorithmName(cfg.algorithm)},
               {"rounds", cfg.rounds},
               {"test_acc", JsonNumber(last.test_acc)},
               {"train_loss", JsonNumber(last.train_loss)},
               {"epsilon", JsonNumber(last.epsilon)}};
  out << line.dump() << '\n';
  return kExitOk;
}

int CmdLandscape(const ConfigArgs& cargs, const std::string& checkpoint,
                 const std::string& out_path, std::ostream& out) {
  const ParamVector params = ReadCheckpoint(checkpoint);
  const RunConfig cfg = cargs.Load();
  auto [train, test] = BuildDatasets(cfg);
  ModelSpec spec = cfg.model;
  spec.input_dim = train.num_features();
  spec.num_classes = train.num_classes();
  if (spec.kind == ModelKind::kSoftmaxRegression) spec.hidden_width = 0;
  const Model model(spec);
  if (model.dimension() != params.size()) {
    throw ConfigError("checkpoint: holds " + std::to_string(params.size()) +
                      " parameters but the configured model needs " +
                      std::to_string(model.dimension()));
  }
  const LandscapeGrid grid = RunLandscape(cfg, model, train, params);
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("out: cannot write '" + out_path + "'");
  WriteLandscapeCsv(file, grid);
  const ModelObjective objective(
      model, EvaluationSample(train, cfg.probes.eval_samples, cfg.seeds.training));
  const std::size_t mid = grid.a_offsets.size() / 2;
  const std::size_t mid_b = grid.b_offsets.size() / 2;
  json report = {{"out", out_path},
                 {"resolution", cfg.probes.grid},
                 {"limit", cfg.probes.limit},
                 {"two_dimensional", cfg.probes.two_dimensional},
                 {"checkpoint_loss", JsonNumber(objective.Loss(params.span()))},
                 {"center_loss", JsonNumber(grid.losses[mid][mid_b])}};
  out << report.dump(2) << '\n';
  return kExitOk;
}

struct PartitionArgs {
  std::optional<std::size_t> clients;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

int CmdPartition(const ConfigArgs& cargs, const PartitionArgs& p,
                 std::ostream& out) {
  RunConfig cfg = cargs.Load();
  auto [train, test] = BuildDatasets(cfg);
  // Flags act on the partition alone, so they bypass the federation checks.
  if (p.clients) cfg.num_clients = *p.clients;
  if (p.alpha) cfg.partition_alpha = *p.alpha;
  if (p.seed) cfg.seeds.partition = *p.seed;
  PartitionOptions opts;
  opts.min_client_size = cfg.ResolvedMinClientSize();
  const Partition partition = DirichletPartition(
      train, cfg.num_clients, cfg.partition_alpha, cfg.seeds.partition, opts);
  CheckDisjointCover(partition, train.size());
  json report = PartitionToJson(partition);
  report["dataset_size"] = train.size();
  report["distinct_labels"] = DistinctLabelsPerClient(partition, train);
  if (p.out_path.empty()) {
    out << report.dump(2) << '\n';
  } else {
    std::ofstream file(p.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("out: cannot write '" + p.out_path + "'");
    file << report.dump(2) << '\n';
    out << json{{"out", p.out_path}, {"num_clients", partition.num_clients()}}.dump()
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private federated learning simulator", "fedpgn"};
  app.require_subcommand(1);

  ConfigArgs run_cfg;
  std::string run_out;
  bool force = false;
  CLI::App* run = app.add_subcommand("run", "Train and write a run directory");
  AddConfigOptions(run, run_cfg);
  run->add_option("--out", run_out, "Run directory")->required();
  run->add_flag("--force", force, "Overwrite a non-empty run directory");

  AccountantArgs acc;
  CLI::App* accountant =
      app.add_subcommand("accountant", "Privacy budget of a training schedule");
  accountant->add_option("--q", acc.q, "Client sampling rate");
  accountant->add_option("--clients", acc.clients, "Number of clients N");
  accountant->add_option("--sampled", acc.sampled, "Clients per round S");
  accountant->add_option("--sigma", acc.sigma, "Noise multiplier");
  accountant->add_option("--rounds", acc.rounds, "Training rounds");
  accountant->add_option("--delta", acc.delta, "Target delta (default 1/N)");
  accountant->add_option("--mixture", acc.mixture, "standard or literal");
  accountant->add_flag("--calibrate", acc.calibrate,
                       "Solve for the noise multiplier reaching --target-eps");
  accountant->add_option("--target-eps", acc.target_eps, "Target epsilon");

  ConfigArgs land_cfg;
  std::string land_ckpt;
  std::string land_out = "landscape.csv";
  CLI::App* landscape =
      app.add_subcommand("landscape", "Loss landscape slice around a checkpoint");
  AddConfigOptions(landscape, land_cfg);
  landscape->add_option("--checkpoint", land_ckpt, "checkpoint.fpgn file")
      ->required();
  landscape->add_option("--out", land_out, "Output csv");

  ConfigArgs part_cfg;
  PartitionArgs part;
  CLI::App* partition =
      app.add_subcommand("partition", "Dirichlet label partition as JSON");
  AddConfigOptions(partition, part_cfg);
  partition->add_option("--clients", part.clients, "Number of clients N");
  partition->add_option("--alpha", part.alpha, "Dirichlet concentration");
  partition->add_option("--seed", part.seed, "Partition seed");
  partition->add_option("--out", part.out_path, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run->parsed()) return CmdRun(run_cfg, run_out, force, out);
    if (accountant->parsed()) return CmdAccountant(acc, out);
    if (landscape->parsed()) {
      return CmdLandscape(land_cfg, land_ckpt, land_out, out);
    }
    if (partition->parsed()) return CmdPartition(part_cfg, part, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace fedpgn
