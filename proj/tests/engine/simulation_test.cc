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

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

RunConfig Small() {
  RunConfig cfg = ProfileDefaults("desk");
  cfg.num_clients = 10;
  cfg.sampled_clients = 4;
  cfg.local_steps = 3;
  cfg.rounds = 4;
  cfg.batch_size = 10;
  cfg.dataset.synthetic = {4, 6, 50, 1.0};
  cfg.dataset.test_per_class = 20;
  return cfg;
}

std::string MetricsText(const RunResult& r) {
  std::ostringstream os;
  WriteMetricsCsv(os, r.metrics);
  return os.str();
}

TEST(ConfigTest, ProfilesAndDefaults) {
  const RunConfig full = ProfileDefaults("full");
  EXPECT_EQ(full.num_clients, 500u);
  EXPECT_EQ(full.sampled_clients, 50u);
  EXPECT_EQ(full.local_steps, 50u);
  EXPECT_EQ(full.rounds, 300u);
  EXPECT_EQ(full.batch_size, 50u);
  EXPECT_EQ(full.noise_multiplier, 0.8);
  EXPECT_EQ(full.algorithm.rho, 0.2);
  EXPECT_EQ(full.algorithm.beta, 0.3);
  EXPECT_EQ(full.lr_decay, 0.998);
  EXPECT_DOUBLE_EQ(full.ResolvedDelta(), 1.0 / 500.0);
  EXPECT_DOUBLE_EQ(full.SamplingRate(), 0.1);
  EXPECT_EQ(full.ResolvedMinClientSize(), 50u);
  const RunConfig desk = ProfileDefaults("desk");
  EXPECT_EQ(desk.num_clients, 50u);
  EXPECT_EQ(desk.rounds, 100u);
  EXPECT_THROW(ProfileDefaults("huge"), ConfigError);
}

TEST(ConfigTest, LearningRateSchedule) {
  RunConfig cfg;
  cfg.local_lr = 0.1;
  EXPECT_DOUBLE_EQ(cfg.LocalLr(0), 0.1);
  EXPECT_DOUBLE_EQ(cfg.LocalLr(2), 0.1 * 0.998 * 0.998);
  EXPECT_DOUBLE_EQ(cfg.GlobalLr(2, 50), cfg.LocalLr(2) * 50);
  cfg.global_lr = 1.0;
  EXPECT_DOUBLE_EQ(cfg.GlobalLr(1, 50), 0.998);
}

TEST(ConfigTest, ValidationNamesTheField) {
  auto message = [](RunConfig cfg) {
    try {
      cfg.Validate();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  RunConfig cfg;
  cfg.sampled_clients = 600;
  EXPECT_NE(message(cfg).find("federation.sampled"), std::string::npos);
  cfg = RunConfig();
  cfg.local_steps = 0;
  EXPECT_NE(message(cfg).find("federation.local_steps"), std::string::npos);
  cfg = RunConfig();
  cfg.noise_multiplier = -1;
  EXPECT_NE(message(cfg).find("privacy.noise_multiplier"), std::string::npos);
  cfg = RunConfig();
  cfg.dataset.kind = DatasetKind::kCsv;
  EXPECT_NE(message(cfg).find("dataset.path"), std::string::npos);
  cfg = RunConfig();
  cfg.algorithm.beta = 0.0;
  EXPECT_NE(message(cfg).find("algorithm.beta"), std::string::npos);
  EXPECT_EQ(message(RunConfig()), "");
}

TEST(ConfigTest, AlgorithmNames) {
  AlgorithmSpec spec;
  for (const char* name : {"dp-fedavg", "dp-fedsam", "dp-fedpgn", "dp-fedpgn-ls"}) {
    ApplyAlgorithmName(name, spec);
    EXPECT_EQ(AlgorithmName(spec), name);
  }
  EXPECT_THROW(ApplyAlgorithmName("sgd", spec), ConfigError);
}

TEST(SimulationTest, ZeroRoundsGiveInitialRowOnly) {
  RunConfig cfg = Small();
  cfg.rounds = 0;
  const RunResult r = Simulation(cfg).Run();
  ASSERT_EQ(r.metrics.size(), 1u);
  EXPECT_EQ(r.metrics[0].round, 0u);
  EXPECT_EQ(r.metrics[0].epsilon, 0.0);
  EXPECT_EQ(r.metrics[0].grad_norm, 0.0);
  EXPECT_FALSE(r.metrics[0].mean_preclip_norm.has_value());
  EXPECT_TRUE(r.norms.empty());
}

TEST(SimulationTest, MetricsShape) {
  const RunConfig cfg = Small();
  const RunResult r = Simulation(cfg).Run();
  ASSERT_EQ(r.metrics.size(), cfg.rounds + 1);
  EXPECT_EQ(r.norms.size(), cfg.rounds * cfg.sampled_clients);
  double prev_eps = 0.0;
  for (std::size_t i = 1; i < r.metrics.size(); ++i) {
    EXPECT_EQ(r.metrics[i].round, i);
    EXPECT_GT(r.metrics[i].epsilon, prev_eps);
    prev_eps = r.metrics[i].epsilon;
    // Median clipping: C is the lower median of the logged norms.
    EXPECT_EQ(*r.metrics[i].clip_threshold, *r.metrics[i].median_preclip_norm);
  }
  const std::string text = MetricsText(r);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "round,train_loss,test_acc,grad_norm,mean_preclip_norm,"
            "median_preclip_norm,clip_C,epsilon");
  EXPECT_NE(text.find("\n0,"), std::string::npos);
}

TEST(SimulationTest, EpsilonMatchesAccountant) {
  const RunConfig cfg = Small();
  const RunResult r = Simulation(cfg).Run();
  const auto est = ComposeAndConvert(cfg.SamplingRate(), cfg.noise_multiplier,
                                     cfg.rounds, cfg.ResolvedDelta(),
                                     DefaultAlphaGrid());
  EXPECT_NEAR(r.metrics.back().epsilon, est.epsilon, 1e-12);
}

TEST(SimulationTest, Deterministic) {
  for (const char* algo : {"dp-fedavg", "dp-fedsam", "dp-fedpgn", "dp-fedpgn-ls"}) {
    RunConfig cfg = Small();
    ApplyAlgorithmName(algo, cfg.algorithm);
    const RunResult a = Simulation(cfg).Run();
    const RunResult b = Simulation(cfg).Run();
    EXPECT_EQ(MetricsText(a), MetricsText(b)) << algo;
    EXPECT_TRUE(BitwiseEqual(a.final_params.span(), b.final_params.span()));
  }
}

TEST(SimulationTest, SeedsChangeTheRun) {
  RunConfig cfg = Small();
  const std::string base = MetricsText(Simulation(cfg).Run());
  cfg.seeds.training = 99;
  EXPECT_NE(MetricsText(Simulation(cfg).Run()), base);
}

TEST(SimulationTest, LocalEpochAlias) {
  RunConfig cfg = Small();
  cfg.local_epochs = 2;
  // 200 rows over 10 clients, B = 10: two steps per epoch.
  EXPECT_EQ(Simulation(cfg).local_steps(), 4u);
}

TEST(SimulationTest, DivergenceAborts) {
  RunConfig cfg = Small();
  cfg.local_lr = 1e300;
  cfg.noise_multiplier = 0.0;
  EXPECT_THROW(Simulation(cfg).Run(), NumericError);
}

TEST(SimulationTest, CaveatsDescribeTheAccounting) {
  RunConfig cfg = Small();
  cfg.mixture = MixtureReading::kLiteral;
  const RunResult r = Simulation(cfg).Run();
  auto has = [&](const std::string& needle) {
    for (const std::string& c : r.caveats) {
      if (c.find(needle) != std::string::npos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("median"));
  EXPECT_TRUE(has("fixed-size"));
  EXPECT_TRUE(has("literal"));
}

TEST(SimulationTest, NormsCsv) {
  std::ostringstream os;
  WriteNormsCsv(os, {{0, 3, 1.5}, {1, 2, 0.25}});
  EXPECT_EQ(os.str(), "round,client,preclip_norm\n0,3,1.5\n1,2,0.25\n");
}

}  // namespace
}  // namespace fedpgn
