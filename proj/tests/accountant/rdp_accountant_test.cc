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

#include "fedpgn/accountant/rdp_accountant.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fedpgn/errors.h"
#include "testing/oracles.h"

namespace fedpgn {
namespace {

TEST(AlphaGridTest, Contents) {
  const std::vector<double> grid = DefaultAlphaGrid();
  EXPECT_EQ(grid.front(), 1.25);
  EXPECT_EQ(grid.back(), 256.0);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  for (double a : {1.5, 1.75, 2.0, 2.5, 9.5, 10.0, 11.0, 64.0, 128.0}) {
    EXPECT_NE(std::find(grid.begin(), grid.end(), a), grid.end()) << a;
  }
}

TEST(RdpTest, FullParticipationClosedForm) {
  for (double sigma : {0.5, 0.8, 2.0}) {
    for (double alpha : DefaultAlphaGrid()) {
      const double expect = alpha / (2.0 * sigma * sigma);
      EXPECT_NEAR(RdpPerRound(1.0, sigma, alpha) / expect, 1.0, 1e-6)
          << "sigma=" << sigma << " alpha=" << alpha;
    }
  }
}

TEST(RdpTest, TinySamplingRateIsNearlyFree) {
  for (double alpha : {1.25, 2.0, 5.0, 10.0}) {
    EXPECT_LT(RdpPerRound(1e-6, 0.8, alpha), 1e-6) << alpha;
    EXPECT_GE(RdpPerRound(1e-6, 0.8, alpha), 0.0) << alpha;
  }
}

TEST(RdpTest, MatchesBinomialExpansionAtIntegerOrders) {
  for (double q : {0.001, 0.01, 0.1, 0.5, 0.9}) {
    for (double sigma : {0.7, 1.0, 2.0, 5.0}) {
      for (int alpha : {2, 3, 5, 8, 13, 20}) {
        const double oracle = testing::BinomialLogMoment(q, sigma, alpha);
        const double got = LogMoment(q, sigma, alpha);
        EXPECT_NEAR(got, oracle, 1e-9 * std::max(1.0, oracle) + 1e-15)
            << "q=" << q << " sigma=" << sigma << " alpha=" << alpha;
      }
    }
  }
}

// Fractional orders have no closed form; importance-sampled Monte Carlo is
// the independent reference.
TEST(RdpTest, MatchesImportanceSampledMonteCarlo) {
  struct Case {
    double q, sigma, alpha;
  };
  for (const Case& c : {Case{0.1, 0.8, 8.0}, Case{0.2, 1.0, 2.5},
                        Case{0.05, 0.7, 5.5}, Case{0.5, 1.5, 1.75}}) {
    const double log_quad = LogMoment(c.q, c.sigma, c.alpha);
    const auto mc = testing::ImportanceSampledMoment(c.q, c.sigma, c.alpha,
                                                     1000000, 42, log_quad);
    EXPECT_NEAR(mc.mean, 1.0, 3.0 * mc.standard_error)
        << "q=" << c.q << " sigma=" << c.sigma << " alpha=" << c.alpha
        << " se=" << mc.standard_error;
    EXPECT_LT(mc.standard_error, 0.05);
  }
}

TEST(RdpTest, LiteralReadingIsSquaredRate) {
  for (double q : {0.05, 0.3}) {
    for (double alpha : {2.0, 4.5, 16.0}) {
      EXPECT_NEAR(RdpPerRound(q, 0.9, alpha, MixtureReading::kLiteral),
                  RdpPerRound(q * q, 0.9, alpha, MixtureReading::kStandard),
                  1e-12);
    }
  }
}

TEST(RdpTest, Monotonicity) {
  const std::vector<double> grid = DefaultAlphaGrid();
  for (double sigma : {0.6, 1.0, 3.0}) {
    for (double q : {0.01, 0.1, 0.5}) {
      double prev = 0.0;
      for (double alpha : grid) {
        const double v = RdpPerRound(q, sigma, alpha);
        EXPECT_GE(v, prev * (1 - 1e-9)) << q << " " << sigma << " " << alpha;
        prev = v;
      }
      EXPECT_LT(RdpPerRound(q, sigma, 4.0), RdpPerRound(q * 1.5, sigma, 4.0));
      EXPECT_GT(RdpPerRound(q, sigma, 4.0), RdpPerRound(q, sigma * 1.2, 4.0));
    }
  }
}

TEST(RdpTest, ZeroNoiseIsUnbounded) {
  EXPECT_EQ(RdpPerRound(0.1, 0.0, 2.0), kUnbounded);
  const auto est = ComposeAndConvert(0.1, 0.0, 10, 1e-5, DefaultAlphaGrid());
  EXPECT_EQ(est.epsilon, kUnbounded);
}

TEST(RdpTest, InvalidInputsThrow) {
  EXPECT_THROW(RdpPerRound(0.0, 1.0, 2.0), ConfigError);
  EXPECT_THROW(RdpPerRound(1.5, 1.0, 2.0), ConfigError);
  EXPECT_THROW(RdpPerRound(0.1, -1.0, 2.0), ConfigError);
  EXPECT_THROW(RdpPerRound(0.1, 1.0, 1.0), ConfigError);
}

TEST(ConversionTest, Formula) {
  const double a = 4.0, d = 1e-5;
  EXPECT_NEAR(ConversionOffset(a, d),
              (3.0 * std::log(0.75) - std::log(4.0) - std::log(d)) / 3.0, 1e-14);
}

// Composition over integer orders, against the binomial expansion.
TEST(ComposeTest, AgreesWithBinomialOracleOnIntegerGrid) {
  std::vector<double> grid;
  for (int a = 2; a <= 40; ++a) grid.push_back(a);
  const double q = 0.1, sigma = 0.8, delta = 1.0 / 500.0;
  const std::size_t rounds = 300;
  double best = INFINITY;
  for (double a : grid) {
    const double rdp = rounds * testing::BinomialLogMoment(q, sigma, int(a)) / (a - 1);
    best = std::min(best, rdp + ((a - 1) * std::log1p(-1 / a) - std::log(a) -
                                 std::log(delta)) / (a - 1));
  }
  const auto est = ComposeAndConvert(q, sigma, rounds, delta, grid);
  EXPECT_NEAR(est.epsilon, best, 1e-8 * best);
}

TEST(ComposeTest, EpsilonGrowsWithRounds) {
  const auto grid = DefaultAlphaGrid();
  double prev = 0.0;
  for (std::size_t r : {1, 10, 100, 300}) {
    const double e = ComposeAndConvert(0.1, 1.0, r, 1e-5, grid).epsilon;
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(CalibrateTest, RoundTrip) {
  const auto grid = DefaultAlphaGrid();
  const double sigma = CalibrateSigma(8.0, 0.1, 300, 1.0 / 500.0, grid);
  const double eps = ComposeAndConvert(0.1, sigma, 300, 1.0 / 500.0, grid).epsilon;
  EXPECT_NEAR(eps, 8.0, 0.005 * 8.0);
  EXPECT_LE(eps, 8.0);
}

// Regression anchor: target epsilon 8, q = 0.1, R = 300, delta = 1/500.
TEST(CalibrateTest, GoldenSigma) {
  const double sigma =
      CalibrateSigma(8.0, 0.1, 300, 1.0 / 500.0, DefaultAlphaGrid());
  EXPECT_NEAR(sigma, 1.1114717722121663, 1e-9);
}

TEST(CalibrateTest, UnreachableTargetThrows) {
  EXPECT_THROW(CalibrateSigma(1e-9, 0.1, 300, 1e-5, DefaultAlphaGrid()),
               ConfigError);
}

TEST(LedgerTest, TracksRounds) {
  PrivacyLedger ledger(1.0, 0.1, 1e-5);
  EXPECT_EQ(ledger.rounds_consumed(), 0u);
  ledger.Advance(5);
  ledger.Advance();
  EXPECT_EQ(ledger.rounds_consumed(), 6u);
  const auto direct = ComposeAndConvert(0.1, 1.0, 6, 1e-5, DefaultAlphaGrid());
  EXPECT_NEAR(ledger.Current().epsilon, direct.epsilon, 1e-12);
  EXPECT_EQ(ledger.Current().alpha_star, direct.alpha_star);
  ledger.AddCaveat("note");
  EXPECT_EQ(ledger.caveats().size(), 1u);
}

TEST(LedgerTest, RejectsBadDelta) {
  EXPECT_THROW(PrivacyLedger(1.0, 0.1, 0.0), ConfigError);
  EXPECT_THROW(PrivacyLedger(1.0, 0.1, 1.0), ConfigError);
}

}  // namespace
}  // namespace fedpgn
