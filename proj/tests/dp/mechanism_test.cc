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

#include "fedpgn/dp/mechanism.h"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

ParamVector RandomVector(std::size_t d, double scale, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, scale);
  ParamVector v(d);
  for (double& x : v) x = dist(gen);
  return v;
}

TEST(ClipTest, NormNeverExceedsThreshold) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 2000; ++t) {
    const ParamVector v = RandomVector(1 + t % 50, std::exp((t % 13) - 6.0), gen);
    const double c = std::exp(std::uniform_real_distribution<double>(-5, 3)(gen));
    const ParamVector clipped = Clip(v, c);
    EXPECT_LE(L2Norm(clipped), c);
  }
}

TEST(ClipTest, InsideBallIsUntouched) {
  const ParamVector v{0.3, -0.4};
  EXPECT_TRUE(BitwiseEqual(Clip(v, 0.5).span(), v.span()));
  EXPECT_TRUE(BitwiseEqual(Clip(v, 10.0).span(), v.span()));
}

TEST(ClipTest, ScalesOntoTheSphereKeepingDirection) {
  const ParamVector v{3.0, 4.0};
  const ParamVector c = Clip(v, 1.0);
  EXPECT_NEAR(c[0], 0.6, 1e-15);
  EXPECT_NEAR(c[1], 0.8, 1e-15);
  EXPECT_NEAR(L2Norm(c), 1.0, 1e-15);
}

TEST(ClipTest, Idempotent) {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 200; ++t) {
    const ParamVector v = RandomVector(17, 5.0, gen);
    const ParamVector once = Clip(v, 1.3);
    EXPECT_TRUE(BitwiseEqual(Clip(once, 1.3).span(), once.span()));
  }
}

TEST(ClipTest, InfiniteThresholdIsIdentity) {
  const ParamVector v{1e300, -1e300};
  EXPECT_TRUE(BitwiseEqual(
      Clip(v, std::numeric_limits<double>::infinity()).span(), v.span()));
}

TEST(ClipTest, RejectsNonPositiveThreshold) {
  EXPECT_THROW(Clip(ParamVector{1.0}, 0.0), ConfigError);
  EXPECT_THROW(Clip(ParamVector{1.0}, -1.0), ConfigError);
}

TEST(NoiseTest, ZeroMultiplierIsIdentity) {
  const ParamVector v{1.0, -2.0, 3.0};
  Rng rng(1, {0, 0, StreamPurpose::kNoise});
  EXPECT_TRUE(BitwiseEqual(AddNoise(v, {0.0}, 1.0, 10, rng).span(), v.span()));
}

TEST(NoiseTest, Stddev) {
  EXPECT_DOUBLE_EQ(NoiseStddev({0.8}, 2.0, 4), 0.8);
  EXPECT_DOUBLE_EQ(NoiseStddev({1.0}, 1.0, 100), 0.1);
}

TEST(NoiseTest, EmpiricalMomentsMatchNoiseScale) {
  const std::size_t d = 200000;
  const ParamVector zero = ParamVector::Zeros(d);
  Rng rng(3, {1, 2, StreamPurpose::kNoise});
  const ParamVector noised = AddNoise(zero, {0.8}, 1.5, 9, rng);
  double sum = 0.0, ss = 0.0;
  for (double x : noised) {
    sum += x;
    ss += x * x;
  }
  const double sd = 0.8 * 1.5 / 3.0;
  EXPECT_NEAR(sum / d, 0.0, 5.0 * sd / std::sqrt(double(d)));
  // Var of the sample variance is 2 sd^4 / d.
  EXPECT_NEAR(ss / d, sd * sd, 5.0 * sd * sd * std::sqrt(2.0 / d));
}

TEST(NoiseTest, SameStreamSameNoise) {
  const ParamVector v = ParamVector::Zeros(16);
  Rng a(5, {3, 4, StreamPurpose::kNoise});
  Rng b(5, {3, 4, StreamPurpose::kNoise});
  EXPECT_TRUE(BitwiseEqual(AddNoise(v, {1.0}, 1.0, 2, a).span(),
                           AddNoise(v, {1.0}, 1.0, 2, b).span()));
}

TEST(ClipThresholdTest, FixedModeIgnoresNorms) {
  const std::vector<double> norms{1.0, 2.0};
  EXPECT_EQ(ResolveClipThreshold(norms, ClipPolicy::Fixed(0.7)), 0.7);
}

TEST(ClipThresholdTest, LowerMedian) {
  EXPECT_EQ(ResolveClipThreshold(std::vector<double>{3.0, 1.0, 2.0},
                                 ClipPolicy::Median()),
            2.0);
  EXPECT_EQ(ResolveClipThreshold(std::vector<double>{4.0, 1.0, 3.0, 2.0},
                                 ClipPolicy::Median()),
            2.0);
  EXPECT_EQ(ResolveClipThreshold(std::vector<double>{5.0}, ClipPolicy::Median()),
            5.0);
}

TEST(ClipThresholdTest, MedianIsFloored) {
  EXPECT_EQ(ResolveClipThreshold(std::vector<double>{0.0, 0.0, 1.0},
                                 ClipPolicy::Median()),
            kMinClipThreshold);
}

TEST(ClipThresholdTest, EmptyMedianThrows) {
  EXPECT_THROW(ResolveClipThreshold(std::vector<double>{}, ClipPolicy::Median()),
               ConfigError);
}

TEST(SensitivityTest, IsThresholdOverSampled) {
  EXPECT_DOUBLE_EQ(Sensitivity(2.0, 4), 0.5);
}

// Replacing one clipped update changes the average of S of them by at most
// 2C/S; adding or removing one (keeping the 1/S normalization) by at most C/S.
TEST(SensitivityTest, AddRemoveOneNeverExceedsBound) {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t s = 1 + t % 6;
    const double c = 0.5 + (t % 7) * 0.3;
    ParamVector sum = ParamVector::Zeros(8);
    for (std::size_t i = 0; i < s; ++i) {
      Axpy(1.0, Clip(RandomVector(8, 3.0, gen), c), sum);
    }
    const ParamVector extra = Clip(RandomVector(8, 3.0, gen), c);
    ParamVector with = sum;
    Axpy(1.0, extra, with);
    const double change =
        L2Norm(Sub(Scale(with, 1.0 / s), Scale(sum, 1.0 / s)));
    EXPECT_LE(change, Sensitivity(c, s) + 1e-12);
  }
}

TEST(ClipPolicyTest, ToString) {
  EXPECT_EQ(ToString(ClipPolicy::Median()), "median");
}

}  // namespace
}  // namespace fedpgn
