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

#include "fedpgn/probes/landscape.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fedpgn/data/synthetic.h"
#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

ParamVector RandomPoint(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  ParamVector x(d);
  for (double& v : x) v = dist(gen);
  return x;
}

TEST(GridOffsetsTest, SymmetricWithExactCentre) {
  const auto o = GridOffsets(41, 1.0);
  ASSERT_EQ(o.size(), 41u);
  EXPECT_EQ(o.front(), -1.0);
  EXPECT_EQ(o.back(), 1.0);
  EXPECT_EQ(o[20], 0.0);
  for (std::size_t i = 0; i < o.size(); ++i) EXPECT_EQ(o[i], -o[o.size() - 1 - i]);
  EXPECT_THROW(GridOffsets(2, 1.0), ConfigError);
  EXPECT_THROW(GridOffsets(5, 0.0), ConfigError);
}

TEST(DirectionTest, FilterNormalizedPerBlock) {
  const ParamVector x = RandomPoint(30, 1);
  const std::vector<ParamBlock> blocks{{0, 10}, {10, 5}, {15, 15}};
  Rng rng(2, {0, 0, StreamPurpose::kProbe});
  const ParamVector d = FilterNormalizedDirection(x.span(), blocks, rng);
  for (const ParamBlock& b : blocks) {
    const double nd = L2Norm(d.span().subspan(b.offset, b.length));
    const double nx = L2Norm(x.span().subspan(b.offset, b.length));
    EXPECT_NEAR(nd, nx, 1e-12 * nx);
  }
}

TEST(DirectionTest, ZeroBlockGivesZeroDirection) {
  ParamVector x = RandomPoint(6, 3);
  for (std::size_t i = 0; i < 3; ++i) x[i] = 0.0;
  Rng rng(2, {0, 0, StreamPurpose::kProbe});
  const ParamVector d = FilterNormalizedDirection(x.span(), {{0, 3}, {3, 3}}, rng);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(d[i], 0.0);
}

TEST(DirectionTest, OrthogonalizedAndStillNormalized) {
  const ParamVector x = RandomPoint(50, 4);
  const std::vector<ParamBlock> blocks{{0, 20}, {20, 30}};
  Rng rng(5, {0, 0, StreamPurpose::kProbe});
  const ParamVector d1 = FilterNormalizedDirection(x.span(), blocks, rng);
  ParamVector d2 = FilterNormalizedDirection(x.span(), blocks, rng);
  OrthogonalizeDirection(d2, d1, x.span(), blocks);
  EXPECT_LE(std::abs(Dot(d1, d2)), 1e-10 * L2Norm(d1) * L2Norm(d2));
  for (const ParamBlock& b : blocks) {
    EXPECT_NEAR(L2Norm(d2.span().subspan(b.offset, b.length)),
                L2Norm(x.span().subspan(b.offset, b.length)), 1e-12 * L2Norm(x));
  }
}

TEST(LandscapeTest, QuadraticClosedForm) {
  const std::size_t d = 12;
  const QuadraticObjective quad(1.0, ParamVector::Zeros(d));
  const ParamVector x = RandomPoint(d, 6);
  Rng rng(7, {0, 0, StreamPurpose::kProbe});
  const LandscapeGrid grid = LandscapeSlice(quad, x, {9, 2.0, true}, rng);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double p = x[k] + grid.a_offsets[i] * grid.d1[k] +
                         grid.b_offsets[j] * grid.d2[k];
        s += p * p;
      }
      EXPECT_NEAR(grid.losses[i][j], 0.5 * s, 1e-10);
    }
  }
  EXPECT_EQ(grid.losses[4][4], quad.Loss(x.span()));
}

TEST(LandscapeTest, ModelCentreCellEqualsLoss) {
  const Dataset ds = SynthClusters({3, 4, 200, 1.0}, 1);
  const Model model({ModelKind::kMlp, 4, 3, 5, Activation::kTanh});
  const ModelObjective obj(model, EvaluationSample(ds, 64, 9));
  EXPECT_EQ(obj.sample().size(), 64u);
  const ParamVector x = Scale(RandomPoint(model.dimension(), 8), 0.3);
  Rng rng(9, {0, 0, StreamPurpose::kProbe});
  const LandscapeGrid grid = LandscapeSlice(obj, x, {5, 1.0, true}, rng);
  EXPECT_NEAR(grid.losses[2][2], obj.Loss(x.span()), 1e-12);
}

TEST(LandscapeTest, OneDimensionalSlice) {
  const QuadraticObjective quad(2.0, ParamVector::Zeros(4));
  Rng rng(1, {0, 0, StreamPurpose::kProbe});
  const LandscapeGrid grid = LandscapeSlice(quad, RandomPoint(4, 1), {7, 1.0, false}, rng);
  EXPECT_TRUE(grid.d2.empty());
  EXPECT_EQ(grid.b_offsets, std::vector<double>{0.0});
  EXPECT_EQ(grid.losses.size(), 7u);
  EXPECT_EQ(grid.losses[0].size(), 1u);
}

class ExplodingObjective : public QuadraticObjective {
 public:
  ExplodingObjective() : QuadraticObjective(1.0, ParamVector::Zeros(2)) {}
  double Loss(std::span<const double> x) const override {
    if (x[0] > 0.5) throw NumericError("boom");
    if (x[0] < -0.5) return std::nan("");
    return QuadraticObjective::Loss(x);
  }
};

TEST(LandscapeTest, NonFiniteCellsAreInfinite) {
  const ExplodingObjective obj;
  Rng rng(1, {0, 0, StreamPurpose::kProbe});
  const ParamVector x{0.1, 0.1};
  const LandscapeGrid grid = LandscapeSlice(obj, x, {21, 50.0, false}, rng);
  bool saw_inf = false;
  for (const auto& row : grid.losses) {
    for (double v : row) {
      EXPECT_FALSE(std::isnan(v));
      saw_inf |= std::isinf(v);
    }
  }
  EXPECT_TRUE(saw_inf);
}

TEST(LandscapeTest, CsvLayout) {
  LandscapeGrid grid;
  grid.a_offsets = {-1.0, 1.0};
  grid.b_offsets = {-1.0, 0.0, 1.0};
  grid.losses = {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.5}};
  std::ostringstream os;
  WriteLandscapeCsv(os, grid);
  EXPECT_EQ(os.str(), "a,-1,0,1\n-1,1,2,3\n1,4,5,6.5\n");
}

TEST(SharpnessTest, GradientNormVanishesAtMinimum) {
  const ParamVector centre = RandomPoint(8, 2);
  const QuadraticObjective quad(3.0, centre);
  Rng rng(1, {0, 0, StreamPurpose::kProbe});
  const SharpnessReport r = SharpnessProxy(quad, centre, 1.0, rng);
  EXPECT_LE(r.grad_norm, 1e-10);
  // At the minimum every unit direction rises by exactly lambda / 2.
  EXPECT_NEAR(r.max_rise, 1.5, 1e-12);
}

TEST(SharpnessTest, QuadraticRiseClosedForm) {
  const double lambda = 2.0, rho = 0.5;
  const QuadraticObjective quad(lambda, ParamVector::Zeros(6));
  const ParamVector x = RandomPoint(6, 3);
  Rng a(4, {0, 0, StreamPurpose::kProbe});
  Rng b(4, {0, 0, StreamPurpose::kProbe});
  const SharpnessReport r = SharpnessProxy(quad, x, rho, a);
  // F(x + rho u) - F(x) = rho lambda <x, u> + lambda rho^2 / 2.
  double best = -INFINITY;
  for (const ParamVector& u : RandomUnitDirections(6, 10, b)) {
    best = std::max(best, rho * lambda * Dot(x, u) + 0.5 * lambda * rho * rho);
  }
  EXPECT_NEAR(r.max_rise, best, 1e-12);
  EXPECT_NEAR(r.grad_norm, lambda * L2Norm(x), 1e-12);
  EXPECT_THROW(SharpnessProxy(quad, x, 0.0, a), ConfigError);
}

TEST(SharpnessTest, UnitDirections) {
  Rng rng(5, {0, 0, StreamPurpose::kProbe});
  const auto dirs = RandomUnitDirections(9, 10, rng);
  ASSERT_EQ(dirs.size(), 10u);
  for (const ParamVector& u : dirs) EXPECT_NEAR(L2Norm(u), 1.0, 1e-15);
}

TEST(EvaluationSampleTest, FixedPerSeedAndSorted) {
  const Dataset ds = SynthClusters({2, 2, 600, 1.0}, 1);
  const DataBatch a = EvaluationSample(ds, 512, 3);
  const DataBatch b = EvaluationSample(ds, 512, 3);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_TRUE(std::is_sorted(a.rows.begin(), a.rows.end()));
  EXPECT_EQ(std::adjacent_find(a.rows.begin(), a.rows.end()), a.rows.end());
  EXPECT_NE(EvaluationSample(ds, 512, 4).rows, a.rows);
  EXPECT_EQ(EvaluationSample(ds, 5000, 3).rows.size(), ds.size());
}

}  // namespace
}  // namespace fedpgn
