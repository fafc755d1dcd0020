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

#ifndef FEDPGN_PROBES_LANDSCAPE_H_
#define FEDPGN_PROBES_LANDSCAPE_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "fedpgn/data/dataset.h"
#include "fedpgn/numerics/model.h"
#include "fedpgn/numerics/param_vector.h"
#include "fedpgn/numerics/rng.h"

namespace fedpgn {

// Scalar function of a parameter vector, split into blocks for filter
// normalization.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::vector<ParamBlock> Blocks() const = 0;
  // May throw NumericError on a non-finite value.
  virtual double Loss(std::span<const double> x) const = 0;
  virtual ParamVector Gradient(std::span<const double> x) const = 0;
};

// Mean cross-entropy of a model on a fixed evaluation sample.
class ModelObjective : public Objective {
 public:
  ModelObjective(const Model& model, DataBatch sample)
      : model_(model), sample_(std::move(sample)) {}

  std::size_t dimension() const override { return model_.dimension(); }
  std::vector<ParamBlock> Blocks() const override { return model_.Blocks(); }
  double Loss(std::span<const double> x) const override;
  ParamVector Gradient(std::span<const double> x) const override;
  const DataBatch& sample() const { return sample_; }

 private:
  const Model& model_;
  DataBatch sample_;
};

// 0.5 * lambda * ||x - center||^2 as a single block.
class QuadraticObjective : public Objective {
 public:
  QuadraticObjective(double lambda, ParamVector center)
      : lambda_(lambda), center_(std::move(center)) {}

  std::size_t dimension() const override { return center_.size(); }
  std::vector<ParamBlock> Blocks() const override {
    return {{0, center_.size()}};
  }
  double Loss(std::span<const double> x) const override;
  ParamVector Gradient(std::span<const double> x) const override;

 private:
  double lambda_;
  ParamVector center_;
};

// Up to `count` distinct rows of `ds`, sorted, chosen by the probe stream of
// `seed`; every row when count >= ds.size(). The same seed gives the same
// rows for every algorithm, so probe values are comparable across runs.
DataBatch EvaluationSample(const Dataset& ds, std::size_t count,
                           std::uint64_t seed);

struct GridSpec {
  std::size_t resolution = 41;
  double limit = 1.0;
  bool two_dimensional = true;
};

// limit * (2i - (n - 1)) / (n - 1) for i in [0, n). Symmetric about 0, and
// exactly 0 in the middle when n is odd.
std::vector<double> GridOffsets(std::size_t resolution, double limit);

// Gaussian direction rescaled so that every block has the norm of the
// matching block of x.
ParamVector FilterNormalizedDirection(std::span<const double> x,
                                      const std::vector<ParamBlock>& blocks,
                                      Rng& rng);

// Removes from each block of d2 its component along d1's block, then
// restores the block norm of x.
void OrthogonalizeDirection(ParamVector& d2, const ParamVector& d1,
                            std::span<const double> x,
                            const std::vector<ParamBlock>& blocks);

struct LandscapeGrid {
  ParamVector d1;
  ParamVector d2;  // empty for a 1-D slice
  std::vector<double> a_offsets;
  std::vector<double> b_offsets;  // {0} for a 1-D slice
  std::vector<std::vector<double>> losses;  // losses[i][j] at (a_i, b_j)
};

// Throws ConfigError when resolution < 3 or limit <= 0. Cells whose loss is
// not finite hold +inf.
LandscapeGrid LandscapeSlice(const Objective& objective,
                             const ParamVector& x, const GridSpec& spec,
                             Rng& rng);

void WriteLandscapeCsv(std::ostream& os, const LandscapeGrid& grid);

std::vector<ParamVector> RandomUnitDirections(std::size_t dim,
                                              std::size_t count, Rng& rng);

struct SharpnessReport {
  double grad_norm = 0.0;
  // max_u F(x + rho u) - F(x) over random unit directions u.
  double max_rise = 0.0;
};

// Throws ConfigError unless rho_probe > 0.
SharpnessReport SharpnessProxy(const Objective& objective,
                               const ParamVector& x, double rho_probe,
                               Rng& rng, std::size_t num_directions = 10);

}  // namespace fedpgn

#endif  // FEDPGN_PROBES_LANDSCAPE_H_
