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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/format.h"

namespace fedpgn {

double ModelObjective::Loss(std::span<const double> x) const {
  return model_.Loss(x, sample_);
}

ParamVector ModelObjective::Gradient(std::span<const double> x) const {
  return model_.LossAndGrad(x, sample_).grad;
}

double QuadraticObjective::Loss(std::span<const double> x) const {
  if (x.size() != center_.size()) throw ConfigError("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - center_[i];
    s += t * t;
  }
  return 0.5 * lambda_ * s;
}

ParamVector QuadraticObjective::Gradient(std::span<const double> x) const {
  if (x.size() != center_.size()) throw ConfigError("dimension mismatch");
  ParamVector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = lambda_ * (x[i] - center_[i]);
  return g;
}

DataBatch EvaluationSample(const Dataset& ds, std::size_t count,
                           std::uint64_t seed) {
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (count < rows.size()) {
    Rng rng(seed, {0, 0, StreamPurpose::kProbe});
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(rows[i], rows[i + rng.UniformIndex(rows.size() - i)]);
    }
    rows.resize(count);
    std::sort(rows.begin(), rows.end());
  }
  return DataBatch{&ds, std::move(rows)};
}

std::vector<double> GridOffsets(std::size_t resolution, double limit) {
  if (resolution < 3) throw ConfigError("grid resolution must be >= 3");
  if (!(limit > 0.0)) throw ConfigError("grid limit must be > 0");
  std::vector<double> out(resolution);
  const double n1 = static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    out[i] = limit * (2.0 * static_cast<double>(i) - n1) / n1;
  }
  return out;
}

namespace {

void RescaleBlock(std::span<double> d, std::span<const double> x) {
  const double target = L2Norm(x);
  const double have = L2Norm(d);
  if (have == 0.0 || target == 0.0) {
    std::fill(d.begin(), d.end(), 0.0);
    return;
  }
  const double s = target / have;
  for (double& v : d) v *= s;
}

void CheckBlocks(std::size_t dim, const std::vector<ParamBlock>& blocks) {
  std::size_t end = 0;
  for (const ParamBlock& b : blocks) {
    if (b.offset != end) throw ConfigError("parameter blocks must be contiguous");
    end += b.length;
  }
  if (end != dim) throw ConfigError("parameter blocks do not cover the vector");
}

}  // namespace

ParamVector FilterNormalizedDirection(std::span<const double> x,
                                      const std::vector<ParamBlock>& blocks,
                                      Rng& rng) {
  CheckBlocks(x.size(), blocks);
  ParamVector d(x.size());
  for (double& v : d) v = rng.StandardNormal();
  for (const ParamBlock& b : blocks) {
    RescaleBlock(d.span().subspan(b.offset, b.length),
                 x.subspan(b.offset, b.length));
  }
  return d;
}

void OrthogonalizeDirection(ParamVector& d2, const ParamVector& d1,
                            std::span<const double> x,
                            const std::vector<ParamBlock>& blocks) {
  CheckBlocks(x.size(), blocks);
  if (d1.size() != x.size() || d2.size() != x.size()) {
    throw ConfigError("direction length mismatch");
  }
  for (const ParamBlock& b : blocks) {
    std::span<double> v = d2.span().subspan(b.offset, b.length);
    std::span<const double> u = d1.span().subspan(b.offset, b.length);
    const double uu = SquaredNorm(u);
    if (uu > 0.0) {
      // Two passes: a single Gram-Schmidt step leaves a residual of order
      // eps * ||v||, the second removes it.
      for (int pass = 0; pass < 2; ++pass) {
        const double c = Dot(v, u) / uu;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
      }
    }
    RescaleBlock(v, x.subspan(b.offset, b.length));
  }
}

LandscapeGrid LandscapeSlice(const Objective& objective, const ParamVector& x,
                             const GridSpec& spec, Rng& rng) {
  if (x.size() != objective.dimension()) {
    throw ConfigError("landscape point has the wrong dimension");
  }
  LandscapeGrid grid;
  grid.a_offsets = GridOffsets(spec.resolution, spec.limit);
  const std::vector<ParamBlock> blocks = objective.Blocks();
  grid.d1 = FilterNormalizedDirection(x.span(), blocks, rng);
  if (spec.two_dimensional) {
    grid.d2 = FilterNormalizedDirection(x.span(), blocks, rng);
    OrthogonalizeDirection(grid.d2, grid.d1, x.span(), blocks);
    grid.b_offsets = grid.a_offsets;
  } else {
    grid.b_offsets = {0.0};
  }
  grid.losses.assign(grid.a_offsets.size(),
                     std::vector<double>(grid.b_offsets.size(), 0.0));
  for (std::size_t i = 0; i < grid.a_offsets.size(); ++i) {
    for (std::size_t j = 0; j < grid.b_offsets.size(); ++j) {
      ParamVector p = x;
      const double a = grid.a_offsets[i];
      const double b = grid.b_offsets[j];
      if (a != 0.0) Axpy(a, grid.d1, p);
      if (b != 0.0) Axpy(b, grid.d2, p);
      double loss;
      try {
        loss = objective.Loss(p.span());
      } catch (const NumericError&) {
        loss = std::numeric_limits<double>::infinity();
      }
      if (!std::isfinite(loss)) loss = std::numeric_limits<double>::infinity();
      grid.losses[i][j] = loss;
    }
  }
  return grid;
}

void WriteLandscapeCsv(std::ostream& os, const LandscapeGrid& grid) {
  os << "a";
  for (double b : grid.b_offsets) os << ',' << FormatDouble(b);
  os << '\n';
  for (std::size_t i = 0; i < grid.a_offsets.size(); ++i) {
    os << FormatDouble(grid.a_offsets[i]);
    for (double v : grid.losses[i]) os << ',' << FormatDouble(v);
    os << '\n';
  }
}

std::vector<ParamVector> RandomUnitDirections(std::size_t dim,
                                              std::size_t count, Rng& rng) {
  if (dim == 0) throw ConfigError("direction dimension must be positive");
  std::vector<ParamVector> out;
  out.reserve(count);
  while (out.size() < count) {
    ParamVector u(dim);
    for (double& v : u) v = rng.StandardNormal();
    const double n = L2Norm(u);
    if (n == 0.0) continue;
    out.push_back(Scale(u, 1.0 / n));
  }
  return out;
}

SharpnessReport SharpnessProxy(const Objective& objective, const ParamVector& x,
                               double rho_probe, Rng& rng,
                               std::size_t num_directions) {
  if (!(rho_probe > 0.0)) throw ConfigError("rho_probe must be > 0");
  SharpnessReport report;
  report.grad_norm = L2Norm(objective.Gradient(x.span()));
  const double base = objective.Loss(x.span());
  report.max_rise = -std::numeric_limits<double>::infinity();
  for (const ParamVector& u : RandomUnitDirections(x.size(), num_directions, rng)) {
    ParamVector p = x;
    Axpy(rho_probe, u, p);
    double loss;
    try {
      loss = objective.Loss(p.span());
    } catch (const NumericError&) {
      loss = std::numeric_limits<double>::infinity();
    }
    report.max_rise = std::max(report.max_rise, loss - base);
  }
  return report;
}

}  // namespace fedpgn
