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

#ifndef FEDPGN_NUMERICS_MODEL_H_
#define FEDPGN_NUMERICS_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fedpgn/data/dataset.h"
#include "fedpgn/numerics/param_vector.h"
#include "fedpgn/numerics/rng.h"

namespace fedpgn {

// Below this norm a perturbation direction is treated as the zero vector.
inline constexpr double kZeroNormTolerance = 1e-12;

enum class ModelKind { kSoftmaxRegression, kMlp };
enum class Activation { kTanh, kRelu };

std::string ToString(ModelKind kind);
std::string ToString(Activation activation);

struct ModelSpec {
  ModelKind kind = ModelKind::kSoftmaxRegression;
  std::size_t input_dim = 0;
  std::size_t num_classes = 0;
  std::size_t hidden_width = 0;  // MLP only
  Activation activation = Activation::kTanh;
};

// Contiguous slice of the flat parameter vector holding one layer.
struct ParamBlock {
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct LossAndGradient {
  double loss = 0.0;
  ParamVector grad;
};

// Small classifier trained with mean cross-entropy.
//
// Parameter layout is input-major so the forward and backward passes reduce
// to axpy kernels whose per-output summation order is fixed:
//   softmax: Wt[input_dim x classes], b[classes]
//   mlp:     W1t[input_dim x hidden], b1[hidden], W2t[hidden x classes],
//            b2[classes]
class Model {
 public:
  explicit Model(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  std::size_t dimension() const { return dimension_; }

  // One block for softmax regression, one per layer (weights + bias) for
  // the MLP.
  std::vector<ParamBlock> Blocks() const;

  // Every coordinate drawn from N(0, 0.01), i.e. standard deviation 0.1.
  ParamVector Initialize(Rng& rng) const;

  // Mean cross-entropy and its exact gradient over `batch`.
  // Throws ConfigError on dimension mismatch or an empty batch, and
  // NumericError on non-finite parameters or a non-finite loss.
  LossAndGradient LossAndGrad(std::span<const double> params,
                              const DataBatch& batch) const;
  double Loss(std::span<const double> params, const DataBatch& batch) const;

  std::int32_t Predict(std::span<const double> params,
                       std::span<const double> features) const;
  double Accuracy(std::span<const double> params, const Dataset& ds) const;

 private:
  struct Scratch {
    std::vector<double> logits;
    std::vector<double> pre;
    std::vector<double> hidden;
    std::vector<double> dpre;
  };
  Scratch MakeScratch() const;
  void Forward(std::span<const double> params, std::span<const double> x,
               Scratch& s) const;
  double Evaluate(std::span<const double> params, const DataBatch& batch,
                  std::span<double> grad_out) const;
  void Validate(std::span<const double> params, const DataBatch& batch) const;

  ModelSpec spec_;
  std::size_t dimension_;
};

// Gradient at params + rho * dir / ||dir||. When rho == 0 or
// ||dir|| <= kZeroNormTolerance the shift is zero and the gradient is taken
// at `params` itself.
ParamVector PerturbedGrad(const Model& model, const ParamVector& params,
                          const ParamVector& dir, double rho,
                          const DataBatch& batch);

}  // namespace fedpgn

#endif  // FEDPGN_NUMERICS_MODEL_H_
