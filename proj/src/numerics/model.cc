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

#include "fedpgn/numerics/model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/kernels.h"

namespace fedpgn {
namespace {

// log-softmax cross-entropy for one example. Overwrites `logits` with the
// loss derivative (softmax - onehot) and returns the loss.
double SoftmaxCrossEntropy(std::span<double> logits, std::int32_t label) {
  double max_logit = -std::numeric_limits<double>::infinity();
  for (double l : logits) max_logit = std::max(max_logit, l);
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - max_logit);
  const double log_norm = max_logit + std::log(sum);
  const double loss = log_norm - logits[static_cast<std::size_t>(label)];
  for (double& l : logits) l = std::exp(l - log_norm);
  logits[static_cast<std::size_t>(label)] -= 1.0;
  return loss;
}

double Activate(Activation a, double v) {
  return a == Activation::kTanh ? std::tanh(v) : std::max(v, 0.0);
}

// Derivative expressed through the pre-activation and activation values.
double ActivateDerivative(Activation a, double pre, double post) {
  if (a == Activation::kTanh) return 1.0 - post * post;
  return pre > 0.0 ? 1.0 : 0.0;
}

}  // namespace

std::string ToString(ModelKind kind) {
  return kind == ModelKind::kSoftmaxRegression ? "softmax" : "mlp";
}

std::string ToString(Activation activation) {
  return activation == Activation::kTanh ? "tanh" : "relu";
}

Model::Model(const ModelSpec& spec) : spec_(spec), dimension_(0) {
  if (spec_.input_dim == 0) throw ConfigError("model.input_dim must be >= 1");
  if (spec_.num_classes < 2) throw ConfigError("model.num_classes must be >= 2");
  const std::size_t n_in = spec_.input_dim;
  const std::size_t n_cls = spec_.num_classes;
  if (spec_.kind == ModelKind::kSoftmaxRegression) {
    dimension_ = n_in * n_cls + n_cls;
  } else {
    if (spec_.hidden_width == 0) {
      throw ConfigError("model.hidden must be >= 1 for the mlp");
    }
    const std::size_t h = spec_.hidden_width;
    dimension_ = n_in * h + h + h * n_cls + n_cls;
  }
}

std::vector<ParamBlock> Model::Blocks() const {
  if (spec_.kind == ModelKind::kSoftmaxRegression) return {{0, dimension_}};
  const std::size_t first = spec_.input_dim * spec_.hidden_width +
                            spec_.hidden_width;
  return {{0, first}, {first, dimension_ - first}};
}

ParamVector Model::Initialize(Rng& rng) const {
  ParamVector x(dimension_);
  for (double& v : x) v = rng.Normal(0.0, 0.1);
  return x;
}

void Model::Validate(std::span<const double> params,
                     const DataBatch& batch) const {
  if (params.size() != dimension_) {
    throw ConfigError("parameter length " + std::to_string(params.size()) +
                      " does not match model dimension " +
                      std::to_string(dimension_));
  }
  if (batch.dataset == nullptr || batch.empty()) {
    throw ConfigError("loss evaluated on an empty batch");
  }
  if (batch.dataset->num_features() != spec_.input_dim ||
      batch.dataset->num_classes() != spec_.num_classes) {
    throw ConfigError("dataset shape does not match the model");
  }
  for (double v : params) {
    if (!std::isfinite(v)) throw NumericError("non-finite model parameter");
  }
}

void Model::Forward(std::span<const double> params,
                    std::span<const double> x, Scratch& s) const {
  const auto& k = kernels::Active();
  const std::size_t n_in = spec_.input_dim;
  const std::size_t n_cls = spec_.num_classes;
  if (spec_.kind == ModelKind::kSoftmaxRegression) {
    const double* w = params.data();
    const double* b = w + n_in * n_cls;
    std::copy(b, b + n_cls, s.logits.begin());
    for (std::size_t j = 0; j < n_in; ++j) {
      k.axpy(x[j], w + j * n_cls, s.logits.data(), n_cls);
    }
    return;
  }
  const std::size_t h = spec_.hidden_width;
  const double* w1 = params.data();
  const double* b1 = w1 + n_in * h;
  const double* w2 = b1 + h;
  const double* b2 = w2 + h * n_cls;
  std::copy(b1, b1 + h, s.pre.begin());
  for (std::size_t j = 0; j < n_in; ++j) {
    k.axpy(x[j], w1 + j * h, s.pre.data(), h);
  }
  for (std::size_t u = 0; u < h; ++u) {
    s.hidden[u] = Activate(spec_.activation, s.pre[u]);
  }
  std::copy(b2, b2 + n_cls, s.logits.begin());
  for (std::size_t u = 0; u < h; ++u) {
    k.axpy(s.hidden[u], w2 + u * n_cls, s.logits.data(), n_cls);
  }
}

Model::Scratch Model::MakeScratch() const {
  return Scratch{std::vector<double>(spec_.num_classes),
                 std::vector<double>(spec_.hidden_width),
                 std::vector<double>(spec_.hidden_width),
                 std::vector<double>(spec_.hidden_width)};
}

double Model::Evaluate(std::span<const double> params, const DataBatch& batch,
                       std::span<double> grad) const {
  const auto& k = kernels::Active();
  const bool want_grad = !grad.empty();
  const Dataset& ds = *batch.dataset;
  const std::size_t n_in = spec_.input_dim;
  const std::size_t n_cls = spec_.num_classes;
  const std::size_t h = spec_.hidden_width;
  Scratch s = MakeScratch();
  double loss_sum = 0.0;

  for (std::size_t row : batch.rows) {
    const auto x = ds.row(row);
    Forward(params, x, s);
    // After this call s.logits holds d(loss)/d(logits).
    loss_sum += SoftmaxCrossEntropy(s.logits, ds.label(row));
    if (!want_grad) continue;
    if (spec_.kind == ModelKind::kSoftmaxRegression) {
      double* gw = grad.data();
      double* gb = gw + n_in * n_cls;
      for (std::size_t j = 0; j < n_in; ++j) {
        k.axpy(x[j], s.logits.data(), gw + j * n_cls, n_cls);
      }
      k.add(gb, s.logits.data(), gb, n_cls);
      continue;
    }
    const double* w2 = params.data() + n_in * h + h;
    double* gw1 = grad.data();
    double* gb1 = gw1 + n_in * h;
    double* gw2 = gb1 + h;
    double* gb2 = gw2 + h * n_cls;
    for (std::size_t u = 0; u < h; ++u) {
      const double back =
          Dot(std::span<const double>(w2 + u * n_cls, n_cls),
              std::span<const double>(s.logits));
      s.dpre[u] =
          back * ActivateDerivative(spec_.activation, s.pre[u], s.hidden[u]);
      k.axpy(s.hidden[u], s.logits.data(), gw2 + u * n_cls, n_cls);
    }
    k.add(gb2, s.logits.data(), gb2, n_cls);
    for (std::size_t j = 0; j < n_in; ++j) {
      k.axpy(x[j], s.dpre.data(), gw1 + j * h, h);
    }
    k.add(gb1, s.dpre.data(), gb1, h);
  }

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  if (want_grad) k.scale(inv_n, grad.data(), grad.data(), grad.size());
  const double loss = loss_sum * inv_n;
  if (!std::isfinite(loss)) throw NumericError("non-finite loss");
  return loss;
}

LossAndGradient Model::LossAndGrad(std::span<const double> params,
                                   const DataBatch& batch) const {
  Validate(params, batch);
  LossAndGradient out{0.0, ParamVector(dimension_)};
  out.loss = Evaluate(params, batch, out.grad.span());
  if (!out.grad.AllFinite()) throw NumericError("non-finite gradient");
  return out;
}

double Model::Loss(std::span<const double> params,
                   const DataBatch& batch) const {
  Validate(params, batch);
  return Evaluate(params, batch, {});
}

std::int32_t Model::Predict(std::span<const double> params,
                            std::span<const double> features) const {
  if (params.size() != dimension_ || features.size() != spec_.input_dim) {
    throw ConfigError("Predict: parameter or feature length mismatch");
  }
  Scratch s = MakeScratch();
  Forward(params, features, s);
  return static_cast<std::int32_t>(
      std::max_element(s.logits.begin(), s.logits.end()) - s.logits.begin());
}

double Model::Accuracy(std::span<const double> params,
                       const Dataset& ds) const {
  if (params.size() != dimension_) {
    throw ConfigError("parameter length does not match model dimension");
  }
  if (ds.num_features() != spec_.input_dim) {
    throw ConfigError("dataset shape does not match the model");
  }
  Scratch s = MakeScratch();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Forward(params, ds.row(i), s);
    const auto best = std::max_element(s.logits.begin(), s.logits.end());
    if (best - s.logits.begin() == ds.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

ParamVector PerturbedGrad(const Model& model, const ParamVector& params,
                          const ParamVector& dir, double rho,
                          const DataBatch& batch) {
  if (rho < 0.0) throw ConfigError("rho must be non-negative");
  if (dir.size() != params.size()) {
    throw ConfigError("perturbation direction length mismatch");
  }
  const double norm = L2Norm(dir);
  if (rho == 0.0 || norm <= kZeroNormTolerance) {
    return model.LossAndGrad(params.span(), batch).grad;
  }
  ParamVector shifted = params;
  Axpy(rho / norm, dir, shifted);
  return model.LossAndGrad(shifted.span(), batch).grad;
}

}  // namespace fedpgn
