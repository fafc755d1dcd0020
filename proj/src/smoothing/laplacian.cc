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

#include "fedpgn/smoothing/laplacian.h"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

// fftw planning is not thread-safe; execution with new-array APIs is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> Allocate(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

}  // namespace

struct LaplacianSmoother::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }
};

LaplacianSmoother::LaplacianSmoother(std::size_t dim, double sigma_ls)
    : dim_(dim), sigma_ls_(sigma_ls) {
  if (dim_ == 0) throw ConfigError("smoothing: dimension must be >= 1");
  if (!(sigma_ls_ >= 0.0) || !std::isfinite(sigma_ls_)) {
    throw ConfigError("smoothing: sigma_ls must be finite and >= 0");
  }
  if (sigma_ls_ == 0.0) return;
  const std::size_t bins = dim_ / 2 + 1;
  inverse_scaled_.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    inverse_scaled_[k] = 1.0 / (Eigenvalue(k) * static_cast<double>(dim_));
  }
  auto real = Allocate<double>(dim_);
  auto spectrum = Allocate<fftw_complex>(bins);
  plans_ = std::make_unique<Plans>();
  std::lock_guard<std::mutex> lock(PlannerMutex());
  const int n = static_cast<int>(dim_);
  plans_->forward = fftw_plan_dft_r2c_1d(n, real.get(), spectrum.get(),
                                         FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_1d(n, spectrum.get(), real.get(),
                                          FFTW_ESTIMATE);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    throw NumericError("smoothing: FFT planning failed");
  }
}

LaplacianSmoother::~LaplacianSmoother() = default;
LaplacianSmoother::LaplacianSmoother(LaplacianSmoother&&) noexcept = default;
LaplacianSmoother& LaplacianSmoother::operator=(LaplacianSmoother&&) noexcept =
    default;

double LaplacianSmoother::Eigenvalue(std::size_t k) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(dim_);
  return 1.0 + 2.0 * sigma_ls_ * (1.0 - std::cos(angle));
}

ParamVector LaplacianSmoother::Apply(std::span<const double> v) const {
  if (v.size() != dim_) throw ConfigError("smoothing: length mismatch");
  if (sigma_ls_ == 0.0) return ParamVector(std::vector<double>(v.begin(), v.end()));
  const std::size_t bins = dim_ / 2 + 1;
  auto real = Allocate<double>(dim_);
  auto spectrum = Allocate<fftw_complex>(bins);
  std::copy(v.begin(), v.end(), real.get());
  fftw_execute_dft_r2c(plans_->forward, real.get(), spectrum.get());
  for (std::size_t k = 0; k < bins; ++k) {
    spectrum[k][0] *= inverse_scaled_[k];
    spectrum[k][1] *= inverse_scaled_[k];
  }
  // c2r overwrites its input; the spectrum buffer is scratch here.
  fftw_execute_dft_c2r(plans_->backward, spectrum.get(), real.get());
  return ParamVector(std::vector<double>(real.get(), real.get() + dim_));
}

ParamVector Smooth(std::span<const double> v, double sigma_ls) {
  return LaplacianSmoother(v.size(), sigma_ls).Apply(v);
}

ParamVector SmoothBlocks(std::span<const double> v, double sigma_ls,
                         std::span<const std::size_t> block_sizes) {
  std::size_t total = 0;
  for (std::size_t b : block_sizes) total += b;
  if (total != v.size()) throw ConfigError("smoothing: block sizes do not sum to d");
  ParamVector out(v.size());
  std::size_t offset = 0;
  for (std::size_t b : block_sizes) {
    const ParamVector part = Smooth(v.subspan(offset, b), sigma_ls);
    std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += b;
  }
  return out;
}

}  // namespace fedpgn
