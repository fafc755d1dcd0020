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

#ifndef FEDPGN_SMOOTHING_LAPLACIAN_H_
#define FEDPGN_SMOOTHING_LAPLACIAN_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fedpgn/numerics/param_vector.h"

namespace fedpgn {

// A = I - sigma_ls * L, with L the periodic 1-D second difference
// (Lv)_i = v_{i+1} - 2 v_i + v_{i-1}. A is circulant with eigenvalues
// 1 + 2 sigma_ls (1 - cos(2 pi k / d)), so A^{-1} v is computed exactly by a
// real FFT, a pointwise division and an inverse FFT.
class LaplacianSmoother {
 public:
  // Throws ConfigError when dim == 0 or sigma_ls < 0.
  LaplacianSmoother(std::size_t dim, double sigma_ls);
  ~LaplacianSmoother();
  LaplacianSmoother(LaplacianSmoother&&) noexcept;
  LaplacianSmoother& operator=(LaplacianSmoother&&) noexcept;

  std::size_t dim() const { return dim_; }
  double sigma_ls() const { return sigma_ls_; }

  // Eigenvalue for frequency k in [0, dim).
  double Eigenvalue(std::size_t k) const;

  // A^{-1} v. sigma_ls == 0 returns v bit-for-bit. Safe to call concurrently.
  ParamVector Apply(std::span<const double> v) const;

 private:
  struct Plans;
  std::size_t dim_;
  double sigma_ls_;
  std::vector<double> inverse_scaled_;  // 1 / (lambda_k * dim), k <= dim / 2
  std::unique_ptr<Plans> plans_;
};

// One-shot A^{-1} v over the whole vector.
ParamVector Smooth(std::span<const double> v, double sigma_ls);

// Applies the operator independently to consecutive blocks of the given
// sizes, which must sum to v.size().
ParamVector SmoothBlocks(std::span<const double> v, double sigma_ls,
                         std::span<const std::size_t> block_sizes);

}  // namespace fedpgn

#endif  // FEDPGN_SMOOTHING_LAPLACIAN_H_
