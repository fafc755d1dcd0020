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

// Elementwise double-precision kernels with a scalar reference and SIMD
// variants chosen once at startup. Every variant performs exactly the same
// IEEE-754 operations per element (no FMA, no reassociation), so results are
// bit-identical across variants. Reductions are deliberately absent: they live
// in param_vector.h and always run in index-ascending scalar order.

#ifndef FEDPGN_NUMERICS_KERNELS_H_
#define FEDPGN_NUMERICS_KERNELS_H_

#include <cstddef>
#include <string_view>

namespace fedpgn::kernels {

struct KernelTable {
  std::string_view name;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = a * x[i] + b * y[i]
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);
  // out[i] = a * x[i]
  void (*scale)(double a, const double* x, double* out, std::size_t n);
  // out[i] = x[i] + y[i]
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  // out[i] = x[i] - y[i]
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
};

const KernelTable& Scalar();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* Avx2();
const KernelTable* Neon();

// The table used by the library. Picks the widest supported variant unless
// the environment variable FEDPGN_KERNELS=scalar forces the reference path.
const KernelTable& Active();

}  // namespace fedpgn::kernels

#endif  // FEDPGN_NUMERICS_KERNELS_H_
