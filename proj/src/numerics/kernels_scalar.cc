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

#include <cstdlib>
#include <string_view>

#include "fedpgn/numerics/kernels.h"

namespace fedpgn::kernels {
namespace {

void AxpyScalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void AxpbyScalar(double a, const double* x, double b, const double* y,
                 double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void ScaleScalar(double a, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i];
}

void AddScalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void SubScalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

const KernelTable kScalarTable = {"scalar", AxpyScalar, AxpbyScalar,
                                  ScaleScalar, AddScalar, SubScalar};

const KernelTable& SelectActive() {
  const char* forced = std::getenv("FEDPGN_KERNELS");
  if (forced != nullptr && std::string_view(forced) == "scalar") {
    return kScalarTable;
  }
  if (const KernelTable* t = Avx2()) return *t;
  if (const KernelTable* t = Neon()) return *t;
  return kScalarTable;
}

}  // namespace

const KernelTable& Scalar() { return kScalarTable; }

const KernelTable& Active() {
  static const KernelTable& active = SelectActive();
  return active;
}

}  // namespace fedpgn::kernels
