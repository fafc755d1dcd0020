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

#include "fedpgn/numerics/kernels.h"

#if defined(__ARM_NEON) && defined(__aarch64__)
#include <arm_neon.h>
#define FEDPGN_HAVE_NEON 1
#endif

namespace fedpgn::kernels {

#if defined(FEDPGN_HAVE_NEON)
namespace {

// vfmaq_f64 would fuse the multiply-add and break bitwise equivalence with
// the scalar path; keep separate vmulq/vaddq.
void AxpyNeon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void AxpbyNeon(double a, const double* x, double b, const double* y,
               double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t ax = vmulq_f64(va, vld1q_f64(x + i));
    float64x2_t by = vmulq_f64(vb, vld1q_f64(y + i));
    vst1q_f64(out + i, vaddq_f64(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void ScaleNeon(double a, const double* x, double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) out[i] = a * x[i];
}

void AddNeon(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void SubNeon(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

const KernelTable kNeonTable = {"neon", AxpyNeon, AxpbyNeon,
                                ScaleNeon, AddNeon, SubNeon};

}  // namespace

const KernelTable* Neon() { return &kNeonTable; }

#else

const KernelTable* Neon() { return nullptr; }

#endif

}  // namespace fedpgn::kernels
