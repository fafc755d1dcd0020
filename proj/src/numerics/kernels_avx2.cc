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

// Compiled with -mavx2 (and without -mfma) when FEDPGN_ENABLE_AVX2 is on.

#include "fedpgn/numerics/kernels.h"

#if defined(FEDPGN_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace fedpgn::kernels {

#if defined(FEDPGN_HAVE_AVX2)
namespace {

void AxpyAvx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void AxpbyAvx2(double a, const double* x, double b, const double* y,
               double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void ScaleAvx2(double a, const double* x, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = a * x[i];
}

void AddAvx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void SubAvx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

const KernelTable kAvx2Table = {"avx2", AxpyAvx2, AxpbyAvx2,
                                ScaleAvx2, AddAvx2, SubAvx2};

}  // namespace

const KernelTable* Avx2() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2Table : nullptr;
}

#else

const KernelTable* Avx2() { return nullptr; }

#endif

}  // namespace fedpgn::kernels
