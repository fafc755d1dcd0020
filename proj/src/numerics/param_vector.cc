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

#include "fedpgn/numerics/param_vector.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/kernels.h"

namespace fedpgn {
namespace {

void CheckSameLength(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw ConfigError(std::string(op) + ": length mismatch (" +
                      std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

bool ParamVector::AllFinite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool BitwiseEqual(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) !=
        std::bit_cast<std::uint64_t>(b[i])) {
      return false;
    }
  }
  return true;
}

ParamVector Add(const ParamVector& a, const ParamVector& b) {
  CheckSameLength(a.size(), b.size(), "Add");
  ParamVector out(a.size());
  kernels::Active().add(a.data(), b.data(), out.data(), a.size());
  return out;
}

ParamVector Sub(const ParamVector& a, const ParamVector& b) {
  CheckSameLength(a.size(), b.size(), "Sub");
  ParamVector out(a.size());
  kernels::Active().sub(a.data(), b.data(), out.data(), a.size());
  return out;
}

ParamVector Scale(const ParamVector& a, double s) {
  ParamVector out(a.size());
  kernels::Active().scale(s, a.data(), out.data(), a.size());
  return out;
}

void Axpy(double a, const ParamVector& x, ParamVector& y) {
  CheckSameLength(x.size(), y.size(), "Axpy");
  kernels::Active().axpy(a, x.data(), y.data(), x.size());
}

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size(), "Dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredNorm(std::span<const double> a) {
  double sum = 0.0;
  for (double v : a) sum += v * v;
  return sum;
}

double L2Norm(std::span<const double> a) { return std::sqrt(SquaredNorm(a)); }

}  // namespace fedpgn
