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

#ifndef FEDPGN_NUMERICS_PARAM_VECTOR_H_
#define FEDPGN_NUMERICS_PARAM_VECTOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace fedpgn {

// Flat parameter / gradient vector. Length is fixed at construction.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t dim) : values_(dim, 0.0) {}
  explicit ParamVector(std::vector<double> values)
      : values_(std::move(values)) {}
  ParamVector(std::initializer_list<double> values) : values_(values) {}

  static ParamVector Zeros(std::size_t dim) { return ParamVector(dim); }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool AllFinite() const;

  // Value equality (+0 == -0). Use BitwiseEqual for reproducibility checks.
  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

bool BitwiseEqual(std::span<const double> a, std::span<const double> b);

// All operations throw ConfigError on length mismatch. Reductions sum in
// index-ascending order.
ParamVector Add(const ParamVector& a, const ParamVector& b);
ParamVector Sub(const ParamVector& a, const ParamVector& b);
ParamVector Scale(const ParamVector& a, double s);
// y += a * x
void Axpy(double a, const ParamVector& x, ParamVector& y);
double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> a);
double L2Norm(std::span<const double> a);

inline double Dot(const ParamVector& a, const ParamVector& b) {
  return Dot(a.span(), b.span());
}
inline double L2Norm(const ParamVector& a) { return L2Norm(a.span()); }

}  // namespace fedpgn

#endif  // FEDPGN_NUMERICS_PARAM_VECTOR_H_
