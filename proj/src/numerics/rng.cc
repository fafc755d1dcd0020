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

#include "fedpgn/numerics/rng.h"

namespace fedpgn {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t DeriveStreamKey(std::uint64_t seed, const StreamId& id) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ id.round);
  h = SplitMix64(h ^ id.client);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(id.purpose));
  return h;
}

double Rng::Uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::size_t Rng::UniformIndex(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

double Rng::Gamma(double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

}  // namespace fedpgn
