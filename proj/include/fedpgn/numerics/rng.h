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

#ifndef FEDPGN_NUMERICS_RNG_H_
#define FEDPGN_NUMERICS_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace fedpgn {

enum class StreamPurpose : std::uint64_t {
  kModelInit = 1,
  kTrainData = 2,
  kTestData = 3,
  kPartition = 4,
  kClientSampling = 5,
  kBatch = 6,
  kNoise = 7,
  kProbe = 8,
};

// Identifies one independent random stream under a top-level seed.
struct StreamId {
  std::uint64_t round = 0;
  std::uint64_t client = 0;
  StreamPurpose purpose = StreamPurpose::kModelInit;
};

// SplitMix64 finalizer chained over (seed, round, client, purpose). Streams
// with distinct ids are statistically independent and their draws never depend
// on the order in which other streams are consumed.
std::uint64_t DeriveStreamKey(std::uint64_t seed, const StreamId& id);

class Rng {
 public:
  Rng(std::uint64_t seed, const StreamId& id)
      : engine_(DeriveStreamKey(seed, id)) {}
  explicit Rng(std::uint64_t key) : engine_(key) {}

  // Uniform on [0, 1).
  double Uniform();
  double StandardNormal() { return normal_(engine_); }
  double Normal(double mean, double stddev) {
    return mean + stddev * normal_(engine_);
  }
  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t UniformIndex(std::size_t n);
  double Gamma(double shape);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fedpgn

#endif  // FEDPGN_NUMERICS_RNG_H_
