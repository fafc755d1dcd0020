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

#ifndef FEDPGN_DP_MECHANISM_H_
#define FEDPGN_DP_MECHANISM_H_

#include <cstddef>
#include <span>
#include <string>

#include "fedpgn/numerics/param_vector.h"
#include "fedpgn/numerics/rng.h"

namespace fedpgn {

enum class ClipMode { kFixed, kMedian };

struct ClipPolicy {
  ClipMode mode = ClipMode::kMedian;
  double threshold = 1.0;  // kFixed only; +inf disables clipping

  static ClipPolicy Fixed(double c) { return {ClipMode::kFixed, c}; }
  static ClipPolicy Median() { return {ClipMode::kMedian, 0.0}; }
};

std::string ToString(const ClipPolicy& policy);

// Floor applied to a data-dependent median threshold so that C stays
// positive when every update in a round is zero.
inline constexpr double kMinClipThreshold = 1e-12;

struct NoiseSpec {
  double noise_multiplier = 0.0;  // sigma
};

// v * min(1, C / ||v||). The returned vector's norm never exceeds C, and a
// vector already inside the ball is returned unchanged, so clipping is
// idempotent. Throws ConfigError unless C > 0.
ParamVector Clip(const ParamVector& v, double threshold);

// Per-coordinate standard deviation sigma * C / sqrt(S).
double NoiseStddev(const NoiseSpec& spec, double threshold,
                   std::size_t sampled_clients);

// Adds independent N(0, sigma^2 C^2 / S) noise to every coordinate. sigma == 0
// returns the input unchanged without consuming randomness.
ParamVector AddNoise(const ParamVector& v, const NoiseSpec& spec,
                     double threshold, std::size_t sampled_clients, Rng& rng);

// Fixed mode returns the configured threshold. Median mode returns the lower
// median of the round's pre-clip norms (element (n-1)/2 of the sorted list),
// floored at kMinClipThreshold. Throws ConfigError on an empty list in median
// mode.
double ResolveClipThreshold(std::span<const double> preclip_norms,
                            const ClipPolicy& policy);

// L2 sensitivity of the averaged clipped update under add/remove-one-client
// adjacency: C / S.
double Sensitivity(double threshold, std::size_t sampled_clients);

}  // namespace fedpgn

#endif  // FEDPGN_DP_MECHANISM_H_
