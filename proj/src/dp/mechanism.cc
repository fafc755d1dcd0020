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

#include "fedpgn/dp/mechanism.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/kernels.h"

namespace fedpgn {

std::string ToString(const ClipPolicy& policy) {
  if (policy.mode == ClipMode::kMedian) return "median";
  std::ostringstream os;
  os.precision(17);
  os << policy.threshold;
  return os.str();
}

ParamVector Clip(const ParamVector& v, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("clip threshold must be > 0");
  const double norm = L2Norm(v);
  if (norm <= threshold) return v;
  double factor = threshold / norm;
  ParamVector out(v.size());
  const auto& k = kernels::Active();
  k.scale(factor, v.data(), out.data(), v.size());
  // Rounding in the rescale can leave the norm a few ulps above C.
  while (L2Norm(out) > threshold) {
    factor = std::nextafter(factor, 0.0);
    k.scale(factor, v.data(), out.data(), v.size());
  }
  return out;
}

double NoiseStddev(const NoiseSpec& spec, double threshold,
                   std::size_t sampled_clients) {
  if (sampled_clients < 1) throw ConfigError("sampled clients must be >= 1");
  return spec.noise_multiplier * threshold /
         std::sqrt(static_cast<double>(sampled_clients));
}

ParamVector AddNoise(const ParamVector& v, const NoiseSpec& spec,
                     double threshold, std::size_t sampled_clients, Rng& rng) {
  const double stddev = NoiseStddev(spec, threshold, sampled_clients);
  if (spec.noise_multiplier == 0.0) return v;
  if (!std::isfinite(stddev)) {
    throw ConfigError("noise requires a finite clip threshold");
  }
  ParamVector out = v;
  for (double& x : out) x += stddev * rng.StandardNormal();
  return out;
}

double ResolveClipThreshold(std::span<const double> preclip_norms,
                            const ClipPolicy& policy) {
  if (policy.mode == ClipMode::kFixed) {
    if (!(policy.threshold > 0.0)) throw ConfigError("clip threshold must be > 0");
    return policy.threshold;
  }
  if (preclip_norms.empty()) {
    throw ConfigError("median clipping needs at least one pre-clip norm");
  }
  std::vector<double> sorted(preclip_norms.begin(), preclip_norms.end());
  std::sort(sorted.begin(), sorted.end());
  return std::max(sorted[(sorted.size() - 1) / 2], kMinClipThreshold);
}

double Sensitivity(double threshold, std::size_t sampled_clients) {
  if (!(threshold > 0.0)) throw ConfigError("clip threshold must be > 0");
  if (sampled_clients < 1) throw ConfigError("sampled clients must be >= 1");
  return threshold / static_cast<double>(sampled_clients);
}

}  // namespace fedpgn
