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

#include "fedpgn/probes/norm_report.h"

#include <algorithm>

#include "fedpgn/errors.h"

namespace fedpgn {

std::vector<double> HistogramEdges(double max_norm, std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  if (!(max_norm >= 0.0)) throw ConfigError("max norm must be >= 0");
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k < bins; ++k) {
    edges[k] = max_norm * static_cast<double>(k) / static_cast<double>(bins);
  }
  edges[bins] = max_norm;
  return edges;
}

std::size_t BinIndex(double value, std::span<const double> edges) {
  const std::size_t bins = edges.size() - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  if (it == edges.begin()) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1,
                               bins - 1);
}

NormReport BuildNormReport(const std::vector<NormRecord>& trace,
                           std::span<const double> edges) {
  if (trace.empty()) throw ConfigError("norm report needs a non-empty trace");
  if (edges.size() < 2) throw ConfigError("norm report needs >= 2 edges");
  NormReport report;
  report.edges.assign(edges.begin(), edges.end());
  std::vector<double> all;
  all.reserve(trace.size());
  for (const NormRecord& rec : trace) {
    if (report.rounds.empty() || report.rounds.back() != rec.round) {
      report.rounds.push_back(rec.round);
      report.per_round_norms.emplace_back();
      report.counts.emplace_back(edges.size() - 1, 0);
    }
    report.per_round_norms.back().push_back(rec.preclip_norm);
    ++report.counts.back()[BinIndex(rec.preclip_norm, edges)];
    all.push_back(rec.preclip_norm);
  }
  for (const auto& norms : report.per_round_norms) {
    double s = 0.0;
    for (double n : norms) s += n;
    report.round_means.push_back(s / static_cast<double>(norms.size()));
  }
  double s = 0.0;
  for (double n : all) s += n;
  report.mean = s / static_cast<double>(all.size());
  std::sort(all.begin(), all.end());
  report.median = all[(all.size() - 1) / 2];
  return report;
}

std::vector<NormReport> CompareNormReports(
    const std::vector<std::vector<NormRecord>>& traces) {
  double max_norm = 0.0;
  for (const auto& t : traces) {
    for (const NormRecord& rec : t) max_norm = std::max(max_norm, rec.preclip_norm);
  }
  const std::vector<double> edges = HistogramEdges(max_norm);
  std::vector<NormReport> out;
  out.reserve(traces.size());
  for (const auto& t : traces) out.push_back(BuildNormReport(t, edges));
  return out;
}

}  // namespace fedpgn
