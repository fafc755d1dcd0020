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

#ifndef FEDPGN_PROBES_NORM_REPORT_H_
#define FEDPGN_PROBES_NORM_REPORT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fedpgn/engine/simulation.h"

namespace fedpgn {

inline constexpr std::size_t kNormHistogramBins = 20;

// Pre-clip norm statistics of one run.
struct NormReport {
  std::vector<std::size_t> rounds;
  std::vector<std::vector<double>> per_round_norms;
  std::vector<double> round_means;
  double mean = 0.0;
  double median = 0.0;  // lower median over every recorded norm
  std::vector<double> edges;  // kNormHistogramBins + 1 entries
  std::vector<std::vector<std::size_t>> counts;  // per round, per bin
};

// Equal-width edges over [0, max_norm]; the last edge is max_norm exactly.
std::vector<double> HistogramEdges(double max_norm,
                                   std::size_t bins = kNormHistogramBins);

// Bins are half-open [e_k, e_{k+1}) except the last, which is closed.
// Values above the last edge land in the last bin.
std::size_t BinIndex(double value, std::span<const double> edges);

// Throws ConfigError on an empty trace or edges with fewer than 2 entries.
NormReport BuildNormReport(const std::vector<NormRecord>& trace,
                           std::span<const double> edges);

// Reports for runs that are compared side by side, all binned on edges
// spanning [0, largest norm over every run].
std::vector<NormReport> CompareNormReports(
    const std::vector<std::vector<NormRecord>>& traces);

}  // namespace fedpgn

#endif  // FEDPGN_PROBES_NORM_REPORT_H_
