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

#include <gtest/gtest.h>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

TEST(NormReportTest, SingleNormFallsInItsBin) {
  const auto edges = HistogramEdges(1.0);
  const NormReport r = BuildNormReport({{0, 0, 1.0}}, edges);
  ASSERT_EQ(r.counts.size(), 1u);
  EXPECT_EQ(r.counts[0][kNormHistogramBins - 1], 1u);
  std::size_t total = 0;
  for (std::size_t c : r.counts[0]) total += c;
  EXPECT_EQ(total, 1u);
}

TEST(NormReportTest, MeanAndMedian) {
  const NormReport r =
      BuildNormReport({{0, 0, 1.0}, {0, 1, 2.0}, {0, 2, 3.0}}, HistogramEdges(3.0));
  EXPECT_DOUBLE_EQ(r.mean, 2.0);
  EXPECT_DOUBLE_EQ(r.median, 2.0);
  EXPECT_DOUBLE_EQ(r.round_means[0], 2.0);
}

TEST(NormReportTest, CountsSumToSampledPerRound) {
  std::vector<NormRecord> trace;
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 7; ++c) trace.push_back({r, c, 0.1 * (r + c)});
  }
  const NormReport rep = BuildNormReport(trace, HistogramEdges(1.0));
  ASSERT_EQ(rep.counts.size(), 5u);
  for (const auto& row : rep.counts) {
    std::size_t total = 0;
    for (std::size_t c : row) total += c;
    EXPECT_EQ(total, 7u);
  }
  EXPECT_EQ(rep.rounds, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(NormReportTest, ComparedRunsShareEdges) {
  const std::vector<std::vector<NormRecord>> traces{
      {{0, 0, 0.5}, {0, 1, 0.7}}, {{0, 0, 2.5}, {0, 3, 0.1}}};
  const auto reports = CompareNormReports(traces);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].edges, reports[1].edges);
  EXPECT_EQ(reports[0].edges.back(), 2.5);
  EXPECT_EQ(reports[0].edges.size(), kNormHistogramBins + 1);
}

TEST(NormReportTest, BinIndexBoundaries) {
  const auto edges = HistogramEdges(2.0, 4);  // 0, .5, 1, 1.5, 2
  EXPECT_EQ(BinIndex(0.0, edges), 0u);
  EXPECT_EQ(BinIndex(0.5, edges), 1u);
  EXPECT_EQ(BinIndex(1.99, edges), 3u);
  EXPECT_EQ(BinIndex(2.0, edges), 3u);
  EXPECT_EQ(BinIndex(7.0, edges), 3u);
}

TEST(NormReportTest, AllZeroNorms) {
  const NormReport r = BuildNormReport({{0, 0, 0.0}, {0, 1, 0.0}}, HistogramEdges(0.0));
  // Zero equals the top edge, which belongs to the closed last bin.
  EXPECT_EQ(r.counts[0].back(), 2u);
}

TEST(NormReportTest, EmptyTraceThrows) {
  EXPECT_THROW(BuildNormReport({}, HistogramEdges(1.0)), ConfigError);
}

}  // namespace
}  // namespace fedpgn
