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

#ifndef FEDPGN_DATA_SYNTHETIC_H_
#define FEDPGN_DATA_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "fedpgn/data/dataset.h"

namespace fedpgn {

struct ClusterSpec {
  std::size_t num_classes = 10;
  std::size_t input_dim = 32;
  std::size_t per_class = 100;
  double spread = 1.0;
};

// Unit-norm class centres. With input_dim >= num_classes centre c is the
// basis vector e_c; otherwise the centres are spaced evenly in angle on a
// circle embedded in the first coordinates and normalized.
std::vector<std::vector<double>> ClusterCenters(std::size_t num_classes,
                                                std::size_t input_dim);

// Gaussian blobs: row i has label i % num_classes and features
// centre[label] + spread * N(0, I). Throws ConfigError on invalid sizes.
Dataset SynthClusters(const ClusterSpec& spec, std::uint64_t seed);

struct CsvSchema {
  std::size_t num_classes = 0;
  std::size_t num_features = 0;  // 0: infer from the first data row
  bool has_header = false;
};

// Rows are `label,f1,...,fn`. Blank lines are skipped. Throws ParseError
// (malformed row or wrong field count) or SchemaError (label out of range),
// both carrying the 1-based line number.
Dataset IngestCsv(const std::filesystem::path& path, const CsvSchema& schema);

}  // namespace fedpgn

#endif  // FEDPGN_DATA_SYNTHETIC_H_
