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

#include "fedpgn/data/dataset.h"

#include <cmath>
#include <numeric>
#include <string>

#include "fedpgn/errors.h"

namespace fedpgn {

Dataset::Dataset(std::size_t num_features, std::size_t num_classes,
                 std::vector<double> features,
                 std::vector<std::int32_t> labels, Provenance provenance)
    : num_features_(num_features),
      num_classes_(num_classes),
      features_(std::move(features)),
      labels_(std::move(labels)),
      provenance_(std::move(provenance)) {
  if (labels_.empty()) throw ConfigError("dataset must contain at least one row");
  if (num_features_ == 0) throw ConfigError("dataset needs at least one feature");
  if (num_classes_ < 2) throw ConfigError("dataset needs at least two classes");
  if (features_.size() != labels_.size() * num_features_) {
    throw ConfigError("feature matrix size does not match label count");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 ||
        static_cast<std::size_t>(labels_[i]) >= num_classes_) {
      throw ConfigError("label out of range at row " + std::to_string(i));
    }
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw NumericError("non-finite feature value");
  }
}

std::vector<std::size_t> Dataset::LabelCounts() const {
  std::vector<std::size_t> counts(num_classes_, 0);
  for (std::int32_t y : labels_) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

DataBatch FullBatch(const Dataset& ds) {
  DataBatch batch{&ds, std::vector<std::size_t>(ds.size())};
  std::iota(batch.rows.begin(), batch.rows.end(), std::size_t{0});
  return batch;
}

}  // namespace fedpgn
