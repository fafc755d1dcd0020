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

#ifndef FEDPGN_DATA_DATASET_H_
#define FEDPGN_DATA_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fedpgn {

struct SyntheticProvenance {
  std::uint64_t seed = 0;
  std::size_t per_class = 0;
  double spread = 0.0;
};

struct CsvProvenance {
  std::string path;
  std::uint32_t crc32 = 0;
};

using Provenance = std::variant<SyntheticProvenance, CsvProvenance>;

// Row-major feature matrix with integer class labels. Immutable once built;
// the constructor enforces: n >= 1, labels in [0, num_classes), finite rows.
class Dataset {
 public:
  Dataset(std::size_t num_features, std::size_t num_classes,
          std::vector<double> features, std::vector<std::int32_t> labels,
          Provenance provenance);

  std::size_t size() const { return labels_.size(); }
  std::size_t num_features() const { return num_features_; }
  std::size_t num_classes() const { return num_classes_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * num_features_, num_features_};
  }
  std::int32_t label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<std::int32_t>& labels() const { return labels_; }
  const Provenance& provenance() const { return provenance_; }

  // Histogram of labels, length num_classes.
  std::vector<std::size_t> LabelCounts() const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.num_features_ == b.num_features_ &&
           a.num_classes_ == b.num_classes_ && a.features_ == b.features_ &&
           a.labels_ == b.labels_;
  }

 private:
  std::size_t num_features_;
  std::size_t num_classes_;
  std::vector<double> features_;
  std::vector<std::int32_t> labels_;
  Provenance provenance_;
};

// A minibatch: a set of row indices into a dataset that outlives the batch.
struct DataBatch {
  const Dataset* dataset = nullptr;
  std::vector<std::size_t> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

// Batch covering every row of `ds` in order.
DataBatch FullBatch(const Dataset& ds);

}  // namespace fedpgn

#endif  // FEDPGN_DATA_DATASET_H_
