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

#ifndef FEDPGN_DATA_PARTITION_H_
#define FEDPGN_DATA_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fedpgn/data/dataset.h"
#include "fedpgn/numerics/rng.h"
#include "json.hpp"

namespace fedpgn {

// Disjoint cover of a dataset's rows by client shards. Each shard is sorted
// ascending.
struct Partition {
  std::vector<std::vector<std::size_t>> client_indices;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::size_t min_client_size = 0;
  // Number of full Dirichlet draws tried, and whether the deterministic
  // rebalancing pass had to run.
  std::size_t attempts = 0;
  bool rebalanced = false;

  std::size_t num_clients() const { return client_indices.size(); }
};

struct PartitionOptions {
  std::size_t min_client_size = 10;
  std::size_t max_redraws = 1000;
};

// Label-skewed split: for every class, the class's rows are shuffled and
// divided among clients in proportions drawn from Dir(alpha). Clients that
// already hold n / num_clients rows stop receiving new classes. The whole
// draw is repeated (up to max_redraws) until every shard holds at least
// min_client_size rows; if no draw qualifies, the last one is repaired by
// moving rows from the largest shard to the smallest, one at a time.
//
// Throws ConfigError when num_clients < 2, alpha <= 0, or
// num_clients * min_client_size > n.
Partition DirichletPartition(const Dataset& ds, std::size_t num_clients,
                             double alpha, std::uint64_t seed,
                             const PartitionOptions& options = {});

// Throws ConfigError unless the shards are pairwise disjoint and cover
// {0, ..., n-1} exactly.
void CheckDisjointCover(const Partition& partition, std::size_t n);

// Number of distinct labels held by each client.
std::vector<std::size_t> DistinctLabelsPerClient(const Partition& partition,
                                                 const Dataset& ds);

nlohmann::json PartitionToJson(const Partition& partition);

// Uniform sample of `batch_size` rows without replacement from the client's
// shard, or the whole shard (in order) when it is not larger than batch_size.
DataBatch NextBatch(const Partition& partition, const Dataset& ds,
                    std::size_t client, std::size_t batch_size, Rng& rng);

}  // namespace fedpgn

#endif  // FEDPGN_DATA_PARTITION_H_
