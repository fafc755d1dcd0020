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

#include "fedpgn/data/partition.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

using Shards = std::vector<std::vector<std::size_t>>;

std::size_t MinShardSize(const Shards& shards) {
  std::size_t best = shards.front().size();
  for (const auto& s : shards) best = std::min(best, s.size());
  return best;
}

void Shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.UniformIndex(i)]);
  }
}

Shards DrawOnce(const std::vector<std::vector<std::size_t>>& by_class,
                std::size_t n, std::size_t num_clients, double alpha,
                Rng& rng) {
  Shards shards(num_clients);
  const double capacity =
      static_cast<double>(n) / static_cast<double>(num_clients);
  std::vector<double> proportions(num_clients);
  for (const auto& class_rows : by_class) {
    std::vector<std::size_t> rows = class_rows;
    Shuffle(rows, rng);
    double total = 0.0;
    for (std::size_t k = 0; k < num_clients; ++k) {
      const double draw = rng.Gamma(alpha);
      proportions[k] =
          static_cast<double>(shards[k].size()) < capacity ? draw : 0.0;
      total += proportions[k];
    }
    if (!(total > 0.0)) {
      // Every unmasked gamma draw underflowed; fall back to an even split
      // over the clients still below capacity.
      total = 0.0;
      for (std::size_t k = 0; k < num_clients; ++k) {
        proportions[k] =
            static_cast<double>(shards[k].size()) < capacity ? 1.0 : 0.0;
        total += proportions[k];
      }
    }
    double cumulative = 0.0;
    std::size_t begin = 0;
    for (std::size_t k = 0; k < num_clients; ++k) {
      cumulative += proportions[k] / total;
      const std::size_t end =
          k + 1 == num_clients
              ? rows.size()
              : std::min(rows.size(),
                         static_cast<std::size_t>(
                             cumulative * static_cast<double>(rows.size())));
      for (std::size_t r = begin; r < std::max(begin, end); ++r) {
        shards[k].push_back(rows[r]);
      }
      begin = std::max(begin, end);
    }
  }
  return shards;
}

// Moves rows from the largest shard to the smallest until every shard holds
// at least `min_size` rows. The donor gives up a row of its most frequent
// label (ties: smallest label), most recently assigned first.
void Rebalance(Shards& shards, const Dataset& ds, std::size_t min_size) {
  while (true) {
    std::size_t smallest = 0;
    std::size_t largest = 0;
    for (std::size_t k = 1; k < shards.size(); ++k) {
      if (shards[k].size() < shards[smallest].size()) smallest = k;
      if (shards[k].size() > shards[largest].size()) largest = k;
    }
    if (shards[smallest].size() >= min_size) return;
    auto& donor = shards[largest];
    std::vector<std::size_t> counts(ds.num_classes(), 0);
    for (std::size_t row : donor) ++counts[static_cast<std::size_t>(ds.label(row))];
    const auto label = static_cast<std::int32_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    auto it = std::find_if(donor.rbegin(), donor.rend(), [&](std::size_t row) {
      return ds.label(row) == label;
    });
    shards[smallest].push_back(*it);
    donor.erase(std::next(it).base());
  }
}

}  // namespace

Partition DirichletPartition(const Dataset& ds, std::size_t num_clients,
                             double alpha, std::uint64_t seed,
                             const PartitionOptions& options) {
  if (num_clients < 2) throw ConfigError("partition: need at least 2 clients");
  if (!(alpha > 0.0)) throw ConfigError("partition: alpha must be > 0");
  const std::size_t n = ds.size();
  if (num_clients * options.min_client_size > n) {
    throw ConfigError("partition: infeasible, " + std::to_string(num_clients) +
                      " clients x " + std::to_string(options.min_client_size) +
                      " rows exceeds dataset size " + std::to_string(n));
  }
  std::vector<std::vector<std::size_t>> by_class(ds.num_classes());
  for (std::size_t i = 0; i < n; ++i) {
    by_class[static_cast<std::size_t>(ds.label(i))].push_back(i);
  }
  std::erase_if(by_class, [](const auto& rows) { return rows.empty(); });

  Partition out;
  out.alpha = alpha;
  out.seed = seed;
  out.min_client_size = options.min_client_size;
  Shards shards;
  const std::size_t max_attempts = std::max<std::size_t>(1, options.max_redraws);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed, StreamId{attempt, 0, StreamPurpose::kPartition});
    shards = DrawOnce(by_class, n, num_clients, alpha, rng);
    out.attempts = attempt + 1;
    if (MinShardSize(shards) >= options.min_client_size) break;
  }
  if (MinShardSize(shards) < options.min_client_size) {
    Rebalance(shards, ds, options.min_client_size);
    out.rebalanced = true;
  }
  for (auto& s : shards) std::sort(s.begin(), s.end());
  out.client_indices = std::move(shards);
  CheckDisjointCover(out, n);
  return out;
}

void CheckDisjointCover(const Partition& partition, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (const auto& shard : partition.client_indices) {
    for (std::size_t row : shard) {
      if (row >= n) throw ConfigError("partition: row index out of range");
      if (seen[row]) {
        throw ConfigError("partition: row " + std::to_string(row) +
                          " assigned to more than one client");
      }
      seen[row] = true;
      ++total;
    }
  }
  if (total != n) throw ConfigError("partition: shards do not cover the dataset");
}

std::vector<std::size_t> DistinctLabelsPerClient(const Partition& partition,
                                                 const Dataset& ds) {
  std::vector<std::size_t> out;
  out.reserve(partition.num_clients());
  for (const auto& shard : partition.client_indices) {
    std::vector<bool> present(ds.num_classes(), false);
    for (std::size_t row : shard) present[static_cast<std::size_t>(ds.label(row))] = true;
    out.push_back(static_cast<std::size_t>(
        std::count(present.begin(), present.end(), true)));
  }
  return out;
}

nlohmann::json PartitionToJson(const Partition& partition) {
  nlohmann::json clients = nlohmann::json::object();
  for (std::size_t k = 0; k < partition.num_clients(); ++k) {
    clients[std::to_string(k)] = partition.client_indices[k];
  }
  return {{"num_clients", partition.num_clients()},
          {"alpha", partition.alpha},
          {"seed", partition.seed},
          {"min_client_size", partition.min_client_size},
          {"attempts", partition.attempts},
          {"rebalanced", partition.rebalanced},
          {"clients", std::move(clients)}};
}

DataBatch NextBatch(const Partition& partition, const Dataset& ds,
                    std::size_t client, std::size_t batch_size, Rng& rng) {
  if (client >= partition.num_clients()) {
    throw ConfigError("unknown client id " + std::to_string(client));
  }
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  const auto& shard = partition.client_indices[client];
  if (batch_size >= shard.size()) return DataBatch{&ds, shard};
  std::vector<std::size_t> pool = shard;
  for (std::size_t i = 0; i < batch_size; ++i) {
    std::swap(pool[i], pool[i + rng.UniformIndex(pool.size() - i)]);
  }
  pool.resize(batch_size);
  return DataBatch{&ds, std::move(pool)};
}

}  // namespace fedpgn
