// Copyright 2026 The RiskProp Authors
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

#ifndef RISKPROP_PARTITION_H_
#define RISKPROP_PARTITION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "riskprop/graph.h"

namespace riskprop {

// Maps every user (by graph index) to exactly one actor in [0, actor_count).
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::uint32_t actor_count = 1;
  std::size_t cut_edges = 0;

  friend bool operator==(const Partition&, const Partition&) = default;
};

enum class PartitionerKind { kRoundRobin, kBfsGrow };

absl::StatusOr<PartitionerKind> ParsePartitionerKind(std::string_view name);
std::string_view PartitionerName(PartitionerKind kind);

// Number of edges whose endpoints are assigned to different actors.
std::size_t CountCutEdges(const TemporalGraph& graph,
                          std::span<const std::uint32_t> assignment);

// User i goes to actor i mod K.
absl::StatusOr<Partition> PartitionRoundRobin(const TemporalGraph& graph,
                                              std::uint32_t actor_count);

// Sequential greedy graph growing. Each block is seeded at the unassigned
// user of highest degree (ties to the lower UserId) and grown breadth-first
// to its share of the remaining users. When the rest of the component being
// grown fits within ceil((1 + imbalance) * |U| / K), it is absorbed whole
// instead of being cut. `seed` is accepted for interface stability; the
// result depends only on the graph, K and `imbalance`.
absl::StatusOr<Partition> PartitionBfsGrow(const TemporalGraph& graph,
                                           std::uint32_t actor_count,
                                           double imbalance = 0.2,
                                           std::uint64_t seed = 12345);

// Validates an externally computed assignment (e.g. imported from METIS) and
// fills in the cut count.
absl::StatusOr<Partition> PartitionFromAssignment(
    const TemporalGraph& graph, std::vector<std::uint32_t> assignment,
    std::uint32_t actor_count);

// Routes each user's scores to its actor. Scored users missing from the
// graph are rejected.
absl::StatusOr<std::vector<ScoreSet>> PartitionScores(
    const ScoreSet& scores, const TemporalGraph& graph,
    const Partition& partition);

}  // namespace riskprop

#endif  // RISKPROP_PARTITION_H_
