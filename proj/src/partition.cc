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

#include "riskprop/partition.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace riskprop {
namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

absl::Status CheckActorCount(const TemporalGraph& graph,
                             std::uint32_t actor_count) {
  if (actor_count == 0) {
    return absl::InvalidArgumentError("actor count must be at least 1");
  }
  if (actor_count > graph.user_count()) {
    return absl::InvalidArgumentError(
        absl::StrCat("actor count ", actor_count, " exceeds user count ",
                     graph.user_count()));
  }
  return absl::OkStatus();
}

// Size of the unassigned part of the component reachable from `frontier`,
// giving up once it exceeds `limit`.
std::size_t UnassignedComponentSize(const TemporalGraph& graph,
                                    const std::deque<std::uint32_t>& frontier,
                                    const std::vector<std::uint32_t>& block,
                                    std::size_t limit) {
  std::vector<char> seen(graph.user_count(), 0);
  std::vector<std::uint32_t> stack;
  std::size_t size = 0;
  for (std::uint32_t u : frontier) {
    for (const auto& n : graph.neighbors(u)) {
      if (block[n.index] == kUnassigned && !seen[n.index]) {
        seen[n.index] = 1;
        stack.push_back(n.index);
      }
    }
  }
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    if (++size > limit) return size;
    for (const auto& n : graph.neighbors(u)) {
      if (block[n.index] == kUnassigned && !seen[n.index]) {
        seen[n.index] = 1;
        stack.push_back(n.index);
      }
    }
  }
  return size;
}

}  // namespace

absl::StatusOr<PartitionerKind> ParsePartitionerKind(std::string_view name) {
  if (name == "round-robin") return PartitionerKind::kRoundRobin;
  if (name == "bfs") return PartitionerKind::kBfsGrow;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown partitioner '", std::string(name),
                   "' (expected 'bfs' or 'round-robin')"));
}

std::string_view PartitionerName(PartitionerKind kind) {
  switch (kind) {
    case PartitionerKind::kRoundRobin:
      return "round-robin";
    case PartitionerKind::kBfsGrow:
      return "bfs";
  }
  return "unknown";
}

std::size_t CountCutEdges(const TemporalGraph& graph,
                          std::span<const std::uint32_t> assignment) {
  std::size_t cut = 0;
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    for (const auto& n : graph.neighbors(u)) {
      if (n.index > u && assignment[u] != assignment[n.index]) ++cut;
    }
  }
  return cut;
}

absl::StatusOr<Partition> PartitionRoundRobin(const TemporalGraph& graph,
                                              std::uint32_t actor_count) {
  if (auto status = CheckActorCount(graph, actor_count); !status.ok()) {
    return status;
  }
  Partition p;
  p.actor_count = actor_count;
  p.assignment.resize(graph.user_count());
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    p.assignment[u] = u % actor_count;
  }
  p.cut_edges = CountCutEdges(graph, p.assignment);
  return p;
}

absl::StatusOr<Partition> PartitionBfsGrow(const TemporalGraph& graph,
                                           std::uint32_t actor_count,
                                           double imbalance,
                                           std::uint64_t /*seed*/) {
  if (auto status = CheckActorCount(graph, actor_count); !status.ok()) {
    return status;
  }
  if (!(imbalance >= 0.0)) {
    return absl::InvalidArgumentError("imbalance must be non-negative");
  }
  const std::size_t n = graph.user_count();
  const std::size_t cap = static_cast<std::size_t>(
      std::ceil((1.0 + imbalance) * static_cast<double>(n) / actor_count));

  // Seed candidates by descending degree, ties to the lower index (which is
  // the lower UserId).
  std::vector<std::uint32_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return graph.degree(a) > graph.degree(b);
                   });
  std::size_t next_seed = 0;

  std::vector<std::uint32_t> block(n, kUnassigned);
  std::size_t remaining = n;
  for (std::uint32_t k = 0; k < actor_count; ++k) {
    const std::uint32_t blocks_left = actor_count - k;
    const std::size_t target = (remaining + blocks_left - 1) / blocks_left;
    std::size_t size = 0;
    std::deque<std::uint32_t> frontier;
    auto take = [&](std::uint32_t u) {
      block[u] = k;
      ++size;
      --remaining;
      frontier.push_back(u);
    };
    while (size < target) {
      if (frontier.empty()) {
        while (block[by_degree[next_seed]] != kUnassigned) ++next_seed;
        take(by_degree[next_seed]);
        continue;
      }
      std::uint32_t u = frontier.front();
      frontier.pop_front();
      for (const auto& nb : graph.neighbors(u)) {
        if (size >= target) break;
        if (block[nb.index] == kUnassigned) take(nb.index);
      }
    }
    if (k + 1 == actor_count || frontier.empty()) continue;
    // Absorb the tail of the current component when it fits under the cap
    // and the remaining blocks keep at least one user each.
    const std::size_t tail =
        UnassignedComponentSize(graph, frontier, block, cap - size);
    if (size + tail <= cap && remaining - tail >= blocks_left - 1) {
      while (!frontier.empty()) {
        std::uint32_t u = frontier.front();
        frontier.pop_front();
        for (const auto& nb : graph.neighbors(u)) {
          if (block[nb.index] == kUnassigned) take(nb.index);
        }
      }
    }
  }

  Partition p;
  p.actor_count = actor_count;
  p.assignment = std::move(block);
  p.cut_edges = CountCutEdges(graph, p.assignment);
  return p;
}

absl::StatusOr<Partition> PartitionFromAssignment(
    const TemporalGraph& graph, std::vector<std::uint32_t> assignment,
    std::uint32_t actor_count) {
  if (auto status = CheckActorCount(graph, actor_count); !status.ok()) {
    return status;
  }
  if (assignment.size() != graph.user_count()) {
    return absl::InvalidArgumentError(
        absl::StrCat("partition covers ", assignment.size(),
                     " users but the graph has ", graph.user_count()));
  }
  for (std::uint32_t u = 0; u < assignment.size(); ++u) {
    if (assignment[u] >= actor_count) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", graph.id(u), " assigned to actor ",
                       assignment[u], " but only ", actor_count, " actors"));
    }
  }
  Partition p;
  p.actor_count = actor_count;
  p.assignment = std::move(assignment);
  p.cut_edges = CountCutEdges(graph, p.assignment);
  return p;
}

absl::StatusOr<std::vector<ScoreSet>> PartitionScores(
    const ScoreSet& scores, const TemporalGraph& graph,
    const Partition& partition) {
  std::vector<ScoreSet> blocks(partition.actor_count);
  for (const auto& [user, list] : scores) {
    auto index = graph.IndexOf(user);
    if (!index.has_value()) {
      return absl::NotFoundError(
          absl::StrCat("scored user ", user, " is not in the partition"));
    }
    blocks[partition.assignment[*index]].emplace(user, list);
  }
  return blocks;
}

}  // namespace riskprop
