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

#include "riskprop/graph.h"

#include <algorithm>
#include <cassert>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace riskprop {

std::ostream& operator<<(std::ostream& os, const RiskScore& score) {
  return os << "(" << score.magnitude << ", " << score.time << ")";
}

RiskScore MaxRiskScore(std::span<const RiskScore> scores) {
  assert(!scores.empty());
  return *std::max_element(scores.begin(), scores.end(), RiskScoreLess);
}

TemporalGraph::TemporalGraph(std::vector<UserId> users,
                             std::span<const Contact> contacts)
    : ids_(std::move(users)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());

  // Canonical (a, b) index pairs; after sorting, the last entry of each pair
  // run carries the maximum time.
  struct Edge {
    std::uint32_t a, b;
    Timestamp time;
  };
  std::vector<Edge> edges;
  edges.reserve(contacts.size());
  for (const Contact& c : contacts) {
    std::uint32_t a = IndexOf(c.user_a).value();
    std::uint32_t b = IndexOf(c.user_b).value();
    assert(a != b);
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, c.time});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b, x.time) < std::tie(y.a, y.b, y.time);
  });
  std::vector<Edge> unique_edges;
  unique_edges.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i + 1 < edges.size() && edges[i + 1].a == edges[i].a &&
        edges[i + 1].b == edges[i].b) {
      continue;
    }
    unique_edges.push_back(edges[i]);
  }

  const std::size_t n = ids_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : unique_edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : unique_edges) {
    neighbors_[cursor[e.a]++] = {e.b, e.time};
    neighbors_[cursor[e.b]++] = {e.a, e.time};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(neighbors_.begin() + offsets_[i],
              neighbors_.begin() + offsets_[i + 1],
              [](const Neighbor& x, const Neighbor& y) {
                return x.index < y.index;
              });
  }
}

std::optional<std::uint32_t> TemporalGraph::IndexOf(UserId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

std::optional<Timestamp> TemporalGraph::ContactTime(std::uint32_t a,
                                                    std::uint32_t b) const {
  auto row = neighbors(a);
  auto it = std::lower_bound(
      row.begin(), row.end(), b,
      [](const Neighbor& n, std::uint32_t key) { return n.index < key; });
  if (it == row.end() || it->index != b) return std::nullopt;
  return it->contact_time;
}

std::vector<Contact> TemporalGraph::Contacts() const {
  std::vector<Contact> out;
  out.reserve(contact_count());
  for (std::uint32_t u = 0; u < user_count(); ++u) {
    for (const Neighbor& n : neighbors(u)) {
      if (n.index > u) out.push_back({ids_[u], ids_[n.index], n.contact_time});
    }
  }
  return out;
}

absl::StatusOr<TemporalGraph> BuildGraph(std::span<const Contact> contacts,
                                         Timestamp now,
                                         const BuildOptions& options,
                                         BuildStats* stats) {
  BuildStats local;
  std::vector<Contact> kept;
  kept.reserve(contacts.size());
  for (const Contact& c : contacts) {
    if (c.user_a == c.user_b) {
      ++local.self_loops_dropped;
      continue;
    }
    if (options.drop_older_than_days.has_value() &&
        static_cast<double>(now - c.time) >
            DaysToSeconds(*options.drop_older_than_days)) {
      ++local.expired_dropped;
      continue;
    }
    kept.push_back(c);
  }
  if (kept.empty()) {
    if (stats != nullptr) *stats = local;
    return absl::FailedPreconditionError(absl::StrCat(
        "empty graph: no contacts remain after filtering (",
        local.self_loops_dropped, " self-loops, ", local.expired_dropped,
        " expired)"));
  }
  std::vector<UserId> users;
  users.reserve(2 * kept.size());
  for (const Contact& c : kept) {
    users.push_back(c.user_a);
    users.push_back(c.user_b);
  }
  TemporalGraph graph(std::move(users), kept);
  local.duplicates_merged = kept.size() - graph.contact_count();
  if (stats != nullptr) *stats = local;
  return graph;
}

FilteredScores FilterScores(const ScoreSet& scores, Timestamp now,
                            double horizon_days) {
  const double horizon = DaysToSeconds(horizon_days);
  FilteredScores out;
  for (const auto& [user, list] : scores) {
    std::vector<RiskScore> kept;
    for (const RiskScore& s : list) {
      if (static_cast<double>(now - s.time) <= horizon) kept.push_back(s);
    }
    if (kept.empty()) {
      out.emptied.push_back(user);
    } else {
      out.scores.emplace(user, std::move(kept));
    }
  }
  return out;
}

}  // namespace riskprop
