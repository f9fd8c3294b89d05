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

#ifndef RISKPROP_GRAPH_H_
#define RISKPROP_GRAPH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace riskprop {

// Seconds since the Unix epoch.
using Timestamp = std::int64_t;
using UserId = std::uint32_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Default reference time t_now: 2022-01-01T00:00:00Z.
inline constexpr Timestamp kDefaultNow = 1640995200;

inline constexpr double DaysToSeconds(double days) {
  return days * static_cast<double>(kSecondsPerDay);
}

// A timestamped probability of infection.
struct RiskScore {
  double magnitude = 0.0;
  Timestamp time = 0;

  friend bool operator==(const RiskScore&, const RiskScore&) = default;
};

std::ostream& operator<<(std::ostream& os, const RiskScore& score);

// Ordering used whenever the "maximum" risk score is selected: the higher
// magnitude wins and, among equal magnitudes, the older score wins.
inline bool RiskScoreLess(const RiskScore& a, const RiskScore& b) {
  if (a.magnitude != b.magnitude) return a.magnitude < b.magnitude;
  return a.time > b.time;
}

// Returns the maximum of a nonempty list under RiskScoreLess.
RiskScore MaxRiskScore(std::span<const RiskScore> scores);

// The most recent contact between two users. The pair is unordered; use
// Canonical() before comparing contacts.
struct Contact {
  UserId user_a = 0;
  UserId user_b = 0;
  Timestamp time = 0;

  Contact Canonical() const {
    return user_a <= user_b ? *this : Contact{user_b, user_a, time};
  }

  friend bool operator==(const Contact&, const Contact&) = default;
};

// Initial risk scores S(u) keyed by user. Ordered so that iteration and
// serialization are deterministic.
using ScoreSet = std::map<UserId, std::vector<RiskScore>>;

// Contact-sequence graph that keeps only the most recent contact time per
// user pair. Users are stored in ascending UserId order and addressed
// internally by their dense position ("index"); adjacency is CSR with each
// neighbor list sorted by index.
class TemporalGraph {
 public:
  struct Neighbor {
    std::uint32_t index;
    Timestamp contact_time;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
  };

  TemporalGraph() = default;

  // `users` may contain users without contacts; every contact endpoint must
  // be listed and self-loops are not allowed. Duplicate pairs keep the
  // maximum contact time.
  TemporalGraph(std::vector<UserId> users, std::span<const Contact> contacts);

  std::size_t user_count() const { return ids_.size(); }
  std::size_t contact_count() const { return neighbors_.size() / 2; }

  UserId id(std::uint32_t index) const { return ids_[index]; }
  std::span<const UserId> ids() const { return ids_; }
  std::optional<std::uint32_t> IndexOf(UserId id) const;

  std::span<const Neighbor> neighbors(std::uint32_t index) const {
    return {neighbors_.data() + offsets_[index],
            neighbors_.data() + offsets_[index + 1]};
  }
  std::size_t degree(std::uint32_t index) const {
    return offsets_[index + 1] - offsets_[index];
  }

  std::optional<Timestamp> ContactTime(std::uint32_t a, std::uint32_t b) const;

  // One canonical contact per edge, ordered by (user_a, user_b).
  std::vector<Contact> Contacts() const;

  friend bool operator==(const TemporalGraph&, const TemporalGraph&) = default;

 private:
  std::vector<UserId> ids_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Neighbor> neighbors_;
};

struct BuildOptions {
  // Contacts with now - time greater than this many days are dropped.
  std::optional<double> drop_older_than_days;
};

struct BuildStats {
  std::size_t self_loops_dropped = 0;
  std::size_t expired_dropped = 0;
  std::size_t duplicates_merged = 0;
};

// Builds the graph from raw contacts. Self-loops are dropped and counted;
// users only appear if they keep at least one contact. Fails with
// FailedPrecondition when nothing remains.
absl::StatusOr<TemporalGraph> BuildGraph(std::span<const Contact> contacts,
                                         Timestamp now,
                                         const BuildOptions& options = {},
                                         BuildStats* stats = nullptr);

struct FilteredScores {
  ScoreSet scores;
  // Users that had scores but none inside the horizon. They are absent from
  // `scores`; the engine gives them a default score.
  std::vector<UserId> emptied;
};

// Keeps scores with now - time <= horizon_days (inclusive boundary).
FilteredScores FilterScores(const ScoreSet& scores, Timestamp now,
                            double horizon_days);

}  // namespace riskprop

#endif  // RISKPROP_GRAPH_H_
