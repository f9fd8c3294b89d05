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

// Asynchronous risk propagation. Users are partitioned across actors; each
// actor owns the mutable state of its users and exchanges singleton risk
// score messages with the others through per-actor remote mailboxes. Users
// keep the running maximum of what they receive and forward a decayed copy
// to every other neighbor while the copy stays above a fraction of their own
// initial message.

#ifndef RISKPROP_ENGINE_H_
#define RISKPROP_ENGINE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "riskprop/graph.h"
#include "riskprop/partition.h"

namespace riskprop {

struct ActorConfig {
  // Transmission rate: per-hop multiplicative decay, in (0, 1).
  double alpha = 0.8;
  // Send tolerance: fraction of the sender's initial message a candidate
  // must reach, in [0, 1].
  double gamma = 0.6;
  // Time constant of the exponential age weighting.
  double tau = 1.0;
  // Stand-in for magnitudes below it when taking logarithms. Candidates
  // below it are never sent.
  double epsilon = 1e-7;
  // Scores computed up to this many days after a contact still cross it.
  double buffer_days = 2.0;
  // Only scores from the last `horizon_days` are considered.
  double horizon_days = 14.0;

  absl::Status Validate() const;
};

// Unset fields are ignored; at least one must be set.
struct StopCriteria {
  // Wall time since the actor started.
  std::optional<double> max_duration_seconds;
  // Consecutive received messages that updated no user of the actor.
  std::optional<std::uint64_t> early_stop_messages;
  // Idle time since the last received message, with both mailboxes empty.
  std::optional<double> timeout_seconds;

  bool any() const {
    return max_duration_seconds || early_stop_messages || timeout_seconds;
  }
  absl::Status Validate() const;
};

struct UserState {
  // Maximum risk score, scaled by alpha. Fixed for the run.
  RiskScore init;
  // Running maximum of received magnitudes; starts at the unscaled maximum.
  double curr = 0.0;
};

// Users are addressed by graph index.
struct Message {
  std::uint32_t src = 0;
  std::uint32_t dest = 0;
  RiskScore score;
  // Edges traversed since the score left its originating user.
  std::uint32_t hops = 0;
};

struct ActorMetrics {
  std::uint64_t updates = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
  double wall_runtime_seconds = 0.0;
};

// Counters are sums over `actors`; wall_runtime_seconds is the elapsed time
// of the whole run from spawning the actors to joining the last one.
struct RunMetrics {
  std::uint64_t updates = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
  double wall_runtime_seconds = 0.0;
  std::vector<ActorMetrics> actors;
};

UserState InitUser(std::span<const RiskScore> scores,
                   const ActorConfig& config);

// Selects the score to send across a contact made at `contact_time`: scores
// newer than the buffered contact time are ignored, the rest are ranked by
// log(max(r, epsilon)) + min(age_days, 0) / tau, and the winner is scaled by
// alpha. Returns nullopt when every score is filtered out.
std::optional<RiskScore> ComputeMessage(std::span<const RiskScore> scores,
                                        Timestamp contact_time,
                                        const ActorConfig& config);

// Send condition relative to the sender's initial message.
bool ShouldSend(const RiskScore& candidate, const RiskScore& sender_init,
                const ActorConfig& config);

// Observation hooks for tests and tooling. Callbacks run on actor threads.
struct TraceEvent {
  enum class Kind { kSend, kReceive, kUpdate };
  Kind kind;
  std::uint32_t actor;
  Message message;
  // kSend: the contact time of the edge crossed.
  Timestamp contact_time = 0;
  // kUpdate: value of curr before the update.
  double previous = 0.0;
};
using TraceObserver = std::function<void(const TraceEvent&)>;

struct PropagateOptions {
  ActorConfig config;
  StopCriteria stop;
  Timestamp now = kDefaultNow;
  // When false, a user forwards each distinct received score to each neighbor
  // at most once. Repeats are identical messages whose effects are
  // idempotent, so exposures are unchanged; only the message count drops.
  // When true, every received message is forwarded to every neighbor but its
  // sender, which can grow exponentially with path length on dense graphs.
  bool forward_duplicates = false;
  TraceObserver observer;
};

struct PropagationResult {
  // (curr(u), now) indexed by graph index.
  std::vector<RiskScore> exposures;
  RunMetrics metrics;
};

// Runs the actors over an already built graph and partition. `scores` must be
// horizon-filtered; users without scores get (0, now). With one actor
// everything runs on the calling thread.
absl::StatusOr<PropagationResult> Propagate(const TemporalGraph& graph,
                                            const ScoreSet& scores,
                                            const Partition& partition,
                                            const PropagateOptions& options);

struct RunOptions {
  std::uint32_t actors = 1;
  PartitionerKind partitioner = PartitionerKind::kBfsGrow;
  double imbalance = 0.2;
  // Overrides `partitioner` when set; indexed by graph index.
  std::optional<std::vector<std::uint32_t>> assignment;
  ActorConfig config;
  StopCriteria stop;
  Timestamp now = kDefaultNow;
  std::optional<double> contact_horizon_days;
  std::uint64_t seed = 12345;
  // See PropagateOptions.
  bool forward_duplicates = false;
  TraceObserver observer;
};

struct RunResult {
  TemporalGraph graph;
  Partition partition;
  std::map<UserId, RiskScore> exposures;
  RunMetrics metrics;
  BuildStats build_stats;
  // Users whose scores all fell outside the horizon.
  std::vector<UserId> emptied_users;
  // Scored users that have no contact in the graph; their scores are unused.
  std::vector<UserId> unconnected_scored_users;
};

// Builds the graph, partitions it and its scores, runs the actors and merges
// their exposure scores.
absl::StatusOr<RunResult> Run(std::span<const Contact> contacts,
                              const ScoreSet& scores,
                              const RunOptions& options);

}  // namespace riskprop

#endif  // RISKPROP_ENGINE_H_
