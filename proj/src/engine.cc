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

#include "riskprop/engine.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <thread>
#include <unordered_map>
#include <utility>

#include "absl/strings/str_cat.h"
#include "riskprop/mailbox.h"

namespace riskprop {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kOutgoingBatch = 512;
// Partial batches are posted at least this often (in processed messages) so
// that a lightly loaded peer is not left idle long enough to time out.
constexpr std::uint64_t kFlushInterval = 1024;
// Upper bound on a single blocking wait when no deadline applies.
constexpr std::chrono::seconds kMaxWait(1);

// A received score at a local user, for suppressing repeat forwards.
struct ForwardKey {
  std::uint32_t local;
  std::uint64_t magnitude_bits;
  Timestamp time;

  friend bool operator==(const ForwardKey&, const ForwardKey&) = default;
};

struct ForwardKeyHash {
  std::size_t operator()(const ForwardKey& k) const {
    std::uint64_t h = k.magnitude_bits * 0x9e3779b97f4a7c15ull;
    h ^= (static_cast<std::uint64_t>(k.time) + 0x632be59bd9b4e019ull) +
         (h << 6) + (h >> 2);
    h ^= k.local + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Value in the forward table once a score has gone to every neighbor.
constexpr std::uint32_t kForwardedToAll = UINT32_MAX;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Actor {
 public:
  struct Shared {
    const TemporalGraph* graph;
    const std::vector<std::uint32_t>* owner;
    const std::vector<std::uint32_t>* local_index;
    const PropagateOptions* options;
    std::vector<std::unique_ptr<RemoteMailbox<Message>>>* mailboxes;
  };

  Actor(std::uint32_t id, std::vector<std::uint32_t> users,
        const ScoreSet& scores, const Shared& shared)
      : id_(id),
        users_(std::move(users)),
        scores_(scores),
        graph_(*shared.graph),
        owner_(*shared.owner),
        local_index_(*shared.local_index),
        options_(*shared.options),
        config_(shared.options->config),
        buffer_seconds_(DaysToSeconds(config_.buffer_days)),
        mailboxes_(shared.mailboxes) {
    if (mailboxes_ != nullptr) outgoing_.resize(mailboxes_->size());
    default_score_[0] = {0.0, options_.now};
    states_.reserve(users_.size());
    for (std::uint32_t u : users_) {
      states_.push_back(InitUser(ScoresOf(u), config_));
    }
  }

  absl::Status Run(std::stop_token abort) {
    const Clock::time_point start = Clock::now();
    absl::Status status = Loop(start, abort);
    FlushOutgoing();
    metrics_.wall_runtime_seconds = SecondsSince(start);
    return status;
  }

  const ActorMetrics& metrics() const { return metrics_; }
  std::span<const std::uint32_t> users() const { return users_; }
  std::span<const UserState> states() const { return states_; }

 private:
  std::span<const RiskScore> ScoresOf(std::uint32_t user) const {
    auto it = scores_.find(graph_.id(user));
    if (it == scores_.end() || it->second.empty()) return default_score_;
    return it->second;
  }

  absl::Status Loop(Clock::time_point start, std::stop_token abort) {
    const StopCriteria& stop = options_.stop;
    RemoteMailbox<Message>* inbox =
        mailboxes_ == nullptr ? nullptr : (*mailboxes_)[id_].get();

    for (std::size_t i = 0; i < users_.size(); ++i) SendInitial(i);

    Clock::time_point last_receive = start;
    std::uint64_t since_update = 0;
    std::uint64_t since_flush = 0;
    std::vector<Message> batch;
    while (!abort.stop_requested()) {
      if (stop.max_duration_seconds &&
          SecondsSince(start) >= *stop.max_duration_seconds) {
        break;
      }
      if (!local_.empty()) {
        Message message = local_.front();
        local_.pop_front();
        last_receive = Clock::now();
        bool updated = false;
        if (absl::Status s = Receive(message, updated); !s.ok()) return s;
        since_update = updated ? 0 : since_update + 1;
        if (stop.early_stop_messages &&
            since_update >= *stop.early_stop_messages) {
          break;
        }
        if (++since_flush >= kFlushInterval) {
          FlushOutgoing();
          since_flush = 0;
        }
        continue;
      }
      FlushOutgoing();
      since_flush = 0;
      // With a single actor nothing else can ever arrive.
      if (inbox == nullptr) break;
      if (inbox->TryTake(batch)) {
        Enqueue(batch);
        continue;
      }
      auto wait = std::chrono::duration<double>(kMaxWait);
      if (stop.timeout_seconds) {
        double left = *stop.timeout_seconds - SecondsSince(last_receive);
        if (left <= 0) break;
        wait = std::min(wait, std::chrono::duration<double>(left));
      }
      if (stop.max_duration_seconds) {
        double left = *stop.max_duration_seconds - SecondsSince(start);
        if (left <= 0) break;
        wait = std::min(wait, std::chrono::duration<double>(left));
      }
      if (inbox->TakeFor(batch, wait, abort)) Enqueue(batch);
    }
    return absl::OkStatus();
  }

  void Enqueue(std::vector<Message>& batch) {
    local_.insert(local_.end(), batch.begin(), batch.end());
    batch.clear();
  }

  void SendInitial(std::size_t local) {
    const std::uint32_t u = users_[local];
    std::span<const RiskScore> scores = ScoresOf(u);
    for (const auto& n : graph_.neighbors(u)) {
      std::optional<RiskScore> candidate =
          ComputeMessage(scores, n.contact_time, config_);
      if (candidate && ShouldSend(*candidate, states_[local].init, config_)) {
        Send({u, n.index, *candidate, 1}, n.contact_time);
      }
    }
  }

  absl::Status Receive(const Message& message, bool& updated) {
    const std::uint32_t u = message.dest;
    if (owner_[u] != id_) {
      return absl::InternalError(
          absl::StrCat("actor ", id_, " received a message for user ",
                       graph_.id(u), " owned by actor ", owner_[u]));
    }
    ++metrics_.messages_received;
    Notify({TraceEvent::Kind::kReceive, id_, message});
    const std::uint32_t local = local_index_[u];
    UserState& state = states_[local];
    if (message.score.magnitude > state.curr) {
      Notify({TraceEvent::Kind::kUpdate, id_, message, 0, state.curr});
      state.curr = message.score.magnitude;
      ++metrics_.updates;
      updated = true;
    }
    // Neighbors still owed this score: all but the sender the first time it
    // arrives, then only the first sender when it arrives from someone else.
    std::optional<std::uint32_t> only;
    if (!options_.forward_duplicates) {
      ForwardKey key{local, std::bit_cast<std::uint64_t>(message.score.magnitude),
                     message.score.time};
      auto [it, inserted] = forwarded_.try_emplace(key, message.src);
      if (!inserted) {
        if (it->second == kForwardedToAll || it->second == message.src) {
          return absl::OkStatus();
        }
        only = it->second;
        it->second = kForwardedToAll;
      }
    }
    for (const auto& n : graph_.neighbors(u)) {
      if (n.index == message.src) continue;
      if (only && n.index != *only) continue;
      // Singleton message: the buffer filter then alpha scaling.
      if (static_cast<double>(message.score.time - n.contact_time) >
          buffer_seconds_) {
        continue;
      }
      RiskScore candidate{config_.alpha * message.score.magnitude,
                          message.score.time};
      if (ShouldSend(candidate, state.init, config_)) {
        Send({u, n.index, candidate, message.hops + 1}, n.contact_time);
      }
    }
    return absl::OkStatus();
  }

  void Send(const Message& message, Timestamp contact_time) {
    ++metrics_.messages_sent;
    Notify({TraceEvent::Kind::kSend, id_, message, contact_time});
    const std::uint32_t dest_actor = owner_[message.dest];
    if (dest_actor == id_) {
      local_.push_back(message);
      return;
    }
    std::vector<Message>& out = outgoing_[dest_actor];
    out.push_back(message);
    if (out.size() >= kOutgoingBatch) (*mailboxes_)[dest_actor]->Post(out);
  }

  void FlushOutgoing() {
    for (std::size_t k = 0; k < outgoing_.size(); ++k) {
      if (!outgoing_[k].empty()) (*mailboxes_)[k]->Post(outgoing_[k]);
    }
  }

  void Notify(const TraceEvent& event) const {
    if (options_.observer) options_.observer(event);
  }

  const std::uint32_t id_;
  const std::vector<std::uint32_t> users_;
  const ScoreSet& scores_;
  const TemporalGraph& graph_;
  const std::vector<std::uint32_t>& owner_;
  const std::vector<std::uint32_t>& local_index_;
  const PropagateOptions& options_;
  const ActorConfig& config_;
  const double buffer_seconds_;
  std::vector<std::unique_ptr<RemoteMailbox<Message>>>* mailboxes_;

  RiskScore default_score_[1];
  std::vector<UserState> states_;
  std::deque<Message> local_;
  std::unordered_map<ForwardKey, std::uint32_t, ForwardKeyHash> forwarded_;
  std::vector<std::vector<Message>> outgoing_;
  ActorMetrics metrics_;
};

}  // namespace

absl::Status ActorConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be in (0, 1), got ", alpha));
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be in [0, 1], got ", gamma));
  }
  if (!(tau > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tau must be positive, got ", tau));
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (!(buffer_days >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("buffer days must be non-negative, got ", buffer_days));
  }
  if (!(horizon_days >= buffer_days)) {
    return absl::InvalidArgumentError(
        absl::StrCat("horizon days (", horizon_days,
                     ") must be at least the buffer days (", buffer_days, ")"));
  }
  return absl::OkStatus();
}

absl::Status StopCriteria::Validate() const {
  if (!any()) {
    return absl::InvalidArgumentError(
        "no stopping criterion set: at least one of max duration, early stop "
        "or timeout is required");
  }
  if (max_duration_seconds && *max_duration_seconds < 0) {
    return absl::InvalidArgumentError("max duration must be non-negative");
  }
  if (timeout_seconds && *timeout_seconds < 0) {
    return absl::InvalidArgumentError("timeout must be non-negative");
  }
  return absl::OkStatus();
}

UserState InitUser(std::span<const RiskScore> scores,
                   const ActorConfig& config) {
  const RiskScore max = MaxRiskScore(scores);
  return {{config.alpha * max.magnitude, max.time}, max.magnitude};
}

std::optional<RiskScore> ComputeMessage(std::span<const RiskScore> scores,
                                        Timestamp contact_time,
                                        const ActorConfig& config) {
  const double buffer = DaysToSeconds(config.buffer_days);
  std::optional<RiskScore> best;
  double best_weight = 0.0;
  for (const RiskScore& s : scores) {
    if (static_cast<double>(s.time - contact_time) > buffer) continue;
    const double delta_days =
        std::min(static_cast<double>(s.time - contact_time) /
                     static_cast<double>(kSecondsPerDay),
                 0.0);
    const double weight =
        std::log(std::max(s.magnitude, config.epsilon)) + delta_days / config.tau;
    if (!best || weight > best_weight ||
        (weight == best_weight && RiskScoreLess(*best, s))) {
      best = s;
      best_weight = weight;
    }
  }
  if (!best) return std::nullopt;
  return RiskScore{config.alpha * best->magnitude, best->time};
}

bool ShouldSend(const RiskScore& candidate, const RiskScore& sender_init,
                const ActorConfig& config) {
  return candidate.magnitude >= config.gamma * sender_init.magnitude &&
         candidate.magnitude >= config.epsilon &&
         candidate.time <= sender_init.time;
}

absl::StatusOr<PropagationResult> Propagate(const TemporalGraph& graph,
                                            const ScoreSet& scores,
                                            const Partition& partition,
                                            const PropagateOptions& options) {
  if (absl::Status s = options.config.Validate(); !s.ok()) return s;
  if (absl::Status s = options.stop.Validate(); !s.ok()) return s;
  if (partition.assignment.size() != graph.user_count() ||
      partition.actor_count == 0) {
    return absl::InvalidArgumentError("partition does not match the graph");
  }
  absl::StatusOr<std::vector<ScoreSet>> blocks =
      PartitionScores(scores, graph, partition);
  if (!blocks.ok()) return blocks.status();

  const std::uint32_t actor_count = partition.actor_count;
  std::vector<std::vector<std::uint32_t>> members(actor_count);
  std::vector<std::uint32_t> local_index(graph.user_count());
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    auto& list = members[partition.assignment[u]];
    local_index[u] = static_cast<std::uint32_t>(list.size());
    list.push_back(u);
  }

  std::vector<std::unique_ptr<RemoteMailbox<Message>>> mailboxes;
  if (actor_count > 1) {
    for (std::uint32_t k = 0; k < actor_count; ++k) {
      mailboxes.push_back(std::make_unique<RemoteMailbox<Message>>());
    }
  }
  Actor::Shared shared{&graph, &partition.assignment, &local_index, &options,
                       actor_count > 1 ? &mailboxes : nullptr};
  std::vector<std::unique_ptr<Actor>> actors;
  for (std::uint32_t k = 0; k < actor_count; ++k) {
    actors.push_back(std::make_unique<Actor>(k, std::move(members[k]),
                                             (*blocks)[k], shared));
  }

  const Clock::time_point start = Clock::now();
  absl::Status status;
  if (actor_count == 1) {
    status = actors[0]->Run(std::stop_token{});
  } else {
    std::stop_source abort;
    std::mutex status_mu;
    {
      std::vector<std::jthread> threads;
      threads.reserve(actor_count);
      for (auto& actor : actors) {
        threads.emplace_back([&, a = actor.get()] {
          absl::Status s;
          try {
            s = a->Run(abort.get_token());
          } catch (const std::exception& e) {
            s = absl::InternalError(absl::StrCat("actor failed: ", e.what()));
          }
          if (!s.ok()) {
            std::lock_guard<std::mutex> lock(status_mu);
            if (status.ok()) status = s;
            abort.request_stop();
          }
        });
      }
    }
  }
  const double elapsed = SecondsSince(start);
  if (!status.ok()) return status;

  PropagationResult result;
  result.exposures.assign(graph.user_count(), RiskScore{0.0, options.now});
  result.metrics.wall_runtime_seconds = elapsed;
  for (const auto& actor : actors) {
    const ActorMetrics& m = actor->metrics();
    result.metrics.actors.push_back(m);
    result.metrics.updates += m.updates;
    result.metrics.messages_sent += m.messages_sent;
    result.metrics.messages_received += m.messages_received;
    auto users = actor->users();
    auto states = actor->states();
    for (std::size_t i = 0; i < users.size(); ++i) {
      result.exposures[users[i]] = {states[i].curr, options.now};
    }
  }
  return result;
}

absl::StatusOr<RunResult> Run(std::span<const Contact> contacts,
                              const ScoreSet& scores,
                              const RunOptions& options) {
  if (absl::Status s = options.config.Validate(); !s.ok()) return s;
  if (absl::Status s = options.stop.Validate(); !s.ok()) return s;

  RunResult result;
  BuildOptions build;
  build.drop_older_than_days = options.contact_horizon_days;
  absl::StatusOr<TemporalGraph> graph =
      BuildGraph(contacts, options.now, build, &result.build_stats);
  if (!graph.ok()) return graph.status();
  result.graph = *std::move(graph);

  absl::StatusOr<Partition> partition;
  if (options.assignment) {
    partition = PartitionFromAssignment(result.graph, *options.assignment,
                                        options.actors);
  } else if (options.partitioner == PartitionerKind::kRoundRobin) {
    partition = PartitionRoundRobin(result.graph, options.actors);
  } else {
    partition = PartitionBfsGrow(result.graph, options.actors,
                                 options.imbalance, options.seed);
  }
  if (!partition.ok()) return partition.status();
  result.partition = *std::move(partition);

  FilteredScores filtered =
      FilterScores(scores, options.now, options.config.horizon_days);
  result.emptied_users = std::move(filtered.emptied);
  for (auto it = filtered.scores.begin(); it != filtered.scores.end();) {
    if (!result.graph.IndexOf(it->first)) {
      result.unconnected_scored_users.push_back(it->first);
      it = filtered.scores.erase(it);
    } else {
      ++it;
    }
  }

  PropagateOptions propagate;
  propagate.config = options.config;
  propagate.stop = options.stop;
  propagate.now = options.now;
  propagate.forward_duplicates = options.forward_duplicates;
  propagate.observer = options.observer;
  absl::StatusOr<PropagationResult> propagated =
      Propagate(result.graph, filtered.scores, result.partition, propagate);
  if (!propagated.ok()) return propagated.status();

  for (std::uint32_t u = 0; u < result.graph.user_count(); ++u) {
    result.exposures.emplace(result.graph.id(u), propagated->exposures[u]);
  }
  result.metrics = std::move(propagated->metrics);
  return result;
}

}  // namespace riskprop
