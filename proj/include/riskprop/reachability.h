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

// Message reachability: how many hops a user's initial message can travel
// before the send condition stops it. The estimate is closed-form hop
// arithmetic; the actual value is measured on the graph with both the
// magnitude and the time conditions applied at every intermediate user.

#ifndef RISKPROP_REACHABILITY_H_
#define RISKPROP_REACHABILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "riskprop/engine.h"
#include "riskprop/graph.h"
#include "riskprop/stats.h"

namespace riskprop {

struct ReachParams {
  double alpha = 0.8;
  double gamma = 0.6;
  // Initial-message magnitude of the source.
  double init_u = 0.0;
  // Initial-message magnitude of a reference destination.
  double init_v = 0.0;
};

// 1 + log_alpha(gamma * init_v / init_u), clamped below at 0. Returns 0 when
// init_u is 0 and +infinity when gamma * init_v is 0 (and init_u > 0).
double EstimateReachability(const ReachParams& params);

struct ReachResult {
  double estimated = 0.0;
  // Largest hop count at which some user received the source's message.
  int actual_depth = 0;
  // Reached users, source included.
  std::size_t reached_set_size = 0;
  // actual_depth / estimated; 0 for an infinite estimate, NaN for a zero one.
  double ratio = 0.0;
  // Hop count per graph index; -1 where unreached.
  std::vector<int> depth;
};

// Initial messages (alpha-scaled maximum scores) for every graph user,
// indexed by graph index. Scores outside the horizon are ignored; users left
// without any get (0, now).
std::vector<RiskScore> InitialMessages(const TemporalGraph& graph,
                                       const ScoreSet& scores,
                                       const ActorConfig& config,
                                       Timestamp now);

// Mean magnitude of `inits`.
double MeanInitMagnitude(std::span<const RiskScore> inits);

// Propagates the source's initial message breadth-first. A user x at depth h
// forwards to neighbor y iff alpha^h * init(source) passes the send condition
// against init(x) and the message time is at most contact_time(x, y) + B.
// Each user is kept at its smallest depth, which is also where it receives
// the largest value. `init_v` overrides the mean-initial-message convention
// for the estimate.
absl::StatusOr<ReachResult> ActualReachability(
    const TemporalGraph& graph, UserId source,
    std::span<const RiskScore> inits, const ActorConfig& config,
    std::optional<double> init_v = std::nullopt);

struct SweepRow {
  double gamma = 0.0;
  double alpha = 0.0;
  UserId source = 0;
  double estimated = 0.0;
  int actual_depth = 0;
  std::size_t reached_set_size = 0;
  double ratio = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Over finite ratios only.
  Quartiles ratio_quartiles;
};

// Evaluates every (gamma, alpha, source) combination. Initial messages are
// recomputed per alpha from `scores`; the remaining knobs come from `config`.
absl::StatusOr<SweepResult> ReachabilitySweep(
    const TemporalGraph& graph, const ScoreSet& scores,
    std::span<const UserId> sources, std::span<const double> gammas,
    std::span<const double> alphas, const ActorConfig& config, Timestamp now,
    std::optional<double> init_v = std::nullopt);

// Up to `count` distinct graph users drawn uniformly without replacement,
// in ascending order. All users when count >= |U|.
std::vector<UserId> SampleSources(const TemporalGraph& graph,
                                  std::size_t count, std::uint64_t seed);

// The {0.1, ..., 1.0} send-tolerance and {0.1, ..., 0.9} transmission-rate
// grids.
std::vector<double> DefaultGammaGrid();
std::vector<double> DefaultAlphaGrid();

}  // namespace riskprop

#endif  // RISKPROP_REACHABILITY_H_
