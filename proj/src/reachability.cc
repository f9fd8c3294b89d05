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

#include "riskprop/reachability.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "riskprop/random.h"

namespace riskprop {

double EstimateReachability(const ReachParams& params) {
  if (params.init_u == 0.0) return 0.0;
  const double threshold = params.gamma * params.init_v;
  if (threshold == 0.0) return std::numeric_limits<double>::infinity();
  const double hops =
      1.0 + std::log(threshold / params.init_u) / std::log(params.alpha);
  return std::max(0.0, hops);
}

std::vector<RiskScore> InitialMessages(const TemporalGraph& graph,
                                       const ScoreSet& scores,
                                       const ActorConfig& config,
                                       Timestamp now) {
  const RiskScore fallback{0.0, now};
  const ScoreSet recent = FilterScores(scores, now, config.horizon_days).scores;
  std::vector<RiskScore> inits(graph.user_count());
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    auto it = recent.find(graph.id(u));
    std::span<const RiskScore> list(&fallback, 1);
    if (it != recent.end()) list = it->second;
    inits[u] = InitUser(list, config).init;
  }
  return inits;
}

double MeanInitMagnitude(std::span<const RiskScore> inits) {
  if (inits.empty()) return 0.0;
  double sum = 0.0;
  for (const RiskScore& s : inits) sum += s.magnitude;
  return sum / static_cast<double>(inits.size());
}

absl::StatusOr<ReachResult> ActualReachability(
    const TemporalGraph& graph, UserId source,
    std::span<const RiskScore> inits, const ActorConfig& config,
    std::optional<double> init_v) {
  auto start = graph.IndexOf(source);
  if (!start) {
    return absl::NotFoundError(
        absl::StrCat("source user ", source, " is not in the graph"));
  }
  if (inits.size() != graph.user_count()) {
    return absl::InvalidArgumentError(
        "initial messages must cover every graph user");
  }
  const RiskScore origin = inits[*start];
  const double buffer = DaysToSeconds(config.buffer_days);

  ReachResult result;
  result.depth.assign(graph.user_count(), -1);
  result.depth[*start] = 0;
  result.reached_set_size = 1;
  // Breadth-first by hop count; `value` is what the current layer sends,
  // starting with the source's initial message itself.
  std::vector<std::uint32_t> layer = {*start}, next;
  double value = origin.magnitude;
  for (int h = 0; !layer.empty(); ++h) {
    const RiskScore sent{value, origin.time};
    for (std::uint32_t x : layer) {
      if (!ShouldSend(sent, inits[x], config)) continue;
      for (const auto& n : graph.neighbors(x)) {
        if (result.depth[n.index] >= 0) continue;
        if (static_cast<double>(origin.time - n.contact_time) > buffer) {
          continue;
        }
        result.depth[n.index] = h + 1;
        next.push_back(n.index);
      }
    }
    if (!next.empty()) result.actual_depth = h + 1;
    result.reached_set_size += next.size();
    layer.swap(next);
    next.clear();
    value = config.alpha * value;
  }

  ReachParams params;
  params.alpha = config.alpha;
  params.gamma = config.gamma;
  params.init_u = origin.magnitude;
  params.init_v = init_v.value_or(MeanInitMagnitude(inits));
  result.estimated = EstimateReachability(params);
  if (std::isinf(result.estimated)) {
    result.ratio = 0.0;
  } else if (result.estimated == 0.0) {
    result.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    result.ratio = result.actual_depth / result.estimated;
  }
  return result;
}

absl::StatusOr<SweepResult> ReachabilitySweep(
    const TemporalGraph& graph, const ScoreSet& scores,
    std::span<const UserId> sources, std::span<const double> gammas,
    std::span<const double> alphas, const ActorConfig& config, Timestamp now,
    std::optional<double> init_v) {
  if (sources.empty() || gammas.empty() || alphas.empty()) {
    return absl::InvalidArgumentError(
        "sweep needs at least one source, gamma and alpha");
  }
  SweepResult out;
  out.rows.reserve(sources.size() * gammas.size() * alphas.size());
  std::vector<double> ratios;
  for (double gamma : gammas) {
    for (double alpha : alphas) {
      ActorConfig cell = config;
      cell.alpha = alpha;
      cell.gamma = gamma;
      if (absl::Status s = cell.Validate(); !s.ok()) return s;
      const std::vector<RiskScore> inits =
          InitialMessages(graph, scores, cell, now);
      for (UserId source : sources) {
        absl::StatusOr<ReachResult> r =
            ActualReachability(graph, source, inits, cell, init_v);
        if (!r.ok()) return r.status();
        out.rows.push_back({gamma, alpha, source, r->estimated,
                            r->actual_depth, r->reached_set_size, r->ratio});
        ratios.push_back(r->ratio);
      }
    }
  }
  out.ratio_quartiles = ComputeQuartiles(ratios);
  return out;
}

std::vector<UserId> SampleSources(const TemporalGraph& graph,
                                  std::size_t count, std::uint64_t seed) {
  std::vector<UserId> ids(graph.ids().begin(), graph.ids().end());
  if (count < ids.size()) {
    // Partial Fisher-Yates.
    Rng rng(seed, Stream::kSampling);
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(ids[i], ids[i + rng.Below(ids.size() - i)]);
    }
    ids.resize(count);
    std::sort(ids.begin(), ids.end());
  }
  return ids;
}

std::vector<double> DefaultGammaGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

}  // namespace riskprop
