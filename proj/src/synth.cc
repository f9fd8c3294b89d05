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

#include "riskprop/synth.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace riskprop {
namespace {

std::uint64_t EdgeKey(UserId a, UserId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

absl::StatusOr<GraphKind> ParseGraphKind(std::string_view name) {
  if (name == "rgg") return GraphKind::kRgg;
  if (name == "csfg") return GraphKind::kCsfg;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown graph kind '", std::string(name),
                   "' (expected rgg or csfg)"));
}

std::string_view GraphKindName(GraphKind kind) {
  return kind == GraphKind::kRgg ? "rgg" : "csfg";
}

double RggRadius(std::size_t n) {
  return std::min(1.0,
                  std::pow(0.25, std::log10(static_cast<double>(n)) - 1.0));
}

std::vector<Edge> GenRgg(std::size_t n, std::uint64_t seed) {
  const double r = RggRadius(n);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, Stream::kPoints, i);
    xs[i] = rng.Uniform01();
    ys[i] = rng.Uniform01();
  }
  // Bucket points into cells of side >= r so that only adjacent cells need
  // to be compared.
  const std::size_t side =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1.0 / r)));
  auto cell_of = [&](double v) {
    return std::min(side - 1, static_cast<std::size_t>(v * side));
  };
  std::vector<std::vector<UserId>> cells(side * side);
  for (std::size_t i = 0; i < n; ++i) {
    cells[cell_of(ys[i]) * side + cell_of(xs[i])].push_back(
        static_cast<UserId>(i));
  }
  const double r2 = r * r;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cx = cell_of(xs[i]), cy = cell_of(ys[i]);
    for (std::size_t y = cy == 0 ? 0 : cy - 1; y <= std::min(side - 1, cy + 1);
         ++y) {
      for (std::size_t x = cx == 0 ? 0 : cx - 1;
           x <= std::min(side - 1, cx + 1); ++x) {
        for (UserId j : cells[y * side + x]) {
          if (j <= i) continue;
          const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
          if (dx * dx + dy * dy <= r2) {
            edges.push_back({static_cast<UserId>(i), j});
          }
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<Edge> GenCsfg(std::size_t n, std::size_t m, double p_triad,
                          std::uint64_t seed) {
  assert(m >= 1 && n > m);
  Rng rng(seed, Stream::kPowerlawCluster);
  std::vector<std::vector<UserId>> adj(n);
  std::unordered_set<std::uint64_t> present;
  // Each user appears once per incident edge: uniform draws from this list
  // are degree-proportional.
  std::vector<UserId> endpoints;
  std::vector<Edge> edges;
  auto add = [&](UserId a, UserId b) {
    present.insert(EdgeKey(a, b));
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
    edges.push_back({std::min(a, b), std::max(a, b)});
  };
  auto has = [&](UserId a, UserId b) {
    return present.contains(EdgeKey(a, b));
  };

  for (UserId a = 0; a < m; ++a) {
    for (UserId b = a + 1; b < m; ++b) add(a, b);
  }
  for (UserId source = static_cast<UserId>(m); source < n; ++source) {
    auto preferential = [&]() -> UserId {
      if (endpoints.empty()) {
        // Only possible for m == 1 before any edge exists.
        return static_cast<UserId>(rng.Below(source));
      }
      for (;;) {
        UserId t = endpoints[rng.Below(endpoints.size())];
        if (t != source && !has(source, t)) return t;
      }
    };
    UserId target = preferential();
    add(source, target);
    for (std::size_t count = 1; count < m; ++count) {
      if (rng.Bernoulli(p_triad)) {
        std::vector<UserId> candidates;
        for (UserId nb : adj[target]) {
          if (nb != source && !has(source, nb)) candidates.push_back(nb);
        }
        if (!candidates.empty()) {
          std::sort(candidates.begin(), candidates.end());
          UserId pick = candidates[rng.Below(candidates.size())];
          add(source, pick);
          continue;
        }
      }
      target = preferential();
      add(source, target);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

double SampleMagnitude(Rng& rng, bool high_risk) {
  return high_risk ? rng.Uniform(0.5, 1.0) : rng.Uniform(0.0, 0.5);
}

SynthScores GenScores(std::size_t n, double p_high, int days, Timestamp now,
                      std::uint64_t seed) {
  SynthScores out;
  out.offsets.resize(n);
  out.high_risk.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    Rng rng(seed, Stream::kScores, u);
    const bool high = rng.Bernoulli(p_high);
    const Timestamp offset = static_cast<Timestamp>(rng.Below(kSecondsPerDay));
    std::vector<RiskScore> scores;
    scores.reserve(days + 1);
    for (int d = 0; d <= days; ++d) {
      scores.push_back(
          {SampleMagnitude(rng, high), now + offset - d * kSecondsPerDay});
    }
    out.offsets[u] = offset;
    out.high_risk[u] = high;
    out.scores.emplace(static_cast<UserId>(u), std::move(scores));
  }
  return out;
}

std::vector<Contact> GenContactTimes(std::span<const Edge> edges,
                                     std::span<const Timestamp> offsets,
                                     int days, Timestamp now,
                                     std::uint64_t seed) {
  std::vector<Contact> contacts;
  contacts.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Rng rng(seed, Stream::kContactTimes, i);
    const Edge& e = edges[i];
    const auto d = static_cast<Timestamp>(rng.Below(days + 1));
    contacts.push_back(
        {e.a, e.b, now + offsets[std::min(e.a, e.b)] - d * kSecondsPerDay});
  }
  return contacts;
}

absl::StatusOr<SynthDataset> Generate(const SynthConfig& config) {
  if (config.users < 2) {
    return absl::InvalidArgumentError("at least 2 users are required");
  }
  if (!(config.p_high >= 0.0 && config.p_high <= 1.0)) {
    return absl::InvalidArgumentError("p_high must be in [0, 1]");
  }
  if (config.days < 0) {
    return absl::InvalidArgumentError("days must be non-negative");
  }
  std::vector<Edge> edges;
  if (config.graph == GraphKind::kRgg) {
    edges = GenRgg(config.users, config.seed);
  } else {
    if (config.csfg_edges < 1 || config.users <= config.csfg_edges) {
      return absl::InvalidArgumentError(
          "powerlaw-cluster graphs need users > edges per user >= 1");
    }
    edges = GenCsfg(config.users, config.csfg_edges, config.csfg_triad,
                    config.seed);
  }
  SynthScores scores = GenScores(config.users, config.p_high, config.days,
                                 config.now, config.seed);
  SynthDataset out;
  out.contacts = GenContactTimes(edges, scores.offsets, config.days,
                                 config.now, config.seed);
  // Isolated users carry no contacts; their scores are dropped with them.
  std::vector<char> connected(config.users, 0);
  for (const Edge& e : edges) connected[e.a] = connected[e.b] = 1;
  for (auto& [user, list] : scores.scores) {
    if (connected[user]) out.scores.emplace(user, std::move(list));
  }
  return out;
}

}  // namespace riskprop
