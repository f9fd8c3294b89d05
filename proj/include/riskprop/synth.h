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

#ifndef RISKPROP_SYNTH_H_
#define RISKPROP_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "riskprop/graph.h"
#include "riskprop/random.h"

namespace riskprop {

// Undirected edge with a < b.
struct Edge {
  UserId a = 0;
  UserId b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphKind { kRgg, kCsfg };

absl::StatusOr<GraphKind> ParseGraphKind(std::string_view name);
std::string_view GraphKindName(GraphKind kind);

// min(1, 0.25^(log10(n) - 1))
double RggRadius(std::size_t n);

// Random geometric graph on users 0..n-1: points uniform in the unit square,
// an edge whenever two points are within RggRadius(n). Sorted edges.
std::vector<Edge> GenRgg(std::size_t n, std::uint64_t seed);

// Powerlaw-cluster (Holme-Kim) graph on users 0..n-1. Starts from a clique on
// the first `m` users; every later user adds `m` edges, each after the first
// closing a triangle with probability `p_triad` and otherwise attaching
// preferentially by degree. Sorted edges. Requires n > m >= 1.
std::vector<Edge> GenCsfg(std::size_t n, std::size_t m, double p_triad,
                          std::uint64_t seed);

// Magnitude in [0.5, 1) for high-risk users, [0, 0.5) otherwise.
double SampleMagnitude(Rng& rng, bool high_risk);

struct SynthScores {
  ScoreSet scores;
  // Per-user time offset in [0, 86400) seconds, indexed by UserId.
  std::vector<Timestamp> offsets;
  std::vector<bool> high_risk;
};

// For users 0..n-1: high risk with probability p_high; days + 1 magnitudes
// at times now + offset - d days for d in 0..days.
SynthScores GenScores(std::size_t n, double p_high, int days, Timestamp now,
                      std::uint64_t seed);

// One contact per edge at now + offset(a) - d days with d uniform in
// 0..days, where a is the lower endpoint.
std::vector<Contact> GenContactTimes(std::span<const Edge> edges,
                                     std::span<const Timestamp> offsets,
                                     int days, Timestamp now,
                                     std::uint64_t seed);

struct SynthConfig {
  std::size_t users = 1000;
  GraphKind graph = GraphKind::kRgg;
  double p_high = 0.2;
  int days = 14;
  std::uint64_t seed = 12345;
  Timestamp now = kDefaultNow;
  // Powerlaw-cluster parameters.
  std::size_t csfg_edges = 2;
  double csfg_triad = 0.95;
};

struct SynthDataset {
  std::vector<Contact> contacts;
  ScoreSet scores;
};

absl::StatusOr<SynthDataset> Generate(const SynthConfig& config);

}  // namespace riskprop

#endif  // RISKPROP_SYNTH_H_
