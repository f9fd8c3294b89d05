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

// Experiment drivers shared by the CLI and the acceptance suite: the
// (gamma, alpha) efficiency sweep and the scalability benchmark.

#ifndef RISKPROP_EXPERIMENTS_H_
#define RISKPROP_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "riskprop/engine.h"
#include "riskprop/synth.h"

namespace riskprop {

// 1 actor below 1,000 users, 2 from there on.
std::uint32_t ActorsForUsers(std::size_t users);

// Stop criteria expressed relative to the graph size.
struct StopSettings {
  // D; 0 disables.
  double max_duration_seconds = 3600.0;
  // M = factor * users; 0 disables.
  double early_stop_factor = 10.0;
  // T; forced to 0 with a single actor.
  double timeout_seconds = 3.0;

  StopCriteria Resolve(std::size_t users, std::uint32_t actors) const;
};

// StopSettings{}.Resolve(users, actors): D = 1 hour, M = 10 * users,
// T = 3 s, or T = 0 with a single actor.
StopCriteria DefaultStopCriteria(std::size_t users, std::uint32_t actors);

struct ExperimentSettings {
  ActorConfig config;
  // Unset: ActorsForUsers.
  std::optional<std::uint32_t> actors;
  PartitionerKind partitioner = PartitionerKind::kBfsGrow;
  StopSettings stop;
  bool forward_duplicates = false;
  Timestamp now = kDefaultNow;
  std::uint64_t seed = 12345;
};

absl::StatusOr<RunResult> RunExperiment(std::span<const Contact> contacts,
                                        const ScoreSet& scores,
                                        const ExperimentSettings& settings);

struct EfficiencyCell {
  double gamma = 0.0;
  double alpha = 0.0;
  std::uint64_t updates = 0;
  std::uint64_t messages = 0;
  double runtime_seconds = 0.0;
  // Divided by the largest value over all gammas at the same alpha.
  double normalized_updates = 0.0;
  double normalized_messages = 0.0;
  double normalized_runtime = 0.0;
};

// One engine run per (gamma, alpha) on the same input.
absl::StatusOr<std::vector<EfficiencyCell>> EfficiencySweep(
    std::span<const Contact> contacts, const ScoreSet& scores,
    std::span<const double> gammas, std::span<const double> alphas,
    const ExperimentSettings& settings);

void WriteEfficiencyCsv(std::ostream& out,
                        std::span<const EfficiencyCell> cells);

struct BenchSpec {
  GraphKind graph = GraphKind::kRgg;
  std::size_t users_from = 100;
  std::size_t users_to = 1000;
  std::size_t step = 100;
  int reps = 1;
  ExperimentSettings settings;
};

struct BenchRow {
  GraphKind graph = GraphKind::kRgg;
  // Generated users, and those left once isolated users are dropped.
  std::size_t requested_users = 0;
  std::size_t users = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::uint32_t actors = 1;
  std::size_t contacts = 0;
  double runtime_seconds = 0.0;
  std::uint64_t messages = 0;
  std::uint64_t updates = 0;
};

// For every size in [users_from, users_to] by `step`, `reps` freshly
// generated datasets (seed = settings.seed + rep) are run once each.
absl::StatusOr<std::vector<BenchRow>> RunBench(
    const BenchSpec& spec,
    const std::function<void(const BenchRow&)>& on_row = nullptr);

void WriteBenchCsvHeader(std::ostream& out);
void WriteBenchCsvRow(std::ostream& out, const BenchRow& row);

}  // namespace riskprop

#endif  // RISKPROP_EXPERIMENTS_H_
