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

#include "riskprop/experiments.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/status/status.h"

namespace riskprop {

std::uint32_t ActorsForUsers(std::size_t users) {
  return users < 1000 ? 1 : 2;
}

StopCriteria StopSettings::Resolve(std::size_t users,
                                   std::uint32_t actors) const {
  StopCriteria stop;
  if (max_duration_seconds > 0) stop.max_duration_seconds = max_duration_seconds;
  if (early_stop_factor > 0) {
    stop.early_stop_messages = static_cast<std::uint64_t>(
        std::ceil(early_stop_factor * static_cast<double>(users)));
  }
  stop.timeout_seconds = actors == 1 ? 0.0 : timeout_seconds;
  return stop;
}

StopCriteria DefaultStopCriteria(std::size_t users, std::uint32_t actors) {
  return StopSettings{}.Resolve(users, actors);
}

absl::StatusOr<RunResult> RunExperiment(std::span<const Contact> contacts,
                                        const ScoreSet& scores,
                                        const ExperimentSettings& settings) {
  // K(n) and M depend on the graph's user count, which is only known after
  // isolated users are dropped; count contact endpoints instead.
  std::vector<UserId> users;
  users.reserve(2 * contacts.size());
  for (const Contact& c : contacts) {
    if (c.user_a == c.user_b) continue;
    users.push_back(c.user_a);
    users.push_back(c.user_b);
  }
  std::sort(users.begin(), users.end());
  const std::size_t n =
      std::unique(users.begin(), users.end()) - users.begin();

  RunOptions options;
  options.actors = settings.actors.value_or(ActorsForUsers(n));
  options.partitioner = settings.partitioner;
  options.config = settings.config;
  options.stop = settings.stop.Resolve(n, options.actors);
  options.forward_duplicates = settings.forward_duplicates;
  options.now = settings.now;
  options.seed = settings.seed;
  return Run(contacts, scores, options);
}

absl::StatusOr<std::vector<EfficiencyCell>> EfficiencySweep(
    std::span<const Contact> contacts, const ScoreSet& scores,
    std::span<const double> gammas, std::span<const double> alphas,
    const ExperimentSettings& settings) {
  if (gammas.empty() || alphas.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one gamma and alpha");
  }
  std::vector<EfficiencyCell> cells;
  for (double gamma : gammas) {
    for (double alpha : alphas) {
      ExperimentSettings cell_settings = settings;
      cell_settings.config.gamma = gamma;
      cell_settings.config.alpha = alpha;
      absl::StatusOr<RunResult> run =
          RunExperiment(contacts, scores, cell_settings);
      if (!run.ok()) return run.status();
      EfficiencyCell cell;
      cell.gamma = gamma;
      cell.alpha = alpha;
      cell.updates = run->metrics.updates;
      cell.messages = run->metrics.messages_sent;
      cell.runtime_seconds = run->metrics.wall_runtime_seconds;
      cells.push_back(cell);
    }
  }
  struct Max {
    double updates = 0, messages = 0, runtime = 0;
  };
  std::map<double, Max> by_alpha;
  for (const EfficiencyCell& c : cells) {
    Max& m = by_alpha[c.alpha];
    m.updates = std::max(m.updates, static_cast<double>(c.updates));
    m.messages = std::max(m.messages, static_cast<double>(c.messages));
    m.runtime = std::max(m.runtime, c.runtime_seconds);
  }
  auto ratio = [](double v, double max) { return max > 0 ? v / max : 0.0; };
  for (EfficiencyCell& c : cells) {
    const Max& m = by_alpha[c.alpha];
    c.normalized_updates = ratio(static_cast<double>(c.updates), m.updates);
    c.normalized_messages = ratio(static_cast<double>(c.messages), m.messages);
    c.normalized_runtime = ratio(c.runtime_seconds, m.runtime);
  }
  return cells;
}

void WriteEfficiencyCsv(std::ostream& out,
                        std::span<const EfficiencyCell> cells) {
  out << "gamma,alpha,updates,messages,runtime_seconds,normalized_updates,"
         "normalized_messages,normalized_runtime\n";
  for (const EfficiencyCell& c : cells) {
    out << c.gamma << ',' << c.alpha << ',' << c.updates << ',' << c.messages
        << ',' << c.runtime_seconds << ',' << c.normalized_updates << ','
        << c.normalized_messages << ',' << c.normalized_runtime << '\n';
  }
}

absl::StatusOr<std::vector<BenchRow>> RunBench(
    const BenchSpec& spec, const std::function<void(const BenchRow&)>& on_row) {
  if (spec.step == 0 || spec.users_from < 2 ||
      spec.users_to < spec.users_from || spec.reps < 1) {
    return absl::InvalidArgumentError(
        "bench needs 2 <= users-from <= users-to, step >= 1 and reps >= 1");
  }
  std::vector<BenchRow> rows;
  for (std::size_t n = spec.users_from; n <= spec.users_to; n += spec.step) {
    for (int rep = 0; rep < spec.reps; ++rep) {
      SynthConfig synth;
      synth.users = n;
      synth.graph = spec.graph;
      synth.seed = spec.settings.seed + static_cast<std::uint64_t>(rep);
      synth.now = spec.settings.now;
      absl::StatusOr<SynthDataset> data = Generate(synth);
      if (!data.ok()) return data.status();
      ExperimentSettings settings = spec.settings;
      settings.seed = synth.seed;
      absl::StatusOr<RunResult> run =
          RunExperiment(data->contacts, data->scores, settings);
      if (!run.ok()) return run.status();
      BenchRow row;
      row.graph = spec.graph;
      row.requested_users = n;
      row.users = run->graph.user_count();
      row.rep = rep;
      row.seed = synth.seed;
      row.actors = run->partition.actor_count;
      row.contacts = run->graph.contact_count();
      row.runtime_seconds = run->metrics.wall_runtime_seconds;
      row.messages = run->metrics.messages_sent;
      row.updates = run->metrics.updates;
      rows.push_back(row);
      if (on_row) on_row(row);
    }
  }
  return rows;
}

void WriteBenchCsvHeader(std::ostream& out) {
  out << "graph,n,users,rep,seed,actors,contacts,runtime_seconds,messages,"
         "updates\n";
}

void WriteBenchCsvRow(std::ostream& out, const BenchRow& row) {
  out << GraphKindName(row.graph) << ',' << row.requested_users << ','
      << row.users
      << ',' << row.rep << ',' << row.seed << ',' << row.actors << ','
      << row.contacts << ',' << row.runtime_seconds << ',' << row.messages
      << ',' << row.updates << '\n';
}

}  // namespace riskprop
