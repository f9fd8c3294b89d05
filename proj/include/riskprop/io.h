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

// File formats. All CSVs carry a mandatory header row, integers are base 10
// and times are seconds since the epoch:
//
//   contacts    user_a,user_b,time
//   scores      user,magnitude,time
//   exposures   user_id,exposure_magnitude,timestamp
//   partition   user_id,actor_index
//
// Reals are written in shortest round-trip form, so write-then-read is exact.

#ifndef RISKPROP_IO_H_
#define RISKPROP_IO_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "riskprop/engine.h"
#include "riskprop/graph.h"
#include "riskprop/partition.h"

namespace riskprop {

absl::StatusOr<std::vector<Contact>> ReadContactsCsv(std::istream& in);
void WriteContactsCsv(std::ostream& out, std::span<const Contact> contacts);

// Magnitudes outside [0, 1] and negative times are rejected.
absl::StatusOr<ScoreSet> ReadScoresCsv(std::istream& in);
void WriteScoresCsv(std::ostream& out, const ScoreSet& scores);

absl::StatusOr<std::map<UserId, RiskScore>> ReadExposuresCsv(std::istream& in);
void WriteExposuresCsv(std::ostream& out,
                       const std::map<UserId, RiskScore>& exposures);

// user_id -> actor_index.
absl::StatusOr<std::map<UserId, std::uint32_t>> ReadPartitionCsv(
    std::istream& in);
void WritePartitionCsv(std::ostream& out, const TemporalGraph& graph,
                       const Partition& partition);

// Converts an imported user -> actor map into a graph-indexed assignment.
// Every graph user must be present.
absl::StatusOr<std::vector<std::uint32_t>> AssignmentForGraph(
    const TemporalGraph& graph, const std::map<UserId, std::uint32_t>& users);

// {updates, messages_sent, messages_received, wall_runtime_seconds,
//  actors: [{actor, updates, messages_sent, messages_received,
//            wall_runtime_seconds}, ...]}
nlohmann::json MetricsToJson(const RunMetrics& metrics);
absl::StatusOr<RunMetrics> MetricsFromJson(const nlohmann::json& json);

struct IngestResult {
  std::vector<Contact> contacts;
  // raw_ids[user] is the participant id used in the source file.
  std::vector<std::int64_t> raw_ids;
  std::size_t rows = 0;
  std::size_t self_loops = 0;
};

// Reads SocioPatterns contact lists: whitespace-separated rows `t i j [...]`
// where each row is one 20-second interval of proximity. Raw ids are mapped
// to 0..|U|-1 in ascending order, each unordered pair keeps its latest
// interval, and times are shifted forward by `now`.
absl::StatusOr<IngestResult> IngestSocioPatterns(std::istream& in,
                                                 Timestamp now);

// One score per user at now - 1 day, with the high/low risk magnitude scheme
// of the synthetic generator.
ScoreSet GenRealWorldScores(std::size_t users, Timestamp now,
                            std::uint64_t seed, double p_high = 0.2);

// Path wrappers over the stream functions above.
absl::StatusOr<std::vector<Contact>> ReadContactsFile(const std::string& path);
absl::Status WriteContactsFile(const std::string& path,
                               std::span<const Contact> contacts);
absl::StatusOr<ScoreSet> ReadScoresFile(const std::string& path);
absl::Status WriteScoresFile(const std::string& path, const ScoreSet& scores);
absl::Status WriteExposuresFile(const std::string& path,
                                const std::map<UserId, RiskScore>& exposures);
absl::StatusOr<std::map<UserId, std::uint32_t>> ReadPartitionFile(
    const std::string& path);
absl::Status WritePartitionFile(const std::string& path,
                                const TemporalGraph& graph,
                                const Partition& partition);
absl::Status WriteJsonFile(const std::string& path, const nlohmann::json& json);
absl::StatusOr<IngestResult> IngestSocioPatternsFile(const std::string& path,
                                                     Timestamp now);

}  // namespace riskprop

#endif  // RISKPROP_IO_H_
