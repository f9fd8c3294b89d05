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

#include "riskprop/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "riskprop/random.h"
#include "riskprop/synth.h"

namespace riskprop {
namespace {

std::string FormatReal(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

template <typename T>
bool ParseNumber(absl::string_view text, T& out) {
  text = absl::StripAsciiWhitespace(text);
  if (text.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars rejects a leading '+', which some writers emit.
    if (text.front() == '+') text.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// Header-checked, comma-separated reader with line tracking for errors.
class CsvReader {
 public:
  CsvReader(std::istream& in, absl::string_view kind)
      : in_(in), kind_(kind) {}

  absl::Status ReadHeader(std::initializer_list<absl::string_view> columns) {
    columns_.assign(columns.begin(), columns.end());
    std::string line;
    if (!NextLine(line)) {
      return absl::InvalidArgumentError(
          absl::StrCat(kind_, " CSV is empty; expected header ",
                       absl::StrJoin(columns_, ",")));
    }
    std::vector<absl::string_view> found = Split(line);
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i >= found.size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            kind_, " CSV header is missing column '", columns_[i], "'"));
      }
      if (found[i] != columns_[i]) {
        return absl::InvalidArgumentError(
            absl::StrCat(kind_, " CSV header: expected column '", columns_[i],
                         "' at position ", i + 1, ", found '", found[i], "'"));
      }
    }
    if (found.size() > columns_.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat(kind_, " CSV header has unexpected column '",
                       found[columns_.size()], "'"));
    }
    return absl::OkStatus();
  }

  // Returns false at end of input. Blank lines are skipped.
  bool Next(std::vector<absl::string_view>& fields) {
    if (!NextLine(current_)) return false;
    fields = Split(current_);
    return true;
  }

  absl::Status FieldCount(const std::vector<absl::string_view>& fields) const {
    if (fields.size() != columns_.size()) {
      return Error(absl::StrCat("expected ", columns_.size(), " fields, got ",
                                fields.size()));
    }
    return absl::OkStatus();
  }

  template <typename T>
  absl::Status Parse(const std::vector<absl::string_view>& fields,
                     std::size_t column, T& out) const {
    if (!ParseNumber(fields[column], out)) {
      return Error(absl::StrCat("invalid value '", fields[column],
                                "' in column '", columns_[column], "'"));
    }
    return absl::OkStatus();
  }

  absl::Status Error(absl::string_view message) const {
    return absl::InvalidArgumentError(
        absl::StrCat(kind_, " CSV line ", line_, ": ", message));
  }

 private:
  bool NextLine(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (absl::StripAsciiWhitespace(line).empty()) continue;
      return true;
    }
    return false;
  }

  static std::vector<absl::string_view> Split(absl::string_view line) {
    std::vector<absl::string_view> out = absl::StrSplit(line, ',');
    for (auto& f : out) f = absl::StripAsciiWhitespace(f);
    return out;
  }

  std::istream& in_;
  absl::string_view kind_;
  std::vector<absl::string_view> columns_;
  std::string current_;
  std::size_t line_ = 0;
};

absl::Status CheckUserId(const CsvReader& reader, std::int64_t raw,
                         absl::string_view column) {
  if (raw < 0 || raw > static_cast<std::int64_t>(UINT32_MAX)) {
    return reader.Error(
        absl::StrCat("column '", column, "' out of range: ", raw));
  }
  return absl::OkStatus();
}

absl::Status OpenError(absl::string_view path) {
  return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
}

template <typename Fn>
auto WithInput(const std::string& path, Fn fn) -> decltype(fn(std::cin)) {
  std::ifstream in(path);
  if (!in) return OpenError(path);
  return fn(in);
}

template <typename Fn>
absl::Status WithOutput(const std::string& path, Fn fn) {
  std::ofstream out(path);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", path, "'"));
  }
  fn(out);
  out.close();
  if (!out) {
    return absl::DataLossError(absl::StrCat("error writing '", path, "'"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<Contact>> ReadContactsCsv(std::istream& in) {
  CsvReader reader(in, "contacts");
  if (auto s = reader.ReadHeader({"user_a", "user_b", "time"}); !s.ok()) {
    return s;
  }
  std::vector<Contact> contacts;
  std::vector<absl::string_view> f;
  while (reader.Next(f)) {
    if (auto s = reader.FieldCount(f); !s.ok()) return s;
    std::int64_t a, b;
    Timestamp t;
    if (auto s = reader.Parse(f, 0, a); !s.ok()) return s;
    if (auto s = reader.Parse(f, 1, b); !s.ok()) return s;
    if (auto s = reader.Parse(f, 2, t); !s.ok()) return s;
    if (auto s = CheckUserId(reader, a, "user_a"); !s.ok()) return s;
    if (auto s = CheckUserId(reader, b, "user_b"); !s.ok()) return s;
    contacts.push_back(
        {static_cast<UserId>(a), static_cast<UserId>(b), t});
  }
  return contacts;
}

void WriteContactsCsv(std::ostream& out, std::span<const Contact> contacts) {
  out << "user_a,user_b,time\n";
  for (const Contact& c : contacts) {
    out << c.user_a << ',' << c.user_b << ',' << c.time << '\n';
  }
}

absl::StatusOr<ScoreSet> ReadScoresCsv(std::istream& in) {
  CsvReader reader(in, "scores");
  if (auto s = reader.ReadHeader({"user", "magnitude", "time"}); !s.ok()) {
    return s;
  }
  ScoreSet scores;
  std::vector<absl::string_view> f;
  while (reader.Next(f)) {
    if (auto s = reader.FieldCount(f); !s.ok()) return s;
    std::int64_t user;
    RiskScore score;
    if (auto s = reader.Parse(f, 0, user); !s.ok()) return s;
    if (auto s = reader.Parse(f, 1, score.magnitude); !s.ok()) return s;
    if (auto s = reader.Parse(f, 2, score.time); !s.ok()) return s;
    if (auto s = CheckUserId(reader, user, "user"); !s.ok()) return s;
    if (!(score.magnitude >= 0.0 && score.magnitude <= 1.0)) {
      return reader.Error(absl::StrCat("column 'magnitude' out of range [0, 1]: ",
                                       f[1]));
    }
    if (score.time < 0) {
      return reader.Error(
          absl::StrCat("column 'time' must be non-negative: ", f[2]));
    }
    scores[static_cast<UserId>(user)].push_back(score);
  }
  return scores;
}

void WriteScoresCsv(std::ostream& out, const ScoreSet& scores) {
  out << "user,magnitude,time\n";
  for (const auto& [user, list] : scores) {
    for (const RiskScore& s : list) {
      out << user << ',' << FormatReal(s.magnitude) << ',' << s.time << '\n';
    }
  }
}

absl::StatusOr<std::map<UserId, RiskScore>> ReadExposuresCsv(
    std::istream& in) {
  CsvReader reader(in, "exposures");
  if (auto s = reader.ReadHeader(
          {"user_id", "exposure_magnitude", "timestamp"});
      !s.ok()) {
    return s;
  }
  std::map<UserId, RiskScore> exposures;
  std::vector<absl::string_view> f;
  while (reader.Next(f)) {
    if (auto s = reader.FieldCount(f); !s.ok()) return s;
    std::int64_t user;
    RiskScore score;
    if (auto s = reader.Parse(f, 0, user); !s.ok()) return s;
    if (auto s = reader.Parse(f, 1, score.magnitude); !s.ok()) return s;
    if (auto s = reader.Parse(f, 2, score.time); !s.ok()) return s;
    if (auto s = CheckUserId(reader, user, "user_id"); !s.ok()) return s;
    if (!(score.magnitude >= 0.0 && score.magnitude <= 1.0)) {
      return reader.Error(absl::StrCat(
          "column 'exposure_magnitude' out of range [0, 1]: ", f[1]));
    }
    if (!exposures.emplace(static_cast<UserId>(user), score).second) {
      return reader.Error(absl::StrCat("duplicate user_id ", user));
    }
  }
  return exposures;
}

void WriteExposuresCsv(std::ostream& out,
                       const std::map<UserId, RiskScore>& exposures) {
  out << "user_id,exposure_magnitude,timestamp\n";
  for (const auto& [user, s] : exposures) {
    out << user << ',' << FormatReal(s.magnitude) << ',' << s.time << '\n';
  }
}

absl::StatusOr<std::map<UserId, std::uint32_t>> ReadPartitionCsv(
    std::istream& in) {
  CsvReader reader(in, "partition");
  if (auto s = reader.ReadHeader({"user_id", "actor_index"}); !s.ok()) {
    return s;
  }
  std::map<UserId, std::uint32_t> users;
  std::vector<absl::string_view> f;
  while (reader.Next(f)) {
    if (auto s = reader.FieldCount(f); !s.ok()) return s;
    std::int64_t user, actor;
    if (auto s = reader.Parse(f, 0, user); !s.ok()) return s;
    if (auto s = reader.Parse(f, 1, actor); !s.ok()) return s;
    if (auto s = CheckUserId(reader, user, "user_id"); !s.ok()) return s;
    if (auto s = CheckUserId(reader, actor, "actor_index"); !s.ok()) return s;
    if (!users.emplace(static_cast<UserId>(user),
                       static_cast<std::uint32_t>(actor))
             .second) {
      return reader.Error(absl::StrCat("duplicate user_id ", user));
    }
  }
  return users;
}

void WritePartitionCsv(std::ostream& out, const TemporalGraph& graph,
                       const Partition& partition) {
  out << "user_id,actor_index\n";
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    out << graph.id(u) << ',' << partition.assignment[u] << '\n';
  }
}

absl::StatusOr<std::vector<std::uint32_t>> AssignmentForGraph(
    const TemporalGraph& graph, const std::map<UserId, std::uint32_t>& users) {
  std::vector<std::uint32_t> assignment(graph.user_count());
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    auto it = users.find(graph.id(u));
    if (it == users.end()) {
      return absl::NotFoundError(absl::StrCat(
          "user ", graph.id(u), " has no entry in the partition file"));
    }
    assignment[u] = it->second;
  }
  return assignment;
}

nlohmann::json MetricsToJson(const RunMetrics& metrics) {
  nlohmann::json actors = nlohmann::json::array();
  for (std::size_t k = 0; k < metrics.actors.size(); ++k) {
    const ActorMetrics& a = metrics.actors[k];
    actors.push_back({{"actor", k},
                      {"updates", a.updates},
                      {"messages_sent", a.messages_sent},
                      {"messages_received", a.messages_received},
                      {"wall_runtime_seconds", a.wall_runtime_seconds}});
  }
  return {{"updates", metrics.updates},
          {"messages_sent", metrics.messages_sent},
          {"messages_received", metrics.messages_received},
          {"wall_runtime_seconds", metrics.wall_runtime_seconds},
          {"actors", std::move(actors)}};
}

absl::StatusOr<RunMetrics> MetricsFromJson(const nlohmann::json& json) {
  auto field = [](const nlohmann::json& obj, const char* key,
                  auto& out) -> absl::Status {
    if (!obj.is_object() || !obj.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("metrics JSON is missing key '", key, "'"));
    }
    try {
      obj.at(key).get_to(out);
    } catch (const nlohmann::json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("metrics JSON key '", key, "': ", e.what()));
    }
    return absl::OkStatus();
  };
  RunMetrics m;
  for (auto s : {field(json, "updates", m.updates),
                 field(json, "messages_sent", m.messages_sent),
                 field(json, "messages_received", m.messages_received),
                 field(json, "wall_runtime_seconds", m.wall_runtime_seconds)}) {
    if (!s.ok()) return s;
  }
  if (!json.contains("actors") || !json["actors"].is_array()) {
    return absl::InvalidArgumentError(
        "metrics JSON is missing array 'actors'");
  }
  for (const auto& a : json["actors"]) {
    ActorMetrics am;
    for (auto s : {field(a, "updates", am.updates),
                   field(a, "messages_sent", am.messages_sent),
                   field(a, "messages_received", am.messages_received),
                   field(a, "wall_runtime_seconds", am.wall_runtime_seconds)}) {
      if (!s.ok()) return s;
    }
    m.actors.push_back(am);
  }
  return m;
}

absl::StatusOr<IngestResult> IngestSocioPatterns(std::istream& in,
                                                 Timestamp now) {
  struct Row {
    Timestamp t;
    std::int64_t i, j;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  IngestResult result;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t\r,"), absl::SkipEmpty());
    if (fields.empty()) continue;
    Row row;
    if (fields.size() < 3 || !ParseNumber(fields[0], row.t) ||
        !ParseNumber(fields[1], row.i) || !ParseNumber(fields[2], row.j)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "SocioPatterns line ", line_no, ": expected 't i j', got '",
          absl::StripAsciiWhitespace(line), "'"));
    }
    ++result.rows;
    if (row.i == row.j) {
      ++result.self_loops;
      continue;
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    return absl::InvalidArgumentError("SocioPatterns input has no contacts");
  }

  std::vector<std::int64_t> ids;
  ids.reserve(2 * rows.size());
  for (const Row& r : rows) {
    ids.push_back(r.i);
    ids.push_back(r.j);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::int64_t raw) {
    return static_cast<UserId>(
        std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
  };

  std::map<std::pair<UserId, UserId>, Timestamp> latest;
  for (const Row& r : rows) {
    UserId a = dense(r.i), b = dense(r.j);
    if (a > b) std::swap(a, b);
    auto [it, inserted] = latest.emplace(std::make_pair(a, b), r.t);
    if (!inserted) it->second = std::max(it->second, r.t);
  }
  result.contacts.reserve(latest.size());
  for (const auto& [pair, t] : latest) {
    result.contacts.push_back({pair.first, pair.second, t + now});
  }
  result.raw_ids = std::move(ids);
  return result;
}

ScoreSet GenRealWorldScores(std::size_t users, Timestamp now,
                            std::uint64_t seed, double p_high) {
  ScoreSet scores;
  for (std::size_t u = 0; u < users; ++u) {
    Rng rng(seed, Stream::kScores, u);
    const bool high = rng.Bernoulli(p_high);
    scores[static_cast<UserId>(u)] = {
        {SampleMagnitude(rng, high), now - kSecondsPerDay}};
  }
  return scores;
}

absl::StatusOr<std::vector<Contact>> ReadContactsFile(const std::string& path) {
  return WithInput(path, [](std::istream& in) { return ReadContactsCsv(in); });
}

absl::Status WriteContactsFile(const std::string& path,
                               std::span<const Contact> contacts) {
  return WithOutput(path,
                    [&](std::ostream& out) { WriteContactsCsv(out, contacts); });
}

absl::StatusOr<ScoreSet> ReadScoresFile(const std::string& path) {
  return WithInput(path, [](std::istream& in) { return ReadScoresCsv(in); });
}

absl::Status WriteScoresFile(const std::string& path, const ScoreSet& scores) {
  return WithOutput(path,
                    [&](std::ostream& out) { WriteScoresCsv(out, scores); });
}

absl::Status WriteExposuresFile(const std::string& path,
                                const std::map<UserId, RiskScore>& exposures) {
  return WithOutput(
      path, [&](std::ostream& out) { WriteExposuresCsv(out, exposures); });
}

absl::StatusOr<std::map<UserId, std::uint32_t>> ReadPartitionFile(
    const std::string& path) {
  return WithInput(path, [](std::istream& in) { return ReadPartitionCsv(in); });
}

absl::Status WritePartitionFile(const std::string& path,
                                const TemporalGraph& graph,
                                const Partition& partition) {
  return WithOutput(path, [&](std::ostream& out) {
    WritePartitionCsv(out, graph, partition);
  });
}

absl::Status WriteJsonFile(const std::string& path,
                           const nlohmann::json& json) {
  return WithOutput(path,
                    [&](std::ostream& out) { out << json.dump(2) << '\n'; });
}

absl::StatusOr<IngestResult> IngestSocioPatternsFile(const std::string& path,
                                                     Timestamp now) {
  return WithInput(
      path, [&](std::istream& in) { return IngestSocioPatterns(in, now); });
}

}  // namespace riskprop
