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

// Command-line driver: dataset generation and ingestion, propagation runs,
// reachability tables and the scalability benchmark. Every table is written
// as CSV so figures can be redrawn with any plotting tool.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "riskprop/engine.h"
#include "riskprop/experiments.h"
#include "riskprop/graph.h"
#include "riskprop/io.h"
#include "riskprop/partition.h"
#include "riskprop/reachability.h"
#include "riskprop/synth.h"

namespace riskprop {
namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct CommonFlags {
  std::uint64_t seed = kDefaultSeed;
  Timestamp now = kDefaultNow;
};

struct InputFlags {
  std::string contacts;
  std::string scores;
  std::optional<double> contact_horizon_days;
};

struct EngineFlags {
  ActorConfig config;
  std::string actors = "auto";
  std::string partitioner = "bfs";
  double imbalance = 0.2;
  StopSettings stop;
  bool forward_duplicates = false;
};

// Output goes to `path`, or to stdout when it is "-".
class Output {
 public:
  absl::Status Open(const std::string& path) {
    if (path == "-") return absl::OkStatus();
    file_.open(path);
    if (!file_) {
      return absl::UnavailableError(absl::StrCat("cannot write ", path));
    }
    return absl::OkStatus();
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  absl::Status Close(const std::string& path) {
    if (!file_.is_open()) {
      std::cout.flush();
      return absl::OkStatus();
    }
    file_.close();
    if (!file_) {
      return absl::UnavailableError(absl::StrCat("error writing ", path));
    }
    return absl::OkStatus();
  }

 private:
  std::ofstream file_;
};

void AddActorConfigFlags(CLI::App* app, ActorConfig& c) {
  app->add_option("--alpha", c.alpha, "Transmission rate, in (0, 1)");
  app->add_option("--gamma", c.gamma, "Send tolerance, in [0, 1]");
  app->add_option("--tau", c.tau, "Time constant of the age weighting");
  app->add_option("--epsilon", c.epsilon, "Magnitude floor for logarithms");
  app->add_option("--buffer-days", c.buffer_days,
                  "Days a score may postdate a contact and still cross it");
  app->add_option("--horizon-days", c.horizon_days,
                  "Only scores from the last this many days are used");
}

void AddInputFlags(CLI::App* app, InputFlags& in) {
  app->add_option("--contacts", in.contacts, "Contacts CSV")->required();
  app->add_option("--scores", in.scores, "Scores CSV")->required();
  app->add_option("--contact-horizon-days", in.contact_horizon_days,
                  "Drop contacts older than this many days (default: keep)");
}

void AddEngineFlags(CLI::App* app, EngineFlags& e) {
  AddActorConfigFlags(app, e.config);
  app->add_option("--actors", e.actors,
                  "Actor count K, or auto: 1 below 1000 users, else 2");
  app->add_option("--partitioner", e.partitioner, "bfs or round-robin");
  app->add_option("--imbalance", e.imbalance,
                  "Allowed block overshoot for the bfs partitioner");
  app->add_option("--max-duration", e.stop.max_duration_seconds,
                  "D: per-actor wall time limit in seconds; 0 disables");
  app->add_option("--early-stop-factor", e.stop.early_stop_factor,
                  "M = factor * users non-updating messages; 0 disables");
  app->add_option("--timeout", e.stop.timeout_seconds,
                  "T: idle seconds before an actor stops; 0 with one actor");
  app->add_flag("--forward-duplicates", e.forward_duplicates,
                "Forward every received score, including repeats of scores "
                "a user has already passed on");
}

absl::StatusOr<std::optional<std::uint32_t>> ParseActors(
    const std::string& text) {
  if (text == "auto") return std::optional<std::uint32_t>();
  std::uint32_t k = 0;
  if (!absl::SimpleAtoi(text, &k) || k == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--actors must be 'auto' or a positive integer, got '", text, "'"));
  }
  return std::optional<std::uint32_t>(k);
}

absl::StatusOr<ExperimentSettings> SettingsFromFlags(const EngineFlags& e,
                                                     const CommonFlags& c) {
  ExperimentSettings s;
  s.config = e.config;
  if (absl::Status st = s.config.Validate(); !st.ok()) return st;
  absl::StatusOr<std::optional<std::uint32_t>> actors = ParseActors(e.actors);
  if (!actors.ok()) return actors.status();
  s.actors = *actors;
  absl::StatusOr<PartitionerKind> kind = ParsePartitionerKind(e.partitioner);
  if (!kind.ok()) return kind.status();
  s.partitioner = *kind;
  s.stop = e.stop;
  s.forward_duplicates = e.forward_duplicates;
  s.now = c.now;
  s.seed = c.seed;
  return s;
}

struct Inputs {
  std::vector<Contact> contacts;
  ScoreSet scores;
};

absl::StatusOr<Inputs> ReadInputs(const InputFlags& in) {
  Inputs out;
  absl::StatusOr<std::vector<Contact>> contacts = ReadContactsFile(in.contacts);
  if (!contacts.ok()) return contacts.status();
  out.contacts = *std::move(contacts);
  absl::StatusOr<ScoreSet> scores = ReadScoresFile(in.scores);
  if (!scores.ok()) return scores.status();
  out.scores = *std::move(scores);
  return out;
}

// Graph plus horizon-filtered scores, as the reachability tables need them.
struct ReachInputs {
  TemporalGraph graph;
  ScoreSet scores;
};

absl::StatusOr<ReachInputs> LoadReachInputs(const InputFlags& in,
                                            const ActorConfig& config,
                                            Timestamp now) {
  absl::StatusOr<Inputs> raw = ReadInputs(in);
  if (!raw.ok()) return raw.status();
  BuildOptions build;
  build.drop_older_than_days = in.contact_horizon_days;
  absl::StatusOr<TemporalGraph> graph = BuildGraph(raw->contacts, now, build);
  if (!graph.ok()) return graph.status();
  ReachInputs out;
  out.graph = *std::move(graph);
  out.scores = FilterScores(raw->scores, now, config.horizon_days).scores;
  return out;
}

absl::StatusOr<std::vector<UserId>> ChooseSources(
    const TemporalGraph& graph, const std::vector<UserId>& explicit_sources,
    std::size_t sample, std::uint64_t seed) {
  if (explicit_sources.empty()) return SampleSources(graph, sample, seed);
  for (UserId u : explicit_sources) {
    if (!graph.IndexOf(u)) {
      return absl::NotFoundError(
          absl::StrCat("source user ", u, " is not in the graph"));
    }
  }
  return explicit_sources;
}

// Shortest round-trip form; nan and inf spelled out.
void WriteReal(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
  } else if (std::isinf(v)) {
    out << (v > 0 ? "inf" : "-inf");
  } else {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, end - buf);
  }
}

// ---------------------------------------------------------------------------

absl::Status CmdGenerate(const SynthConfig& synth, const std::string& contacts,
                         const std::string& scores) {
  absl::StatusOr<SynthDataset> data = Generate(synth);
  if (!data.ok()) return data.status();
  if (absl::Status s = WriteContactsFile(contacts, data->contacts); !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteScoresFile(scores, data->scores); !s.ok()) {
    return s;
  }
  std::cerr << "generated " << data->scores.size() << " users, "
            << data->contacts.size() << " contacts\n";
  return absl::OkStatus();
}

absl::Status CmdIngest(const std::string& input, const CommonFlags& common,
                       double p_high, const std::string& contacts,
                       const std::string& scores, const std::string& id_map) {
  absl::StatusOr<IngestResult> ingested =
      IngestSocioPatternsFile(input, common.now);
  if (!ingested.ok()) return ingested.status();
  if (absl::Status s = WriteContactsFile(contacts, ingested->contacts);
      !s.ok()) {
    return s;
  }
  const std::size_t users = ingested->raw_ids.size();
  if (!scores.empty()) {
    ScoreSet generated =
        GenRealWorldScores(users, common.now, common.seed, p_high);
    if (absl::Status s = WriteScoresFile(scores, generated); !s.ok()) return s;
  }
  if (!id_map.empty()) {
    Output out;
    if (absl::Status s = out.Open(id_map); !s.ok()) return s;
    out.stream() << "user_id,raw_id\n";
    for (std::size_t u = 0; u < users; ++u) {
      out.stream() << u << ',' << ingested->raw_ids[u] << '\n';
    }
    if (absl::Status s = out.Close(id_map); !s.ok()) return s;
  }
  std::cerr << "ingested " << ingested->rows << " rows: " << users
            << " users, " << ingested->contacts.size() << " contacts\n";
  return absl::OkStatus();
}

absl::Status CmdRun(const InputFlags& in, const EngineFlags& engine,
                    const CommonFlags& common, const std::string& partition_in,
                    const std::string& partition_out,
                    const std::string& exposures, const std::string& metrics) {
  absl::StatusOr<ExperimentSettings> settings =
      SettingsFromFlags(engine, common);
  if (!settings.ok()) return settings.status();
  absl::StatusOr<Inputs> inputs = ReadInputs(in);
  if (!inputs.ok()) return inputs.status();

  BuildOptions build;
  build.drop_older_than_days = in.contact_horizon_days;
  absl::StatusOr<TemporalGraph> graph =
      BuildGraph(inputs->contacts, common.now, build);
  if (!graph.ok()) return graph.status();
  const std::size_t n = graph->user_count();

  RunOptions options;
  options.partitioner = settings->partitioner;
  options.imbalance = engine.imbalance;
  options.config = settings->config;
  options.now = common.now;
  options.seed = common.seed;
  options.contact_horizon_days = in.contact_horizon_days;
  if (!partition_in.empty()) {
    absl::StatusOr<std::map<UserId, std::uint32_t>> imported =
        ReadPartitionFile(partition_in);
    if (!imported.ok()) return imported.status();
    absl::StatusOr<std::vector<std::uint32_t>> assignment =
        AssignmentForGraph(*graph, *imported);
    if (!assignment.ok()) return assignment.status();
    std::uint32_t blocks = 0;
    for (std::uint32_t a : *assignment) blocks = std::max(blocks, a + 1);
    options.actors = settings->actors.value_or(blocks);
    options.assignment = *std::move(assignment);
  } else {
    options.actors = settings->actors.value_or(ActorsForUsers(n));
  }
  options.stop = settings->stop.Resolve(n, options.actors);
  options.forward_duplicates = settings->forward_duplicates;

  absl::StatusOr<RunResult> run = Run(inputs->contacts, inputs->scores, options);
  if (!run.ok()) return run.status();
  if (absl::Status s = WriteExposuresFile(exposures, run->exposures); !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteJsonFile(metrics, MetricsToJson(run->metrics));
      !s.ok()) {
    return s;
  }
  if (!partition_out.empty()) {
    if (absl::Status s =
            WritePartitionFile(partition_out, run->graph, run->partition);
        !s.ok()) {
      return s;
    }
  }
  std::cerr << "users=" << n << " contacts=" << run->graph.contact_count()
            << " actors=" << run->partition.actor_count
            << " cut=" << run->partition.cut_edges
            << " updates=" << run->metrics.updates
            << " messages=" << run->metrics.messages_sent
            << " runtime=" << run->metrics.wall_runtime_seconds << "s\n";
  if (!run->unconnected_scored_users.empty()) {
    std::cerr << run->unconnected_scored_users.size()
              << " scored users have no contacts and were ignored\n";
  }
  return absl::OkStatus();
}

absl::Status CmdReach(const InputFlags& in, const ActorConfig& config,
                      const CommonFlags& common,
                      const std::vector<UserId>& sources, std::size_t sample,
                      std::optional<double> init_v, const std::string& out) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  absl::StatusOr<ReachInputs> inputs = LoadReachInputs(in, config, common.now);
  if (!inputs.ok()) return inputs.status();
  absl::StatusOr<std::vector<UserId>> chosen =
      ChooseSources(inputs->graph, sources, sample, common.seed);
  if (!chosen.ok()) return chosen.status();
  const std::vector<RiskScore> inits =
      InitialMessages(inputs->graph, inputs->scores, config, common.now);

  Output output;
  if (absl::Status s = output.Open(out); !s.ok()) return s;
  std::ostream& os = output.stream();
  os << "source,init_magnitude,estimated,actual_depth,reached_set_size,ratio\n";
  for (UserId source : *chosen) {
    absl::StatusOr<ReachResult> r =
        ActualReachability(inputs->graph, source, inits, config, init_v);
    if (!r.ok()) return r.status();
    os << source << ',';
    WriteReal(os, inits[*inputs->graph.IndexOf(source)].magnitude);
    os << ',';
    WriteReal(os, r->estimated);
    os << ',' << r->actual_depth << ',' << r->reached_set_size << ',';
    WriteReal(os, r->ratio);
    os << '\n';
  }
  return output.Close(out);
}

absl::Status CmdSweep(const InputFlags& in, const EngineFlags& engine,
                      const CommonFlags& common, std::vector<double> gammas,
                      std::vector<double> alphas,
                      const std::vector<UserId>& sources, std::size_t sample,
                      std::optional<double> init_v, const std::string& out,
                      const std::string& quartiles_out,
                      const std::string& efficiency_out) {
  absl::StatusOr<ExperimentSettings> settings =
      SettingsFromFlags(engine, common);
  if (!settings.ok()) return settings.status();
  if (gammas.empty()) gammas = DefaultGammaGrid();
  if (alphas.empty()) alphas = DefaultAlphaGrid();
  absl::StatusOr<ReachInputs> inputs =
      LoadReachInputs(in, settings->config, common.now);
  if (!inputs.ok()) return inputs.status();
  absl::StatusOr<std::vector<UserId>> chosen =
      ChooseSources(inputs->graph, sources, sample, common.seed);
  if (!chosen.ok()) return chosen.status();

  absl::StatusOr<SweepResult> sweep =
      ReachabilitySweep(inputs->graph, inputs->scores, *chosen, gammas, alphas,
                        settings->config, common.now, init_v);
  if (!sweep.ok()) return sweep.status();
  {
    Output output;
    if (absl::Status s = output.Open(out); !s.ok()) return s;
    std::ostream& os = output.stream();
    os << "gamma,alpha,source,estimated,actual_depth,reached_set_size,ratio\n";
    for (const SweepRow& row : sweep->rows) {
      WriteReal(os, row.gamma);
      os << ',';
      WriteReal(os, row.alpha);
      os << ',' << row.source << ',';
      WriteReal(os, row.estimated);
      os << ',' << row.actual_depth << ',' << row.reached_set_size << ',';
      WriteReal(os, row.ratio);
      os << '\n';
    }
    if (absl::Status s = output.Close(out); !s.ok()) return s;
  }
  const Quartiles& q = sweep->ratio_quartiles;
  if (!quartiles_out.empty()) {
    Output output;
    if (absl::Status s = output.Open(quartiles_out); !s.ok()) return s;
    output.stream() << "q1,median,q3,count\n";
    WriteReal(output.stream(), q.q1);
    output.stream() << ',';
    WriteReal(output.stream(), q.q2);
    output.stream() << ',';
    WriteReal(output.stream(), q.q3);
    output.stream() << ',' << q.count << '\n';
    if (absl::Status s = output.Close(quartiles_out); !s.ok()) return s;
  }
  std::cerr << "ratio quartiles over " << q.count << " finite cells: " << q.q1
            << ' ' << q.q2 << ' ' << q.q3 << '\n';

  if (!efficiency_out.empty()) {
    absl::StatusOr<Inputs> raw = ReadInputs(in);
    if (!raw.ok()) return raw.status();
    absl::StatusOr<std::vector<EfficiencyCell>> cells =
        EfficiencySweep(raw->contacts, raw->scores, gammas, alphas, *settings);
    if (!cells.ok()) return cells.status();
    Output output;
    if (absl::Status s = output.Open(efficiency_out); !s.ok()) return s;
    WriteEfficiencyCsv(output.stream(), *cells);
    if (absl::Status s = output.Close(efficiency_out); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::Status CmdBench(BenchSpec spec, const std::string& graph_kind,
                      const EngineFlags& engine, const CommonFlags& common,
                      const std::string& out) {
  absl::StatusOr<GraphKind> kind = ParseGraphKind(graph_kind);
  if (!kind.ok()) return kind.status();
  spec.graph = *kind;
  absl::StatusOr<ExperimentSettings> settings =
      SettingsFromFlags(engine, common);
  if (!settings.ok()) return settings.status();
  spec.settings = *settings;
  Output output;
  if (absl::Status s = output.Open(out); !s.ok()) return s;
  WriteBenchCsvHeader(output.stream());
  absl::StatusOr<std::vector<BenchRow>> rows =
      RunBench(spec, [&](const BenchRow& row) {
        WriteBenchCsvRow(output.stream(), row);
        output.stream().flush();
      });
  if (!rows.ok()) return rows.status();
  return output.Close(out);
}

int Fail(const absl::Status& status) {
  std::cerr << "riskprop: error: " << status.message() << '\n';
  return 1;
}

int Main(int argc, char** argv) {
  CLI::App app{"Risk propagation over temporal contact graphs."};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  // Global flags are also accepted after the subcommand name.
  app.fallthrough();

  CommonFlags common;
  if (const char* env = std::getenv("RISKPROP_SEED"); env != nullptr) {
    if (!absl::SimpleAtoi(env, &common.seed)) {
      return Fail(absl::InvalidArgumentError(
          absl::StrCat("RISKPROP_SEED is not an unsigned integer: '", env,
                       "'")));
    }
  }
  app.add_option("--seed", common.seed,
                 "Random seed (default 12345, or $RISKPROP_SEED)");
  app.add_option("--t-now", common.now,
                 "Reference time t_now, seconds since the epoch");

  // generate
  CLI::App* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
  SynthConfig synth;
  std::string graph_kind = "rgg";
  std::string gen_contacts = "contacts.csv", gen_scores = "scores.csv";
  gen->add_option("--graph", graph_kind, "rgg or csfg");
  gen->add_option("--users", synth.users, "Number of users n");
  gen->add_option("--p-high", synth.p_high, "Probability a user is high risk");
  gen->add_option("--days", synth.days, "L: days of scores and contacts");
  gen->add_option("--csfg-edges", synth.csfg_edges,
                  "Edges added per user in csfg");
  gen->add_option("--csfg-triad", synth.csfg_triad,
                  "Triangle closing probability in csfg");
  gen->add_option("--contacts-out", gen_contacts, "Contacts CSV to write");
  gen->add_option("--scores-out", gen_scores, "Scores CSV to write");

  // ingest
  CLI::App* ingest =
      app.add_subcommand("ingest", "Convert a SocioPatterns contact list");
  std::string ingest_input, ingest_contacts = "contacts.csv",
                            ingest_scores = "scores.csv", ingest_map;
  double ingest_p_high = 0.2;
  ingest->add_option("input", ingest_input, "SocioPatterns file (t i j ...)")
      ->required();
  ingest->add_option("--contacts-out", ingest_contacts, "Contacts CSV to write");
  ingest->add_option("--scores-out", ingest_scores,
                     "Scores CSV to write, one score per user at t_now - 1 "
                     "day; empty skips");
  ingest->add_option("--id-map-out", ingest_map,
                     "user_id,raw_id CSV to write; empty skips");
  ingest->add_option("--p-high", ingest_p_high,
                     "Probability a user is high risk");

  // run
  CLI::App* run = app.add_subcommand("run", "Propagate exposure scores");
  InputFlags run_in;
  EngineFlags run_engine;
  std::string partition_in, partition_out, exposures = "exposures.csv",
                                           metrics = "metrics.json";
  AddInputFlags(run, run_in);
  AddEngineFlags(run, run_engine);
  run->add_option("--partition-in", partition_in,
                  "user_id,actor_index CSV to use instead of partitioning");
  run->add_option("--partition-out", partition_out,
                  "user_id,actor_index CSV to write");
  run->add_option("--exposures-out", exposures, "Exposures CSV to write");
  run->add_option("--metrics-out", metrics, "Metrics JSON to write");

  // reach
  CLI::App* reach =
      app.add_subcommand("reach", "Estimated and actual message reachability");
  InputFlags reach_in;
  ActorConfig reach_config;
  std::vector<UserId> reach_sources;
  std::size_t reach_sample = 100;
  std::optional<double> reach_init_v;
  std::string reach_out = "-";
  AddInputFlags(reach, reach_in);
  AddActorConfigFlags(reach, reach_config);
  reach->add_option("--sources", reach_sources,
                    "Source users; default samples --sample users");
  reach->add_option("--sample", reach_sample,
                    "Sources sampled when --sources is absent");
  reach->add_option("--init-v", reach_init_v,
                    "Reference destination init (default: mean init)");
  reach->add_option("--out", reach_out, "CSV to write, - for stdout");

  // sweep
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Reachability and efficiency over a (gamma, alpha) grid");
  InputFlags sweep_in;
  EngineFlags sweep_engine;
  std::vector<double> gammas, alphas;
  std::vector<UserId> sweep_sources;
  std::size_t sweep_sample = 100;
  std::optional<double> sweep_init_v;
  std::string sweep_out = "-", quartiles_out, efficiency_out;
  AddInputFlags(sweep, sweep_in);
  AddEngineFlags(sweep, sweep_engine);
  sweep->add_option("--gammas", gammas, "Send tolerances (default 0.1..1.0)");
  sweep->add_option("--alphas", alphas,
                    "Transmission rates (default 0.1..0.9)");
  sweep->add_option("--sources", sweep_sources,
                    "Source users; default samples --sample users");
  sweep->add_option("--sample", sweep_sample,
                    "Sources sampled when --sources is absent");
  sweep->add_option("--init-v", sweep_init_v,
                    "Reference destination init (default: mean init)");
  sweep->add_option("--out", sweep_out, "Reachability CSV, - for stdout");
  sweep->add_option("--quartiles-out", quartiles_out,
                    "Ratio quartiles CSV; empty skips");
  sweep->add_option("--efficiency-out", efficiency_out,
                    "Run the engine per cell and write normalized updates, "
                    "messages and runtime; empty skips");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "Scalability benchmark");
  BenchSpec spec;
  spec.users_from = 100;
  spec.users_to = 10000;
  spec.step = 100;
  spec.reps = 10;
  std::string bench_graph = "rgg", bench_out = "-";
  EngineFlags bench_engine;
  bench->add_option("--graph", bench_graph, "rgg or csfg");
  bench->add_option("--users-from", spec.users_from, "Smallest n");
  bench->add_option("--users-to", spec.users_to, "Largest n");
  bench->add_option("--step", spec.step, "Increment of n");
  bench->add_option("--reps", spec.reps, "Datasets per n");
  AddEngineFlags(bench, bench_engine);
  bench->add_option("--out", bench_out, "CSV to write, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "riskprop: error: " << e.what() << " (see --help)\n";
    return 2;
  }

  absl::Status status;
  if (*gen) {
    absl::StatusOr<GraphKind> kind = ParseGraphKind(graph_kind);
    if (!kind.ok()) return Fail(kind.status());
    synth.graph = *kind;
    synth.seed = common.seed;
    synth.now = common.now;
    status = CmdGenerate(synth, gen_contacts, gen_scores);
  } else if (*ingest) {
    status = CmdIngest(ingest_input, common, ingest_p_high, ingest_contacts,
                       ingest_scores, ingest_map);
  } else if (*run) {
    status = CmdRun(run_in, run_engine, common, partition_in, partition_out,
                    exposures, metrics);
  } else if (*reach) {
    status = CmdReach(reach_in, reach_config, common, reach_sources,
                      reach_sample, reach_init_v, reach_out);
  } else if (*sweep) {
    status = CmdSweep(sweep_in, sweep_engine, common, gammas, alphas,
                      sweep_sources, sweep_sample, sweep_init_v, sweep_out,
                      quartiles_out, efficiency_out);
  } else if (*bench) {
    status = CmdBench(spec, bench_graph, bench_engine, common, bench_out);
  }
  if (!status.ok()) return Fail(status);
  return 0;
}

}  // namespace
}  // namespace riskprop

int main(int argc, char** argv) { return riskprop::Main(argc, argv); }
