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

#include <cmath>
#include <mutex>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace riskprop {
namespace {

constexpr Timestamp kT0 = 1640995200;
constexpr Timestamp kDay = kSecondsPerDay;

// Run options for tests that need every message delivered.
RunOptions Quiescent(std::uint32_t actors) {
  RunOptions options;
  options.actors = actors;
  options.now = kT0;
  options.stop.max_duration_seconds = 60;
  options.stop.timeout_seconds = actors == 1 ? 0.0 : 0.5;
  return options;
}

TEST(ActorConfigTest, Defaults) {
  ActorConfig c;
  EXPECT_EQ(c.alpha, 0.8);
  EXPECT_EQ(c.gamma, 0.6);
  EXPECT_EQ(c.tau, 1.0);
  EXPECT_EQ(c.epsilon, 1e-7);
  EXPECT_EQ(c.buffer_days, 2.0);
  EXPECT_EQ(c.horizon_days, 14.0);
  EXPECT_TRUE(c.Validate().ok());
}

TEST(ActorConfigTest, RejectsOutOfRange) {
  for (auto mutate : std::vector<std::function<void(ActorConfig&)>>{
           [](ActorConfig& c) { c.alpha = 0; },
           [](ActorConfig& c) { c.alpha = 1; },
           [](ActorConfig& c) { c.gamma = -0.1; },
           [](ActorConfig& c) { c.gamma = 1.1; },
           [](ActorConfig& c) { c.tau = 0; },
           [](ActorConfig& c) { c.epsilon = 0; },
           [](ActorConfig& c) { c.buffer_days = -1; },
           [](ActorConfig& c) { c.horizon_days = 1; },
           [](ActorConfig& c) { c.alpha = std::nan(""); }}) {
    ActorConfig c;
    mutate(c);
    EXPECT_EQ(c.Validate().code(), absl::StatusCode::kInvalidArgument);
  }
}

TEST(StopCriteriaTest, RequiresOne) {
  StopCriteria stop;
  EXPECT_FALSE(stop.any());
  EXPECT_FALSE(stop.Validate().ok());
  stop.early_stop_messages = 5;
  EXPECT_TRUE(stop.Validate().ok());
  stop.timeout_seconds = -1;
  EXPECT_FALSE(stop.Validate().ok());
}

TEST(InitUserTest, ScalesInitOnly) {
  ActorConfig c;
  std::vector<RiskScore> s = {{0.5, 100}};
  UserState state = InitUser(s, c);
  EXPECT_EQ(state.init, (RiskScore{0.8 * 0.5, 100}));
  EXPECT_EQ(state.curr, 0.5);
}

TEST(InitUserTest, Zero) {
  std::vector<RiskScore> s = {{0.0, 100}};
  UserState state = InitUser(s, ActorConfig{});
  EXPECT_EQ(state.init, (RiskScore{0.0, 100}));
  EXPECT_EQ(state.curr, 0.0);
}

TEST(InitUserTest, OlderWinsTieInEitherOrder) {
  std::vector<RiskScore> a = {{0.5, 10}, {0.5, 20}};
  std::vector<RiskScore> b = {{0.5, 20}, {0.5, 10}};
  EXPECT_EQ(InitUser(a, ActorConfig{}).init.time, 10);
  EXPECT_EQ(InitUser(b, ActorConfig{}).init.time, 10);
}

// Direct weigher using the exponential form of the age weighting.
std::optional<RiskScore> BruteForceMessage(const std::vector<RiskScore>& scores,
                                           Timestamp contact,
                                           const ActorConfig& c) {
  std::optional<RiskScore> best;
  double best_w = 0;
  for (const RiskScore& s : scores) {
    if (s.time > contact + c.buffer_days * kDay) continue;
    double age = std::min(0.0, double(s.time - contact) / kDay);
    double w = std::max(s.magnitude, c.epsilon) * std::exp(age / c.tau);
    if (!best || w > best_w ||
        (w == best_w && (s.magnitude > best->magnitude ||
                         (s.magnitude == best->magnitude && s.time < best->time)))) {
      best = s;
      best_w = w;
    }
  }
  if (!best) return std::nullopt;
  return RiskScore{c.alpha * best->magnitude, best->time};
}

TEST(ComputeMessageTest, FiltersThenWeighs) {
  std::vector<RiskScore> s = {{0.6, kT0 - 3 * kDay}, {0.9, kT0 + 3 * kDay}};
  auto m = ComputeMessage(s, kT0, ActorConfig{});
  ASSERT_TRUE(m.has_value());
  EXPECT_DOUBLE_EQ(m->magnitude, 0.48);
  EXPECT_EQ(m->time, kT0 - 3 * kDay);
}

TEST(ComputeMessageTest, RecentBeatsLargerButOlder) {
  std::vector<RiskScore> s = {{0.9, kT0 - 5 * kDay}, {0.5, kT0 - kDay / 2}};
  // ln 0.9 - 5 = -5.105 versus ln 0.5 - 0.5 = -1.193.
  EXPECT_NEAR(std::log(0.9) - 5, -5.105, 1e-3);
  EXPECT_NEAR(std::log(0.5) - 0.5, -1.193, 1e-3);
  auto m = ComputeMessage(s, kT0, ActorConfig{});
  ASSERT_TRUE(m.has_value());
  EXPECT_DOUBLE_EQ(m->magnitude, 0.4);
  EXPECT_EQ(m->time, kT0 - kDay / 2);
}

TEST(ComputeMessageTest, NewerWithinBufferHasZeroAge) {
  std::vector<RiskScore> s = {{0.7, kT0 + kDay}};
  auto m = ComputeMessage(s, kT0, ActorConfig{});
  ASSERT_TRUE(m.has_value());
  EXPECT_DOUBLE_EQ(m->magnitude, 0.56);
  EXPECT_EQ(m->time, kT0 + kDay);
}

TEST(ComputeMessageTest, BeyondBufferIsNoMessage) {
  std::vector<RiskScore> s = {{0.7, kT0 + 3 * kDay}};
  EXPECT_EQ(ComputeMessage(s, kT0, ActorConfig{}), std::nullopt);
}

TEST(ComputeMessageTest, BufferBoundaryInclusive) {
  std::vector<RiskScore> s = {{0.7, kT0 + 2 * kDay}};
  EXPECT_TRUE(ComputeMessage(s, kT0, ActorConfig{}).has_value());
  s[0].time += 1;
  EXPECT_FALSE(ComputeMessage(s, kT0, ActorConfig{}).has_value());
}

TEST(ComputeMessageTest, TiesPreferHigherThenOlder) {
  ActorConfig c;
  std::vector<RiskScore> same = {{0.5, kT0 + 100}, {0.5, kT0 + 50}};
  EXPECT_EQ(ComputeMessage(same, kT0, c)->time, kT0 + 50);
  // Below epsilon both weigh ln(epsilon): the larger magnitude wins.
  std::vector<RiskScore> tiny = {{1e-9, kT0}, {5e-8, kT0}};
  EXPECT_DOUBLE_EQ(ComputeMessage(tiny, kT0, c)->magnitude, c.alpha * 5e-8);
}

TEST(ComputeMessageTest, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<Timestamp> when(kT0 - 10 * kDay, kT0 + 4 * kDay);
  for (int trial = 0; trial < 2000; ++trial) {
    ActorConfig c;
    c.tau = 0.5 + 2 * unit(rng);
    std::vector<RiskScore> s(1 + rng() % 6);
    for (auto& x : s) x = {unit(rng) < 0.1 ? 0.0 : unit(rng), when(rng)};
    EXPECT_EQ(ComputeMessage(s, kT0, c), BruteForceMessage(s, kT0, c));
  }
}

TEST(ShouldSendTest, Examples) {
  ActorConfig c;
  EXPECT_TRUE(ShouldSend({0.48, 10}, {0.4, 10}, c));
  EXPECT_FALSE(ShouldSend({0.1, 10}, {0.4, 10}, c));
  EXPECT_FALSE(ShouldSend({0.48, 11}, {0.4, 10}, c));
}

TEST(ShouldSendTest, EqualToThresholdIsSent) {
  ActorConfig c;
  c.gamma = 0.5;
  EXPECT_TRUE(ShouldSend({0.2, 10}, {0.4, 10}, c));
}

TEST(ShouldSendTest, ZeroToleranceOnlyChecksTimeAboveEpsilon) {
  ActorConfig c;
  c.gamma = 0;
  EXPECT_TRUE(ShouldSend({0.001, 10}, {0.9, 10}, c));
  EXPECT_FALSE(ShouldSend({0.001, 11}, {0.9, 10}, c));
  // Candidates below epsilon carry no information and are dropped.
  EXPECT_FALSE(ShouldSend({1e-8, 10}, {0.0, 10}, c));
}

TEST(RunTest, IsolatedPair) {
  std::vector<Contact> contacts = {{1, 2, kT0}};
  ScoreSet scores = {{1, {{0.9, kT0 - kDay}}}, {2, {{0.1, kT0 - kDay}}}};
  auto r = riskprop::Run(contacts, scores, Quiescent(1));
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_DOUBLE_EQ(r->exposures.at(2).magnitude, 0.72);
  EXPECT_EQ(r->exposures.at(1).magnitude, 0.9);
  EXPECT_EQ(r->exposures.at(1).time, kT0);
  EXPECT_EQ(r->metrics.updates, 1);
}

TEST(RunTest, SingleUserWithoutContactsIsNotAGraph) {
  // A lone user only appears through a self-loop, which is dropped.
  std::vector<Contact> contacts = {{1, 1, kT0}};
  ScoreSet scores = {{1, {{0.9, kT0}}}};
  EXPECT_FALSE(riskprop::Run(contacts, scores, Quiescent(1)).ok());
}

TEST(PropagateTest, LoneUserKeepsItsScoreAndSendsNothing) {
  TemporalGraph g({7}, {});
  ScoreSet scores = {{7, {{0.3, kT0}, {0.6, kT0 - kDay}}}};
  PropagateOptions options;
  options.now = kT0;
  options.stop.timeout_seconds = 0;
  auto r = Propagate(g, scores, *PartitionRoundRobin(g, 1), options);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->exposures[0], (RiskScore{0.6, kT0}));
  EXPECT_EQ(r->metrics.messages_sent, 0);
}

TEST(RunTest, ThreeNodePath) {
  std::vector<Contact> contacts = {{1, 2, kT0}, {2, 3, kT0}};
  ScoreSet scores = {{1, {{0.9, kT0 - kDay}}},
                     {2, {{0.0, kT0 - kDay}}},
                     {3, {{0.0, kT0 - kDay}}}};
  for (std::uint32_t k : {1u, 2u, 3u}) {
    auto r = riskprop::Run(contacts, scores, Quiescent(k));
    ASSERT_TRUE(r.ok());
    EXPECT_DOUBLE_EQ(r->exposures.at(3).magnitude, 0.9 * 0.8 * 0.8) << k;
    EXPECT_DOUBLE_EQ(r->exposures.at(2).magnitude, 0.9 * 0.8) << k;
  }
}

TEST(RunTest, EmptyContactsFail) {
  auto r = riskprop::Run({}, {}, Quiescent(1));
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(RunTest, NoStopCriteriaFails) {
  std::vector<Contact> contacts = {{1, 2, kT0}};
  RunOptions options;
  options.now = kT0;
  EXPECT_EQ(riskprop::Run(contacts, {}, options).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RunTest, ReportsEmptiedAndUnconnectedUsers) {
  std::vector<Contact> contacts = {{1, 2, kT0}};
  ScoreSet scores = {{1, {{0.9, kT0 - 30 * kDay}}}, {5, {{0.9, kT0}}}};
  auto r = riskprop::Run(contacts, scores, Quiescent(1));
  ASSERT_TRUE(r.ok());
  EXPECT_THAT(r->emptied_users, ::testing::ElementsAre(1));
  EXPECT_THAT(r->unconnected_scored_users, ::testing::ElementsAre(5));
  EXPECT_EQ(r->exposures.at(1).magnitude, 0.0);
}

TEST(RunTest, MetricsAggregateIsSumOfActors) {
  std::mt19937_64 rng(17);
  testing::Instance inst = testing::RandomInstance(rng, {.min_users = 40});
  auto r = riskprop::Run(inst.contacts, inst.scores, Quiescent(3));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->metrics.actors.size(), 3);
  std::uint64_t updates = 0, sent = 0, received = 0;
  for (const ActorMetrics& a : r->metrics.actors) {
    updates += a.updates;
    sent += a.messages_sent;
    received += a.messages_received;
    EXPECT_LE(a.wall_runtime_seconds, r->metrics.wall_runtime_seconds);
  }
  EXPECT_EQ(updates, r->metrics.updates);
  EXPECT_EQ(sent, r->metrics.messages_sent);
  EXPECT_EQ(received, r->metrics.messages_received);
  // Quiescent run: everything sent was received.
  EXPECT_EQ(sent, received);
  EXPECT_LE(r->metrics.updates, r->metrics.messages_received);
}

TEST(RunTest, ImportedAssignment) {
  std::vector<Contact> contacts = {{1, 2, kT0}, {2, 3, kT0}};
  ScoreSet scores = {{1, {{0.9, kT0 - kDay}}}};
  RunOptions options = Quiescent(2);
  options.assignment = std::vector<std::uint32_t>{1, 0, 1};
  auto r = riskprop::Run(contacts, scores, options);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->partition.cut_edges, 2);
  EXPECT_DOUBLE_EQ(r->exposures.at(3).magnitude, 0.9 * 0.8 * 0.8);
}

TEST(RunTest, EarlyStopBoundsReceives) {
  std::mt19937_64 rng(23);
  testing::Instance inst =
      testing::RandomInstance(rng, {.min_users = 50, .max_density = 0.5});
  RunOptions options = Quiescent(1);
  options.config.gamma = 0.1;
  options.stop = {};
  options.stop.early_stop_messages = 20;
  auto r = riskprop::Run(inst.contacts, inst.scores, options);
  ASSERT_TRUE(r.ok());
  // Updates split the receives into runs of at most M non-updating ones.
  EXPECT_LE(r->metrics.messages_received,
            r->metrics.updates + (r->metrics.updates + 1) * 20);
}

TEST(RunTest, MaxDurationStopsRun) {
  // Dense graph with gamma 0: a long run that D cuts short.
  std::vector<Contact> contacts;
  for (UserId i = 0; i < 60; ++i) {
    for (UserId j = i + 1; j < 60; ++j) contacts.push_back({i, j, kT0});
  }
  ScoreSet scores;
  for (UserId i = 0; i < 60; ++i) scores[i] = {{0.99, kT0 - kDay}};
  RunOptions options;
  options.now = kT0;
  options.config.gamma = 0.0;
  options.config.alpha = 0.99;
  options.stop.max_duration_seconds = 0.2;
  auto start = std::chrono::steady_clock::now();
  auto r = riskprop::Run(contacts, scores, options);
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  ASSERT_TRUE(r.ok());
  EXPECT_LT(elapsed, 5.0);
  EXPECT_LT(r->metrics.messages_received, r->metrics.messages_sent);
}

TEST(RunTest, TimeoutStopsIdleActors) {
  std::vector<Contact> contacts = {{1, 2, kT0}, {3, 4, kT0}};
  RunOptions options;
  options.actors = 2;
  options.now = kT0;
  options.stop.timeout_seconds = 0.05;
  auto r = riskprop::Run(contacts, {}, options);
  ASSERT_TRUE(r.ok());
  EXPECT_LT(r->metrics.wall_runtime_seconds, 2.0);
  EXPECT_GE(r->metrics.wall_runtime_seconds, 0.05);
}

TEST(RunTest, RoutingErrorSurfaces) {
  // A partition whose owner table disagrees with the actor's user list is
  // impossible through the public API; instead check that an invalid
  // partition is rejected up front.
  TemporalGraph g({1, 2}, std::vector<Contact>{{1, 2, kT0}});
  Partition bad;
  bad.assignment = {0};
  bad.actor_count = 1;
  PropagateOptions options;
  options.stop.timeout_seconds = 0;
  EXPECT_FALSE(Propagate(g, {}, bad, options).ok());
}

TEST(OracleTest, MatchesReferenceOnRandomInstances) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    testing::Instance inst = testing::RandomInstance(rng, {.max_users = 30});
    RunOptions options = Quiescent(1);
    options.config.gamma = std::uniform_real_distribution<double>(0.05, 1)(rng);
    options.config.alpha = std::uniform_real_distribution<double>(0.3, 0.95)(rng);
    auto r = riskprop::Run(inst.contacts, inst.scores, options);
    if (!r.ok()) {
      ASSERT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
      continue;
    }
    auto expected = testing::ReferenceExposures(inst.contacts, inst.scores,
                                                options.config, kT0);
    ASSERT_EQ(expected.size(), r->exposures.size());
    for (const auto& [u, value] : expected) {
      EXPECT_EQ(r->exposures.at(u).magnitude, value) << "trial " << trial;
    }
  }
}

// Invariants observed through the trace hooks.
TEST(TraceTest, Invariants) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    testing::Instance inst = testing::RandomInstance(rng, {.max_users = 40});
    const std::uint32_t k = 1 + trial % 3;
    RunOptions options = Quiescent(k);
    std::mutex mu;
    std::vector<std::string> violations;
    double max_initial = 0;
    for (const auto& [u, list] : inst.scores) {
      for (const RiskScore& s : list) max_initial = std::max(max_initial, s.magnitude);
    }
    std::map<std::uint32_t, double> last_curr;
    options.observer = [&](const TraceEvent& e) {
      std::lock_guard<std::mutex> lock(mu);
      const Message& m = e.message;
      if (e.kind == TraceEvent::Kind::kSend) {
        if (m.score.time - e.contact_time > 2 * kDay) {
          violations.push_back("buffer");
        }
        if (m.score.magnitude >
            std::pow(options.config.alpha, m.hops) * max_initial * (1 + 1e-12)) {
          violations.push_back("decay");
        }
        if (m.src == m.dest) violations.push_back("self");
      } else if (e.kind == TraceEvent::Kind::kUpdate) {
        if (!(m.score.magnitude > e.previous)) violations.push_back("update");
        auto [it, inserted] = last_curr.emplace(m.dest, m.score.magnitude);
        if (!inserted) {
          if (e.previous < it->second) violations.push_back("monotone");
          it->second = m.score.magnitude;
        }
      }
    };
    auto r = riskprop::Run(inst.contacts, inst.scores, options);
    if (!r.ok()) continue;
    EXPECT_THAT(violations, ::testing::IsEmpty()) << "trial " << trial;
  }
}

}  // namespace
}  // namespace riskprop
