#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "abc/checker.hpp"
#include "abc/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace abc {
namespace {

using Dir = EventPattern::Direction;

SystemSpec parseOk(const std::string& text) {
  ParseResult r = parseSpec(text);
  for (const auto& d : r.diagnostics) ADD_FAILURE() << renderDiagnostic(d, "<test>", false);
  return r.spec;
}

SystemSpec fixture(const char* name) {
  std::ifstream in(std::string(ABC_FIXTURES_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseOk(buf.str());
}

EventPattern sent(const char* c, const char* tag) { return EventPattern{Dir::Sent, c, tag, {}}; }
EventPattern received(const char* c, const char* tag) { return EventPattern{Dir::Received, c, tag, {}}; }

// Small hand-made LTS. Components A, B; edges given as (from, to, sender, tag, receivers).
struct Spec {
  std::uint32_t from, to, sender;
  const char* tag;
  std::vector<std::uint32_t> receivers;
};

Lts build(std::size_t states, const std::vector<Spec>& edges) {
  Lts lts;
  lts.componentNames = {"A", "B"};
  for (std::size_t i = 0; i < states; ++i) lts.stateHashes.push_back(i);
  for (const auto& e : edges) {
    EdgeLabel l{e.sender, static_cast<std::int32_t>(lts.internTag(e.tag)), e.receivers};
    lts.edges.push_back(Edge{e.from, e.to, lts.internLabel(l)});
  }
  lts.finalize();
  return lts;
}

void expectPath(const Lts& lts, const Verdict& v) {
  std::uint32_t at = lts.initial;
  for (auto i : v.path) {
    ASSERT_LT(i, lts.edges.size());
    EXPECT_EQ(lts.edges[i].from, at);
    at = lts.edges[i].to;
  }
}

TEST(Checker, CorpusPropertiesHold) {
  Model model(fixture("travel_booking.abc"));
  Exploration ex = explore(model);
  ASSERT_FALSE(ex.lts.truncated);
  for (const auto& p : model.spec().properties) {
    Verdict v = checkProperty(ex, p);
    EXPECT_EQ(v.result, VerdictResult::Holds) << p.name << ": " << v.note;
    EXPECT_EQ(v.property, p.name);
  }
}

TEST(Checker, UnseenTagIsUnreachable) {
  Exploration ex = explore(Model(fixture("travel_booking.abc")));
  Verdict v = checkReachable(ex.lts, sent("*", "zzz"));
  EXPECT_EQ(v.result, VerdictResult::Fails);
  EXPECT_TRUE(v.path.empty());
}

TEST(Checker, ReachableWitnessIsAShortestPath) {
  Exploration ex = explore(Model(fixture("travel_booking.abc")));
  Verdict v = checkReachable(ex.lts, sent("Hotel1", "offer"));
  ASSERT_EQ(v.result, VerdictResult::Holds);
  expectPath(ex.lts, v);
  // fake output, request, forward to the hotels, offer
  EXPECT_EQ(v.path.size(), 4u);
  EXPECT_TRUE(EventMatcher(ex.lts, sent("Hotel1", "offer"))(ex.lts.labels[ex.lts.edges[v.path.back()].label]));
}

TEST(Checker, FalseInvariantFailsInTheInitialState) {
  Exploration ex = explore(Model(fixture("ping.abc")));
  Verdict v = checkInvariant(ex.lts, [](std::uint32_t) { return false; });
  EXPECT_EQ(v.result, VerdictResult::Fails);
  EXPECT_TRUE(v.path.empty());
  EXPECT_NE(v.note.find("state 0"), std::string::npos);
}

TEST(Checker, StateExpressions) {
  Model model(fixture("travel_booking.abc"));
  const SystemState s = model.initialState();
  auto parseProp = [](const std::string& text) {
    ParseResult r = parseSpec(std::string(R"(
component Hotel1 { attrs { id = 1; } interface { id } run 0 }
property p = )") + text + "\n");
    EXPECT_TRUE(r.ok());
    return r.spec.properties.at(0).state;
  };
  EXPECT_TRUE(evalStateExpr(parseProp("invariant *.room[*] >= 0"), s));
  EXPECT_FALSE(evalStateExpr(parseProp("invariant *.room[*] >= 1"), s));
  EXPECT_TRUE(evalStateExpr(parseProp("invariant Hotel1.room[5] = 1"), s));
  EXPECT_FALSE(evalStateExpr(parseProp("invariant Hotel1.room[6] = 1"), s));
  EXPECT_TRUE(evalStateExpr(parseProp("invariant !(Hotel1.room[6] = 1)"), s));
  EXPECT_TRUE(evalStateExpr(parseProp("invariant Hotel1.id = \"h1\" && Hotel1.locality = \"rome\""), s));
  // A type error is false, never an exception.
  EXPECT_FALSE(evalStateExpr(parseProp("invariant Hotel1.id < 3"), s));
}

TEST(Checker, VacuousLeadsTo) {
  Exploration ex = explore(Model(fixture("ping.abc")));
  Verdict v = checkLeadsTo(ex.lts, sent("B", "ping"), {received("A", "pong")});
  EXPECT_EQ(v.result, VerdictResult::Holds);
  EXPECT_EQ(v.note, "trigger never occurs");
}

TEST(Checker, GoalOnTheTriggerEdgeDoesNotCount) {
  Exploration ex = explore(Model(fixture("ping.abc")));
  Verdict v = checkLeadsTo(ex.lts, sent("A", "ping"), {received("B", "ping")});
  EXPECT_EQ(v.result, VerdictResult::Fails);
  EXPECT_FALSE(v.loopStart);
}

TEST(Checker, DeadlockCounterexample) {
  // 0 -req-> 1 -work-> 2 (terminal); 1 -done-> 3 -idle-> 3
  Lts lts = build(4, {{0, 1, 0, "req", {1}}, {1, 2, 1, "work", {}}, {1, 3, 1, "done", {0}}, {3, 3, 0, "idle", {}}});
  Verdict v = checkLeadsTo(lts, sent("A", "req"), {received("A", "done")});
  ASSERT_EQ(v.result, VerdictResult::Fails);
  EXPECT_FALSE(v.loopStart);
  ASSERT_EQ(v.path.size(), 2u);
  EXPECT_EQ(lts.edges[v.path[1]].to, 2u);
  EXPECT_EQ(oracle::validCounterexample(lts, v, sent("A", "req"), {received("A", "done")}), std::nullopt);
}

TEST(Checker, LassoCounterexample) {
  // 0 -req-> 1 -spin-> 2 -spin-> 1, and 1 -done-> 3 (terminal after the goal).
  Lts lts = build(4, {{0, 1, 0, "req", {1}}, {1, 2, 1, "spin", {}}, {2, 1, 1, "spin", {}}, {1, 3, 1, "done", {0}},
                      {3, 3, 0, "idle", {}}});
  Verdict v = checkLeadsTo(lts, sent("A", "req"), {received("A", "done")});
  ASSERT_EQ(v.result, VerdictResult::Fails);
  ASSERT_TRUE(v.loopStart);
  EXPECT_EQ(*v.loopStart, 1u);
  EXPECT_EQ(v.path.size(), 3u);
  EXPECT_EQ(oracle::validCounterexample(lts, v, sent("A", "req"), {received("A", "done")}), std::nullopt);
}

TEST(Checker, EveryPathReachesTheGoal) {
  Lts lts = build(4, {{0, 1, 0, "req", {1}}, {1, 2, 1, "work", {}}, {2, 3, 1, "done", {0}}, {1, 3, 1, "done", {0}}});
  EXPECT_EQ(checkLeadsTo(lts, sent("A", "req"), {received("A", "done")}).result, VerdictResult::Holds);
  // Any of several goals will do.
  EXPECT_EQ(checkLeadsTo(lts, sent("A", "req"), {received("A", "never"), sent("B", "done")}).result,
            VerdictResult::Holds);
}

TEST(Checker, TruncatedSpacesAreUnknown) {
  Model model(fixture("travel_booking.abc"));
  Exploration ex = explore(model, {20, SIZE_MAX, 1});
  ASSERT_TRUE(ex.lts.truncated);
  EXPECT_EQ(checkLeadsTo(ex.lts, sent("Cust1", "acms"), {received("Cust1", "finish")}).result, VerdictResult::Unknown);
  EXPECT_EQ(checkReachable(ex.lts, sent("*", "zzz")).result, VerdictResult::Unknown);
  EXPECT_EQ(checkInvariant(ex.lts, [](std::uint32_t) { return true; }).result, VerdictResult::Unknown);
  // Found witnesses and violations stay definite.
  EXPECT_EQ(checkReachable(ex.lts, sent("Cust1", "acms")).result, VerdictResult::Holds);
  EXPECT_EQ(checkInvariant(ex.lts, [](std::uint32_t s) { return s < 5; }).result, VerdictResult::Fails);
}

TEST(Checker, EventMatching) {
  Lts lts = build(2, {{0, 1, 0, "m", {1}}});
  const EdgeLabel& l = lts.labels[0];
  EXPECT_TRUE(EventMatcher(lts, sent("A", "m"))(l));
  EXPECT_TRUE(EventMatcher(lts, sent("*", "m"))(l));
  EXPECT_FALSE(EventMatcher(lts, sent("B", "m"))(l));
  EXPECT_TRUE(EventMatcher(lts, received("B", "m"))(l));
  EXPECT_TRUE(EventMatcher(lts, received("*", "m"))(l));
  EXPECT_FALSE(EventMatcher(lts, received("A", "m"))(l));
  EXPECT_FALSE(EventMatcher(lts, sent("A", "other"))(l));
  EXPECT_FALSE(EventMatcher(lts, sent("Nobody", "m"))(l));
}

TEST(Checker, LeadsToAgreesWithBruteForce) {
  testgen::Gen gen(61);
  std::size_t holds = 0, fails = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + gen.below(i % 4 == 0 ? 1000 : 30);
    auto r = gen.lts(n, i % 3 == 0);
    Verdict v = checkLeadsTo(r.lts, r.trigger, r.goals);
    const bool want = oracle::leadsTo(r.lts, r.trigger, r.goals);
    ASSERT_EQ(v.result == VerdictResult::Holds, want) << "lts " << i;
    if (want) {
      ++holds;
    } else {
      ++fails;
      EXPECT_EQ(oracle::validCounterexample(r.lts, v, r.trigger, r.goals), std::nullopt) << "lts " << i;
    }
  }
  EXPECT_GT(holds, 20u);
  EXPECT_GT(fails, 20u);
}

}  // namespace
}  // namespace abc
