#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "abc/hash.hpp"
#include "abc/parser.hpp"
#include "abc/simulator.hpp"
#include "abc/trace_json.hpp"
#include "support/generators.hpp"

namespace abc {
namespace {

std::string readFixture(const char* name) {
  std::ifstream in(std::string(ABC_FIXTURES_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Model modelOf(const std::string& text) {
  ParseResult r = parseSpec(text);
  for (const auto& d : r.diagnostics) ADD_FAILURE() << renderDiagnostic(d, "<test>", false);
  return Model(r.spec);
}

std::vector<Json> lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

TEST(Simulate, SameSeedSameTrace) {
  const std::string text = readFixture("travel_booking.abc");
  Model model = modelOf(text);
  const std::string first = traceToJson(simulate(model, hashString(text), 42, 1000));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(traceToJson(simulate(model, hashString(text), 42, 1000)), first);
  std::set<std::string> distinct;
  for (std::uint64_t seed = 0; seed < 10; ++seed) distinct.insert(traceToJson(simulate(model, 0, seed, 1000)));
  EXPECT_GT(distinct.size(), 5u);
}

TEST(Simulate, CorpusRunsEndInDeadlock) {
  Model model = modelOf(readFixture("travel_booking.abc"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Trace t = simulate(model, 0, seed, 1000);
    EXPECT_EQ(t.termination, Termination::Deadlock) << seed;
    EXPECT_GT(t.steps.size(), 10u);
    EXPECT_EQ(replay(model, t), std::nullopt) << seed;
  }
}

TEST(Simulate, StepLimit) {
  Model model = modelOf(readFixture("travel_booking.abc"));
  Trace t = simulate(model, 0, 7, 5);
  EXPECT_EQ(t.termination, Termination::StepLimit);
  EXPECT_EQ(t.steps.size(), 5u);
  Trace none = simulate(model, 0, 7, 0);
  EXPECT_EQ(none.termination, Termination::StepLimit);
  EXPECT_TRUE(none.steps.empty());
}

TEST(Simulate, ReplayRejectsTamperedTraces) {
  Model model = modelOf(readFixture("travel_booking.abc"));
  Trace t = simulate(model, 0, 3, 1000);
  ASSERT_GT(t.steps.size(), 3u);
  Trace bad = t;
  bad.steps[2].stateHash ^= 1;
  EXPECT_EQ(replay(model, bad), "step 3 is not enabled");
  bad = t;
  bad.steps[1].event.message.push_back(Value::integer(1));
  EXPECT_TRUE(replay(model, bad).has_value());
}

TEST(Simulate, EvaluationErrorStopsTheRun) {
  Model model = modelOf("component S { attrs { id = 0; } interface { id }\n  run (\"m\")@(tt).(\"n\", id + \"x\")@(tt).0 }\n");
  Trace t = simulate(model, 0, 1, 100);
  EXPECT_EQ(t.termination, Termination::Error);
  EXPECT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.errorSpan.line, 2u);
  EXPECT_FALSE(t.error.empty());
  Json header = lines(traceToJson(t)).at(0);
  EXPECT_EQ(header["termination"], "error");
  EXPECT_EQ(header["error_line"], 2);
}

TEST(Simulate, ChoiceIsRoughlyUniform) {
  // Two enabled senders; each seed picks one of them for the first step.
  Model model = modelOf(R"(
component A { attrs { id = 0; } interface { id } run ("a")@(ff).0 }
component B { attrs { id = 1; } interface { id } run ("b")@(ff).0 }
)");
  int first = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) first += simulate(model, 0, seed, 1).steps[0].event.sender == 0;
  EXPECT_GT(first, 850);
  EXPECT_LT(first, 1150);
}

TEST(UniformIndex, InRangeAndBalanced) {
  std::mt19937_64 rng(5);
  std::map<std::size_t, int> counts;
  for (int i = 0; i < 70000; ++i) {
    const std::size_t k = uniformIndex(rng, 7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (const auto& [k, n] : counts) EXPECT_NEAR(n, 10000, 500) << k;
  EXPECT_EQ(uniformIndex(rng, 1), 0u);
}

TEST(TraceJson, HeaderAndSteps) {
  const std::string text = readFixture("travel_booking.abc");
  Model model = modelOf(text);
  Trace t = simulate(model, hashString(text), 9, 1000);
  std::vector<Json> js = lines(traceToJson(t));
  ASSERT_EQ(js.size(), t.steps.size() + 1);
  const Json& header = js[0];
  EXPECT_EQ(header["seed"], 9);
  EXPECT_EQ(header["max_steps"], 1000);
  EXPECT_EQ(header["steps"], t.steps.size());
  EXPECT_EQ(header["termination"], "deadlock");
  EXPECT_EQ(header["spec"].get<std::string>().size(), 16u);
  EXPECT_EQ(header["components"].size(), 6u);
  for (std::size_t i = 1; i < js.size(); ++i) {
    const Json& s = js[i];
    EXPECT_EQ(s["step"], i);
    const BroadcastEvent& ev = t.steps[i - 1].event;
    ASSERT_EQ(s["message"].size(), ev.message.size());
    for (std::size_t k = 0; k < ev.message.size(); ++k) EXPECT_EQ(valueFromJson(s["message"][k]), ev.message[k]);
    EXPECT_EQ(s["receivers"].size() + s["discarded"].size() + 1, 6u);
    for (const auto& u : s["updates"]) valueFromJson(u["value"]);
  }
}

TEST(TraceJson, FakeOutputReceiversAreEmpty) {
  Model model = modelOf(readFixture("fake_output.abc"));
  std::vector<Json> js = lines(traceToJson(simulate(model, 0, 0, 10)));
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[1]["receivers"], Json::array());
  EXPECT_EQ(js[1]["discarded"], (Json{"By1", "By2", "By3"}));
  EXPECT_EQ(js[1]["message"], Json::array());
  EXPECT_EQ(js[1]["predicate"], "ff");
  ASSERT_EQ(js[1]["updates"].size(), 1u);
  EXPECT_EQ(js[1]["updates"][0]["attr"], "done");
  EXPECT_EQ(js[1]["updates"][0]["value"], (Json{{"bool", true}}));
}

TEST(TraceJson, ValuesRoundTrip) {
  testgen::Gen gen(71);
  for (int i = 0; i < 2000; ++i) {
    Value v = gen.value(3);
    Json j = valueToJson(v);
    EXPECT_EQ(valueFromJson(Json::parse(j.dump())), v) << j.dump();
  }
  EXPECT_THROW(valueFromJson(Json::parse(R"({"complex": 1})")), std::invalid_argument);
  EXPECT_THROW(valueFromJson(Json::parse(R"({"int": "x"})")), std::invalid_argument);
}

TEST(TraceText, Layout) {
  Model model = modelOf(readFixture("ping.abc"));
  const std::string text = traceToText(simulate(model, 0, 0, 10));
  EXPECT_NE(text.find("1: A sends (\"ping\")@(tt)\n   received by: B\n"), std::string::npos) << text;
  EXPECT_NE(text.find("# deadlock after 1 steps\n"), std::string::npos) << text;
}

}  // namespace
}  // namespace abc
