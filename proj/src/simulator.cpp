#include "abc/simulator.hpp"

#include <cinttypes>
#include <cstdio>
#include <limits>

#include "abc/printer.hpp"
#include "abc/trace_json.hpp"

namespace abc {

const char* terminationText(Termination t) {
  switch (t) {
    case Termination::Deadlock: return "deadlock";
    case Termination::StepLimit: return "step-limit";
    case Termination::Error: return "error";
  }
  return "?";
}

std::size_t uniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r < limit) return static_cast<std::size_t>(r % bound);
  }
}

namespace {

std::vector<UpdateSummary> diffStates(const SystemState& before, const SystemState& after) {
  std::vector<UpdateSummary> out;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (before[i].envPtr() == after[i].envPtr()) continue;
    for (const auto& [key, value] : after[i].env().entries()) {
      const Value* old = before[i].env().find(key);
      if (old && *old == value) continue;
      out.push_back(UpdateSummary{after[i].name(), key.name, key.index, value});
    }
  }
  return out;
}

bool sameEvent(const BroadcastEvent& a, const BroadcastEvent& b) {
  if (a.sender != b.sender || a.senderBranch != b.senderBranch || a.message != b.message) return false;
  if (a.receivers.size() != b.receivers.size() || a.discarded != b.discarded) return false;
  for (std::size_t i = 0; i < a.receivers.size(); ++i)
    if (a.receivers[i].component != b.receivers[i].component || a.receivers[i].branch != b.receivers[i].branch)
      return false;
  return equal(a.predicate, b.predicate);
}

std::string hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace

Trace simulate(const Model& model, std::uint64_t specHash, std::uint64_t seed, std::size_t maxSteps) {
  Trace trace;
  trace.specHash = specHash;
  trace.seed = seed;
  trace.maxSteps = maxSteps;
  trace.componentNames = model.componentNames();
  std::mt19937_64 rng(seed);
  SystemState state = model.initialState();
  while (true) {
    if (trace.steps.size() >= maxSteps) {
      trace.termination = Termination::StepLimit;
      return trace;
    }
    std::vector<Transition> steps;
    try {
      steps = model.systemSteps(state);
    } catch (const EvalError& e) {
      trace.termination = Termination::Error;
      trace.error = e.what();
      trace.errorSpan = e.span();
      return trace;
    }
    if (steps.empty()) {
      trace.termination = Termination::Deadlock;
      return trace;
    }
    Transition& pick = steps[uniformIndex(rng, steps.size())];
    TraceStep step;
    step.number = trace.steps.size() + 1;
    step.updates = diffStates(state, pick.target);
    step.stateHash = pick.target.hash();
    step.event = std::move(pick.event);
    state = std::move(pick.target);
    trace.steps.push_back(std::move(step));
  }
}

std::optional<std::string> replay(const Model& model, const Trace& trace) {
  SystemState state = model.initialState();
  for (const auto& step : trace.steps) {
    bool found = false;
    for (auto& t : model.systemSteps(state)) {
      if (t.target.hash() != step.stateHash || !sameEvent(t.event, step.event)) continue;
      state = std::move(t.target);
      found = true;
      break;
    }
    if (!found) return "step " + std::to_string(step.number) + " is not enabled";
  }
  return std::nullopt;
}

std::string traceToJson(const Trace& trace) {
  std::string out = traceHeaderToJson(trace).dump() + "\n";
  for (const auto& step : trace.steps) out += traceStepToJson(trace, step).dump() + "\n";
  return out;
}

std::string traceToText(const Trace& trace) {
  std::string out = "# spec " + hex(trace.specHash) + " seed " + std::to_string(trace.seed) + " max-steps " +
                    std::to_string(trace.maxSteps) + "\n";
  for (const auto& step : trace.steps) {
    const BroadcastEvent& ev = step.event;
    out += std::to_string(step.number) + ": " + trace.componentNames[ev.sender] + " sends (";
    for (std::size_t i = 0; i < ev.message.size(); ++i) out += (i ? ", " : "") + ev.message[i].toString();
    out += ")@(" + toText(ev.predicate) + ")\n   received by:";
    if (ev.receivers.empty()) out += " nobody";
    for (const auto& r : ev.receivers) out += " " + trace.componentNames[r.component];
    out += "\n";
    for (const auto& u : step.updates) {
      out += "   " + u.component + "." + AttrKey{u.attr, u.index}.toString() + " := " + u.value.toString() + "\n";
    }
    out += "   state " + hex(step.stateHash) + "\n";
  }
  out += "# " + std::string(terminationText(trace.termination)) + " after " + std::to_string(trace.steps.size()) +
         " steps";
  if (trace.termination == Termination::Error) out += ": " + trace.error;
  return out + "\n";
}

}  // namespace abc
