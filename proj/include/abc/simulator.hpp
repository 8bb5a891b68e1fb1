#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abc/semantics.hpp"

namespace abc {

enum class Termination { Deadlock, StepLimit, Error };

const char* terminationText(Termination t);

/// An attribute whose value differs after the step.
struct UpdateSummary {
  std::string component;
  std::string attr;
  std::vector<Value> index;
  Value value;
};

struct TraceStep {
  std::size_t number = 0;  // 1-based
  BroadcastEvent event;
  std::vector<UpdateSummary> updates;
  std::uint64_t stateHash = 0;  // hash of the state after the step
};

struct Trace {
  std::uint64_t specHash = 0;
  std::uint64_t seed = 0;
  std::size_t maxSteps = 0;
  std::vector<std::string> componentNames;
  std::vector<TraceStep> steps;
  Termination termination = Termination::Deadlock;
  std::string error;
  SourceSpan errorSpan;
};

/// Uniform index in [0, n) by rejection sampling, so traces do not depend on
/// the standard library's distribution implementation.
std::size_t uniformIndex(std::mt19937_64& rng, std::size_t n);

/// At each state picks one element of systemSteps uniformly at random.
Trace simulate(const Model& model, std::uint64_t specHash, std::uint64_t seed, std::size_t maxSteps);

/// Re-executes a trace from the initial state; returns a description of the
/// first step that is not an enabled transition, or nullopt when all are.
std::optional<std::string> replay(const Model& model, const Trace& trace);

/// Header object line followed by one object per step.
std::string traceToJson(const Trace& trace);
std::string traceToText(const Trace& trace);

}  // namespace abc
