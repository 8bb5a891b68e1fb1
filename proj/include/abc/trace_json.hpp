#pragma once

// JSON encoding of trace elements. Values are tagged by kind:
// {"int":1}, {"float":0.5}, {"bool":true}, {"str":"x"}, {"tuple":[..]},
// {"set":[..]}, {"undef":null}.

#include "json.hpp"

#include "abc/simulator.hpp"

namespace abc {

using Json = nlohmann::ordered_json;

Json valueToJson(const Value& v);
/// Throws std::invalid_argument on a malformed encoding.
Value valueFromJson(const Json& j);

Json traceHeaderToJson(const Trace& trace);
Json traceStepToJson(const Trace& trace, const TraceStep& step);

}  // namespace abc
