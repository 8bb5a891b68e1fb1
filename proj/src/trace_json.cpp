#include "abc/trace_json.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

#include "abc/printer.hpp"

namespace abc {

namespace {

std::string hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace

Json valueToJson(const Value& v) {
  Json j = Json::object();
  switch (v.kind()) {
    case ValueKind::Undef: j["undef"] = nullptr; break;
    case ValueKind::Int: j["int"] = v.asInt(); break;
    case ValueKind::Float: j["float"] = v.asFloat(); break;
    case ValueKind::Bool: j["bool"] = v.asBool(); break;
    case ValueKind::Text: j["str"] = v.asText(); break;
    case ValueKind::Tuple:
    case ValueKind::Set: {
      Json items = Json::array();
      for (const auto& i : v.items()) items.push_back(valueToJson(i));
      j[v.kind() == ValueKind::Tuple ? "tuple" : "set"] = std::move(items);
      break;
    }
  }
  return j;
}

Value valueFromJson(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("tagged value must be a one-field object");
  const auto first = j.begin();
  const std::string& tag = first.key();
  const Json& body = first.value();
  if (tag == "undef") return Value::undef();
  if (tag == "int" && body.is_number_integer()) return Value::integer(body.get<std::int64_t>());
  if (tag == "float" && body.is_number()) return Value::real(body.get<double>());
  if (tag == "bool" && body.is_boolean()) return Value::boolean(body.get<bool>());
  if (tag == "str" && body.is_string()) return Value::text(body.get<std::string>());
  if ((tag == "tuple" || tag == "set") && body.is_array()) {
    std::vector<Value> items;
    for (const auto& i : body) items.push_back(valueFromJson(i));
    return tag == "tuple" ? Value::tuple(std::move(items)) : Value::set(std::move(items));
  }
  throw std::invalid_argument("unknown value tag '" + tag + "'");
}

Json traceHeaderToJson(const Trace& trace) {
  Json j;
  j["spec"] = hex(trace.specHash);
  j["seed"] = trace.seed;
  j["max_steps"] = trace.maxSteps;
  j["components"] = trace.componentNames;
  j["steps"] = trace.steps.size();
  j["termination"] = terminationText(trace.termination);
  if (trace.termination == Termination::Error) {
    j["error"] = trace.error;
    j["error_line"] = trace.errorSpan.line;
    j["error_column"] = trace.errorSpan.column;
  }
  return j;
}

Json traceStepToJson(const Trace& trace, const TraceStep& step) {
  const BroadcastEvent& ev = step.event;
  Json j;
  j["step"] = step.number;
  j["sender"] = trace.componentNames[ev.sender];
  Json message = Json::array();
  for (const auto& v : ev.message) message.push_back(valueToJson(v));
  j["message"] = std::move(message);
  j["predicate"] = toText(ev.predicate);
  Json receivers = Json::array();
  for (const auto& r : ev.receivers) {
    Json rj;
    rj["component"] = trace.componentNames[r.component];
    rj["branch"] = r.branch;
    receivers.push_back(std::move(rj));
  }
  j["receivers"] = std::move(receivers);
  Json discarded = Json::array();
  for (auto d : ev.discarded) discarded.push_back(trace.componentNames[d]);
  j["discarded"] = std::move(discarded);
  Json updates = Json::array();
  for (const auto& u : step.updates) {
    Json uj;
    uj["component"] = u.component;
    uj["attr"] = u.attr;
    Json index = Json::array();
    for (const auto& i : u.index) index.push_back(valueToJson(i));
    uj["index"] = std::move(index);
    uj["value"] = valueToJson(u.value);
    updates.push_back(std::move(uj));
  }
  j["updates"] = std::move(updates);
  j["state"] = hex(step.stateHash);
  return j;
}

}  // namespace abc
