#include "abc/value.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>

#include "abc/hash.hpp"

namespace abc {

Value Value::integer(std::int64_t v) {
  Value r;
  r.data_ = v;
  return r;
}

Value Value::real(double v) {
  Value r;
  r.data_ = v == 0.0 ? 0.0 : v;  // fold -0.0
  return r;
}

Value Value::boolean(bool v) {
  Value r;
  r.data_ = v;
  return r;
}

Value Value::text(std::string v) {
  Value r;
  r.data_ = std::move(v);
  return r;
}

Value Value::tuple(std::vector<Value> items) {
  Value r;
  r.data_ = TupleValue{std::move(items)};
  return r;
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Value r;
  r.data_ = SetValue{std::move(items)};
  return r;
}

double Value::asNumber() const {
  if (kind() == ValueKind::Int) return static_cast<double>(asInt());
  return asFloat();
}

const std::vector<Value>& Value::items() const {
  if (kind() == ValueKind::Tuple) return std::get<TupleValue>(data_).items;
  return std::get<SetValue>(data_).items;
}

int compareSequences(const std::vector<Value>& a, const std::vector<Value>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = Value::compare(a[i], b[i]); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int Value::compare(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() < b.data_.index() ? -1 : 1;
  switch (a.kind()) {
    case ValueKind::Undef:
      return 0;
    case ValueKind::Int:
      return a.asInt() == b.asInt() ? 0 : (a.asInt() < b.asInt() ? -1 : 1);
    case ValueKind::Float: {
      const double x = a.asFloat(), y = b.asFloat();
      if (x < y) return -1;
      if (y < x) return 1;
      const auto bx = std::bit_cast<std::uint64_t>(x), by = std::bit_cast<std::uint64_t>(y);
      return bx == by ? 0 : (bx < by ? -1 : 1);
    }
    case ValueKind::Bool:
      return a.asBool() == b.asBool() ? 0 : (a.asBool() ? 1 : -1);
    case ValueKind::Text:
      return a.asText().compare(b.asText()) < 0 ? -1 : (a.asText() == b.asText() ? 0 : 1);
    case ValueKind::Tuple:
    case ValueKind::Set:
      return compareSequences(a.items(), b.items());
  }
  return 0;
}

std::uint64_t Value::hash() const {
  Fnv1a h;
  h.u64(data_.index());
  switch (kind()) {
    case ValueKind::Undef:
      break;
    case ValueKind::Int:
      h.u64(static_cast<std::uint64_t>(asInt()));
      break;
    case ValueKind::Float:
      h.u64(std::bit_cast<std::uint64_t>(asFloat()));
      break;
    case ValueKind::Bool:
      h.u64(asBool() ? 1 : 0);
      break;
    case ValueKind::Text:
      h.str(asText());
      break;
    case ValueKind::Tuple:
    case ValueKind::Set:
      h.u64(items().size());
      for (const auto& v : items()) h.u64(v.hash());
      break;
  }
  return h.value();
}

std::string formatDouble(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string quoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string Value::toString() const {
  switch (kind()) {
    case ValueKind::Undef:
      return "undef";
    case ValueKind::Int:
      return std::to_string(asInt());
    case ValueKind::Float:
      return formatDouble(asFloat());
    case ValueKind::Bool:
      return asBool() ? "true" : "false";
    case ValueKind::Text:
      return quoteString(asText());
    case ValueKind::Tuple: {
      // Literal tuples need at least two elements; shorter ones print as a
      // tuple() application.
      const bool literal = items().size() >= 2;
      std::string s = literal ? "(" : "tuple(";
      for (std::size_t i = 0; i < items().size(); ++i) {
        if (i) s += ", ";
        s += items()[i].toString();
      }
      return s + ")";
    }
    case ValueKind::Set: {
      std::string s = "{";
      for (std::size_t i = 0; i < items().size(); ++i) {
        if (i) s += ", ";
        s += items()[i].toString();
      }
      return s + "}";
    }
  }
  return {};
}

const char* kindName(ValueKind k) {
  switch (k) {
    case ValueKind::Undef: return "undef";
    case ValueKind::Int: return "int";
    case ValueKind::Float: return "float";
    case ValueKind::Bool: return "bool";
    case ValueKind::Text: return "text";
    case ValueKind::Tuple: return "tuple";
    case ValueKind::Set: return "set";
  }
  return "?";
}

}  // namespace abc
