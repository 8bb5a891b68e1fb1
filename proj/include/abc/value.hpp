#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace abc {

class Value;

enum class ValueKind { Undef, Int, Float, Bool, Text, Tuple, Set };

struct UndefValue {
  friend bool operator==(UndefValue, UndefValue) { return true; }
};

struct TupleValue {
  std::vector<Value> items;
};

// Elements are kept sorted under the total value order and deduplicated.
struct SetValue {
  std::vector<Value> items;
};

/// An AbC data value. Equality is structural: Int(1) and Float(1.0) are
/// different values. Numeric coercion happens only in comparisons and
/// arithmetic (see eval.hpp).
class Value {
 public:
  Value() = default;

  static Value undef() { return Value{}; }
  static Value integer(std::int64_t v);
  static Value real(double v);
  static Value boolean(bool v);
  static Value text(std::string v);
  static Value tuple(std::vector<Value> items);
  static Value set(std::vector<Value> items);

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool isUndef() const { return kind() == ValueKind::Undef; }
  bool isNumeric() const { return kind() == ValueKind::Int || kind() == ValueKind::Float; }

  std::int64_t asInt() const { return std::get<std::int64_t>(data_); }
  double asFloat() const { return std::get<double>(data_); }
  // Int or Float widened to double.
  double asNumber() const;
  bool asBool() const { return std::get<bool>(data_); }
  const std::string& asText() const { return std::get<std::string>(data_); }
  const std::vector<Value>& items() const;

  std::uint64_t hash() const;

  /// Literal syntax accepted by the spec parser (where one exists).
  std::string toString() const;

  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

  /// Total order: by kind first, then by content.
  static int compare(const Value& a, const Value& b);

 private:
  std::variant<UndefValue, std::int64_t, double, bool, std::string, TupleValue, SetValue> data_;
};

const char* kindName(ValueKind k);

std::string formatDouble(double d);
std::string quoteString(const std::string& s);

int compareSequences(const std::vector<Value>& a, const std::vector<Value>& b);

}  // namespace abc
