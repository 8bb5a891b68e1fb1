#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abc/value.hpp"

namespace abc {

/// Attribute key: a name plus an index tuple (empty for plain attributes).
/// room[5] and price["br1", 5] are indexed entries of the families room and price.
struct AttrKey {
  std::string name;
  std::vector<Value> index;

  friend bool operator==(const AttrKey& a, const AttrKey& b) {
    return a.name == b.name && compareSequences(a.index, b.index) == 0;
  }
  friend bool operator<(const AttrKey& a, const AttrKey& b) {
    if (a.name != b.name) return a.name < b.name;
    return compareSequences(a.index, b.index) < 0;
  }

  std::string toString() const;
};

/// A component's attribute environment, a partial map from keys to values.
/// Entries are kept sorted so that two equal environments have identical
/// layouts (and hashes).
class AttributeEnv {
 public:
  using Entry = std::pair<AttrKey, Value>;

  AttributeEnv() = default;

  /// nullptr when the key is absent; a stored undef is a non-null Undef value.
  const Value* find(const AttrKey& key) const;
  const Value* find(const std::string& name, const std::vector<Value>& index = {}) const {
    return find(AttrKey{name, index});
  }
  bool contains(const AttrKey& key) const { return find(key) != nullptr; }

  void set(AttrKey key, Value value);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Distinct attribute names present.
  std::set<std::string> names() const;

  std::uint64_t hash() const;

  friend bool operator==(const AttributeEnv& a, const AttributeEnv& b);

 private:
  std::vector<Entry> entries_;
};

}  // namespace abc
