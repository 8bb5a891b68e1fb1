#include "abc/env.hpp"

#include <algorithm>

#include "abc/hash.hpp"

namespace abc {

std::string AttrKey::toString() const {
  std::string s = name;
  if (!index.empty()) {
    s += '[';
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (i) s += ", ";
      s += index[i].toString();
    }
    s += ']';
  }
  return s;
}

const Value* AttributeEnv::find(const AttrKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const AttrKey& k) { return e.first < k; });
  if (it == entries_.end() || !(it->first == key)) return nullptr;
  return &it->second;
}

void AttributeEnv::set(AttrKey key, Value value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const AttrKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) {
    it->second = std::move(value);
    return;
  }
  entries_.insert(it, Entry{std::move(key), std::move(value)});
}

std::set<std::string> AttributeEnv::names() const {
  std::set<std::string> out;
  for (const auto& [k, v] : entries_) out.insert(k.name);
  return out;
}

std::uint64_t AttributeEnv::hash() const {
  Fnv1a h;
  h.u64(entries_.size());
  for (const auto& [k, v] : entries_) {
    h.str(k.name);
    h.u64(k.index.size());
    for (const auto& i : k.index) h.u64(i.hash());
    h.u64(v.hash());
  }
  return h.value();
}

bool operator==(const AttributeEnv& a, const AttributeEnv& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (!(a.entries_[i].first == b.entries_[i].first)) return false;
    if (a.entries_[i].second != b.entries_[i].second) return false;
  }
  return true;
}

}  // namespace abc
