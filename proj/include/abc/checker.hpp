#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abc/explorer.hpp"

namespace abc {

enum class VerdictResult { Holds, Fails, Unknown };

const char* verdictText(VerdictResult r);

/// Witness (Reachable holds) or counterexample (Invariant/LeadsTo fails) as a
/// sequence of edge indices from the initial state. For a lasso, the edges
/// from `loopStart` on form the cycle.
struct Verdict {
  std::string property;
  VerdictResult result = VerdictResult::Unknown;
  std::vector<std::size_t> path;
  std::optional<std::size_t> loopStart;
  std::string note;
};

/// Event matching on compact labels. A `received` pattern matches when the
/// named component (any, for "*") is among the receivers.
class EventMatcher {
 public:
  EventMatcher(const Lts& lts, const EventPattern& pattern);
  bool operator()(const EdgeLabel& label) const;

 private:
  EventPattern::Direction direction_;
  bool anyComponent_ = false;
  std::optional<std::uint32_t> component_;
  std::optional<std::int32_t> tag_;
};

using StatePredicate = std::function<bool(std::uint32_t state)>;

Verdict checkReachable(const Lts& lts, const EventPattern& event);
Verdict checkReachable(const Lts& lts, const StatePredicate& holds);
Verdict checkInvariant(const Lts& lts, const StatePredicate& holds);
/// Holds iff after every trigger edge, every maximal path from its target
/// contains a goal edge. Unknown on a truncated LTS.
Verdict checkLeadsTo(const Lts& lts, const EventPattern& trigger, const std::vector<EventPattern>& goals);

/// State expressions: a reference to a missing attribute makes its comparison
/// false; wildcards range over the entries that exist.
bool evalStateExpr(const StateExprPtr& expr, const SystemState& state);

Verdict checkProperty(const Exploration& ex, const PropertyDecl& property);

}  // namespace abc
