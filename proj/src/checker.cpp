#include "abc/checker.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace abc {

const char* verdictText(VerdictResult r) {
  switch (r) {
    case VerdictResult::Holds: return "HOLDS";
    case VerdictResult::Fails: return "FAILS";
    case VerdictResult::Unknown: return "UNKNOWN";
  }
  return "?";
}

EventMatcher::EventMatcher(const Lts& lts, const EventPattern& pattern) : direction_(pattern.direction) {
  if (pattern.component == "*") {
    anyComponent_ = true;
  } else {
    auto it = std::find(lts.componentNames.begin(), lts.componentNames.end(), pattern.component);
    if (it != lts.componentNames.end()) component_ = static_cast<std::uint32_t>(it - lts.componentNames.begin());
  }
  auto t = std::find(lts.tags.begin(), lts.tags.end(), pattern.tag);
  if (t != lts.tags.end()) tag_ = static_cast<std::int32_t>(t - lts.tags.begin());
}

bool EventMatcher::operator()(const EdgeLabel& label) const {
  if (!tag_ || label.tag != *tag_) return false;
  if (direction_ == EventPattern::Direction::Sent) return anyComponent_ || (component_ && label.sender == *component_);
  if (anyComponent_) return !label.receivers.empty();
  return component_ && std::find(label.receivers.begin(), label.receivers.end(), *component_) != label.receivers.end();
}

namespace {

// Breadth-first search from the initial state recording the edge that first
// reached each state.
struct Bfs {
  std::vector<std::uint32_t> order;
  std::vector<std::int64_t> parent;  // edge index, -1 for the root and unreached states
  std::vector<bool> seen;

  explicit Bfs(const Lts& lts) : parent(lts.stateCount(), -1), seen(lts.stateCount(), false) {
    if (lts.stateCount() == 0) return;
    seen[lts.initial] = true;
    order.push_back(lts.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const Edge& e : lts.outgoing(order[i])) {
        if (seen[e.to]) continue;
        seen[e.to] = true;
        parent[e.to] = static_cast<std::int64_t>(lts.edgeIndex(e));
        order.push_back(e.to);
      }
    }
  }

  std::vector<std::size_t> pathTo(const Lts& lts, std::uint32_t state) const {
    std::vector<std::size_t> path;
    for (std::int64_t e = parent[state]; e >= 0; e = parent[lts.edges[static_cast<std::size_t>(e)].from])
      path.push_back(static_cast<std::size_t>(e));
    std::reverse(path.begin(), path.end());
    return path;
  }
};

Verdict notFound(const Lts& lts, VerdictResult whenComplete) {
  Verdict v;
  v.result = lts.truncated ? VerdictResult::Unknown : whenComplete;
  if (lts.truncated) v.note = "state space truncated";
  return v;
}

std::optional<Value> lookupValue(const ComponentState& c, const StateTerm& t) {
  if (std::any_of(t.index.begin(), t.index.end(), [](const auto& i) { return !i.has_value(); })) return std::nullopt;
  std::vector<Value> index;
  for (const auto& i : t.index) index.push_back(*i);
  if (const Value* v = c.env().find(t.attr, index)) return *v;
  return std::nullopt;
}

// Values a term denotes; nullopt when a non-wildcard reference is absent.
std::optional<std::vector<Value>> termValues(const StateTerm& t, const SystemState& s) {
  if (!t.isRef) return std::vector<Value>{t.value};
  std::vector<Value> out;
  if (!t.hasWildcard()) {
    for (const auto& c : s.components()) {
      if (c.name() != t.component) continue;
      if (auto v = lookupValue(c, t)) return std::vector<Value>{*v};
    }
    return std::nullopt;
  }
  for (const auto& c : s.components()) {
    if (t.component != "*" && c.name() != t.component) continue;
    for (const auto& [key, value] : c.env().entries()) {
      if (key.name != t.attr || key.index.size() != t.index.size()) continue;
      bool match = true;
      for (std::size_t i = 0; i < key.index.size() && match; ++i)
        match = !t.index[i] || *t.index[i] == key.index[i];
      if (match) out.push_back(value);
    }
  }
  return out;
}

}  // namespace

bool evalStateExpr(const StateExprPtr& expr, const SystemState& state) {
  switch (expr->kind) {
    case StateExprKind::True: return true;
    case StateExprKind::False: return false;
    case StateExprKind::And: return evalStateExpr(expr->left, state) && evalStateExpr(expr->right, state);
    case StateExprKind::Or: return evalStateExpr(expr->left, state) || evalStateExpr(expr->right, state);
    case StateExprKind::Not: return !evalStateExpr(expr->left, state);
    case StateExprKind::Compare: {
      auto lhs = termValues(expr->lhs, state);
      auto rhs = termValues(expr->rhs, state);
      if (!lhs || !rhs) return false;
      for (const auto& a : *lhs)
        for (const auto& b : *rhs) {
          try {
            if (!compareValues(expr->op, a, b)) return false;
          } catch (const EvalError&) {
            return false;
          }
        }
      return true;
    }
  }
  return false;
}

Verdict checkReachable(const Lts& lts, const EventPattern& event) {
  const EventMatcher match(lts, event);
  const Bfs bfs(lts);
  for (std::uint32_t s : bfs.order)
    for (const Edge& e : lts.outgoing(s))
      if (match(lts.labels[e.label])) {
        Verdict v;
        v.result = VerdictResult::Holds;
        v.path = bfs.pathTo(lts, s);
        v.path.push_back(lts.edgeIndex(e));
        return v;
      }
  return notFound(lts, VerdictResult::Fails);
}

Verdict checkReachable(const Lts& lts, const StatePredicate& holds) {
  const Bfs bfs(lts);
  for (std::uint32_t s : bfs.order)
    if (holds(s)) {
      Verdict v;
      v.result = VerdictResult::Holds;
      v.path = bfs.pathTo(lts, s);
      return v;
    }
  return notFound(lts, VerdictResult::Fails);
}

Verdict checkInvariant(const Lts& lts, const StatePredicate& holds) {
  const Bfs bfs(lts);
  for (std::uint32_t s : bfs.order)
    if (!holds(s)) {
      Verdict v;
      v.result = VerdictResult::Fails;
      v.path = bfs.pathTo(lts, s);
      v.note = "violated in state " + std::to_string(s);
      return v;
    }
  return notFound(lts, VerdictResult::Holds);
}

Verdict checkLeadsTo(const Lts& lts, const EventPattern& trigger, const std::vector<EventPattern>& goals) {
  Verdict v;
  if (lts.truncated) {
    v.note = "state space truncated";
    return v;
  }
  const EventMatcher isTrigger(lts, trigger);
  std::vector<EventMatcher> goalMatchers;
  for (const auto& g : goals) goalMatchers.emplace_back(lts, g);
  std::vector<bool> goalLabel(lts.labels.size());
  for (std::size_t l = 0; l < lts.labels.size(); ++l)
    goalLabel[l] = std::any_of(goalMatchers.begin(), goalMatchers.end(),
                               [&](const EventMatcher& m) { return m(lts.labels[l]); });

  // good[s]: every maximal path from s takes a goal edge. Least fixpoint,
  // computed backwards by counting the goal-free edges still undecided.
  const std::size_t n = lts.stateCount();
  std::vector<std::uint32_t> pending(n, 0);
  std::vector<std::vector<std::uint32_t>> preds(n);
  std::vector<bool> good(n, false);
  for (const Edge& e : lts.edges) {
    if (goalLabel[e.label]) continue;
    ++pending[e.from];
    preds[e.to].push_back(e.from);
  }
  std::deque<std::uint32_t> work;
  for (std::uint32_t s = 0; s < n; ++s)
    if (!lts.outgoing(s).empty() && pending[s] == 0) {
      good[s] = true;
      work.push_back(s);
    }
  while (!work.empty()) {
    const std::uint32_t s = work.front();
    work.pop_front();
    for (std::uint32_t p : preds[s])
      if (--pending[p] == 0 && !good[p]) {
        good[p] = true;
        work.push_back(p);
      }
  }

  const Bfs bfs(lts);
  bool triggered = false;
  for (std::uint32_t s : bfs.order) {
    for (const Edge& e : lts.outgoing(s)) {
      if (!isTrigger(lts.labels[e.label])) continue;
      triggered = true;
      if (good[e.to]) continue;
      // Counterexample: prefix to the trigger, then goal-free edges through
      // bad states until a terminal state or a repeated state.
      v.result = VerdictResult::Fails;
      v.path = bfs.pathTo(lts, s);
      v.path.push_back(lts.edgeIndex(e));
      std::unordered_map<std::uint32_t, std::size_t> at;
      std::uint32_t cur = e.to;
      while (true) {
        at.emplace(cur, v.path.size());
        const auto out = lts.outgoing(cur);
        if (out.empty()) {
          v.note = "terminal state " + std::to_string(cur) + " reached without a goal event";
          break;
        }
        const Edge* step = nullptr;
        for (const Edge& f : out)
          if (!goalLabel[f.label] && !good[f.to]) {
            step = &f;
            break;
          }
        v.path.push_back(lts.edgeIndex(*step));
        cur = step->to;
        if (auto it = at.find(cur); it != at.end()) {
          v.loopStart = it->second;
          v.note = "cycle without a goal event";
          break;
        }
      }
      return v;
    }
  }
  v.result = VerdictResult::Holds;
  if (!triggered) v.note = "trigger never occurs";
  return v;
}

Verdict checkProperty(const Exploration& ex, const PropertyDecl& property) {
  Verdict v;
  auto stateHolds = [&](std::uint32_t s) { return evalStateExpr(property.state, ex.states[s]); };
  switch (property.kind) {
    case PropertyDecl::Kind::Reachable:
      v = property.event ? checkReachable(ex.lts, *property.event) : checkReachable(ex.lts, stateHolds);
      break;
    case PropertyDecl::Kind::Invariant:
      v = checkInvariant(ex.lts, stateHolds);
      break;
    case PropertyDecl::Kind::LeadsTo:
      v = checkLeadsTo(ex.lts, property.trigger, property.goals);
      break;
  }
  v.property = property.name;
  return v;
}

}  // namespace abc
