#pragma once

// Reference implementations used to cross-check the engine. They are written
// for clarity over speed and share no code with the library beyond the data
// types.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abc/checker.hpp"
#include "abc/env.hpp"
#include "abc/explorer.hpp"
#include "abc/term.hpp"

namespace abc::oracle {

// --- predicate satisfaction over the comparison fragment --------------------
//
// Operands are literals, attributes with literal indices (read from `remote`),
// this-attributes (read from `local`) and variables (read from `vars`). Any
// absent reference or ill-typed comparison makes the atom false.

struct Scope {
  const AttributeEnv* remote = nullptr;
  const AttributeEnv* local = nullptr;
  const Substitution* vars = nullptr;
};

inline std::optional<Value> operand(const Expr& e, const Scope& s) {
  switch (e->kind) {
    case ExprKind::Literal: return e->value;
    case ExprKind::Var: {
      if (!s.vars) return std::nullopt;
      auto it = s.vars->find(e->name);
      if (it == s.vars->end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::Attr:
    case ExprKind::ThisAttr: {
      const AttributeEnv* env = e->kind == ExprKind::Attr ? s.remote : s.local;
      if (!env) return std::nullopt;
      std::vector<Value> index;
      for (const auto& a : e->args) {
        if (a->kind != ExprKind::Literal) return std::nullopt;
        index.push_back(a->value);
      }
      for (const auto& [key, value] : env->entries())
        if (key.name == e->name && key.index == index) return value;
      return std::nullopt;
    }
    case ExprKind::Apply: return std::nullopt;
  }
  return std::nullopt;
}

// -1 / 0 / 1, or nullopt when the two values cannot be ordered.
inline std::optional<int> order(const Value& a, const Value& b) {
  auto num = [](const Value& v) -> std::optional<double> {
    if (v.kind() == ValueKind::Int) return static_cast<double>(v.asInt());
    if (v.kind() == ValueKind::Float) return v.asFloat();
    return std::nullopt;
  };
  if (auto x = num(a), y = num(b); x && y) return *x < *y ? -1 : (*x > *y ? 1 : 0);
  if (a.kind() == ValueKind::Text && b.kind() == ValueKind::Text) return a.asText().compare(b.asText()) < 0 ? -1 : (a.asText() == b.asText() ? 0 : 1);
  return std::nullopt;
}

inline bool same(const Value& a, const Value& b) {
  if (a.isNumeric() && b.isNumeric()) return a.asNumber() == b.asNumber();
  return a == b;
}

inline bool holds(const Pred& p, const Scope& s) {
  switch (p->kind) {
    case PredKind::True: return true;
    case PredKind::False: return false;
    case PredKind::And: return holds(p->left, s) && holds(p->right, s);
    case PredKind::Or: return holds(p->left, s) || holds(p->right, s);
    case PredKind::Not: return !holds(p->left, s);
    case PredKind::Atom: return false;
    case PredKind::Member: {
      auto e = operand(p->lhs, s), c = operand(p->rhs, s);
      if (!e || !c || (c->kind() != ValueKind::Set && c->kind() != ValueKind::Tuple)) return false;
      for (const auto& item : c->items())
        if (same(*e, item)) return true;
      return false;
    }
    case PredKind::Compare: {
      auto a = operand(p->lhs, s), b = operand(p->rhs, s);
      if (!a || !b) return false;
      if (p->op == CmpOp::Eq) return same(*a, *b);
      if (p->op == CmpOp::Ne) return !same(*a, *b);
      auto c = order(*a, *b);
      if (!c) return false;
      switch (p->op) {
        case CmpOp::Lt: return *c < 0;
        case CmpOp::Le: return *c <= 0;
        case CmpOp::Gt: return *c > 0;
        default: return *c >= 0;
      }
    }
  }
  return false;
}

// --- reception --------------------------------------------------------------
//
// Number of input occurrences of a call-free process that accept the message,
// given the component's own environment and the sender's exposed one. Aware
// guards are evaluated on the component's environment.

inline std::size_t matchingInputs(const Proc& p, const AttributeEnv& own, const AttributeEnv& exposed,
                                  const std::vector<Value>& msg) {
  switch (p->kind) {
    case ProcKind::Inact:
    case ProcKind::Output:
    case ProcKind::Call: return 0;
    case ProcKind::Aware: {
      const Scope local{&own, &own, nullptr};
      return holds(p->guard, local) ? matchingInputs(p->next, own, exposed, msg) : 0;
    }
    case ProcKind::Choice:
    case ProcKind::Par: return matchingInputs(p->next, own, exposed, msg) + matchingInputs(p->other, own, exposed, msg);
    case ProcKind::Input: {
      if (p->binders.size() != msg.size()) return 0;
      Substitution vars;
      for (std::size_t i = 0; i < msg.size(); ++i) vars[p->binders[i]] = msg[i];
      return holds(p->guard, Scope{&exposed, &own, &vars}) ? 1 : 0;
    }
  }
  return 0;
}

inline AttributeEnv restrictTo(const AttributeEnv& env, const std::set<std::string>& names) {
  AttributeEnv out;
  for (const auto& [key, value] : env.entries())
    if (names.count(key.name)) out.set(key, value);
  return out;
}

// --- leads-to ---------------------------------------------------------------
//
// For every trigger edge reachable from the initial state, search the
// goal-free subgraph from its target for a terminal state or a cycle.

inline bool escapes(const Lts& lts, std::uint32_t start, const std::vector<bool>& goalEdge) {
  enum Color { White, Gray, Black };
  std::vector<Color> color(lts.stateCount(), White);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
  color[start] = Gray;
  while (!stack.empty()) {
    auto& [s, next] = stack.back();
    const auto out = lts.outgoing(s);
    if (out.empty()) return true;
    bool pushed = false;
    while (next < out.size()) {
      const Edge& e = out[next++];
      if (goalEdge[lts.edgeIndex(e)]) continue;
      if (color[e.to] == Gray) return true;
      if (color[e.to] == White) {
        color[e.to] = Gray;
        stack.emplace_back(e.to, 0);
        pushed = true;
        break;
      }
    }
    if (!pushed) {
      color[stack.back().first] = Black;
      stack.pop_back();
    }
  }
  return false;
}

inline bool leadsTo(const Lts& lts, const EventPattern& trigger, const std::vector<EventPattern>& goals) {
  auto matches = [&](const EdgeLabel& l, const EventPattern& p) {
    if (l.tag < 0 || lts.tags[static_cast<std::size_t>(l.tag)] != p.tag) return false;
    if (p.direction == EventPattern::Direction::Sent)
      return p.component == "*" || lts.componentNames[l.sender] == p.component;
    for (auto r : l.receivers)
      if (p.component == "*" || lts.componentNames[r] == p.component) return true;
    return false;
  };
  std::vector<bool> goalEdge(lts.edges.size());
  for (std::size_t i = 0; i < lts.edges.size(); ++i)
    for (const auto& g : goals) goalEdge[i] = goalEdge[i] || matches(lts.labels[lts.edges[i].label], g);

  std::vector<bool> reached(lts.stateCount(), false);
  std::vector<std::uint32_t> todo{lts.initial};
  reached[lts.initial] = true;
  while (!todo.empty()) {
    const std::uint32_t s = todo.back();
    todo.pop_back();
    for (const Edge& e : lts.outgoing(s)) {
      if (matches(lts.labels[e.label], trigger) && escapes(lts, e.to, goalEdge)) return false;
      if (!reached[e.to]) {
        reached[e.to] = true;
        todo.push_back(e.to);
      }
    }
  }
  return true;
}

/// Checks that a leads-to counterexample is a real path that avoids goals
/// after the trigger and ends in a terminal state or closes a cycle.
inline std::optional<std::string> validCounterexample(const Lts& lts, const Verdict& v, const EventPattern& trigger,
                                                      const std::vector<EventPattern>& goals) {
  if (v.path.empty()) return "empty path";
  EventMatcher isTrigger(lts, trigger);
  std::vector<EventMatcher> goalMatchers;
  for (const auto& g : goals) goalMatchers.emplace_back(lts, g);
  // The prefix may pass earlier triggers that were answered; the trigger that
  // fails is the first one after the last goal.
  std::uint32_t at = lts.initial;
  std::optional<std::size_t> triggerAt;
  for (std::size_t i = 0; i < v.path.size(); ++i) {
    const Edge& e = lts.edges[v.path[i]];
    if (e.from != at) return "path is not contiguous at step " + std::to_string(i);
    const EdgeLabel& l = lts.labels[e.label];
    if (std::any_of(goalMatchers.begin(), goalMatchers.end(), [&](const EventMatcher& g) { return g(l); }))
      triggerAt.reset();
    if (!triggerAt && isTrigger(l)) triggerAt = i;
    at = e.to;
  }
  if (!triggerAt) return "no trigger on the path";
  if (v.loopStart) {
    if (*v.loopStart <= *triggerAt || *v.loopStart >= v.path.size()) return "cycle starts before the trigger";
    if (lts.edges[v.path[*v.loopStart]].from != at) return "cycle does not close";
  } else if (!lts.outgoing(at).empty()) {
    return "path ends in a state with successors";
  }
  return std::nullopt;
}

}  // namespace abc::oracle
