#pragma once

// AbC term model: expressions, predicates, processes, and parsed system
// specifications. All nodes are immutable once built and shared through
// shared_ptr<const ...>; each node carries a structural hash computed at
// construction. Source spans never take part in equality or hashing.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abc/value.hpp"

namespace abc {

struct SourceSpan {
  std::uint32_t line = 0;  // 1-based; 0 means "no location"
  std::uint32_t column = 0;
  std::uint32_t endLine = 0;
  std::uint32_t endColumn = 0;

  bool valid() const { return line != 0; }
  static SourceSpan cover(const SourceSpan& a, const SourceSpan& b);
};

/// Variable bindings produced by receptions. Ordered so iteration and
/// hashing are deterministic.
using Substitution = std::map<std::string, Value>;

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind { Literal, Var, Attr, ThisAttr, Apply };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Literal;
  Value value;              // Literal
  std::string name;         // Var, Attr, ThisAttr (attribute), Apply (function)
  std::vector<Expr> args;   // Attr/ThisAttr index, Apply arguments
  SourceSpan span;
  std::uint64_t hash = 0;
};

Expr makeLiteral(Value v, SourceSpan span = {});
Expr makeVar(std::string name, SourceSpan span = {});
Expr makeAttr(std::string name, std::vector<Expr> index = {}, SourceSpan span = {});
Expr makeThisAttr(std::string name, std::vector<Expr> index = {}, SourceSpan span = {});
Expr makeApply(std::string fn, std::vector<Expr> args, SourceSpan span = {});

bool isBinaryOperator(const std::string& fn);

// ---------------------------------------------------------------------------
// Predicates

enum class PredKind { True, False, Compare, Member, Atom, And, Or, Not };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmpOpText(CmpOp op);

struct PredNode;
using Pred = std::shared_ptr<const PredNode>;

struct PredNode {
  PredKind kind = PredKind::True;
  CmpOp op = CmpOp::Eq;     // Compare
  Expr lhs, rhs;            // Compare; Member (element, set)
  std::string name;         // Atom
  std::vector<Expr> args;   // Atom
  Pred left, right;         // And/Or; Not uses left
  SourceSpan span;
  std::uint64_t hash = 0;
};

Pred makeTrue(SourceSpan span = {});
Pred makeFalse(SourceSpan span = {});
Pred makeCompare(CmpOp op, Expr lhs, Expr rhs, SourceSpan span = {});
Pred makeMember(Expr elem, Expr set, SourceSpan span = {});
Pred makeAtom(std::string name, std::vector<Expr> args, SourceSpan span = {});
Pred makeAnd(Pred a, Pred b, SourceSpan span = {});
Pred makeOr(Pred a, Pred b, SourceSpan span = {});
Pred makeNot(Pred a, SourceSpan span = {});

/// Closed iff no this.a reference occurs (variables are checked separately).
bool isClosed(const Pred& p);
bool hasVariables(const Pred& p);

// ---------------------------------------------------------------------------
// Processes

enum class ProcKind { Inact, Input, Output, Aware, Choice, Par, Call };

struct ProcNode;
using Proc = std::shared_ptr<const ProcNode>;

struct Update {
  std::string attr;
  std::vector<Expr> index;
  Expr rhs;
  SourceSpan span;
};

struct ProcNode {
  ProcKind kind = ProcKind::Inact;
  Pred guard;                          // Input guard, Output target, Aware guard
  std::vector<std::string> binders;    // Input
  std::vector<Expr> payload;           // Output
  std::vector<Update> updates;         // Input/Output: applied before `next`
  Proc next;                           // Input/Output continuation, Aware body, Choice/Par left
  Proc other;                          // Choice/Par right
  std::string name;                    // Call
  std::vector<std::string> captures;   // Call: free variables of the definition (sorted)
  Substitution bindings;               // Call: values captured at the call site
  SourceSpan span;
  std::uint64_t hash = 0;
};

Proc makeInact(SourceSpan span = {});
Proc makeInput(Pred guard, std::vector<std::string> binders, std::vector<Update> updates, Proc next,
               SourceSpan span = {});
Proc makeOutput(std::vector<Expr> payload, Pred target, std::vector<Update> updates, Proc next,
                SourceSpan span = {});
Proc makeAware(Pred guard, Proc body, SourceSpan span = {});
Proc makeChoice(Proc a, Proc b, SourceSpan span = {});
Proc makePar(Proc a, Proc b, SourceSpan span = {});
Proc makeCall(std::string name, std::vector<std::string> captures = {}, Substitution bindings = {},
              SourceSpan span = {});

// Structural equality and a fixed total order (spans ignored).
bool equal(const Expr& a, const Expr& b);
bool equal(const Pred& a, const Pred& b);
bool equal(const Proc& a, const Proc& b);
int compare(const Expr& a, const Expr& b);
int compare(const Pred& a, const Pred& b);
int compare(const Proc& a, const Proc& b);
bool equalUpdates(const std::vector<Update>& a, const std::vector<Update>& b);

// ---------------------------------------------------------------------------
// Specifications

struct ExternDecl {
  enum class Kind { EnumDomain, Table };
  std::string name;
  Kind kind = Kind::EnumDomain;
  std::vector<Value> domain;                                   // EnumDomain
  std::vector<std::pair<std::vector<Value>, Value>> table;     // Table, declaration order
  SourceSpan span;

  /// Table lookup; nullptr when the argument tuple has no entry.
  const Value* lookup(const std::vector<Value>& args) const;
  std::size_t arity() const { return table.empty() ? 0 : table.front().first.size(); }
};

struct ProcDef {
  std::string name;
  Proc body;
  SourceSpan span;
};

struct AttrInit {
  std::string name;
  std::vector<Value> index;
  Value value;
  SourceSpan span;
};

struct ComponentDecl {
  std::string name;
  std::vector<AttrInit> attrs;
  std::vector<std::string> interface;
  Proc run;
  SourceSpan span;
};

// Properties ----------------------------------------------------------------

struct EventPattern {
  enum class Direction { Sent, Received };
  Direction direction = Direction::Sent;
  std::string component;  // "*" matches every component
  std::string tag;        // first payload element, compared as text
  SourceSpan span;

  friend bool operator==(const EventPattern& a, const EventPattern& b) {
    return a.direction == b.direction && a.component == b.component && a.tag == b.tag;
  }
};

/// Operand of a state expression: a literal or a reference Comp.attr[idx].
/// Wildcards ("*" component, nullopt index element) quantify universally over
/// the entries that exist.
struct StateTerm {
  bool isRef = false;
  Value value;
  std::string component;
  std::string attr;
  std::vector<std::optional<Value>> index;
  SourceSpan span;

  bool hasWildcard() const;
  friend bool operator==(const StateTerm& a, const StateTerm& b);
};

enum class StateExprKind { True, False, Compare, And, Or, Not };

struct StateExpr;
using StateExprPtr = std::shared_ptr<const StateExpr>;

struct StateExpr {
  StateExprKind kind = StateExprKind::True;
  CmpOp op = CmpOp::Eq;
  StateTerm lhs, rhs;
  StateExprPtr left, right;
  SourceSpan span;
};

bool equal(const StateExprPtr& a, const StateExprPtr& b);

struct PropertyDecl {
  enum class Kind { Reachable, Invariant, LeadsTo };
  std::string name;
  Kind kind = Kind::Reachable;
  std::optional<EventPattern> event;  // Reachable(event)
  StateExprPtr state;                 // Reachable(state) / Invariant
  EventPattern trigger;               // LeadsTo
  std::vector<EventPattern> goals;    // LeadsTo, disjunction
  SourceSpan span;
};

struct SystemSpec {
  std::vector<ExternDecl> externs;
  std::vector<ProcDef> procs;
  std::vector<ComponentDecl> components;
  std::vector<PropertyDecl> properties;

  const ExternDecl* findExtern(const std::string& name) const;
  const ProcDef* findProc(const std::string& name) const;
  const PropertyDecl* findProperty(const std::string& name) const;
  std::optional<std::size_t> componentIndex(const std::string& name) const;
};

/// AST equality of two specifications (spans ignored, declaration order within
/// each category significant).
bool equal(const SystemSpec& a, const SystemSpec& b);

}  // namespace abc
