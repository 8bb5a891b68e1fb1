#include "abc/term.hpp"

#include <algorithm>

#include "abc/hash.hpp"

namespace abc {

SourceSpan SourceSpan::cover(const SourceSpan& a, const SourceSpan& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan s = a;
  s.endLine = b.endLine;
  s.endColumn = b.endColumn;
  return s;
}

namespace {

std::uint64_t hashOf(const Expr& e) { return e ? e->hash : 0x9e3779b97f4a7c15ull; }
std::uint64_t hashOf(const Pred& p) { return p ? p->hash : 0x51afd7ed558ccd4full; }
std::uint64_t hashOf(const Proc& p) { return p ? p->hash : 0xc4ceb9fe1a85ec53ull; }

void hashExprs(Fnv1a& h, const std::vector<Expr>& xs) {
  h.u64(xs.size());
  for (const auto& x : xs) h.u64(hashOf(x));
}

std::uint64_t computeHash(const ExprNode& n) {
  Fnv1a h;
  h.u64(static_cast<std::uint64_t>(n.kind));
  if (n.kind == ExprKind::Literal) h.u64(n.value.hash());
  h.str(n.name);
  hashExprs(h, n.args);
  return h.value();
}

std::uint64_t computeHash(const PredNode& n) {
  Fnv1a h;
  h.u64(100 + static_cast<std::uint64_t>(n.kind));
  h.u64(static_cast<std::uint64_t>(n.op));
  h.u64(hashOf(n.lhs)).u64(hashOf(n.rhs));
  h.str(n.name);
  hashExprs(h, n.args);
  h.u64(hashOf(n.left)).u64(hashOf(n.right));
  return h.value();
}

std::uint64_t computeHash(const ProcNode& n) {
  Fnv1a h;
  h.u64(200 + static_cast<std::uint64_t>(n.kind));
  h.u64(hashOf(n.guard));
  h.u64(n.binders.size());
  for (const auto& b : n.binders) h.str(b);
  hashExprs(h, n.payload);
  h.u64(n.updates.size());
  for (const auto& u : n.updates) {
    h.str(u.attr);
    hashExprs(h, u.index);
    h.u64(hashOf(u.rhs));
  }
  h.u64(hashOf(n.next)).u64(hashOf(n.other));
  h.str(n.name);
  h.u64(n.captures.size());
  for (const auto& c : n.captures) h.str(c);
  h.u64(n.bindings.size());
  for (const auto& [k, v] : n.bindings) h.str(k).u64(v.hash());
  return h.value();
}

Expr finish(ExprNode n) {
  n.hash = computeHash(n);
  return std::make_shared<const ExprNode>(std::move(n));
}
Pred finish(PredNode n) {
  n.hash = computeHash(n);
  return std::make_shared<const PredNode>(std::move(n));
}
Proc finish(ProcNode n) {
  n.hash = computeHash(n);
  return std::make_shared<const ProcNode>(std::move(n));
}

template <typename T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int compareExprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (int c = cmp3(a.size(), b.size())) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare(a[i], b[i])) return c;
  }
  return 0;
}

// Rank used by the canonical term order; calls sort first, inaction last.
int procRank(ProcKind k) {
  switch (k) {
    case ProcKind::Call: return 0;
    case ProcKind::Output: return 1;
    case ProcKind::Input: return 2;
    case ProcKind::Aware: return 3;
    case ProcKind::Choice: return 4;
    case ProcKind::Par: return 5;
    case ProcKind::Inact: return 6;
  }
  return 7;
}

int compareUpdates(const std::vector<Update>& a, const std::vector<Update>& b) {
  if (int c = cmp3(a.size(), b.size())) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = a[i].attr.compare(b[i].attr)) return c < 0 ? -1 : 1;
    if (int c = compareExprs(a[i].index, b[i].index)) return c;
    if (int c = compare(a[i].rhs, b[i].rhs)) return c;
  }
  return 0;
}

}  // namespace

// --- construction ----------------------------------------------------------

Expr makeLiteral(Value v, SourceSpan span) {
  ExprNode n;
  n.kind = ExprKind::Literal;
  n.value = std::move(v);
  n.span = span;
  return finish(std::move(n));
}

Expr makeVar(std::string name, SourceSpan span) {
  ExprNode n;
  n.kind = ExprKind::Var;
  n.name = std::move(name);
  n.span = span;
  return finish(std::move(n));
}

Expr makeAttr(std::string name, std::vector<Expr> index, SourceSpan span) {
  ExprNode n;
  n.kind = ExprKind::Attr;
  n.name = std::move(name);
  n.args = std::move(index);
  n.span = span;
  return finish(std::move(n));
}

Expr makeThisAttr(std::string name, std::vector<Expr> index, SourceSpan span) {
  ExprNode n;
  n.kind = ExprKind::ThisAttr;
  n.name = std::move(name);
  n.args = std::move(index);
  n.span = span;
  return finish(std::move(n));
}

Expr makeApply(std::string fn, std::vector<Expr> args, SourceSpan span) {
  ExprNode n;
  n.kind = ExprKind::Apply;
  n.name = std::move(fn);
  n.args = std::move(args);
  n.span = span;
  return finish(std::move(n));
}

bool isBinaryOperator(const std::string& fn) {
  return fn == "+" || fn == "-" || fn == "*" || fn == "/";
}

const char* cmpOpText(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

Pred makeTrue(SourceSpan span) {
  PredNode n;
  n.kind = PredKind::True;
  n.span = span;
  return finish(std::move(n));
}

Pred makeFalse(SourceSpan span) {
  PredNode n;
  n.kind = PredKind::False;
  n.span = span;
  return finish(std::move(n));
}

Pred makeCompare(CmpOp op, Expr lhs, Expr rhs, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::Compare;
  n.op = op;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  n.span = span;
  return finish(std::move(n));
}

Pred makeMember(Expr elem, Expr set, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::Member;
  n.lhs = std::move(elem);
  n.rhs = std::move(set);
  n.span = span;
  return finish(std::move(n));
}

Pred makeAtom(std::string name, std::vector<Expr> args, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::Atom;
  n.name = std::move(name);
  n.args = std::move(args);
  n.span = span;
  return finish(std::move(n));
}

Pred makeAnd(Pred a, Pred b, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::And;
  n.left = std::move(a);
  n.right = std::move(b);
  n.span = span;
  return finish(std::move(n));
}

Pred makeOr(Pred a, Pred b, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::Or;
  n.left = std::move(a);
  n.right = std::move(b);
  n.span = span;
  return finish(std::move(n));
}

Pred makeNot(Pred a, SourceSpan span) {
  PredNode n;
  n.kind = PredKind::Not;
  n.left = std::move(a);
  n.span = span;
  return finish(std::move(n));
}

namespace {

bool exprHas(const Expr& e, ExprKind k) {
  if (!e) return false;
  if (e->kind == k) return true;
  return std::any_of(e->args.begin(), e->args.end(), [k](const Expr& a) { return exprHas(a, k); });
}

bool predHas(const Pred& p, ExprKind k) {
  if (!p) return false;
  switch (p->kind) {
    case PredKind::True:
    case PredKind::False:
      return false;
    case PredKind::Compare:
    case PredKind::Member:
      return exprHas(p->lhs, k) || exprHas(p->rhs, k);
    case PredKind::Atom:
      return std::any_of(p->args.begin(), p->args.end(), [k](const Expr& a) { return exprHas(a, k); });
    case PredKind::And:
    case PredKind::Or:
      return predHas(p->left, k) || predHas(p->right, k);
    case PredKind::Not:
      return predHas(p->left, k);
  }
  return false;
}

}  // namespace

bool isClosed(const Pred& p) { return !predHas(p, ExprKind::ThisAttr); }
bool hasVariables(const Pred& p) { return predHas(p, ExprKind::Var); }

Proc makeInact(SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Inact;
  n.span = span;
  return finish(std::move(n));
}

Proc makeInput(Pred guard, std::vector<std::string> binders, std::vector<Update> updates, Proc next,
               SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Input;
  n.guard = std::move(guard);
  n.binders = std::move(binders);
  n.updates = std::move(updates);
  n.next = std::move(next);
  n.span = span;
  return finish(std::move(n));
}

Proc makeOutput(std::vector<Expr> payload, Pred target, std::vector<Update> updates, Proc next,
                SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Output;
  n.payload = std::move(payload);
  n.guard = std::move(target);
  n.updates = std::move(updates);
  n.next = std::move(next);
  n.span = span;
  return finish(std::move(n));
}

Proc makeAware(Pred guard, Proc body, SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Aware;
  n.guard = std::move(guard);
  n.next = std::move(body);
  n.span = span;
  return finish(std::move(n));
}

Proc makeChoice(Proc a, Proc b, SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Choice;
  n.next = std::move(a);
  n.other = std::move(b);
  n.span = span;
  return finish(std::move(n));
}

Proc makePar(Proc a, Proc b, SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Par;
  n.next = std::move(a);
  n.other = std::move(b);
  n.span = span;
  return finish(std::move(n));
}

Proc makeCall(std::string name, std::vector<std::string> captures, Substitution bindings, SourceSpan span) {
  ProcNode n;
  n.kind = ProcKind::Call;
  n.name = std::move(name);
  n.captures = std::move(captures);
  n.bindings = std::move(bindings);
  n.span = span;
  return finish(std::move(n));
}

// --- equality / order ------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
  if (a == b) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  if (a->kind == ExprKind::Literal) {
    if (int c = Value::compare(a->value, b->value)) return c;
  }
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  return compareExprs(a->args, b->args);
}

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

int compare(const Pred& a, const Pred& b) {
  if (a == b) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case PredKind::True:
    case PredKind::False:
      return 0;
    case PredKind::Compare:
      if (int c = cmp3(static_cast<int>(a->op), static_cast<int>(b->op))) return c;
      [[fallthrough]];
    case PredKind::Member:
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    case PredKind::Atom:
      if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
      return compareExprs(a->args, b->args);
    case PredKind::And:
    case PredKind::Or:
      if (int c = compare(a->left, b->left)) return c;
      return compare(a->right, b->right);
    case PredKind::Not:
      return compare(a->left, b->left);
  }
  return 0;
}

bool equal(const Pred& a, const Pred& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

int compare(const Proc& a, const Proc& b) {
  if (a == b) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (int c = cmp3(procRank(a->kind), procRank(b->kind))) return c;
  switch (a->kind) {
    case ProcKind::Inact:
      return 0;
    case ProcKind::Call: {
      if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
      if (int c = cmp3(a->captures, b->captures)) return c;
      if (int c = cmp3(a->bindings.size(), b->bindings.size())) return c;
      auto ia = a->bindings.begin();
      auto ib = b->bindings.begin();
      for (; ia != a->bindings.end(); ++ia, ++ib) {
        if (int c = ia->first.compare(ib->first)) return c < 0 ? -1 : 1;
        if (int c = Value::compare(ia->second, ib->second)) return c;
      }
      return 0;
    }
    case ProcKind::Output:
      if (int c = compareExprs(a->payload, b->payload)) return c;
      [[fallthrough]];
    case ProcKind::Input:
      if (int c = cmp3(a->binders, b->binders)) return c;
      if (int c = compare(a->guard, b->guard)) return c;
      if (int c = compareUpdates(a->updates, b->updates)) return c;
      return compare(a->next, b->next);
    case ProcKind::Aware:
      if (int c = compare(a->guard, b->guard)) return c;
      return compare(a->next, b->next);
    case ProcKind::Choice:
    case ProcKind::Par:
      if (int c = compare(a->next, b->next)) return c;
      return compare(a->other, b->other);
  }
  return 0;
}

bool equal(const Proc& a, const Proc& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

bool equalUpdates(const std::vector<Update>& a, const std::vector<Update>& b) {
  return compareUpdates(a, b) == 0;
}

// --- spec ------------------------------------------------------------------

const Value* ExternDecl::lookup(const std::vector<Value>& args) const {
  for (const auto& [key, result] : table) {
    if (compareSequences(key, args) == 0) return &result;
  }
  return nullptr;
}

bool StateTerm::hasWildcard() const {
  if (!isRef) return false;
  if (component == "*") return true;
  return std::any_of(index.begin(), index.end(), [](const auto& i) { return !i.has_value(); });
}

bool operator==(const StateTerm& a, const StateTerm& b) {
  if (a.isRef != b.isRef) return false;
  if (!a.isRef) return a.value == b.value;
  return a.component == b.component && a.attr == b.attr && a.index == b.index;
}

bool equal(const StateExprPtr& a, const StateExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case StateExprKind::True:
    case StateExprKind::False:
      return true;
    case StateExprKind::Compare:
      return a->op == b->op && a->lhs == b->lhs && a->rhs == b->rhs;
    case StateExprKind::And:
    case StateExprKind::Or:
      return equal(a->left, b->left) && equal(a->right, b->right);
    case StateExprKind::Not:
      return equal(a->left, b->left);
  }
  return false;
}

const ExternDecl* SystemSpec::findExtern(const std::string& name) const {
  for (const auto& e : externs)
    if (e.name == name) return &e;
  return nullptr;
}

const ProcDef* SystemSpec::findProc(const std::string& name) const {
  for (const auto& p : procs)
    if (p.name == name) return &p;
  return nullptr;
}

const PropertyDecl* SystemSpec::findProperty(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

std::optional<std::size_t> SystemSpec::componentIndex(const std::string& name) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].name == name) return i;
  return std::nullopt;
}

namespace {

bool equalExtern(const ExternDecl& a, const ExternDecl& b) {
  if (a.name != b.name || a.kind != b.kind) return false;
  if (a.domain != b.domain) return false;
  if (a.table.size() != b.table.size()) return false;
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    if (compareSequences(a.table[i].first, b.table[i].first) != 0) return false;
    if (a.table[i].second != b.table[i].second) return false;
  }
  return true;
}

bool equalComponent(const ComponentDecl& a, const ComponentDecl& b) {
  if (a.name != b.name || a.interface != b.interface || !equal(a.run, b.run)) return false;
  if (a.attrs.size() != b.attrs.size()) return false;
  for (std::size_t i = 0; i < a.attrs.size(); ++i) {
    const auto& x = a.attrs[i];
    const auto& y = b.attrs[i];
    if (x.name != y.name || compareSequences(x.index, y.index) != 0 || x.value != y.value) return false;
  }
  return true;
}

bool equalProperty(const PropertyDecl& a, const PropertyDecl& b) {
  return a.name == b.name && a.kind == b.kind && a.event == b.event && equal(a.state, b.state) &&
         a.trigger == b.trigger && a.goals == b.goals;
}

template <typename T, typename Eq>
bool equalSeq(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool equal(const SystemSpec& a, const SystemSpec& b) {
  return equalSeq(a.externs, b.externs, equalExtern) &&
         equalSeq(a.procs, b.procs,
                  [](const ProcDef& x, const ProcDef& y) { return x.name == y.name && equal(x.body, y.body); }) &&
         equalSeq(a.components, b.components, equalComponent) &&
         equalSeq(a.properties, b.properties, equalProperty);
}

}  // namespace abc
