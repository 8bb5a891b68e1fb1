// Identifier resolution and load-time validation.

#include <functional>
#include <map>
#include <set>

#include "abc/eval.hpp"
#include "abc/parser.hpp"

namespace abc {

namespace {

using Names = std::set<std::string>;

// --- resolution ------------------------------------------------------------

Expr rewriteExpr(const Expr& e, const Names& scope) {
  switch (e->kind) {
    case ExprKind::Literal:
    case ExprKind::Var:
      return e;
    case ExprKind::Attr:
      if (e->args.empty() && scope.count(e->name)) return makeVar(e->name, e->span);
      [[fallthrough]];
    case ExprKind::ThisAttr:
    case ExprKind::Apply: {
      std::vector<Expr> args;
      bool changed = false;
      for (const auto& a : e->args) {
        args.push_back(rewriteExpr(a, scope));
        changed |= args.back() != a;
      }
      if (!changed) return e;
      if (e->kind == ExprKind::Attr) return makeAttr(e->name, std::move(args), e->span);
      if (e->kind == ExprKind::ThisAttr) return makeThisAttr(e->name, std::move(args), e->span);
      return makeApply(e->name, std::move(args), e->span);
    }
  }
  return e;
}

Pred rewritePred(const Pred& p, const Names& scope) {
  switch (p->kind) {
    case PredKind::True:
    case PredKind::False:
      return p;
    case PredKind::Compare:
      return makeCompare(p->op, rewriteExpr(p->lhs, scope), rewriteExpr(p->rhs, scope), p->span);
    case PredKind::Member:
      return makeMember(rewriteExpr(p->lhs, scope), rewriteExpr(p->rhs, scope), p->span);
    case PredKind::Atom: {
      std::vector<Expr> args;
      for (const auto& a : p->args) args.push_back(rewriteExpr(a, scope));
      return makeAtom(p->name, std::move(args), p->span);
    }
    case PredKind::And:
      return makeAnd(rewritePred(p->left, scope), rewritePred(p->right, scope), p->span);
    case PredKind::Or:
      return makeOr(rewritePred(p->left, scope), rewritePred(p->right, scope), p->span);
    case PredKind::Not:
      return makeNot(rewritePred(p->left, scope), p->span);
  }
  return p;
}

std::vector<Update> rewriteUpdates(const std::vector<Update>& updates, const Names& scope) {
  std::vector<Update> out = updates;
  for (auto& u : out) {
    for (auto& i : u.index) i = rewriteExpr(i, scope);
    u.rhs = rewriteExpr(u.rhs, scope);
  }
  return out;
}

Names withBinders(const Names& scope, const std::vector<std::string>& binders) {
  Names s = scope;
  s.insert(binders.begin(), binders.end());
  return s;
}

Proc rewriteProc(const Proc& p, const Names& scope) {
  switch (p->kind) {
    case ProcKind::Inact:
    case ProcKind::Call:
      return p;
    case ProcKind::Input: {
      const Names inner = withBinders(scope, p->binders);
      return makeInput(rewritePred(p->guard, inner), p->binders, rewriteUpdates(p->updates, inner),
                       rewriteProc(p->next, inner), p->span);
    }
    case ProcKind::Output: {
      std::vector<Expr> payload;
      for (const auto& e : p->payload) payload.push_back(rewriteExpr(e, scope));
      return makeOutput(std::move(payload), rewritePred(p->guard, scope), rewriteUpdates(p->updates, scope),
                        rewriteProc(p->next, scope), p->span);
    }
    case ProcKind::Aware:
      return makeAware(rewritePred(p->guard, scope), rewriteProc(p->next, scope), p->span);
    case ProcKind::Choice:
      return makeChoice(rewriteProc(p->next, scope), rewriteProc(p->other, scope), p->span);
    case ProcKind::Par:
      return makePar(rewriteProc(p->next, scope), rewriteProc(p->other, scope), p->span);
  }
  return p;
}

// Union of the variable scopes at every call site of each definition.
bool collectScopes(const Proc& p, const Names& scope, std::map<std::string, Names>& scopes) {
  switch (p->kind) {
    case ProcKind::Inact:
      return false;
    case ProcKind::Input:
      return collectScopes(p->next, withBinders(scope, p->binders), scopes);
    case ProcKind::Output:
    case ProcKind::Aware:
      return collectScopes(p->next, scope, scopes);
    case ProcKind::Choice:
    case ProcKind::Par: {
      const bool a = collectScopes(p->next, scope, scopes);
      const bool b = collectScopes(p->other, scope, scopes);
      return a || b;
    }
    case ProcKind::Call: {
      Names& target = scopes[p->name];
      const std::size_t before = target.size();
      target.insert(scope.begin(), scope.end());
      return target.size() != before;
    }
  }
  return false;
}

// --- free variables -------------------------------------------------------

void exprVars(const Expr& e, const Names& bound, Names& out) {
  if (e->kind == ExprKind::Var && !bound.count(e->name)) out.insert(e->name);
  for (const auto& a : e->args) exprVars(a, bound, out);
}

void predVars(const Pred& p, const Names& bound, Names& out) {
  if (p->lhs) exprVars(p->lhs, bound, out);
  if (p->rhs) exprVars(p->rhs, bound, out);
  for (const auto& a : p->args) exprVars(a, bound, out);
  if (p->left) predVars(p->left, bound, out);
  if (p->right) predVars(p->right, bound, out);
}

void updateVars(const std::vector<Update>& updates, const Names& bound, Names& out) {
  for (const auto& u : updates) {
    for (const auto& i : u.index) exprVars(i, bound, out);
    exprVars(u.rhs, bound, out);
  }
}

using FreeMap = std::map<std::string, Names>;

void procVars(const Proc& p, const Names& bound, const FreeMap& fv, Names& out) {
  switch (p->kind) {
    case ProcKind::Inact:
      return;
    case ProcKind::Input: {
      const Names inner = withBinders(bound, p->binders);
      predVars(p->guard, inner, out);
      updateVars(p->updates, inner, out);
      procVars(p->next, inner, fv, out);
      return;
    }
    case ProcKind::Output:
      for (const auto& e : p->payload) exprVars(e, bound, out);
      predVars(p->guard, bound, out);
      updateVars(p->updates, bound, out);
      procVars(p->next, bound, fv, out);
      return;
    case ProcKind::Aware:
      predVars(p->guard, bound, out);
      procVars(p->next, bound, fv, out);
      return;
    case ProcKind::Choice:
    case ProcKind::Par:
      procVars(p->next, bound, fv, out);
      procVars(p->other, bound, fv, out);
      return;
    case ProcKind::Call: {
      auto it = fv.find(p->name);
      if (it == fv.end()) return;
      for (const auto& v : it->second)
        if (!bound.count(v) && !p->bindings.count(v)) out.insert(v);
      return;
    }
  }
}

FreeMap freeVariables(const SystemSpec& spec) {
  FreeMap fv;
  for (const auto& d : spec.procs) fv[d.name];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& d : spec.procs) {
      Names out;
      procVars(d.body, {}, fv, out);
      Names& cur = fv[d.name];
      if (out.size() != cur.size()) {
        cur.insert(out.begin(), out.end());
        changed = true;
      }
    }
  }
  return fv;
}

Proc setCaptures(const Proc& p, const FreeMap& fv) {
  switch (p->kind) {
    case ProcKind::Inact:
      return p;
    case ProcKind::Input:
      return makeInput(p->guard, p->binders, p->updates, setCaptures(p->next, fv), p->span);
    case ProcKind::Output:
      return makeOutput(p->payload, p->guard, p->updates, setCaptures(p->next, fv), p->span);
    case ProcKind::Aware:
      return makeAware(p->guard, setCaptures(p->next, fv), p->span);
    case ProcKind::Choice:
      return makeChoice(setCaptures(p->next, fv), setCaptures(p->other, fv), p->span);
    case ProcKind::Par:
      return makePar(setCaptures(p->next, fv), setCaptures(p->other, fv), p->span);
    case ProcKind::Call: {
      auto it = fv.find(p->name);
      std::vector<std::string> captures;
      if (it != fv.end()) captures.assign(it->second.begin(), it->second.end());
      if (captures == p->captures) return p;
      return makeCall(p->name, std::move(captures), p->bindings, p->span);
    }
  }
  return p;
}

// --- validation -------------------------------------------------------------

class Validator {
 public:
  explicit Validator(const SystemSpec& spec) : spec_(spec), externs_(spec.externs), fv_(freeVariables(spec)) {}

  std::vector<Diagnostic> run() {
    checkDuplicates();
    for (const auto& e : spec_.externs) checkExtern(e);
    for (const auto& d : spec_.procs) walk(d.body, {}, false);
    for (const auto& c : spec_.components) {
      walk(c.run, {}, true);
      checkComponent(c);
    }
    checkGuardedness();
    for (const auto& p : spec_.properties) checkProperty(p);
    return std::move(diags_);
  }

 private:
  void error(const char* code, std::string message, SourceSpan span) {
    diags_.push_back(Diagnostic{Severity::Error, span, code, std::move(message)});
  }

  template <typename T, typename Key>
  void duplicates(const std::vector<T>& items, Key key, const char* code, const char* what) {
    std::set<std::string> seen;
    for (const auto& item : items)
      if (!seen.insert(key(item)).second)
        error(code, std::string("duplicate ") + what + " '" + key(item) + "'", item.span);
  }

  void checkDuplicates() {
    duplicates(spec_.externs, [](const ExternDecl& d) { return d.name; }, "E-DUP-EXTERN", "extern");
    duplicates(spec_.procs, [](const ProcDef& d) { return d.name; }, "E-DUP-PROC", "process definition");
    duplicates(spec_.components, [](const ComponentDecl& d) { return d.name; }, "E-DUP-COMP", "component");
    duplicates(spec_.properties, [](const PropertyDecl& d) { return d.name; }, "E-DUP-PROP", "property");
  }

  void checkExtern(const ExternDecl& e) {
    if (e.kind == ExternDecl::Kind::EnumDomain) {
      if (e.domain.empty()) error("E-EMPTY-DOMAIN", "extern '" + e.name + "' has an empty domain", e.span);
      return;
    }
    std::set<std::vector<Value>> keys;
    for (const auto& [key, value] : e.table) {
      if (key.size() != e.arity())
        error("E-ARITY", "map extern '" + e.name + "' mixes key arities", e.span);
      if (!keys.insert(key).second) error("E-DUP-ENTRY", "map extern '" + e.name + "' repeats a key", e.span);
    }
  }

  // Expressions: known functions with the right arity; draws only where allowed.
  void checkExpr(const Expr& e, bool inPredicate) {
    for (const auto& a : e->args) checkExpr(a, inPredicate);
    if (e->kind != ExprKind::Apply) return;
    if (const ExternDecl* ext = externs_.find(e->name)) {
      if (ext->kind == ExternDecl::Kind::EnumDomain) {
        if (inPredicate)
          error("E-DRAW-PRED", "extern '" + e->name + "' draws a value and cannot appear in a predicate", e->span);
        if (!e->args.empty()) error("E-ARITY", "extern '" + e->name + "' takes no arguments", e->span);
      } else if (!ext->table.empty() && e->args.size() != ext->arity()) {
        error("E-ARITY",
              "map extern '" + e->name + "' expects " + std::to_string(ext->arity()) + " argument(s)", e->span);
      }
      return;
    }
    if (!isBuiltin(e->name)) {
      error("E-UNDEF-EXTERN", "undefined function '" + e->name + "'", e->span);
      return;
    }
    if (e->name != "tuple" && e->args.size() != 2)
      error("E-ARITY", "function '" + e->name + "' expects 2 arguments", e->span);
  }

  void checkPred(const Pred& p) {
    if (p->lhs) checkExpr(p->lhs, true);
    if (p->rhs) checkExpr(p->rhs, true);
    for (const auto& a : p->args) checkExpr(a, true);
    if (p->kind == PredKind::Atom) {
      const ExternDecl* ext = externs_.find(p->name);
      if (!ext || ext->kind != ExternDecl::Kind::Table)
        error("E-UNDEF-EXTERN", "predicate '" + p->name + "' is not a declared map extern", p->span);
      else if (!ext->table.empty() && p->args.size() != ext->arity())
        error("E-ARITY",
              "map extern '" + p->name + "' expects " + std::to_string(ext->arity()) + " argument(s)", p->span);
    }
    if (p->left) checkPred(p->left);
    if (p->right) checkPred(p->right);
  }

  void checkUpdates(const std::vector<Update>& updates) {
    for (const auto& u : updates) {
      for (const auto& i : u.index) checkExpr(i, false);
      checkExpr(u.rhs, false);
    }
  }

  // `root` marks a component's run term, where nothing may be free.
  void walk(const Proc& p, const Names& bound, bool root) {
    switch (p->kind) {
      case ProcKind::Inact:
        return;
      case ProcKind::Input: {
        Names seen;
        for (const auto& b : p->binders)
          if (!seen.insert(b).second) error("E-DUP-BINDER", "binder '" + b + "' repeated", p->span);
        checkPred(p->guard);
        checkUpdates(p->updates);
        const Names inner = withBinders(bound, p->binders);
        if (root) reportUnbound(p->guard, p->updates, {}, inner, p->span);
        walk(p->next, inner, root);
        return;
      }
      case ProcKind::Output:
        for (const auto& e : p->payload) checkExpr(e, false);
        checkPred(p->guard);
        checkUpdates(p->updates);
        if (root) reportUnbound(p->guard, p->updates, p->payload, bound, p->span);
        walk(p->next, bound, root);
        return;
      case ProcKind::Aware:
        checkPred(p->guard);
        if (root) reportUnbound(p->guard, {}, {}, bound, p->span);
        walk(p->next, bound, root);
        return;
      case ProcKind::Choice:
      case ProcKind::Par:
        walk(p->next, bound, root);
        walk(p->other, bound, root);
        return;
      case ProcKind::Call: {
        auto it = fv_.find(p->name);
        if (it == fv_.end()) {
          error("E-UNDEF-PROC", "undefined process '" + p->name + "'", p->span);
          return;
        }
        if (!root) return;
        for (const auto& v : it->second)
          if (!bound.count(v) && !p->bindings.count(v))
            error("E-UNBOUND", "process '" + p->name + "' needs variable '" + v + "', which is not bound here",
                  p->span);
        return;
      }
    }
  }

  void reportUnbound(const Pred& guard, const std::vector<Update>& updates, const std::vector<Expr>& payload,
                     const Names& bound, SourceSpan span) {
    Names out;
    predVars(guard, bound, out);
    updateVars(updates, bound, out);
    for (const auto& e : payload) exprVars(e, bound, out);
    for (const auto& v : out) error("E-UNBOUND", "variable '" + v + "' is not bound by an enclosing input", span);
  }

  // Processes reachable from a component's run term through calls.
  std::vector<const Proc*> reachable(const ComponentDecl& c) const {
    std::vector<const Proc*> out{&c.run};
    std::set<std::string> seen;
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::function<void(const Proc&)> visit = [&](const Proc& p) {
        if (p->kind == ProcKind::Call) {
          if (const ProcDef* d = spec_.findProc(p->name); d && seen.insert(p->name).second) out.push_back(&d->body);
          return;
        }
        if (p->next) visit(p->next);
        if (p->other) visit(p->other);
      };
      visit(*out[i]);
    }
    return out;
  }

  void checkComponent(const ComponentDecl& c) {
    std::set<std::pair<std::string, std::vector<Value>>> keys;
    Names declared;
    for (const auto& a : c.attrs) {
      declared.insert(a.name);
      if (!keys.insert({a.name, a.index}).second)
        error("E-DUP-ATTR", "attribute '" + a.name + "' initialized twice in component '" + c.name + "'", a.span);
    }
    Names attrNames = declared;
    for (const auto& i : c.interface)
      if (!attrNames.count(i))
        error("E-IFACE", "interface name '" + i + "' is not an attribute of component '" + c.name + "'", c.span);

    const auto procs = reachable(c);
    std::function<void(const Proc&)> targets = [&](const Proc& p) {
      if (p->kind == ProcKind::Call) return;
      for (const auto& u : p->updates) declared.insert(u.attr);
      if (p->next) targets(p->next);
      if (p->other) targets(p->other);
    };
    for (const Proc* p : procs) targets(*p);

    std::set<std::string> reported;
    auto local = [&](const Expr& e, auto& self, bool remote) -> void {
      const bool isLocal = e->kind == ExprKind::ThisAttr || (e->kind == ExprKind::Attr && !remote);
      if (isLocal && !declared.count(e->name) && reported.insert(e->name).second)
        error("E-UNBOUND",
              "'" + e->name + "' is neither a bound variable nor an attribute of component '" + c.name + "'",
              e->span);
      // Index of this.a is evaluated locally even inside a remote predicate.
      for (const auto& a : e->args) self(a, self, remote && e->kind != ExprKind::ThisAttr);
    };
    std::function<void(const Pred&, bool)> pred = [&](const Pred& p, bool remote) {
      if (p->lhs) local(p->lhs, local, remote);
      if (p->rhs) local(p->rhs, local, remote);
      for (const auto& a : p->args) local(a, local, remote);
      if (p->left) pred(p->left, remote);
      if (p->right) pred(p->right, remote);
    };
    std::function<void(const Proc&)> visit = [&](const Proc& p) {
      switch (p->kind) {
        case ProcKind::Input:
        case ProcKind::Output:
          pred(p->guard, true);
          for (const auto& e : p->payload) local(e, local, false);
          for (const auto& u : p->updates) {
            for (const auto& i : u.index) local(i, local, false);
            local(u.rhs, local, false);
          }
          break;
        case ProcKind::Aware:
          pred(p->guard, false);
          break;
        default:
          break;
      }
      if (p->kind == ProcKind::Call) return;
      if (p->next) visit(p->next);
      if (p->other) visit(p->other);
    };
    for (const Proc* p : procs) visit(*p);
  }

  // A call cycle that passes through no action prefix never performs an action.
  void checkGuardedness() {
    std::map<std::string, std::vector<std::string>> edges;
    std::function<void(const Proc&, std::vector<std::string>&)> unguarded = [&](const Proc& p,
                                                                                 std::vector<std::string>& out) {
      switch (p->kind) {
        case ProcKind::Call:
          out.push_back(p->name);
          return;
        case ProcKind::Aware:
          unguarded(p->next, out);
          return;
        case ProcKind::Choice:
        case ProcKind::Par:
          unguarded(p->next, out);
          unguarded(p->other, out);
          return;
        default:
          return;
      }
    };
    for (const auto& d : spec_.procs) unguarded(d.body, edges[d.name]);
    std::map<std::string, int> color;
    std::set<std::string> reported;
    std::function<void(const std::string&)> dfs = [&](const std::string& k) {
      color[k] = 1;
      for (const auto& next : edges[k]) {
        if (!edges.count(next)) continue;
        if (color[next] == 1) {
          if (reported.insert(next).second) {
            const ProcDef* d = spec_.findProc(next);
            error("E-UNGUARDED", "process '" + next + "' calls itself without performing an action",
                  d ? d->span : SourceSpan{});
          }
        } else if (color[next] == 0) {
          dfs(next);
        }
      }
      color[k] = 2;
    };
    for (const auto& d : spec_.procs)
      if (color[d.name] == 0) dfs(d.name);
  }

  void checkComponentName(const std::string& name, SourceSpan span) {
    if (name != "*" && !spec_.componentIndex(name))
      error("E-UNKNOWN-COMP", "unknown component '" + name + "'", span);
  }

  void checkState(const StateExprPtr& s) {
    if (!s) return;
    for (const StateTerm* t : {&s->lhs, &s->rhs})
      if (t->isRef) checkComponentName(t->component, t->span);
    checkState(s->left);
    checkState(s->right);
  }

  void checkProperty(const PropertyDecl& p) {
    if (p.kind == PropertyDecl::Kind::LeadsTo) {
      checkComponentName(p.trigger.component, p.trigger.span);
      for (const auto& g : p.goals) checkComponentName(g.component, g.span);
      return;
    }
    if (p.event) checkComponentName(p.event->component, p.event->span);
    checkState(p.state);
  }

  const SystemSpec& spec_;
  Externs externs_;
  FreeMap fv_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

void resolveNames(SystemSpec& spec) {
  std::map<std::string, Names> scopes;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : spec.components) changed |= collectScopes(c.run, {}, scopes);
    for (const auto& d : spec.procs) {
      const Names scope = scopes[d.name];
      changed |= collectScopes(d.body, scope, scopes);
    }
  }
  for (auto& c : spec.components) c.run = rewriteProc(c.run, {});
  for (auto& d : spec.procs) d.body = rewriteProc(d.body, scopes[d.name]);

  const FreeMap fv = freeVariables(spec);
  for (auto& c : spec.components) c.run = setCaptures(c.run, fv);
  for (auto& d : spec.procs) d.body = setCaptures(d.body, fv);
}

std::vector<Diagnostic> validate(const SystemSpec& spec) { return Validator(spec).run(); }

}  // namespace abc
