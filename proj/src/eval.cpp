#include "abc/eval.hpp"

#include <cmath>
#include <optional>

namespace abc {

Externs::Externs(const std::vector<ExternDecl>& decls) {
  for (const auto& d : decls) table_.emplace(d.name, d);
}

const ExternDecl* Externs::find(const std::string& name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

std::size_t DrawOdometer::draw(const ExternDecl& ext) {
  if (pos_ < choice_.size()) return choice_[pos_++];
  choice_.push_back(0);
  size_.push_back(ext.domain.size());
  ++pos_;
  return 0;
}

bool DrawOdometer::advance() {
  pos_ = 0;
  while (!choice_.empty()) {
    if (++choice_.back() < size_.back()) return true;
    choice_.pop_back();
    size_.pop_back();
  }
  return false;
}

bool isBuiltin(const std::string& fn) {
  return isBinaryOperator(fn) || fn == "diff" || fn == "tuple" || fn == "proj";
}

namespace {

[[noreturn]] void typeError(const std::string& what, SourceSpan span) { throw EvalError(what, span); }

Value arith(const std::string& op, const Value& a, const Value& b, SourceSpan span) {
  if (!a.isNumeric() || !b.isNumeric()) {
    typeError("operator '" + op + "' needs numeric operands, got " + kindName(a.kind()) + " and " +
                  kindName(b.kind()),
              span);
  }
  if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) {
    const std::int64_t x = a.asInt(), y = b.asInt();
    std::int64_t r = 0;
    bool overflow = false;
    if (op == "+") {
      overflow = __builtin_add_overflow(x, y, &r);
    } else if (op == "-") {
      overflow = __builtin_sub_overflow(x, y, &r);
    } else if (op == "*") {
      overflow = __builtin_mul_overflow(x, y, &r);
    } else {
      if (y == 0) throw EvalError("integer division by zero", span);
      if (x == INT64_MIN && y == -1) overflow = true;
      else r = x / y;
    }
    if (overflow) throw EvalError("integer overflow in '" + op + "'", span);
    return Value::integer(r);
  }
  const double x = a.asNumber(), y = b.asNumber();
  if (op == "+") return Value::real(x + y);
  if (op == "-") return Value::real(x - y);
  if (op == "*") return Value::real(x * y);
  return Value::real(x / y);
}

Value applyBuiltin(const std::string& fn, const std::vector<Value>& args, SourceSpan span) {
  if (isBinaryOperator(fn)) {
    if (args.size() != 2) typeError("operator '" + fn + "' takes two operands", span);
    return arith(fn, args[0], args[1], span);
  }
  if (fn == "diff") {
    if (args.size() != 2 || !args[0].isNumeric() || !args[1].isNumeric())
      typeError("diff takes two numeric arguments", span);
    if (args[0].kind() == ValueKind::Int && args[1].kind() == ValueKind::Int) {
      Value d = arith("-", args[0], args[1], span);
      if (d.asInt() == INT64_MIN) throw EvalError("integer overflow in diff", span);
      return Value::integer(d.asInt() < 0 ? -d.asInt() : d.asInt());
    }
    return Value::real(std::fabs(args[0].asNumber() - args[1].asNumber()));
  }
  if (fn == "tuple") return Value::tuple(args);
  if (fn == "proj") {
    if (args.size() != 2 || args[0].kind() != ValueKind::Tuple || args[1].kind() != ValueKind::Int)
      typeError("proj takes a tuple and an integer position", span);
    const auto i = args[1].asInt();
    if (i < 0 || static_cast<std::size_t>(i) >= args[0].items().size())
      throw EvalError("tuple projection out of range", span);
    return args[0].items()[static_cast<std::size_t>(i)];
  }
  throw EvalError("unknown function '" + fn + "'", span);
}

Value applyFunction(const ExprNode& e, const std::vector<Value>& args, const Externs& externs, DrawSource* draws) {
  if (const ExternDecl* ext = externs.find(e.name)) {
    if (ext->kind == ExternDecl::Kind::EnumDomain) {
      if (!args.empty()) throw EvalError("extern '" + e.name + "' takes no arguments", e.span);
      if (!draws) throw EvalError("nondeterministic extern '" + e.name + "' used outside an action", e.span);
      return ext->domain.at(draws->draw(*ext));
    }
    if (const Value* v = ext->lookup(args)) return *v;
    std::string key;
    for (std::size_t i = 0; i < args.size(); ++i) key += (i ? ", " : "") + args[i].toString();
    throw EvalError("extern table '" + e.name + "' has no entry for (" + key + ")", e.span);
  }
  return applyBuiltin(e.name, args, e.span);
}

// Remote evaluation: nullopt whenever the value cannot be determined (absent
// attribute, leftover variable, type error).
std::optional<Value> evalRemote(const Expr& e, const AttributeEnv& env, const Externs& externs) {
  switch (e->kind) {
    case ExprKind::Literal:
      return e->value;
    case ExprKind::Var:
    case ExprKind::ThisAttr:
      return std::nullopt;
    case ExprKind::Attr: {
      std::vector<Value> idx;
      for (const auto& a : e->args) {
        auto v = evalRemote(a, env, externs);
        if (!v) return std::nullopt;
        idx.push_back(std::move(*v));
      }
      if (const Value* v = env.find(AttrKey{e->name, std::move(idx)})) return *v;
      return std::nullopt;
    }
    case ExprKind::Apply: {
      std::vector<Value> args;
      for (const auto& a : e->args) {
        auto v = evalRemote(a, env, externs);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      try {
        return applyFunction(*e, args, externs, nullptr);
      } catch (const EvalError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

bool atomValue(const Value& v, const std::string& name, SourceSpan span) {
  if (v.kind() != ValueKind::Bool) throw EvalError("atomic predicate '" + name + "' must yield a boolean", span);
  return v.asBool();
}

bool satisfiesImpl(const AttributeEnv& env, const Pred& p, const Externs& externs) {
  switch (p->kind) {
    case PredKind::True:
      return true;
    case PredKind::False:
      return false;
    case PredKind::Compare:
    case PredKind::Member: {
      auto l = evalRemote(p->lhs, env, externs);
      auto r = evalRemote(p->rhs, env, externs);
      if (!l || !r) return false;
      try {
        return p->kind == PredKind::Compare ? compareValues(p->op, *l, *r) : memberOf(*l, *r);
      } catch (const EvalError&) {
        return false;
      }
    }
    case PredKind::Atom: {
      std::vector<Value> args;
      for (const auto& a : p->args) {
        auto v = evalRemote(a, env, externs);
        if (!v) return false;
        args.push_back(std::move(*v));
      }
      const ExternDecl* ext = externs.find(p->name);
      if (!ext || ext->kind != ExternDecl::Kind::Table) return false;
      const Value* v = ext->lookup(args);
      return v && v->kind() == ValueKind::Bool && v->asBool();
    }
    case PredKind::And:
      return satisfiesImpl(env, p->left, externs) && satisfiesImpl(env, p->right, externs);
    case PredKind::Or:
      return satisfiesImpl(env, p->left, externs) || satisfiesImpl(env, p->right, externs);
    case PredKind::Not:
      return !satisfiesImpl(env, p->left, externs);
  }
  return false;
}

Expr closeExpr(const Expr& e, const AttributeEnv& env, const Substitution& subst, const Externs& externs) {
  switch (e->kind) {
    case ExprKind::Literal:
      return e;
    case ExprKind::Var: {
      auto it = subst.find(e->name);
      if (it == subst.end()) throw EvalError("unbound variable '" + e->name + "'", e->span);
      return makeLiteral(it->second, e->span);
    }
    case ExprKind::ThisAttr:
      return makeLiteral(evaluate(e, env, subst, externs), e->span);
    case ExprKind::Attr:
    case ExprKind::Apply: {
      std::vector<Expr> args;
      bool changed = false;
      for (const auto& a : e->args) {
        args.push_back(closeExpr(a, env, subst, externs));
        changed = changed || args.back() != a;
      }
      if (!changed) return e;
      return e->kind == ExprKind::Attr ? makeAttr(e->name, std::move(args), e->span)
                                       : makeApply(e->name, std::move(args), e->span);
    }
  }
  return e;
}

template <typename ExprFn>
Pred mapPred(const Pred& p, ExprFn&& fn) {
  switch (p->kind) {
    case PredKind::True:
    case PredKind::False:
      return p;
    case PredKind::Compare:
    case PredKind::Member: {
      Expr l = fn(p->lhs), r = fn(p->rhs);
      if (l == p->lhs && r == p->rhs) return p;
      return p->kind == PredKind::Compare ? makeCompare(p->op, l, r, p->span) : makeMember(l, r, p->span);
    }
    case PredKind::Atom: {
      std::vector<Expr> args;
      bool changed = false;
      for (const auto& a : p->args) {
        args.push_back(fn(a));
        changed = changed || args.back() != a;
      }
      return changed ? makeAtom(p->name, std::move(args), p->span) : p;
    }
    case PredKind::And:
    case PredKind::Or: {
      Pred l = mapPred(p->left, fn), r = mapPred(p->right, fn);
      if (l == p->left && r == p->right) return p;
      return p->kind == PredKind::And ? makeAnd(l, r, p->span) : makeOr(l, r, p->span);
    }
    case PredKind::Not: {
      Pred l = mapPred(p->left, fn);
      return l == p->left ? p : makeNot(l, p->span);
    }
  }
  return p;
}

Substitution without(const Substitution& subst, const std::vector<std::string>& names) {
  Substitution out = subst;
  for (const auto& n : names) out.erase(n);
  return out;
}

}  // namespace

bool compareValues(CmpOp op, const Value& a, const Value& b) {
  if (op == CmpOp::Eq || op == CmpOp::Ne) {
    bool eq;
    if (a.isNumeric() && b.isNumeric()) {
      eq = a.asNumber() == b.asNumber();
    } else {
      eq = a == b;
    }
    return op == CmpOp::Eq ? eq : !eq;
  }
  if (a.isUndef() || b.isUndef()) throw EvalError(std::string("ordered comparison '") + cmpOpText(op) + "' with undef");
  int c;
  if (a.isNumeric() && b.isNumeric()) {
    const double x = a.asNumber(), y = b.asNumber();
    c = x < y ? -1 : (y < x ? 1 : 0);
  } else if (a.kind() == ValueKind::Text && b.kind() == ValueKind::Text) {
    c = a.asText() < b.asText() ? -1 : (a.asText() == b.asText() ? 0 : 1);
  } else {
    throw EvalError(std::string("cannot order ") + kindName(a.kind()) + " and " + kindName(b.kind()));
  }
  switch (op) {
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Gt: return c > 0;
    case CmpOp::Ge: return c >= 0;
    default: return false;
  }
}

bool memberOf(const Value& elem, const Value& collection) {
  if (collection.kind() != ValueKind::Set && collection.kind() != ValueKind::Tuple)
    throw EvalError(std::string("'in' needs a set or tuple, got ") + kindName(collection.kind()));
  for (const auto& item : collection.items()) {
    if (compareValues(CmpOp::Eq, elem, item)) return true;
  }
  return false;
}

Value evaluate(const Expr& e, const AttributeEnv& env, const Substitution& subst, const Externs& externs,
               DrawSource* draws) {
  switch (e->kind) {
    case ExprKind::Literal:
      return e->value;
    case ExprKind::Var: {
      auto it = subst.find(e->name);
      if (it == subst.end()) throw EvalError("unbound variable '" + e->name + "'", e->span);
      return it->second;
    }
    case ExprKind::Attr:
    case ExprKind::ThisAttr: {
      AttrKey key{e->name, {}};
      for (const auto& a : e->args) key.index.push_back(evaluate(a, env, subst, externs, draws));
      if (const Value* v = env.find(key)) return *v;
      throw EvalError("attribute '" + key.toString() + "' is absent", e->span);
    }
    case ExprKind::Apply: {
      std::vector<Value> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(evaluate(a, env, subst, externs, draws));
      return applyFunction(*e, args, externs, draws);
    }
  }
  throw EvalError("malformed expression", e->span);
}

Pred close(const Pred& p, const AttributeEnv& env, const Substitution& subst, const Externs& externs) {
  return mapPred(p, [&](const Expr& e) { return closeExpr(e, env, subst, externs); });
}

bool satisfies(const AttributeEnv& env, const Pred& closed, const Externs& externs) {
  return satisfiesImpl(env, closed, externs);
}

bool holdsLocally(const Pred& p, const AttributeEnv& env, const Substitution& subst, const Externs& externs) {
  switch (p->kind) {
    case PredKind::True:
      return true;
    case PredKind::False:
      return false;
    case PredKind::Compare:
    case PredKind::Member: {
      Value l = evaluate(p->lhs, env, subst, externs);
      Value r = evaluate(p->rhs, env, subst, externs);
      try {
        return p->kind == PredKind::Compare ? compareValues(p->op, l, r) : memberOf(l, r);
      } catch (const EvalError& err) {
        throw EvalError(err.what(), p->span);
      }
    }
    case PredKind::Atom: {
      std::vector<Value> args;
      for (const auto& a : p->args) args.push_back(evaluate(a, env, subst, externs));
      const ExternDecl* ext = externs.find(p->name);
      if (!ext || ext->kind != ExternDecl::Kind::Table)
        throw EvalError("atomic predicate '" + p->name + "' is not a table extern", p->span);
      const Value* v = ext->lookup(args);
      if (!v) throw EvalError("extern table '" + p->name + "' has no entry for the arguments", p->span);
      return atomValue(*v, p->name, p->span);
    }
    case PredKind::And:
      return holdsLocally(p->left, env, subst, externs) && holdsLocally(p->right, env, subst, externs);
    case PredKind::Or:
      return holdsLocally(p->left, env, subst, externs) || holdsLocally(p->right, env, subst, externs);
    case PredKind::Not:
      return !holdsLocally(p->left, env, subst, externs);
  }
  return false;
}

Expr substitute(const Expr& e, const Substitution& subst) {
  if (subst.empty()) return e;
  switch (e->kind) {
    case ExprKind::Literal:
      return e;
    case ExprKind::Var: {
      auto it = subst.find(e->name);
      return it == subst.end() ? e : makeLiteral(it->second, e->span);
    }
    case ExprKind::Attr:
    case ExprKind::ThisAttr:
    case ExprKind::Apply: {
      std::vector<Expr> args;
      bool changed = false;
      for (const auto& a : e->args) {
        args.push_back(substitute(a, subst));
        changed = changed || args.back() != a;
      }
      if (!changed) return e;
      if (e->kind == ExprKind::Attr) return makeAttr(e->name, std::move(args), e->span);
      if (e->kind == ExprKind::ThisAttr) return makeThisAttr(e->name, std::move(args), e->span);
      return makeApply(e->name, std::move(args), e->span);
    }
  }
  return e;
}

Pred substitute(const Pred& p, const Substitution& subst) {
  if (subst.empty()) return p;
  return mapPred(p, [&](const Expr& e) { return substitute(e, subst); });
}

std::vector<Update> substitute(const std::vector<Update>& updates, const Substitution& subst) {
  if (subst.empty()) return updates;
  std::vector<Update> out;
  out.reserve(updates.size());
  for (const auto& u : updates) {
    Update v{u.attr, {}, substitute(u.rhs, subst), u.span};
    for (const auto& i : u.index) v.index.push_back(substitute(i, subst));
    out.push_back(std::move(v));
  }
  return out;
}

Proc substituteProc(const Proc& p, const Substitution& subst) {
  if (subst.empty()) return p;
  switch (p->kind) {
    case ProcKind::Inact:
      return p;
    case ProcKind::Call: {
      Substitution bindings = p->bindings;
      bool changed = false;
      for (const auto& c : p->captures) {
        auto it = subst.find(c);
        if (it == subst.end() || bindings.count(c)) continue;
        bindings.emplace(c, it->second);
        changed = true;
      }
      return changed ? makeCall(p->name, p->captures, std::move(bindings), p->span) : p;
    }
    case ProcKind::Output: {
      std::vector<Expr> payload;
      for (const auto& e : p->payload) payload.push_back(substitute(e, subst));
      return makeOutput(std::move(payload), substitute(p->guard, subst), substitute(p->updates, subst),
                        substituteProc(p->next, subst), p->span);
    }
    case ProcKind::Input: {
      const Substitution inner = without(subst, p->binders);
      if (inner.empty()) return p;
      return makeInput(substitute(p->guard, inner), p->binders, substitute(p->updates, inner),
                       substituteProc(p->next, inner), p->span);
    }
    case ProcKind::Aware:
      return makeAware(substitute(p->guard, subst), substituteProc(p->next, subst), p->span);
    case ProcKind::Choice:
      return makeChoice(substituteProc(p->next, subst), substituteProc(p->other, subst), p->span);
    case ProcKind::Par:
      return makePar(substituteProc(p->next, subst), substituteProc(p->other, subst), p->span);
  }
  return p;
}

AttributeEnv restrict(const AttributeEnv& env, const std::set<std::string>& interface) {
  AttributeEnv out;
  for (const auto& [k, v] : env.entries()) {
    if (interface.count(k.name)) out.set(k, v);
  }
  return out;
}

AttributeEnv applyUpdates(AttributeEnv env, std::span<const Update> updates, const Substitution& subst,
                          const Externs& externs, DrawSource* draws) {
  for (const auto& u : updates) {
    AttrKey key{u.attr, {}};
    for (const auto& i : u.index) key.index.push_back(evaluate(i, env, subst, externs, draws));
    Value v = evaluate(u.rhs, env, subst, externs, draws);
    env.set(std::move(key), std::move(v));
  }
  return env;
}

}  // namespace abc
