#include "abc/printer.hpp"

namespace abc {

namespace {

template <typename T, typename F>
std::string joined(const std::vector<T>& items, F&& fn, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fn(items[i]);
  }
  return out;
}

std::string exprText(const Expr& e, int level);

std::string indexText(const std::vector<Expr>& index) {
  if (index.empty()) return {};
  return "[" + joined(index, [](const Expr& i) { return exprText(i, 0); }) + "]";
}

// Levels: 0 additive, 1 multiplicative, 2 atomic.
std::string exprText(const Expr& e, int level) {
  switch (e->kind) {
    case ExprKind::Literal:
      return e->value.toString();
    case ExprKind::Var:
      return e->name;
    case ExprKind::Attr:
      return e->name + indexText(e->args);
    case ExprKind::ThisAttr:
      return "this." + e->name + indexText(e->args);
    case ExprKind::Apply: {
      if (isBinaryOperator(e->name) && e->args.size() == 2) {
        const int mine = (e->name == "+" || e->name == "-") ? 0 : 1;
        std::string s = exprText(e->args[0], mine) + " " + e->name + " " + exprText(e->args[1], mine + 1);
        return mine < level ? "(" + s + ")" : s;
      }
      auto arg = [](const Expr& a) { return exprText(a, 0); };
      if (e->name == "tuple" && e->args.size() >= 2) return "(" + joined(e->args, arg) + ")";
      return e->name + "(" + joined(e->args, arg) + ")";
    }
  }
  return {};
}

// Levels: 0 disjunction, 1 conjunction, 2 negation/atomic.
std::string predText(const Pred& p, int level) {
  switch (p->kind) {
    case PredKind::True:
      return "tt";
    case PredKind::False:
      return "ff";
    case PredKind::Compare:
      return exprText(p->lhs, 0) + " " + cmpOpText(p->op) + " " + exprText(p->rhs, 0);
    case PredKind::Member:
      return exprText(p->lhs, 0) + " in " + exprText(p->rhs, 0);
    case PredKind::Atom:
      return p->name + "(" + joined(p->args, [](const Expr& a) { return exprText(a, 0); }) + ")";
    case PredKind::Not:
      return "!" + predText(p->left, 2);
    case PredKind::And:
    case PredKind::Or: {
      const int mine = p->kind == PredKind::Or ? 0 : 1;
      std::string s = predText(p->left, mine) + (mine == 0 ? " || " : " && ") + predText(p->right, mine + 1);
      return mine < level ? "(" + s + ")" : s;
    }
  }
  return {};
}

std::string updatesText(const std::vector<Update>& updates) {
  if (updates.empty()) return {};
  return "[" +
         joined(updates, [](const Update& u) { return u.attr + indexText(u.index) + " := " + exprText(u.rhs, 0); }) +
         "] ";
}

// Levels: 0 parallel, 1 choice, 2 prefixed.
std::string procText(const Proc& p, int level) {
  switch (p->kind) {
    case ProcKind::Inact:
      return "0";
    case ProcKind::Call:
      return p->name;
    case ProcKind::Aware:
      return "<" + predText(p->guard, 0) + "> " + procText(p->next, 2);
    case ProcKind::Output:
      return "(" + joined(p->payload, [](const Expr& e) { return exprText(e, 0); }) + ")@(" +
             predText(p->guard, 0) + ")." + updatesText(p->updates) + procText(p->next, 2);
    case ProcKind::Input:
      return "(" + predText(p->guard, 0) + ")(" + joined(p->binders, [](const std::string& b) { return b; }) +
             ")." + updatesText(p->updates) + procText(p->next, 2);
    case ProcKind::Choice:
    case ProcKind::Par: {
      const int mine = p->kind == ProcKind::Par ? 0 : 1;
      std::string s =
          procText(p->next, mine) + (mine == 0 ? " | " : " + ") + procText(p->other, mine + 1);
      return mine < level ? "(" + s + ")" : s;
    }
  }
  return {};
}

std::string termText(const StateTerm& t) {
  if (!t.isRef) return t.value.toString();
  std::string s = t.component + "." + t.attr;
  if (!t.index.empty())
    s += "[" + joined(t.index, [](const std::optional<Value>& v) { return v ? v->toString() : std::string("*"); }) +
         "]";
  return s;
}

std::string stateText(const StateExprPtr& s, int level) {
  switch (s->kind) {
    case StateExprKind::True:
      return "tt";
    case StateExprKind::False:
      return "ff";
    case StateExprKind::Compare:
      return termText(s->lhs) + " " + cmpOpText(s->op) + " " + termText(s->rhs);
    case StateExprKind::Not:
      return "!" + stateText(s->left, 2);
    case StateExprKind::And:
    case StateExprKind::Or: {
      const int mine = s->kind == StateExprKind::Or ? 0 : 1;
      std::string t = stateText(s->left, mine) + (mine == 0 ? " || " : " && ") + stateText(s->right, mine + 1);
      return mine < level ? "(" + t + ")" : t;
    }
  }
  return {};
}

std::string valueList(const std::vector<Value>& vs) {
  return joined(vs, [](const Value& v) { return v.toString(); });
}

}  // namespace

std::string toText(const Expr& e) { return exprText(e, 0); }
std::string toText(const Pred& p) { return predText(p, 0); }
std::string toText(const Proc& p) { return procText(p, 0); }
std::string toText(const StateExprPtr& s) { return stateText(s, 0); }

std::string toText(const EventPattern& e) {
  return std::string(e.direction == EventPattern::Direction::Sent ? "sent(" : "received(") + e.component + ", " +
         quoteString(e.tag) + ")";
}

std::string prettyPrint(const SystemSpec& spec) {
  std::string out;
  auto section = [&]() {
    if (!out.empty()) out += "\n";
  };
  for (const auto& e : spec.externs) {
    section();
    out += "extern " + e.name + " : ";
    if (e.kind == ExternDecl::Kind::EnumDomain) {
      out += "{ " + valueList(e.domain) + " }\n";
    } else {
      out += "map {\n";
      for (std::size_t i = 0; i < e.table.size(); ++i) {
        out += "  (" + valueList(e.table[i].first) + ") -> " + e.table[i].second.toString();
        out += i + 1 < e.table.size() ? ",\n" : "\n";
      }
      out += "}\n";
    }
  }
  for (const auto& d : spec.procs) {
    section();
    out += "proc " + d.name + " = " + toText(d.body) + "\n";
  }
  for (const auto& c : spec.components) {
    section();
    out += "component " + c.name + " {\n  attrs {\n";
    for (const auto& a : c.attrs) {
      out += "    " + a.name;
      if (!a.index.empty()) out += "[" + valueList(a.index) + "]";
      out += " = " + a.value.toString() + ";\n";
    }
    out += "  }\n  interface { " + joined(c.interface, [](const std::string& s) { return s; }) + " }\n";
    out += "  run " + toText(c.run) + "\n}\n";
  }
  for (const auto& p : spec.properties) {
    section();
    out += "property " + p.name + " = ";
    switch (p.kind) {
      case PropertyDecl::Kind::Reachable:
        out += "reachable " + (p.event ? toText(*p.event) : toText(p.state));
        break;
      case PropertyDecl::Kind::Invariant:
        out += "invariant " + toText(p.state);
        break;
      case PropertyDecl::Kind::LeadsTo:
        out += toText(p.trigger) + " leadsto " + joined(p.goals, [](const EventPattern& g) { return toText(g); }, " || ");
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace abc
