#include "abc/canonical.hpp"

#include <algorithm>

namespace abc {

namespace {

void flatten(const Proc& p, ProcKind kind, std::vector<Proc>& out) {
  if (p->kind == kind) {
    flatten(p->next, kind, out);
    flatten(p->other, kind, out);
  } else {
    out.push_back(canonicalize(p));
  }
}

Proc rebuild(std::vector<Proc> operands, ProcKind kind) {
  std::stable_sort(operands.begin(), operands.end(),
                   [](const Proc& a, const Proc& b) { return compare(a, b) < 0; });
  Proc acc = operands.back();
  for (std::size_t i = operands.size() - 1; i-- > 0;) {
    acc = kind == ProcKind::Par ? makePar(operands[i], acc) : makeChoice(operands[i], acc);
  }
  return acc;
}

}  // namespace

Proc canonicalize(const Proc& p) {
  switch (p->kind) {
    case ProcKind::Inact:
    case ProcKind::Call:
      return p;
    case ProcKind::Input:
    case ProcKind::Output: {
      Proc next = canonicalize(p->next);
      if (next == p->next) return p;
      ProcNode copy = *p;
      return p->kind == ProcKind::Input
                 ? makeInput(copy.guard, copy.binders, copy.updates, next, copy.span)
                 : makeOutput(copy.payload, copy.guard, copy.updates, next, copy.span);
    }
    case ProcKind::Aware: {
      Proc body = canonicalize(p->next);
      if (body == p->next) return p;
      return makeAware(p->guard, body, p->span);
    }
    case ProcKind::Choice:
    case ProcKind::Par: {
      std::vector<Proc> operands;
      flatten(p, p->kind, operands);
      Proc rebuilt = rebuild(std::move(operands), p->kind);
      return equal(rebuilt, p) ? p : rebuilt;
    }
  }
  return p;
}

}  // namespace abc
