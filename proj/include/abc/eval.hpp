#pragma once

// Expression evaluation, predicate satisfaction and closure, substitution,
// interface restriction and attribute updates.

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/env.hpp"
#include "abc/term.hpp"

namespace abc {

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& message, SourceSpan span = {}) : std::runtime_error(message), span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Declared externs by name. Externs shadow built-in functions of the same name.
class Externs {
 public:
  Externs() = default;
  explicit Externs(const std::vector<ExternDecl>& decls);

  const ExternDecl* find(const std::string& name) const;

 private:
  std::map<std::string, ExternDecl> table_;
};

/// Supplies the element index drawn from an EnumDomain extern.
class DrawSource {
 public:
  virtual ~DrawSource() = default;
  virtual std::size_t draw(const ExternDecl& ext) = 0;
};

/// Enumerates every combination of draws made by a deterministic computation.
/// Run the computation, then call advance(); repeat while it returns true.
class DrawOdometer final : public DrawSource {
 public:
  std::size_t draw(const ExternDecl& ext) override;
  bool advance();
  const std::vector<std::size_t>& choices() const { return choice_; }

 private:
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> size_;
  std::size_t pos_ = 0;
};

/// Built-in functions: + - * / (numeric), diff (absolute difference),
/// tuple(...) construction and proj(t, i) projection (0-based).
bool isBuiltin(const std::string& fn);

/// Local evaluation: Attr and ThisAttr both read `env`; variables read
/// `subst`. Absent attributes, unbound variables, missing table entries and
/// type errors throw EvalError. EnumDomain externs need a DrawSource.
Value evaluate(const Expr& e, const AttributeEnv& env, const Substitution& subst, const Externs& externs,
               DrawSource* draws = nullptr);

/// Predicate closure: this.a and variables are replaced by their values,
/// bare attributes stay symbolic. Result contains no ThisAttr and no Var.
Pred close(const Pred& p, const AttributeEnv& env, const Substitution& subst, const Externs& externs = {});

/// Remote satisfaction of a closed predicate. Bare attributes are resolved in
/// `env`; an absent attribute or a type error makes the enclosing atomic
/// predicate false. Never throws.
bool satisfies(const AttributeEnv& env, const Pred& closed, const Externs& externs = {});

/// Local (awareness) evaluation: strict, throws EvalError like evaluate().
bool holdsLocally(const Pred& p, const AttributeEnv& env, const Substitution& subst, const Externs& externs);

/// Semantic comparison used by predicates (Int/Float coerce; undef only
/// under = and !=). Throws EvalError on ill-typed operands.
bool compareValues(CmpOp op, const Value& a, const Value& b);
bool memberOf(const Value& elem, const Value& collection);

Expr substitute(const Expr& e, const Substitution& subst);
Pred substitute(const Pred& p, const Substitution& subst);
std::vector<Update> substitute(const std::vector<Update>& updates, const Substitution& subst);
/// Capture-free: input binders shadow; calls record bindings for their captures.
Proc substituteProc(const Proc& p, const Substitution& subst);

AttributeEnv restrict(const AttributeEnv& env, const std::set<std::string>& interface);

/// Applies updates left to right; each index and right-hand side sees the
/// effect of the updates before it.
AttributeEnv applyUpdates(AttributeEnv env, std::span<const Update> updates, const Substitution& subst,
                          const Externs& externs, DrawSource* draws = nullptr);

}  // namespace abc
