#include "abc/parser.hpp"

#include <limits>
#include <set>

#include "lexer.hpp"

namespace abc {

namespace {

using detail::Tok;
using detail::Token;

struct SyntaxError {
  std::string message;
  SourceSpan span;
};

const std::set<std::string, std::less<>> kReserved = {"tt",   "ff",     "true", "false",     "undef",   "this",
                                                      "in",   "extern", "proc", "component", "property"};

bool isDeclKeyword(const Token& t) {
  return t.kind == Tok::Ident &&
         (t.text == "extern" || t.text == "proc" || t.text == "component" || t.text == "property");
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  SystemSpec run() {
    SystemSpec spec;
    while (!at(Tok::End)) {
      const std::size_t start = pos_;
      try {
        parseDecl(spec);
      } catch (const SyntaxError& e) {
        diags_.push_back(Diagnostic{Severity::Error, e.span, "E-SYNTAX", e.message});
        limit_ = kNoLimit;
        if (pos_ == start) ++pos_;
        while (!at(Tok::End) && !isDeclKeyword(cur())) ++pos_;
      }
    }
    return spec;
  }

 private:
  static constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

  // --- token access -------------------------------------------------------

  const Token& tok(std::size_t k) const {
    const std::size_t i = pos_ + k;
    if (i >= limit_) {
      limitTok_.kind = Tok::End;
      limitTok_.span = toks_[std::min(limit_, toks_.size() - 1)].span;
      return limitTok_;
    }
    return toks_[std::min(i, toks_.size() - 1)];
  }
  const Token& cur() const { return tok(0); }
  bool at(Tok k) const { return cur().kind == k; }
  bool atKeyword(std::string_view kw) const { return cur().kind == Tok::Ident && cur().text == kw; }
  SourceSpan prevSpan() const { return pos_ == 0 ? toks_[0].span : toks_[pos_ - 1].span; }
  SourceSpan spanFrom(const SourceSpan& start) const { return SourceSpan::cover(start, prevSpan()); }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = cur();
    std::string found = t.kind == Tok::Ident || t.kind == Tok::Int || t.kind == Tok::Float
                            ? "'" + t.text + "'"
                            : (t.kind == Tok::String ? quoteString(t.text) : detail::tokName(t.kind));
    throw SyntaxError{message + ", found " + found, t.span};
  }

  const Token& expect(Tok k, const char* context) {
    if (!at(k)) fail(std::string("expected ") + detail::tokName(k) + " " + context);
    return toks_[pos_++];
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  void expectKeyword(std::string_view kw, const char* context) {
    if (!atKeyword(kw)) fail("expected '" + std::string(kw) + "' " + context);
    ++pos_;
  }

  std::string ident(const char* context) {
    if (!at(Tok::Ident) || kReserved.count(cur().text)) fail(std::string("expected identifier ") + context);
    return toks_[pos_++].text;
  }

  std::size_t matching(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size() && i < limit_; ++i) {
      const Tok k = toks_[i].kind;
      if (k == Tok::LParen) ++depth;
      if (k == Tok::RParen && --depth == 0) return i;
      if (k == Tok::End) break;
    }
    return kNoLimit;
  }

  // --- declarations -------------------------------------------------------

  void parseDecl(SystemSpec& spec) {
    if (atKeyword("extern")) {
      spec.externs.push_back(parseExtern());
    } else if (atKeyword("proc")) {
      const SourceSpan start = cur().span;
      ++pos_;
      ProcDef d;
      d.name = ident("after 'proc'");
      expect(Tok::Eq, "after process name");
      d.body = parseProcess();
      d.span = spanFrom(start);
      spec.procs.push_back(std::move(d));
    } else if (atKeyword("component")) {
      spec.components.push_back(parseComponent());
    } else if (atKeyword("property")) {
      spec.properties.push_back(parseProperty());
    } else {
      fail("expected 'extern', 'proc', 'component' or 'property'");
    }
  }

  ExternDecl parseExtern() {
    const SourceSpan start = cur().span;
    ++pos_;
    ExternDecl d;
    d.name = ident("after 'extern'");
    expect(Tok::Colon, "after extern name");
    if (atKeyword("map")) {
      ++pos_;
      d.kind = ExternDecl::Kind::Table;
      expect(Tok::LBrace, "to open map entries");
      do {
        expect(Tok::LParen, "to open map key");
        std::vector<Value> key;
        do key.push_back(parseValue());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "to close map key");
        expect(Tok::Arrow, "in map entry");
        d.table.emplace_back(std::move(key), parseValue());
      } while (accept(Tok::Comma));
      expect(Tok::RBrace, "to close map entries");
    } else {
      d.kind = ExternDecl::Kind::EnumDomain;
      expect(Tok::LBrace, "to open extern domain");
      do d.domain.push_back(parseValue());
      while (accept(Tok::Comma));
      expect(Tok::RBrace, "to close extern domain");
    }
    d.span = spanFrom(start);
    return d;
  }

  ComponentDecl parseComponent() {
    const SourceSpan start = cur().span;
    ++pos_;
    ComponentDecl c;
    c.name = ident("after 'component'");
    expect(Tok::LBrace, "to open component body");
    expectKeyword("attrs", "in component body");
    expect(Tok::LBrace, "after 'attrs'");
    while (!at(Tok::RBrace)) {
      const SourceSpan astart = cur().span;
      AttrInit a;
      a.name = ident("in attribute initializer");
      if (accept(Tok::LBracket)) {
        do a.index.push_back(parseValue());
        while (accept(Tok::Comma));
        expect(Tok::RBracket, "to close attribute index");
      }
      expect(Tok::Eq, "in attribute initializer");
      a.value = parseValue();
      expect(Tok::Semi, "after attribute initializer");
      a.span = spanFrom(astart);
      c.attrs.push_back(std::move(a));
    }
    ++pos_;
    expectKeyword("interface", "after attributes");
    expect(Tok::LBrace, "after 'interface'");
    if (!at(Tok::RBrace)) {
      do c.interface.push_back(ident("in interface"));
      while (accept(Tok::Comma));
    }
    expect(Tok::RBrace, "to close interface");
    expectKeyword("run", "after interface");
    c.run = parseProcess();
    expect(Tok::RBrace, "to close component body");
    c.span = spanFrom(start);
    return c;
  }

  // --- values -------------------------------------------------------------

  Value parseValue() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Minus: {
        const Token& n = tok(1);
        if (n.kind == Tok::Int) {
          pos_ += 2;
          if (n.intValue == std::numeric_limits<std::int64_t>::min()) fail("integer literal out of range");
          return Value::integer(-n.intValue);
        }
        if (n.kind == Tok::Float) {
          pos_ += 2;
          return Value::real(-n.floatValue);
        }
        fail("expected a value");
      }
      case Tok::Int:
        ++pos_;
        return Value::integer(t.intValue);
      case Tok::Float:
        ++pos_;
        return Value::real(t.floatValue);
      case Tok::String:
        ++pos_;
        return Value::text(t.text);
      case Tok::LBrace: {
        ++pos_;
        std::vector<Value> items;
        if (!at(Tok::RBrace)) {
          do items.push_back(parseValue());
          while (accept(Tok::Comma));
        }
        expect(Tok::RBrace, "to close set");
        return Value::set(std::move(items));
      }
      case Tok::LParen: {
        ++pos_;
        std::vector<Value> items{parseValue()};
        expect(Tok::Comma, "in tuple value");
        do items.push_back(parseValue());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "to close tuple");
        return Value::tuple(std::move(items));
      }
      case Tok::Ident:
        if (t.text == "true" || t.text == "false") {
          ++pos_;
          return Value::boolean(t.text == "true");
        }
        if (t.text == "undef") {
          ++pos_;
          return Value::undef();
        }
        if (t.text == "tuple" && tok(1).kind == Tok::LParen) {
          pos_ += 2;
          std::vector<Value> items;
          if (!at(Tok::RParen)) {
            do items.push_back(parseValue());
            while (accept(Tok::Comma));
          }
          expect(Tok::RParen, "to close tuple");
          return Value::tuple(std::move(items));
        }
        [[fallthrough]];
      default:
        fail("expected a value");
    }
  }

  // --- processes ----------------------------------------------------------

  Proc parseProcess() {
    const SourceSpan start = cur().span;
    Proc p = parseChoice();
    while (accept(Tok::Bar)) p = makePar(p, parseChoice(), spanFrom(start));
    return p;
  }

  Proc parseChoice() {
    const SourceSpan start = cur().span;
    Proc p = parsePrefixed();
    while (accept(Tok::Plus)) p = makeChoice(p, parsePrefixed(), spanFrom(start));
    return p;
  }

  Proc parsePrefixed() {
    const Token& t = cur();
    const SourceSpan start = t.span;
    if (t.kind == Tok::Int && t.text == "0") {
      ++pos_;
      return makeInact(start);
    }
    if (t.kind == Tok::Ident && !kReserved.count(t.text)) {
      ++pos_;
      return makeCall(t.text, {}, {}, start);
    }
    if (t.kind == Tok::Lt) return parseAware();
    if (t.kind == Tok::LParen) {
      const std::size_t close = matching(pos_);
      if (close == kNoLimit) fail("unbalanced '('");
      const Tok after = close + 1 < limit_ ? toks_[close + 1].kind : Tok::End;
      if (after == Tok::At) return parseOutput();
      if (after == Tok::LParen) return parseInput();
      ++pos_;
      Proc p = parseProcess();
      expect(Tok::RParen, "to close process");
      return p;
    }
    fail("expected a process");
  }

  Proc parseOutput() {
    const SourceSpan start = cur().span;
    expect(Tok::LParen, "to open message");
    std::vector<Expr> payload;
    if (!at(Tok::RParen)) {
      do payload.push_back(parseExpr());
      while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "to close message");
    expect(Tok::At, "after message");
    expect(Tok::LParen, "to open target predicate");
    Pred target = parsePred();
    expect(Tok::RParen, "to close target predicate");
    expect(Tok::Dot, "after output action");
    std::vector<Update> updates = parseUpdates();
    Proc next = parsePrefixed();
    return makeOutput(std::move(payload), std::move(target), std::move(updates), std::move(next), spanFrom(start));
  }

  Proc parseInput() {
    const SourceSpan start = cur().span;
    expect(Tok::LParen, "to open receive guard");
    Pred guard = parsePred();
    expect(Tok::RParen, "to close receive guard");
    expect(Tok::LParen, "to open binder list");
    std::vector<std::string> binders;
    if (!at(Tok::RParen)) {
      do binders.push_back(ident("in binder list"));
      while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "to close binder list");
    expect(Tok::Dot, "after input action");
    std::vector<Update> updates = parseUpdates();
    Proc next = parsePrefixed();
    return makeInput(std::move(guard), std::move(binders), std::move(updates), std::move(next), spanFrom(start));
  }

  std::vector<Update> parseUpdates() {
    std::vector<Update> out;
    while (accept(Tok::LBracket)) {
      do {
        const SourceSpan start = cur().span;
        Update u;
        u.attr = ident("as update target");
        if (accept(Tok::LBracket)) u.index = parseExprList(Tok::RBracket, "to close index");
        expect(Tok::Assign, "in update");
        u.rhs = parseExpr();
        u.span = spanFrom(start);
        out.push_back(std::move(u));
      } while (accept(Tok::Comma));
      expect(Tok::RBracket, "to close update block");
    }
    return out;
  }

  // `<` pred `>` prefixed. The closing `>` may also be a comparison inside the
  // predicate, so every candidate closer is tried, latest first.
  Proc parseAware() {
    const std::size_t open = pos_;
    const SourceSpan start = cur().span;
    std::vector<std::size_t> candidates;
    int depth = 0;
    for (std::size_t i = open + 1; i < toks_.size() && i < limit_; ++i) {
      const Token& t = toks_[i];
      if (t.kind == Tok::End || t.kind == Tok::At || t.kind == Tok::Assign || t.kind == Tok::Semi ||
          isDeclKeyword(t))
        break;
      if (t.kind == Tok::LParen || t.kind == Tok::LBrace) ++depth;
      if ((t.kind == Tok::RParen || t.kind == Tok::RBrace) && --depth < 0) break;
      if (t.kind == Tok::Gt && depth == 0) candidates.push_back(i);
    }
    if (candidates.empty()) fail("unterminated awareness guard '<'");
    std::optional<SyntaxError> firstError;
    const std::size_t savedLimit = limit_;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      try {
        pos_ = open + 1;
        limit_ = *it;
        Pred guard = parsePred();
        if (pos_ != *it) fail("unexpected token in awareness guard");
        limit_ = savedLimit;
        pos_ = *it + 1;
        Proc body = parsePrefixed();
        return makeAware(std::move(guard), std::move(body), spanFrom(start));
      } catch (const SyntaxError& e) {
        limit_ = savedLimit;
        firstError = e;
      }
    }
    throw *firstError;
  }

  // --- predicates ---------------------------------------------------------

  Pred parsePred() {
    const SourceSpan start = cur().span;
    Pred p = parseConj();
    while (accept(Tok::OrOr)) p = makeOr(p, parseConj(), spanFrom(start));
    return p;
  }

  Pred parseConj() {
    const SourceSpan start = cur().span;
    Pred p = parseNeg();
    while (accept(Tok::AndAnd)) p = makeAnd(p, parseNeg(), spanFrom(start));
    return p;
  }

  Pred parseNeg() {
    const SourceSpan start = cur().span;
    if (accept(Tok::Bang)) return makeNot(parseNeg(), spanFrom(start));
    return parseAtomPred();
  }

  static bool continuesExpr(Tok k) {
    switch (k) {
      case Tok::Eq:
      case Tok::Ne:
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
      case Tok::Plus:
      case Tok::Minus:
      case Tok::Star:
      case Tok::Slash:
      case Tok::Comma:
        return true;
      default:
        return false;
    }
  }

  Pred parseAtomPred() {
    const SourceSpan start = cur().span;
    if (atKeyword("tt")) {
      ++pos_;
      return makeTrue(start);
    }
    if (atKeyword("ff")) {
      ++pos_;
      return makeFalse(start);
    }
    if (at(Tok::LParen)) {
      // Parenthesized predicate, unless the parentheses turn out to belong to
      // an expression operand.
      const std::size_t saved = pos_;
      try {
        ++pos_;
        Pred p = parsePred();
        expect(Tok::RParen, "to close predicate");
        if (!continuesExpr(cur().kind) && !atKeyword("in")) return p;
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
    }
    Expr lhs = parseExpr();
    CmpOp op;
    switch (cur().kind) {
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      default:
        if (atKeyword("in")) {
          ++pos_;
          Expr rhs = parseExpr();
          return makeMember(std::move(lhs), std::move(rhs), spanFrom(start));
        }
        if (lhs->kind == ExprKind::Apply && !isBinaryOperator(lhs->name) && lhs->name != "tuple")
          return makeAtom(lhs->name, lhs->args, spanFrom(start));
        // A bare boolean expression stands for `e = true`.
        return makeCompare(CmpOp::Eq, std::move(lhs), makeLiteral(Value::boolean(true)), spanFrom(start));
    }
    ++pos_;
    Expr rhs = parseExpr();
    return makeCompare(op, std::move(lhs), std::move(rhs), spanFrom(start));
  }

  // --- expressions --------------------------------------------------------

  std::vector<Expr> parseExprList(Tok close, const char* context) {
    std::vector<Expr> out;
    if (!at(close)) {
      do out.push_back(parseExpr());
      while (accept(Tok::Comma));
    }
    expect(close, context);
    return out;
  }

  Expr parseExpr() {
    const SourceSpan start = cur().span;
    Expr e = parseTerm();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const std::string op = at(Tok::Plus) ? "+" : "-";
      ++pos_;
      e = makeApply(op, {e, parseTerm()}, spanFrom(start));
    }
    return e;
  }

  Expr parseTerm() {
    const SourceSpan start = cur().span;
    Expr e = parseFactor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const std::string op = at(Tok::Star) ? "*" : "/";
      ++pos_;
      e = makeApply(op, {e, parseFactor()}, spanFrom(start));
    }
    return e;
  }

  Expr parseFactor() {
    const Token& t = cur();
    const SourceSpan start = t.span;
    switch (t.kind) {
      case Tok::Minus:
      case Tok::Int:
      case Tok::Float:
      case Tok::String:
      case Tok::LBrace: {
        Value v = parseValue();
        return makeLiteral(std::move(v), spanFrom(start));
      }
      case Tok::LParen: {
        ++pos_;
        std::vector<Expr> items{parseExpr()};
        while (accept(Tok::Comma)) items.push_back(parseExpr());
        expect(Tok::RParen, "to close parenthesized expression");
        if (items.size() == 1) return items.front();
        return tupleExpr(std::move(items), spanFrom(start));
      }
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false" || t.text == "undef") {
          Value v = parseValue();
          return makeLiteral(std::move(v), spanFrom(start));
        }
        if (t.text == "this") {
          ++pos_;
          expect(Tok::Dot, "after 'this'");
          std::string name = ident("after 'this.'");
          std::vector<Expr> index;
          if (accept(Tok::LBracket)) index = parseExprList(Tok::RBracket, "to close index");
          return makeThisAttr(std::move(name), std::move(index), spanFrom(start));
        }
        std::string name = ident("in expression");
        if (accept(Tok::LParen)) {
          std::vector<Expr> args = parseExprList(Tok::RParen, "to close argument list");
          if (name == "tuple") return tupleExpr(std::move(args), spanFrom(start));
          return makeApply(std::move(name), std::move(args), spanFrom(start));
        }
        std::vector<Expr> index;
        if (accept(Tok::LBracket)) index = parseExprList(Tok::RBracket, "to close index");
        return makeAttr(std::move(name), std::move(index), spanFrom(start));
      }
      default:
        fail("expected an expression");
    }
  }

  // All-literal tuples fold to a literal value so printing round-trips.
  static Expr tupleExpr(std::vector<Expr> items, SourceSpan span) {
    std::vector<Value> values;
    for (const auto& e : items) {
      if (e->kind != ExprKind::Literal) return makeApply("tuple", std::move(items), span);
      values.push_back(e->value);
    }
    return makeLiteral(Value::tuple(std::move(values)), span);
  }

  // --- properties ---------------------------------------------------------

  PropertyDecl parseProperty() {
    const SourceSpan start = cur().span;
    ++pos_;
    PropertyDecl d;
    d.name = ident("after 'property'");
    expect(Tok::Eq, "after property name");
    if (atKeyword("reachable")) {
      ++pos_;
      d.kind = PropertyDecl::Kind::Reachable;
      if ((atKeyword("sent") || atKeyword("received")) && tok(1).kind == Tok::LParen)
        d.event = parseEvent();
      else
        d.state = parseStateExpr();
    } else if (atKeyword("invariant")) {
      ++pos_;
      d.kind = PropertyDecl::Kind::Invariant;
      d.state = parseStateExpr();
    } else {
      d.kind = PropertyDecl::Kind::LeadsTo;
      d.trigger = parseEvent();
      expectKeyword("leadsto", "after trigger event");
      d.goals.push_back(parseEvent());
      while (accept(Tok::OrOr)) d.goals.push_back(parseEvent());
    }
    d.span = spanFrom(start);
    return d;
  }

  EventPattern parseEvent() {
    const SourceSpan start = cur().span;
    EventPattern e;
    if (atKeyword("sent")) {
      e.direction = EventPattern::Direction::Sent;
    } else if (atKeyword("received")) {
      e.direction = EventPattern::Direction::Received;
    } else {
      fail("expected 'sent' or 'received'");
    }
    ++pos_;
    expect(Tok::LParen, "after event kind");
    if (accept(Tok::Star))
      e.component = "*";
    else
      e.component = ident("as component pattern");
    expect(Tok::Comma, "after component pattern");
    if (!at(Tok::String)) fail("expected message tag string");
    e.tag = toks_[pos_++].text;
    expect(Tok::RParen, "to close event");
    e.span = spanFrom(start);
    return e;
  }

  StateExprPtr parseStateExpr() {
    const SourceSpan start = cur().span;
    StateExprPtr l = parseStateConj();
    while (accept(Tok::OrOr)) {
      auto n = std::make_shared<StateExpr>();
      n->kind = StateExprKind::Or;
      n->left = l;
      n->right = parseStateConj();
      n->span = spanFrom(start);
      l = n;
    }
    return l;
  }

  StateExprPtr parseStateConj() {
    const SourceSpan start = cur().span;
    StateExprPtr l = parseStateNeg();
    while (accept(Tok::AndAnd)) {
      auto n = std::make_shared<StateExpr>();
      n->kind = StateExprKind::And;
      n->left = l;
      n->right = parseStateNeg();
      n->span = spanFrom(start);
      l = n;
    }
    return l;
  }

  StateExprPtr parseStateNeg() {
    const SourceSpan start = cur().span;
    if (accept(Tok::Bang)) {
      auto n = std::make_shared<StateExpr>();
      n->kind = StateExprKind::Not;
      n->left = parseStateNeg();
      n->span = spanFrom(start);
      return n;
    }
    return parseStateAtom();
  }

  StateExprPtr parseStateAtom() {
    const SourceSpan start = cur().span;
    auto n = std::make_shared<StateExpr>();
    if (atKeyword("tt") || atKeyword("ff")) {
      n->kind = atKeyword("tt") ? StateExprKind::True : StateExprKind::False;
      ++pos_;
      n->span = start;
      return n;
    }
    if (at(Tok::LParen)) {
      const std::size_t saved = pos_;
      try {
        ++pos_;
        StateExprPtr inner = parseStateExpr();
        expect(Tok::RParen, "to close state expression");
        return inner;
      } catch (const SyntaxError&) {
        pos_ = saved;
      }
    }
    n->kind = StateExprKind::Compare;
    n->lhs = parseStateTerm();
    switch (cur().kind) {
      case Tok::Eq: n->op = CmpOp::Eq; break;
      case Tok::Ne: n->op = CmpOp::Ne; break;
      case Tok::Lt: n->op = CmpOp::Lt; break;
      case Tok::Le: n->op = CmpOp::Le; break;
      case Tok::Gt: n->op = CmpOp::Gt; break;
      case Tok::Ge: n->op = CmpOp::Ge; break;
      default: fail("expected comparison operator in state expression");
    }
    ++pos_;
    n->rhs = parseStateTerm();
    n->span = spanFrom(start);
    return n;
  }

  StateTerm parseStateTerm() {
    const SourceSpan start = cur().span;
    StateTerm t;
    const bool ref = (at(Tok::Star) || (at(Tok::Ident) && !kReserved.count(cur().text))) &&
                     tok(1).kind == Tok::Dot;
    if (!ref) {
      t.value = parseValue();
      t.span = spanFrom(start);
      return t;
    }
    t.isRef = true;
    if (accept(Tok::Star))
      t.component = "*";
    else
      t.component = ident("as component reference");
    expect(Tok::Dot, "after component");
    t.attr = ident("as attribute reference");
    if (accept(Tok::LBracket)) {
      do {
        if (accept(Tok::Star))
          t.index.emplace_back(std::nullopt);
        else
          t.index.emplace_back(parseValue());
      } while (accept(Tok::Comma));
      expect(Tok::RBracket, "to close index");
    }
    t.span = spanFrom(start);
    return t;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  std::size_t limit_ = kNoLimit;
  mutable Token limitTok_;
};

}  // namespace

ParseResult parseSyntax(std::string_view source) {
  ParseResult r;
  std::vector<Token> toks = detail::lex(source, r.diagnostics);
  r.spec = Parser(std::move(toks), r.diagnostics).run();
  return r;
}

ParseResult parseSpec(std::string_view source) {
  ParseResult r = parseSyntax(source);
  if (!r.ok()) return r;
  resolveNames(r.spec);
  auto more = validate(r.spec);
  r.diagnostics.insert(r.diagnostics.end(), more.begin(), more.end());
  return r;
}

}  // namespace abc
