#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "abc/parser.hpp"
#include "abc/printer.hpp"
#include "support/generators.hpp"

namespace abc {
namespace {

std::string readFixture(const char* name) {
  std::ifstream in(std::string(ABC_FIXTURES_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> codes(const std::vector<Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) out.push_back(d.code);
  return out;
}

bool hasCode(const std::vector<Diagnostic>& diags, const std::string& code) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

std::string dump(const std::vector<Diagnostic>& diags) {
  std::string s;
  for (const auto& d : diags) s += renderDiagnostic(d, "<test>", false) + "\n";
  return s;
}

Proc procOf(const std::string& text, const std::string& name) {
  ParseResult r = parseSpec(text);
  EXPECT_TRUE(r.ok()) << dump(r.diagnostics);
  const ProcDef* d = r.spec.findProc(name);
  if (!d) throw std::runtime_error("no proc " + name);
  return d->body;
}

TEST(Parser, CustomerProcessShape) {
  const std::string text = R"(
extern pick_day : { 5 }
proc F = <send> ()@(ff).[day := pick_day()] (("acms", this.id, this.loc, this.day, this.price))@(type = "Broker").[send := false] F
component C {
  attrs { send = true; id = 1; loc = "rome"; day = 0; price = 100; }
  interface { id }
  run F
}
)";
  Proc f = procOf(text, "F");
  ASSERT_EQ(f->kind, ProcKind::Aware);
  EXPECT_EQ(toText(f->guard), "send = true");
  const Proc& fake = f->next;
  ASSERT_EQ(fake->kind, ProcKind::Output);
  EXPECT_TRUE(fake->payload.empty());
  EXPECT_EQ(fake->guard->kind, PredKind::False);
  ASSERT_EQ(fake->updates.size(), 1u);
  EXPECT_EQ(fake->updates[0].attr, "day");
  EXPECT_EQ(fake->updates[0].rhs->kind, ExprKind::Apply);
  const Proc& request = fake->next;
  ASSERT_EQ(request->kind, ProcKind::Output);
  EXPECT_EQ(toText(request->guard), "type = \"Broker\"");
  ASSERT_EQ(request->updates.size(), 1u);
  EXPECT_EQ(request->updates[0].attr, "send");
  ASSERT_EQ(request->next->kind, ProcKind::Call);
  EXPECT_EQ(request->next->name, "F");
}

TEST(Parser, UnparenthesizedPayload) {
  Proc p = procOf(R"(
proc F = ("acms", this.id)@(type = "Broker").0
component C { attrs { id = 1; } interface { id } run F }
)", "F");
  ASSERT_EQ(p->kind, ProcKind::Output);
  ASSERT_EQ(p->payload.size(), 2u);
  EXPECT_EQ(p->payload[1]->kind, ExprKind::ThisAttr);
  EXPECT_EQ(p->next->kind, ProcKind::Inact);
}

TEST(Parser, InactDefinition) {
  ParseResult r = parseSpec("proc Z = 0\n");
  ASSERT_TRUE(r.ok()) << dump(r.diagnostics);
  ASSERT_EQ(r.spec.procs.size(), 1u);
  EXPECT_EQ(r.spec.procs[0].body->kind, ProcKind::Inact);
}

TEST(Parser, EmptySpecPrintsNothing) {
  ParseResult r = parseSpec("# only a comment\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(prettyPrint(r.spec), "");
}

TEST(Parser, ResolvesVariablesAgainstBinders) {
  Proc p = procOf(R"(
proc P = (tt)(x).(x, y)@(tt).0
component C { attrs { y = 1; } interface { y } run P }
)", "P");
  const Proc& out = p->next;
  ASSERT_EQ(out->kind, ProcKind::Output);
  EXPECT_EQ(out->payload[0]->kind, ExprKind::Var);
  EXPECT_EQ(out->payload[1]->kind, ExprKind::Attr);
}

TEST(Parser, CallsCaptureVariablesOfTheirSite) {
  const std::string text = R"(
proc PB = (tt)(c).(H | PB)
proc H = ("m", c)@(tt).0
component B { attrs { id = 1; } interface { id } run PB }
)";
  Proc h = procOf(text, "H");
  EXPECT_EQ(h->payload[1]->kind, ExprKind::Var);
  Proc pb = procOf(text, "PB");
  const Proc& par = pb->next;
  ASSERT_EQ(par->kind, ProcKind::Par);
  ASSERT_EQ(par->next->kind, ProcKind::Call);
  EXPECT_EQ(par->next->captures, (std::vector<std::string>{"c"}));
  EXPECT_TRUE(par->other->captures.empty());
}

TEST(Parser, AwarenessWithGreaterThan) {
  Proc p = procOf(R"(
proc R = <room[d] > 0> ("x")@(tt).0 + <room[d] = 0> ("y")@(tt).0
component C { attrs { d = 5; room[5] = 1; } interface { d } run R }
)", "R");
  ASSERT_EQ(p->kind, ProcKind::Choice);
  ASSERT_EQ(p->next->kind, ProcKind::Aware);
  EXPECT_EQ(toText(p->next->guard), "room[d] > 0");
  EXPECT_EQ(p->next->next->kind, ProcKind::Output);
}

TEST(Parser, PercentLiteral) {
  Proc p = procOf(R"(
proc R = (tt)(v).("comission", v * 10%)@(tt).0
component C { attrs { id = 1; } interface { id } run R }
)", "R");
  const Expr& e = p->next->payload[1];
  ASSERT_EQ(e->kind, ExprKind::Apply);
  EXPECT_EQ(e->args[1]->value, Value::real(0.1));
}

TEST(Parser, PrecedenceIsReparenthesizedMinimally) {
  Proc p = procOf(R"(
proc P = (a + b * c, (a + b) * c, a - (b - c), (a - b) - c)@(!(a = 1 && b = 2) || c = 3 && a = 1).0
component C { attrs { a = 1; b = 2; c = 3; } interface { a } run P }
)", "P");
  EXPECT_EQ(toText(p->payload[0]), "a + b * c");
  EXPECT_EQ(toText(p->payload[1]), "(a + b) * c");
  EXPECT_EQ(toText(p->payload[2]), "a - (b - c)");
  EXPECT_EQ(toText(p->payload[3]), "a - b - c");
  EXPECT_EQ(toText(p->guard), "!(a = 1 && b = 2) || c = 3 && a = 1");
  EXPECT_EQ(toText(p), "(a + b * c, (a + b) * c, a - (b - c), a - b - c)@(!(a = 1 && b = 2) || c = 3 && a = 1).0");
}

TEST(Parser, ProcessPrecedence) {
  Proc p = procOf(R"(
proc P = ("a")@(tt).0 + ("b")@(tt).0 | ("c")@(tt).(0 | 0)
component C { attrs { a = 1; } interface { a } run P }
)", "P");
  ASSERT_EQ(p->kind, ProcKind::Par);
  EXPECT_EQ(p->next->kind, ProcKind::Choice);
  EXPECT_EQ(p->other->next->kind, ProcKind::Par);
}

TEST(Parser, CorpusRoundTrips) {
  for (const char* name : {"travel_booking.abc", "ping.abc", "fake_output.abc", "choice_receiver.abc"}) {
    ParseResult first = parseSpec(readFixture(name));
    ASSERT_TRUE(first.ok()) << name << "\n" << dump(first.diagnostics);
    const std::string printed = prettyPrint(first.spec);
    ParseResult second = parseSpec(printed);
    ASSERT_TRUE(second.ok()) << name << "\n" << dump(second.diagnostics) << printed;
    EXPECT_TRUE(equal(first.spec, second.spec)) << name;
    EXPECT_EQ(prettyPrint(second.spec), printed) << name;
  }
}

TEST(Parser, RandomSpecsRoundTrip) {
  testgen::Gen gen(51);
  for (int i = 0; i < 300; ++i) {
    const std::string text = prettyPrint(gen.spec());
    ParseResult first = parseSpec(text);
    ASSERT_TRUE(first.ok()) << "spec " << i << "\n" << dump(first.diagnostics) << text;
    const std::string printed = prettyPrint(first.spec);
    ParseResult second = parseSpec(printed);
    ASSERT_TRUE(second.ok()) << "spec " << i << "\n" << dump(second.diagnostics) << printed;
    EXPECT_TRUE(equal(first.spec, second.spec)) << "spec " << i << "\n" << text << "\n---\n" << printed;
  }
}

TEST(Parser, Deterministic) {
  const std::string text = readFixture("travel_booking.abc");
  ParseResult a = parseSpec(text), b = parseSpec(text);
  ASSERT_TRUE(a.ok());
  EXPECT_TRUE(equal(a.spec, b.spec));
  ASSERT_EQ(a.spec.components.size(), b.spec.components.size());
  for (std::size_t i = 0; i < a.spec.components.size(); ++i) {
    EXPECT_EQ(a.spec.components[i].span.line, b.spec.components[i].span.line);
    EXPECT_EQ(a.spec.components[i].run->span.column, b.spec.components[i].run->span.column);
  }
}

TEST(Parser, CorpusHasNoDiagnostics) {
  ParseResult r = parseSpec(readFixture("travel_booking.abc"));
  EXPECT_TRUE(r.diagnostics.empty()) << dump(r.diagnostics);
  EXPECT_EQ(r.spec.components.size(), 6u);
  EXPECT_EQ(r.spec.properties.size(), 10u);
}

TEST(Validate, BrokenFixture) {
  const std::string text = readFixture("bad.abc");
  ParseResult r = parseSpec(text);
  EXPECT_FALSE(r.ok());
  for (const char* code : {"E-DUP-PROC", "E-UNDEF-PROC", "E-IFACE", "E-UNBOUND"})
    EXPECT_TRUE(hasCode(r.diagnostics, code)) << code << "\n" << dump(r.diagnostics);
  const auto lines = static_cast<std::uint32_t>(std::count(text.begin(), text.end(), '\n') + 1);
  for (const auto& d : r.diagnostics) {
    EXPECT_GE(d.span.line, 1u) << d.code;
    EXPECT_LE(d.span.line, lines) << d.code;
  }
}

TEST(Validate, Codes) {
  struct Case {
    const char* code;
    const char* text;
  };
  const std::vector<Case> cases{
      {"E-DUP-PROC", "proc A = 0\nproc A = 0\n"},
      {"E-UNBOUND", "proc A = (c)@(tt).0\ncomponent X { attrs { id = 1; } interface { id } run A }\n"},
      {"E-UNDEF-PROC", "component X { attrs { id = 1; } interface { id } run Nowhere }\n"},
      {"E-IFACE", "component X { attrs { id = 1; } interface { id, missing } run 0 }\n"},
      {"E-DUP-COMP", "component X { attrs { } interface { } run 0 }\ncomponent X { attrs { } interface { } run 0 }\n"},
      {"E-DUP-BINDER", "proc A = (tt)(x, x).0\n"},
      {"E-UNDEF-EXTERN", "proc A = (nope(1))@(tt).0\n"},
      {"E-DRAW-PRED", "extern e : { 1 }\nproc A = (\"m\")@(e() = 1).0\n"},
      {"E-UNGUARDED", "proc A = B\nproc B = A\n"},
      {"E-UNKNOWN-COMP", "property p = reachable sent(Ghost, \"x\")\n"},
      {"E-SYNTAX", "proc A = (tt)(x.0\n"},
      {"E-LEX", "proc A = (\"unterminated)@(tt).0\n"},
  };
  for (const auto& c : cases) {
    ParseResult r = parseSpec(c.text);
    EXPECT_FALSE(r.ok()) << c.code;
    EXPECT_TRUE(hasCode(r.diagnostics, c.code)) << c.code << " got:\n" << dump(r.diagnostics);
  }
}

TEST(Validate, EmptyDomain) {
  SystemSpec spec;
  ExternDecl e;
  e.name = "e";
  spec.externs.push_back(e);
  EXPECT_TRUE(hasCode(validate(spec), "E-EMPTY-DOMAIN"));
  EXPECT_FALSE(parseSpec("extern e : { }\n").ok());
}

TEST(Validate, RecoversAfterSyntaxError) {
  ParseResult r = parseSpec("proc A = (tt)(x.0\nproc B = 0\nproc B = 0\n");
  EXPECT_TRUE(hasCode(r.diagnostics, "E-SYNTAX"));
  EXPECT_EQ(codes(r.diagnostics).size(), 1u) << dump(r.diagnostics);
  EXPECT_NE(r.spec.findProc("B"), nullptr);
}

TEST(Diagnostics, Rendering) {
  Diagnostic d{Severity::Error, SourceSpan{3, 7, 3, 9}, "E-UNBOUND", "unbound variable 'c'"};
  EXPECT_EQ(renderDiagnostic(d, "bad.abc", false), "bad.abc:3:7: error[E-UNBOUND]: unbound variable 'c'");
  EXPECT_NE(renderDiagnostic(d, "bad.abc", true).find("\x1b["), std::string::npos);
}

}  // namespace
}  // namespace abc
