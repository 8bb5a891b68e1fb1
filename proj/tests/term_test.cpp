#include <gtest/gtest.h>

#include "abc/canonical.hpp"
#include "abc/term.hpp"
#include "support/generators.hpp"

namespace abc {
namespace {

TEST(Term, StructuralEqualityIgnoresSpans) {
  Expr a = makeAttr("price", {}, SourceSpan{1, 2, 1, 7});
  Expr b = makeAttr("price", {}, SourceSpan{9, 9, 9, 14});
  EXPECT_TRUE(equal(a, b));
  EXPECT_EQ(a->hash, b->hash);
  EXPECT_FALSE(equal(makeAttr("price"), makeThisAttr("price")));
  EXPECT_FALSE(equal(makeVar("p"), makeAttr("p")));
}

TEST(Term, ClosednessTracksThisReferences) {
  Pred open = makeCompare(CmpOp::Eq, makeAttr("id"), makeThisAttr("favh"));
  Pred shut = makeCompare(CmpOp::Eq, makeAttr("id"), makeLiteral(Value::text("h1")));
  EXPECT_FALSE(isClosed(open));
  EXPECT_TRUE(isClosed(shut));
  EXPECT_TRUE(hasVariables(makeCompare(CmpOp::Le, makeVar("op"), makeVar("p"))));
  EXPECT_FALSE(hasVariables(shut));
}

TEST(Canonicalize, SortsParallelComponents) {
  Proc a = makeCall("A"), b = makeCall("B");
  Proc got = canonicalize(makePar(b, makePar(a, makeInact())));
  EXPECT_TRUE(equal(got, makePar(a, makePar(b, makeInact()))));
}

TEST(Canonicalize, InactIsFixed) {
  Proc zero = makeInact();
  EXPECT_TRUE(equal(canonicalize(zero), zero));
}

TEST(Canonicalize, FlattensNestedChoice) {
  Proc a = makeCall("A"), b = makeCall("B"), c = makeCall("C");
  Proc left = canonicalize(makeChoice(makeChoice(c, a), b));
  Proc right = canonicalize(makeChoice(a, makeChoice(b, c)));
  EXPECT_TRUE(equal(left, right));
  EXPECT_EQ(left->hash, right->hash);
  // Choice and parallel never merge.
  EXPECT_FALSE(equal(canonicalize(makePar(a, b)), canonicalize(makeChoice(a, b))));
}

TEST(Canonicalize, ReachesUnderPrefixes) {
  Proc a = makeCall("A"), b = makeCall("B");
  Pred tt = makeTrue();
  Proc p = makeInput(tt, {"x"}, {}, makePar(b, a));
  Proc q = makeInput(tt, {"x"}, {}, makePar(a, b));
  EXPECT_TRUE(equal(canonicalize(p), canonicalize(q)));
}

TEST(Canonicalize, Idempotent) {
  testgen::Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    Proc t = gen.proc(4, {});
    Proc once = canonicalize(t);
    Proc twice = canonicalize(once);
    ASSERT_TRUE(equal(once, twice));
    EXPECT_EQ(once->hash, twice->hash);
  }
}

TEST(Canonicalize, InvariantUnderReordering) {
  testgen::Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    Proc x = gen.proc(3, {}), y = gen.proc(3, {}), z = gen.proc(3, {});
    EXPECT_TRUE(equal(canonicalize(makePar(x, makePar(y, z))), canonicalize(makePar(makePar(z, x), y))));
    EXPECT_TRUE(equal(canonicalize(makeChoice(x, makeChoice(y, z))), canonicalize(makeChoice(makeChoice(y, z), x))));
  }
}

TEST(Term, CompareIsATotalOrder) {
  testgen::Gen gen(23);
  for (int i = 0; i < 1000; ++i) {
    Proc a = gen.proc(3, {}), b = gen.proc(3, {});
    EXPECT_EQ(compare(a, b), -compare(b, a));
    EXPECT_EQ(compare(a, b) == 0, equal(a, b));
  }
}

}  // namespace
}  // namespace abc
