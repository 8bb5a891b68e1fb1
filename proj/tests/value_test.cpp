#include <gtest/gtest.h>

#include "abc/env.hpp"
#include "abc/value.hpp"
#include "support/generators.hpp"

namespace abc {
namespace {

TEST(Value, KindsAreDistinct) {
  EXPECT_NE(Value::integer(1), Value::real(1.0));
  EXPECT_NE(Value::undef(), Value::integer(0));
  EXPECT_EQ(Value::text("rome"), Value::text("rome"));
  EXPECT_TRUE(Value::undef().isUndef());
  EXPECT_TRUE(Value::real(2.5).isNumeric());
  EXPECT_FALSE(Value::boolean(true).isNumeric());
}

TEST(Value, SetsAreSortedAndDeduplicated) {
  Value s = Value::set({Value::integer(3), Value::integer(1), Value::integer(3)});
  ASSERT_EQ(s.items().size(), 2u);
  EXPECT_EQ(s.items()[0], Value::integer(1));
  EXPECT_EQ(s, Value::set({Value::integer(1), Value::integer(3)}));
  EXPECT_EQ(s.hash(), Value::set({Value::integer(1), Value::integer(3)}).hash());
}

TEST(Value, LiteralSyntax) {
  EXPECT_EQ(Value::integer(-4).toString(), "-4");
  EXPECT_EQ(Value::real(0.1).toString(), "0.1");
  EXPECT_EQ(Value::real(20.0).toString(), "20.0");
  EXPECT_EQ(Value::boolean(false).toString(), "false");
  EXPECT_EQ(Value::undef().toString(), "undef");
  EXPECT_EQ(Value::text("a\"b").toString(), "\"a\\\"b\"");
  EXPECT_EQ(Value::tuple({Value::integer(1), Value::text("x")}).toString(), "(1, \"x\")");
  EXPECT_EQ(Value::set({}).toString(), "{}");
}

TEST(Value, OrderIsTotalAndConsistentWithEquality) {
  testgen::Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    Value a = gen.value(), b = gen.value(), c = gen.value();
    const int ab = Value::compare(a, b), ba = Value::compare(b, a);
    EXPECT_EQ(ab, -ba) << a.toString() << " vs " << b.toString();
    EXPECT_EQ(ab == 0, a == b);
    if (ab == 0) {
      EXPECT_EQ(a.hash(), b.hash());
    }
    if (Value::compare(a, b) <= 0 && Value::compare(b, c) <= 0) {
      EXPECT_LE(Value::compare(a, c), 0);
    }
  }
}

TEST(AttributeEnv, AbsentDiffersFromStoredUndef) {
  AttributeEnv env;
  env.set(AttrKey{"favh", {}}, Value::undef());
  const Value* stored = env.find("favh");
  ASSERT_NE(stored, nullptr);
  EXPECT_TRUE(stored->isUndef());
  EXPECT_EQ(env.find("other"), nullptr);
}

TEST(AttributeEnv, IndexedFamilies) {
  AttributeEnv env;
  env.set(AttrKey{"room", {Value::integer(5)}}, Value::integer(1));
  env.set(AttrKey{"room", {Value::integer(3)}}, Value::integer(2));
  env.set(AttrKey{"price", {Value::text("br1"), Value::integer(5)}}, Value::integer(80));
  EXPECT_EQ(*env.find("room", {Value::integer(3)}), Value::integer(2));
  EXPECT_EQ(env.find("room"), nullptr);
  EXPECT_EQ(env.names(), (std::set<std::string>{"price", "room"}));
  EXPECT_EQ(AttrKey(env.entries().front().first).toString(), "price[\"br1\", 5]");
}

TEST(AttributeEnv, LayoutIndependentOfInsertionOrder) {
  AttributeEnv a, b;
  a.set(AttrKey{"x", {}}, Value::integer(1));
  a.set(AttrKey{"y", {}}, Value::integer(2));
  b.set(AttrKey{"y", {}}, Value::integer(2));
  b.set(AttrKey{"x", {}}, Value::integer(1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  b.set(AttrKey{"x", {}}, Value::integer(3));
  EXPECT_FALSE(a == b);
  EXPECT_EQ(b.size(), 2u);
}

}  // namespace
}  // namespace abc
