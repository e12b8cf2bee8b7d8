#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "support.hpp"

using namespace whsg;
using fixtures::chars;

namespace {

std::vector<std::pair<std::string, FiniteSemigroup>> oracle_tables() {
  auto out = fixtures::named_tables();
  int k = 0;
  for (auto& t : semigroup_corpus(3)) out.emplace_back("corpus" + std::to_string(k++), std::move(t));
  return out;
}

}  // namespace

TEST(Monoid, ReesIdentityIsI) {
  auto s = fixtures::load("rees");
  auto v = is_monoid(s);
  ASSERT_TRUE(v.answer) << v.reason;
  ASSERT_NE(v.witness("identity"), nullptr);
  EXPECT_EQ(*v.witness("identity"), chars(s, "i"));
}

TEST(Monoid, FreeHasNoIdentity) { EXPECT_FALSE(is_monoid(fixtures::load("free2")).answer); }

TEST(Monoid, SemilatticeTopElement) {
  auto s = fixtures::load("sl2");
  auto v = is_monoid(s);
  ASSERT_TRUE(v.answer);
  EXPECT_EQ(*v.witness("identity"), Word{s.symbol("1")});
}

TEST(Monoid, NullHasNoIdentity) {
  auto v = is_monoid(fixtures::load("null3"));
  EXPECT_FALSE(v.answer);
}

TEST(Green, GroupIsOneClass) {
  auto s = fixtures::load("z2");
  for (Green r : {Green::R, Green::L, Green::H}) EXPECT_TRUE(green_related(s, {s.symbol("g")}, {s.symbol("e")}, r));
}

TEST(Green, FreeLettersAreNotRelatedToLongerWords) {
  auto s = fixtures::load("free2");
  EXPECT_FALSE(green_related(s, chars(s, "a"), chars(s, "ab"), Green::R));
  EXPECT_FALSE(green_related(s, chars(s, "b"), chars(s, "ab"), Green::L));
  EXPECT_TRUE(green_related(s, chars(s, "ab"), chars(s, "ab"), Green::H));
}

TEST(Green, ReesSameRow) {
  auto s = fixtures::load("rees");
  EXPECT_TRUE(green_related(s, chars(s, "b"), chars(s, "c"), Green::R));
  EXPECT_FALSE(green_related(s, chars(s, "b"), chars(s, "c"), Green::L));
  EXPECT_FALSE(green_related(s, chars(s, "b"), chars(s, "d"), Green::R));
  EXPECT_TRUE(green_related(s, chars(s, "c"), chars(s, "d"), Green::L));
  // the oracle agrees: (1,2) and (1,3) share a row
  auto t = fixtures::rees_table();
  EXPECT_TRUE(table_green(t, t.index("12"), t.index("13"), Green::R));
}

TEST(Green, OperandOutsideRepresentatives) {
  auto s = fixtures::load("null3");
  EXPECT_THROW(green_related(s, chars(s, "ab"), chars(s, "a"), Green::R), Error);
}

TEST(Group, Examples) {
  auto z2 = is_group(fixtures::load("z2"));
  EXPECT_TRUE(z2.answer) << z2.reason;
  EXPECT_FALSE(is_group(fixtures::load("rees")).answer);
  EXPECT_FALSE(is_group(fixtures::load("sl2")).answer);
  EXPECT_FALSE(is_group(fixtures::load("free2")).answer);
}

TEST(Commutative, Examples) {
  EXPECT_TRUE(is_commutative(fixtures::load("null3")).answer);
  EXPECT_TRUE(is_commutative(fixtures::load("z2")).answer);
  auto s = fixtures::load("free2");
  auto v = is_commutative(s);
  EXPECT_FALSE(v.answer);
  ASSERT_NE(v.witness("left"), nullptr);
  EXPECT_EQ(*v.witness("left"), chars(s, "a"));
  EXPECT_EQ(*v.witness("right"), chars(s, "b"));
}

TEST(Properties, HIsRAndL) {
  for (const char* name : {"rees", "rb22", "sl2", "null3", "z2"}) {
    auto s = fixtures::load(name);
    const auto reps = enumerate(s.reps, 3);
    for (const auto& w : reps)
      for (const auto& w2 : reps)
        ASSERT_EQ(green_related(s, w, w2, Green::H),
                  green_related(s, w, w2, Green::R) && green_related(s, w, w2, Green::L))
            << name;
  }
}

TEST(Properties, GreenIsAnEquivalence) {
  for (const char* name : {"rees", "rb22", "sl2"}) {
    auto s = fixtures::load(name);
    const auto reps = enumerate(s.reps, 3);
    for (Green r : {Green::R, Green::L, Green::H}) {
      for (const auto& x : reps) {
        ASSERT_TRUE(green_related(s, x, x, r));
        for (const auto& y : reps) {
          const bool xy = green_related(s, x, y, r);
          ASSERT_EQ(xy, green_related(s, y, x, r));
          if (!xy) continue;
          for (const auto& z : reps)
            if (green_related(s, y, z, r)) ASSERT_TRUE(green_related(s, x, z, r)) << name << " " << to_string(r);
        }
      }
    }
  }
}

TEST(Properties, GroupImpliesMonoidWithSameIdentity) {
  for (const auto& [name, t] : oracle_tables()) {
    auto s = structure_from_table(t);
    auto g = is_group(s);
    if (!g.answer) continue;
    auto m = is_monoid(s);
    ASSERT_TRUE(m.answer) << name;
    EXPECT_EQ(t.evaluate(*m.witness("identity")), t.evaluate(*g.witness("identity"))) << name;
  }
}

TEST(Oracle, BasicDecisionsAgree) {
  for (const auto& [name, t] : oracle_tables()) {
    auto s = structure_from_table(t);
    EXPECT_EQ(is_monoid(s).answer, table_decide(t, Property::monoid).answer) << name;
    EXPECT_EQ(is_group(s).answer, table_decide(t, Property::group).answer) << name;
    EXPECT_EQ(is_commutative(s).answer, table_decide(t, Property::commutative).answer) << name;
    auto m = is_monoid(s);
    if (m.answer) EXPECT_EQ(t.evaluate(*m.witness("identity")), *oracle_detail::identity(t)) << name;
  }
}

TEST(Oracle, GreenRelationsAgree) {
  for (const auto& [name, t] : oracle_tables()) {
    auto s = structure_from_table(t);
    const auto rep = table_representatives(t);
    for (int x = 0; x < t.size(); ++x)
      for (int y = 0; y < t.size(); ++y)
        for (Green r : {Green::R, Green::L, Green::H})
          ASSERT_EQ(green_related(s, rep[static_cast<std::size_t>(x)], rep[static_cast<std::size_t>(y)], r),
                    table_green(t, x, y, r))
              << name << " " << t.elements[static_cast<std::size_t>(x)] << " "
              << t.elements[static_cast<std::size_t>(y)] << " " << to_string(r);
  }
}
