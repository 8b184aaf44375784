#include <gtest/gtest.h>

#include "support.hpp"

using namespace commprobe;
using support::G;

TEST(Permutation, CycleNotationRoundTrip) {
  auto p = Permutation::from_cycles("(1 2 3)(4 5)", 5);
  EXPECT_EQ(p.to_cycles(), "(1 2 3)(4 5)");
  EXPECT_EQ(Permutation::from_cycles("()", 4).to_cycles(), "()");
  EXPECT_EQ(Permutation::from_cycles("(1,2,3)", 3), Permutation::from_cycles("(1 2 3)", 3));
}

TEST(Permutation, RightActionProduct) {
  auto a = Permutation::from_cycles("(1 2)", 3);
  auto b = Permutation::from_cycles("(2 3)", 3);
  // apply a then b: 1 -> 2 -> 3
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_EQ((a * b).to_cycles(), "(1 3 2)");
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(Permutation::from_cycles("(1 4)", 3), ValidationError);
  EXPECT_THROW(Permutation::from_cycles("(1 2)(2 3)", 3), ValidationError);
  EXPECT_THROW(Permutation::from_cycles("(1 2", 3), ParseError);
  EXPECT_THROW(Permutation(std::vector<Permutation::point_type>{0, 0}), ValidationError);
}

TEST(GroupFromGenerators, SymmetricGroupOfDegreeThree) {
  auto g = group_from_generators({Permutation::from_cycles("(1 2 3)", 3), Permutation::from_cycles("(1 2)", 3)}, 3);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_TRUE(g.permutation(0).is_identity());
  EXPECT_FALSE(g.is_abelian());
  EXPECT_EQ(g.class_count(), 3u);
}

TEST(GroupFromGenerators, TrivialGroup) {
  auto g = trivial_group(4);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.is_abelian());
}

TEST(GroupFromGenerators, TablesMatchPermutationProducts) {
  auto g = G("S4");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      ASSERT_EQ(g.permutation(g.mul(a, b)), g.permutation(a) * g.permutation(b));
  for (Element a = 0; a < g.order(); ++a) {
    EXPECT_EQ(g.mul(a, g.inv(a)), g.identity());
    EXPECT_EQ(g.pow(a, static_cast<std::int64_t>(g.element_order(a))), g.identity());
    EXPECT_EQ(g.element_order(a), oracle::element_order(g, a));
  }
}

TEST(GroupFromGenerators, CapExceeded) {
  std::vector<Permutation> gens{Permutation::from_cycles("(1 2 3 4 5 6 7 8 9)", 9),
                                Permutation::from_cycles("(1 2)", 9)};
  try {
    group_from_generators(gens, 9, 1000);
    FAIL() << "expected GroupTooLarge";
  } catch (const GroupTooLarge& e) {
    EXPECT_EQ(e.cap, 1000u);
    EXPECT_GT(e.partial_count, 1000u);
  }
}

TEST(GroupFromGenerators, WordsSpellElements) {
  auto g = G("A5");
  for (Element x = 0; x < g.order(); ++x) {
    Element y = g.identity();
    for (auto j : g.word_for(x)) y = g.mul(y, g.generators()[j]);
    ASSERT_EQ(x, y);
  }
}

TEST(CayleyTable, AcceptsZ2AndFindsIdentity) {
  auto g = group_from_cayley_table({{1, 0}, {0, 1}});
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.identity(), 1u);
  EXPECT_FALSE(g.associativity_sampled());
}

TEST(CayleyTable, RejectsNonAssociative) {
  // a Latin square with identity 0 that is not associative
  std::vector<std::vector<Element>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    group_from_cayley_table(t);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-associative triple"), std::string::npos);
  }
}

TEST(CayleyTable, RejectsMissingIdentityAndInverse) {
  EXPECT_THROW(group_from_cayley_table({{0, 0}, {0, 0}}), ValidationError);
  EXPECT_THROW(group_from_cayley_table({{0, 1}, {1, 1}}), ValidationError);
  EXPECT_THROW(group_from_cayley_table({{0, 1}, {1}}), ValidationError);
  EXPECT_THROW(group_from_cayley_table({{0, 2}, {1, 0}}), ValidationError);
}

TEST(CayleyTable, LargeTablesAreSampled) {
  const std::size_t n = 520;
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  auto g = group_from_cayley_table(t);
  EXPECT_TRUE(g.associativity_sampled());
  EXPECT_EQ(g.order(), n);
}

TEST(DirectProduct, OrderAndPairLayout) {
  auto s3 = G("S3"), z2 = G("Z2");
  auto d = direct_product(s3, z2);
  EXPECT_EQ(d.order(), 12u);
  EXPECT_EQ(d.degree(), 5u);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 2; ++b)
      for (Element c = 0; c < 6; ++c)
        for (Element e = 0; e < 2; ++e)
          ASSERT_EQ(d.mul(a * 2 + b, c * 2 + e), s3.mul(a, c) * 2 + z2.mul(b, e));
}

TEST(Quotient, S3ModA3) {
  auto g = G("S3");
  auto a3 = support::gen(g, {"(1 2 3)"});
  Quotient q = quotient_group(a3);
  EXPECT_EQ(q.group.order(), 2u);
  EXPECT_TRUE(q.projection.is_homomorphism());
  EXPECT_EQ(q.projection(support::perm(g, "(1 2 3)")), q.group.identity());
  EXPECT_NE(q.projection(support::perm(g, "(1 2)")), q.group.identity());
}

TEST(Quotient, KernelIsNAndRepresentativesAreLeast) {
  for (const char* name : {"S4", "D8", "Q8", "SL(2,3)", "Heis27"}) {
    auto g = G(name);
    for (const auto& n : all_normal_subgroups(g)) {
      Quotient q = quotient_group(n);
      ASSERT_EQ(q.group.order() * n.order(), g.order()) << name;
      ASSERT_TRUE(q.projection.is_homomorphism()) << name;
      EXPECT_EQ(q.preimage(Subgroup::trivial(q.group)), n) << name;
      for (Element x = 0; x < g.order(); ++x) ASSERT_LE(q.representatives[q.projection(x)], x);
      for (std::size_t c = 1; c < q.representatives.size(); ++c)
        ASSERT_LT(q.representatives[c - 1], q.representatives[c]);
    }
  }
}

TEST(Quotient, TrivialAndWholeKernels) {
  auto g = G("D10");
  EXPECT_EQ(quotient_group(Subgroup::trivial(g)).group.order(), 10u);
  EXPECT_EQ(quotient_group(Subgroup::whole(g)).group.order(), 1u);
}

TEST(Quotient, RejectsNonNormal) {
  auto g = G("S3");
  EXPECT_THROW(quotient_group(support::gen(g, {"(1 2)"})), Error);
}

TEST(Ratio, ReducedExactArithmetic) {
  Ratio a(2, 4);
  EXPECT_EQ(a.str(), "1/2");
  EXPECT_EQ((a * Ratio(2, 3)).str(), "1/3");
  EXPECT_EQ((a + Ratio(1, 3)).str(), "5/6");
  EXPECT_LT(Ratio(1, 3), Ratio(1, 2));
  EXPECT_EQ(Ratio::parse("10/16"), Ratio(5, 8));
  EXPECT_THROW(Ratio(1, 0), Error);
  EXPECT_THROW(Ratio::parse("x/2"), Error);
}
