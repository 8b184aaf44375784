#include <gtest/gtest.h>

#include "support.hpp"

using namespace commprobe;
using support::G;
using support::to_oracle;

TEST(SmallClassSets, Definitions) {
  auto g = G("S4");
  auto whole = Subgroup::whole(g);
  auto x = small_G_class_set(whole, Ratio(1, 2));  // |x^G| <= 4
  EXPECT_EQ(x.count(), 4u);                          // identity and the three double transpositions
  auto v4 = support::gen(g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  EXPECT_EQ(small_K_class_set(v4, Ratio(1, 2)).count(), 24u);
  EXPECT_EQ(small_K_class_set(v4, Ratio(1, 1)).count(), 16u);  // |y^V4| <= 2 fails for 3-cycles only
  EXPECT_THROW(small_G_class_set(whole, Ratio(0, 1)), Error);
  EXPECT_THROW(small_G_class_set(whole, Ratio(3, 2)), Error);
}

TEST(Decompose, S3AtOneHalf) {
  auto g = G("S3");
  auto r = neumann_decompose(Subgroup::whole(g), Ratio(1, 2));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(r.actual_pr, Ratio(1, 2));
  EXPECT_EQ(r.X.count(), 6u);
  EXPECT_TRUE(r.B.is_whole());
  EXPECT_EQ(r.Y.count(), 6u);
  EXPECT_TRUE(r.T.is_whole());
  EXPECT_EQ(r.TB_commutator.order(), 3u);
  EXPECT_EQ(r.N.order(), 3u);
  EXPECT_EQ(r.B0.order(), 6u);
  ASSERT_TRUE(r.H);
  EXPECT_EQ(*r.H, support::gen(g, {"(1 2 3)"}));
  EXPECT_EQ(r.product_length_r, 1u);
  EXPECT_EQ(r.exponent_bound, 12u);
  EXPECT_EQ(r.class_bound, BigInt(1) << 24);
  EXPECT_TRUE(r.all_checks_pass());
}

TEST(Decompose, S3AtNineTenths) {
  auto g = G("S3");
  auto r = neumann_decompose(Subgroup::whole(g), Ratio(9, 10));
  EXPECT_FALSE(r.hypothesis_holds);
  EXPECT_EQ(r.X.count(), 3u);
  auto a3 = support::gen(g, {"(1 2 3)"});
  EXPECT_EQ(r.B, a3);
  EXPECT_EQ(r.E, a3);
  EXPECT_EQ(r.T, a3);
  EXPECT_EQ(r.index_K_B, 2u);
  EXPECT_TRUE(r.all_checks_pass());
}

TEST(Decompose, S4WithKleinFour) {
  auto g = G("S4");
  auto v4 = support::gen(g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  auto r = neumann_decompose(v4, Ratio(1, 2));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(r.Y.count(), 24u);
  EXPECT_TRUE(r.T.is_whole());
  EXPECT_EQ(r.B, v4);
  EXPECT_EQ(r.N, v4);
  EXPECT_TRUE(r.all_checks_pass());
}

TEST(Decompose, Q8) {
  auto g = G("Q8");
  auto r = neumann_decompose(Subgroup::whole(g), Ratio(5, 8));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.T.is_whole());
  EXPECT_EQ(r.N.order(), 2u);
  ASSERT_TRUE(r.H);
  EXPECT_TRUE(r.H->is_whole());
  EXPECT_TRUE(intersection_in_third_center(r.K, *r.H));
  EXPECT_TRUE(r.all_checks_pass());
}

TEST(Decompose, NonNormalKHasNoStabilizer) {
  auto g = G("S4");
  auto t = support::gen(g, {"(1 2)"});
  auto r = neumann_decompose(t, Ratio(1, 4));
  EXPECT_FALSE(r.H);
  EXPECT_THROW(series_stabilizer(r), HypothesisViolation);
  EXPECT_TRUE(r.all_checks_pass());
}

TEST(Decompose, InvariantsAcrossCatalog) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    if (g.order() > 64) continue;
    for (Ratio eps : {Ratio(1, 4), Ratio(5, 8)}) {
      auto r = neumann_decompose(Subgroup::whole(g), eps);
      ASSERT_TRUE(r.all_checks_pass()) << g.name() << " eps=" << eps.str();
      // T is the normal core of E, checked against the oracle normal-subgroup list
      oracle::Set best = oracle::closure(g, oracle::empty(g));
      for (const auto& n : oracle::normal_subgroups(g))
        if (oracle::subset(n, to_oracle(r.E)) && oracle::size(n) > oracle::size(best)) best = n;
      EXPECT_EQ(to_oracle(r.T), best) << g.name();
      EXPECT_EQ(to_oracle(r.TB_commutator), oracle::commutator(g, to_oracle(r.T), to_oracle(r.B)));
      EXPECT_EQ(r.hypothesis_holds, eps <= r.actual_pr);
    }
  }
}

TEST(Decompose, QuotientViewIsReported) {
  auto g = G("S4");
  auto r = neumann_decompose(Subgroup::whole(g), Ratio(1, 8));
  ASSERT_TRUE(r.quotient_view);
  EXPECT_EQ(r.quotient_view->LL_order * r.quotient_view->order, 24u);
  EXPECT_LE(r.actual_pr, r.quotient_view->actual_pr);
}

TEST(Decompose, ThirdCenterOnStabilizers) {
  for (const char* name : {"S4", "D16", "SL(2,3)", "Heis27", "F21", "ES32-"}) {
    auto g = G(name);
    for (const auto& k : all_normal_subgroups(g)) {
      auto r = neumann_decompose(k, Ratio(1, 2));
      ASSERT_TRUE(r.H) << name;
      EXPECT_TRUE(intersection_in_third_center(k, *r.H)) << name;
    }
  }
}

TEST(CommutatorPairData, Examples) {
  auto g = G("S4");
  auto a4 = support::gen(g, {"(1 2 3)", "(2 3 4)"});
  auto v4 = support::gen(g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  auto d = bounded_class_commutator_data(a4, v4);
  EXPECT_EQ(d.order_AB, 4u);
  EXPECT_EQ(d.m_A, 3u);  // C_A4(v) = V4 for v != 1 in V4
  EXPECT_EQ(d.m_B, 4u);  // a 3-cycle centralizes nothing in V4
  EXPECT_TRUE(d.A_normal && d.B_normal && d.B_closure_abelian);
  EXPECT_EQ(d.AB_in_intersection, true);
}

TEST(NormalClosureData, Examples) {
  auto g = G("S3");
  auto d = cristi_data(support::gen(g, {"(1 2)"}));
  EXPECT_EQ(d.m, 3u);
  EXPECT_EQ(d.closure_order, 6u);
  EXPECT_EQ(d.derived_order, 3u);
  auto z = cristi_data(center(G("Q8")));
  EXPECT_EQ(z.m, 1u);
  EXPECT_EQ(z.derived_order, 1u);
}

TEST(GammaClassData, Examples) {
  auto s3 = gamma_class_data(G("S3"), 1);
  EXPECT_EQ(s3.n, 3u);
  EXPECT_EQ(s3.gamma_k1_order, 3u);
  auto d8 = gamma_class_data(G("D8"), 2);
  EXPECT_EQ(d8.gamma_k_order, 2u);
  EXPECT_EQ(d8.n, 1u);
  EXPECT_EQ(d8.gamma_k1_order, 1u);
  EXPECT_THROW(gamma_class_data(G("D8"), 0), Error);
}
