#include <gtest/gtest.h>

#include "support.hpp"

using namespace commprobe;
using support::G;
using support::to_oracle;

TEST(Arithmetic, PrimesAndParts) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_divisors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(p_part(360, 2), 8u);
  EXPECT_EQ(p_part(360, 7), 1u);
  EXPECT_TRUE(is_power_of(27, 3));
  EXPECT_TRUE(is_power_of(1, 5));
  EXPECT_FALSE(is_power_of(12, 2));
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
}

TEST(LowerCentralSeries, KnownClasses) {
  EXPECT_EQ(nilpotency_class(G("D8")), 2u);
  EXPECT_EQ(nilpotency_class(G("Q8")), 2u);
  EXPECT_EQ(nilpotency_class(G("Heis27")), 2u);
  EXPECT_EQ(nilpotency_class(G("D16")), 3u);
  EXPECT_EQ(nilpotency_class(G("D32")), 4u);
  EXPECT_EQ(nilpotency_class(G("Z12")), 1u);
  EXPECT_EQ(nilpotency_class(G("Z1")), 0u);
  EXPECT_FALSE(nilpotency_class(G("S3")).has_value());
  EXPECT_FALSE(nilpotency_class(G("A5")).has_value());
}

TEST(LowerCentralSeries, MatchesOracleEverywhere) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    if (g.order() > 120) continue;
    auto mine = lower_central_series(g).terms;
    auto ref = oracle::lower_series(g, oracle::full(g));
    ASSERT_EQ(mine.size(), ref.size()) << g.name();
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(to_oracle(mine[i]), ref[i]) << g.name();
    int c = oracle::nilpotency_class(g, oracle::full(g));
    auto nc = nilpotency_class(g);
    EXPECT_EQ(nc.has_value(), c >= 0) << g.name();
    if (nc) {
      EXPECT_EQ(static_cast<int>(*nc), c) << g.name();
    }
  }
}

TEST(LowerCentralSeries, GammaIndexing) {
  auto g = G("D16");
  EXPECT_EQ(gamma(g, 1).order(), 16u);
  EXPECT_EQ(gamma(g, 2).order(), 4u);
  EXPECT_EQ(gamma(g, 3).order(), 2u);
  EXPECT_EQ(gamma(g, 4).order(), 1u);
  EXPECT_EQ(gamma(g, 40).order(), 1u);
  EXPECT_EQ(gamma(G("S4"), 5).order(), 12u);
  EXPECT_THROW(gamma(g, 0), Error);
}

TEST(UpperCentralSeries, MatchesElementwiseDefinition) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    if (g.order() > 64) continue;
    auto mine = upper_central_series(g).terms;
    auto ref = oracle::upper_series(g);
    ASSERT_EQ(mine.size(), ref.size()) << g.name();
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(to_oracle(mine[i]), ref[i]) << g.name();
  }
  EXPECT_EQ(hypercenter_term(G("D16"), 1).order(), 2u);
  EXPECT_EQ(hypercenter_term(G("D16"), 2).order(), 4u);
  EXPECT_EQ(hypercenter_term(G("D16"), 9).order(), 16u);
  EXPECT_EQ(hypercenter_term(G("S3"), 3).order(), 1u);
}

TEST(UpperCentralSeries, OfSubgroupIsComputedInside) {
  auto g = G("S4");
  auto d8 = support::gen(g, {"(1 2 3 4)", "(1 3)"});
  auto up = upper_central_series(d8);
  ASSERT_EQ(up.terms.size(), 3u);
  EXPECT_EQ(up.terms[1].order(), 2u);
  EXPECT_EQ(up.terms[2], d8);
  EXPECT_EQ(hypercenter_term(d8, 3), d8);
}

TEST(Solvability, Examples) {
  EXPECT_TRUE(is_solvable(Subgroup::whole(G("S4"))));
  EXPECT_TRUE(is_solvable(Subgroup::whole(G("SL(2,3)"))));
  EXPECT_FALSE(is_solvable(Subgroup::whole(G("A5"))));
  EXPECT_FALSE(is_solvable(Subgroup::whole(G("S5"))));
}

TEST(Sylow, OrdersArePParts) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    for (auto p : prime_divisors(g.order())) {
      auto s = sylow_subgroup(g, p);
      EXPECT_EQ(s.order(), oracle::p_part(g.order(), p)) << g.name() << " p=" << p;
      EXPECT_TRUE(s.verify_closed());
      EXPECT_TRUE(is_p_group(s, p));
    }
  }
  EXPECT_THROW(sylow_subgroup(G("S4"), 4), Error);
  EXPECT_EQ(sylow_subgroup(G("S4"), 5).order(), 1u);
}

TEST(Fitting, MatchesOracle) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    if (g.order() > 64) continue;
    EXPECT_EQ(to_oracle(fitting_subgroup(g)), oracle::fitting(g)) << g.name();
  }
  EXPECT_EQ(fitting_subgroup(G("S4")).order(), 4u);
  EXPECT_EQ(fitting_subgroup(G("SL(2,3)")).order(), 8u);
  EXPECT_EQ(fitting_subgroup(G("A5")).order(), 1u);
  EXPECT_EQ(o_p(G("S4"), 2).order(), 4u);
  EXPECT_EQ(o_p(G("S4"), 3).order(), 1u);
  EXPECT_EQ(o_p(G("F21"), 7).order(), 7u);
}

TEST(GeneralizedFitting, Examples) {
  EXPECT_EQ(generalized_fitting(G("S4")).order(), 4u);
  EXPECT_EQ(generalized_fitting(G("S5")).order(), 60u);
  EXPECT_EQ(generalized_fitting(G("A5")).order(), 60u);
  EXPECT_EQ(generalized_fitting(G("S3")).order(), 3u);
  for (const char* name : {"D8", "Q8", "Heis27", "Z12", "ES32+"}) {
    auto g = G(name);
    EXPECT_TRUE(generalized_fitting(g).is_whole()) << name;
  }
  auto comps = components_and_layer(G("S5"));
  ASSERT_EQ(comps.components.size(), 1u);
  EXPECT_EQ(comps.layer.order(), 60u);
  EXPECT_TRUE(components_and_layer(G("SL(2,3)")).components.empty());
}

TEST(GeneralizedFitting, SelfCentralizing) {
  for (const auto& lg : builtin_catalog()) {
    const auto& g = lg.group;
    auto fstar = generalized_fitting(g);
    EXPECT_TRUE(centralizer_of_subgroup(Subgroup::whole(g), fstar).is_subgroup_of(fstar)) << g.name();
  }
}

TEST(Quasisimple, Examples) {
  EXPECT_TRUE(is_quasisimple(Subgroup::whole(G("A5"))));
  EXPECT_FALSE(is_quasisimple(Subgroup::whole(G("S5"))));
  EXPECT_FALSE(is_quasisimple(Subgroup::whole(G("SL(2,3)"))));
  EXPECT_FALSE(is_quasisimple(Subgroup::whole(G("Z5"))));
}

TEST(Exponent, Examples) {
  EXPECT_EQ(exponent(G("S4")), 12u);
  EXPECT_EQ(exponent(G("Q8")), 4u);
  EXPECT_EQ(exponent(G("Heis27")), 3u);
  EXPECT_EQ(exponent(G("Z2^3")), 2u);
  EXPECT_EQ(exponent(G("Z1")), 1u);
  EXPECT_EQ(power_subgroup(G("Q8"), 2).order(), 2u);
  EXPECT_EQ(power_subgroup(G("Z12"), 4).order(), 3u);
  EXPECT_TRUE(power_subgroup(G("Heis27"), 3).is_trivial());
}
