#include <gtest/gtest.h>

#include <set>

#include "coefmod/monomial_module.hpp"
#include "coefmod/newton.hpp"

using namespace coefmod;

namespace {

MonomialIdeal ideal2(std::vector<ExpVec> gens) { return MonomialIdeal(2, std::move(gens)); }

// Brute-force count of monomials in `big` but not `small` inside a box.
std::uint64_t box_count(const MonomialIdeal& big, const MonomialIdeal& small, Exp box) {
  std::uint64_t n = 0;
  for (Exp a = 0; a <= box; ++a) {
    for (Exp b = 0; b <= box; ++b) {
      ExpVec v{a, b};
      if (big.contains(v) && !small.contains(v)) ++n;
    }
  }
  return n;
}

MonomialIdeal random_m_primary(Rng& rng, int d, Exp top) {
  std::vector<ExpVec> gens;
  for (int i = 0; i < d; ++i) {
    ExpVec v(static_cast<std::size_t>(d), 0);
    v[static_cast<std::size_t>(i)] = 1 + static_cast<Exp>(rng() % top);
    gens.push_back(v);
  }
  int extra = static_cast<int>(rng() % 4);
  for (int k = 0; k < extra; ++k) {
    ExpVec v(static_cast<std::size_t>(d));
    for (auto& e : v) e = static_cast<Exp>(rng() % top);
    if (degree(v) == 0) v[0] = 1;
    gens.push_back(v);
  }
  return MonomialIdeal(d, gens);
}

}  // namespace

TEST(MonomialIdeal, Minimalization) {
  auto i = ideal2({{2, 0}, {3, 1}, {0, 2}, {2, 0}});
  EXPECT_EQ(i.gens().size(), 2U);
  EXPECT_TRUE(i.contains(ExpVec{5, 5}));
  EXPECT_FALSE(i.contains(ExpVec{1, 1}));
}

TEST(MonomialIdeal, StaircaseCounts) {
  auto m2 = MonomialIdeal::maximal_power(2, 2);
  auto j = ideal2({{2, 0}, {0, 2}});
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(*count_difference(m2.power(n), j.power(n)), static_cast<std::uint64_t>(n));
  }
  EXPECT_EQ(*count_difference(MonomialIdeal::unit(2), ideal2({{4, 0}, {3, 1}, {1, 3}, {0, 4}})), 11U);
}

TEST(MonomialIdeal, InfiniteDifference) {
  auto i = ideal2({{1, 0}});
  EXPECT_FALSE(count_difference(MonomialIdeal::unit(2), i).has_value());
  EXPECT_THROW(difference_monomials(MonomialIdeal::unit(2), i), Error);
}

TEST(MonomialIdeal, ColonAndSaturation) {
  auto i = ideal2({{1, 0}});
  EXPECT_EQ(saturation(i).first, i);
  auto j = ideal2({{2, 0}, {1, 1}});
  auto [sat, k] = saturation(j);
  EXPECT_EQ(sat, ideal2({{1, 0}}));
  EXPECT_EQ(k, 1);
  EXPECT_EQ(saturation(ideal2({{3, 0}, {0, 2}})).first, MonomialIdeal::unit(2));
}

TEST(MonomialModule, ProductsAndColons) {
  auto mf = MonomialModule::maximal_power(2, 2, 1, 1);
  auto mf2 = mf * mf;
  EXPECT_EQ(mf2.tdeg(), 2);
  EXPECT_EQ(mf2, MonomialModule::maximal_power(2, 2, 2, 2));
  EXPECT_EQ(mf2.colon(mf), MonomialModule::maximal_power(2, 2, 1, 1));
  for (int n = 1; n <= 6; ++n) {
    auto len = count_difference(MonomialModule::free(2, 2, n), mf.power(n));
    EXPECT_EQ(*len, static_cast<std::uint64_t>(n * (n + 1) * (n + 1) / 2));
  }
}

TEST(MonomialModule, SaturationOfNonFiniteColength) {
  auto m = MonomialModule::from_generators(2, 1, 1, {Monomial({1, 0}, {1})});
  EXPECT_EQ(saturation(m).first, m);
}

TEST(Newton, ClosureExamples) {
  auto m = MonomialModule::from_ideal(ideal2({{2, 0}, {0, 2}}));
  EXPECT_EQ(integral_closure(m), MonomialModule::from_ideal(ideal2({{2, 0}, {1, 1}, {0, 2}})));
  auto c = MonomialModule::from_ideal(ideal2({{3, 0}, {0, 3}}));
  EXPECT_EQ(integral_closure(c), MonomialModule::from_ideal(MonomialIdeal::maximal_power(2, 3)));
  auto principal = MonomialModule::from_ideal(ideal2({{2, 1}}));
  EXPECT_EQ(integral_closure(principal), principal);
}

TEST(Newton, ModuleClosureMixesComponentsOnlyAboveDegreeOne) {
  auto n = MonomialModule::from_generators(2, 2, 2, {Monomial({1, 0}, {2, 0}), Monomial({0, 1}, {0, 2})});
  EXPECT_TRUE(integral_closure(n).contains(Monomial({1, 1}, {1, 1})));
}

TEST(Newton, LpFeasibility) {
  EXPECT_TRUE(in_newton_polyhedron({{2, 0}, {0, 2}}, {1, 1}));
  EXPECT_FALSE(in_newton_polyhedron({{2, 0}, {0, 2}}, {1, 0}));
  EXPECT_TRUE(in_newton_polyhedron({{5, 0}, {0, 5}}, {1, 4}));
}

class RandomIdeals : public ::testing::TestWithParam<int> {};

TEST_P(RandomIdeals, CountMatchesBruteForce) {
  Rng rng(static_cast<std::uint64_t>(GetParam()));
  auto big = random_m_primary(rng, 2, 4);
  auto small = big * random_m_primary(rng, 2, 3);
  auto n = count_difference(big, small);
  ASSERT_TRUE(n.has_value());
  EXPECT_EQ(*n, box_count(big, small, 20));
  EXPECT_EQ(difference_monomials(big, small).size(), *n);
  EXPECT_EQ(count_difference(big, small, 3), n);
}

TEST_P(RandomIdeals, ClosureOraclesAgree) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 500);
  auto m = MonomialModule::from_ideal(random_m_primary(rng, 2, 5));
  auto closure = integral_closure(m);
  EXPECT_TRUE(closure.contains(m));
  EXPECT_EQ(integral_closure(closure), closure);
  for (const auto& g : closure.generators()) EXPECT_GT(closure_power_witness(m, g, 12), 0) << g.to_string();
}

TEST_P(RandomIdeals, ColonIsAdjoint) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 900);
  auto a = random_m_primary(rng, 3, 3);
  auto b = random_m_primary(rng, 3, 3);
  auto c = a.colon(b);
  EXPECT_TRUE(a.contains(c * b));
  EXPECT_TRUE(c.contains(a));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomIdeals, ::testing::Range(0, 20));
