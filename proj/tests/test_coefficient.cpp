#include <gtest/gtest.h>

#include "samples.hpp"

using namespace coefmod;
using namespace coefmod::testing;

namespace {

using P = ModulePresentation<Fp>;

P ideal(const std::vector<std::string>& gens, int d = 2) {
  auto r = ring_fp(d, 1);
  std::vector<Poly<Fp>> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, r));
  return P(r, 1, ps);
}

P example_ideal() { return ideal({"x1^4*t1", "x1^3*x2*t1", "x1*x2^3*t1", "x2^4*t1"}); }

P mf() {
  auto r = ring_fp(2, 2);
  std::vector<Poly<Fp>> ps;
  for (auto g : {"x1*t1", "x2*t1", "x1*t2", "x2*t2"}) ps.push_back(parse_poly(g, r));
  return P(r, 1, ps);
}

int fitted_degree(const MonomialModule& big, const MonomialModule& small, int n_max) {
  MonomialPowers pb(big), ps(small);
  std::vector<std::uint64_t> t;
  for (int n = 1; n <= n_max; ++n) t.push_back(*count_difference(pb[n], ps[n], 0));
  return fit(NumericalFunction::from_table(LengthKind::rees_amao, t), 3).degree;
}

// Oracle: M_k from its defining property. A monomial y of q(M) belongs to
// M_k exactly when l((M + (y))^n / M^n) has degree below s - k.
MonomialModule coefficient_oracle(const MonomialModule& m, const MonomialModule& q, int s, int k) {
  MonomialModule acc = m;
  for (const auto& y : difference_monomials(q, m)) {
    auto l = m + MonomialModule::from_generators(m.d(), m.p(), m.tdeg(), {y});
    if (fitted_degree(l, m, 14) < s - k) acc = acc + l;
  }
  return acc;
}

}  // namespace

TEST(CoefficientModule, ExampleIdeal) {
  Rng rng(7);
  auto i = example_ideal();
  auto c2 = coefficient_module(i, 2, rng);
  EXPECT_TRUE(same_module(c2.result, sum(i, ideal({"x1^2*x2^2*t1"}))));
  EXPECT_TRUE(c2.degree.holds);
  EXPECT_LT(c2.degree.fit.degree, 0);
}

TEST(CoefficientModule, ClosedModuleCollapses) {
  Rng rng(7);
  auto m2 = ideal({"x1^2*t1", "x1*x2*t1", "x2^2*t1"});
  for (int k = 1; k <= 2; ++k) EXPECT_TRUE(same_module(coefficient_module(m2, k, rng).result, m2));
}

TEST(CoefficientModule, OutOfRangeK) {
  Rng rng(7);
  try {
    coefficient_module(example_ideal(), 3, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition);
  }
}

TEST(CoefficientModule, GeneralRegimeIsCertified) {
  Rng rng(3);
  auto i = example_ideal();
  auto g = i.gens();
  g[0] = g[0] + g[1].scaled(2);
  P general(i.ring(), 1, g);
  auto c = coefficient_module(general, 2, rng);
  EXPECT_TRUE(c.degree.holds);
  EXPECT_TRUE(contains(c.result, general));
  EXPECT_TRUE(contains(coefficient_module(i, 2, rng).result, c.result));
}

TEST(Chain, ExampleIdeal) {
  Rng rng(11);
  auto i = example_ideal();
  auto ch = coefficient_chain(i, rng);
  ASSERT_EQ(ch.links.size(), 2u);
  EXPECT_TRUE(ch.nested);
  EXPECT_TRUE(same_module(ch.links[0].result, sum(i, ideal({"x1^2*x2^2*t1"}))));
  ASSERT_TRUE(ch.top);
  EXPECT_TRUE(same_module(*ch.top, integral_closure_monomial(i)));
}

TEST(GradedChain, IdealAndFreeModule) {
  Rng rng(5);
  auto i = example_ideal();
  auto g = assoc_graded_chain(i, rng);
  EXPECT_TRUE(g.nested);
  EXPECT_TRUE(same_module(g.bottom, product(fitting_ideal(i), i)));
  for (const auto& c : g.links) EXPECT_LE(c.degree.fit.degree, g.s - (c.k + 1));
  auto gm = assoc_graded_chain(mf(), rng);
  EXPECT_EQ(gm.s, 3);
  EXPECT_TRUE(gm.nested);
}

TEST(Prop52, ExampleAndClosedModules) {
  Rng rng(2);
  auto r = check_prop_5_2(example_ideal(), rng);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(same_module(r.coefficient, sum(example_ideal(), ideal({"x1^2*x2^2*t1"}))));
  auto m2 = ideal({"x1^2*t1", "x1*x2*t1", "x2^2*t1"});
  EXPECT_TRUE(check_prop_5_2(m2, rng).pass);
}

TEST(Preservation, ClosureOfTwoSquares) {
  Rng rng(1);
  auto j = ideal({"x1^2*t1", "x2^2*t1"});
  auto rep = check_coefficient_preservation(j, 0, rng);
  ASSERT_TRUE(rep.hypothesis_met);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.e_module[0], 4);
  EXPECT_EQ(rep.e_coefficient[0], 4);
}

TEST(Preservation, HypothesisNotMet) {
  Rng rng(1);
  auto r = ring_fp(2, 1);
  P principal(r, 1, {parse_poly("x1*t1", r)});
  EXPECT_FALSE(check_coefficient_preservation(principal, 1, rng).hypothesis_met);
}

TEST(PowerCondition, ExampleIdeal) {
  Rng rng(4);
  auto rep = check_thm_5_8_condition(example_ideal(), 2, 2, rng);
  EXPECT_TRUE(rep.hypothesis_met);
  EXPECT_EQ(rep.holds.size() + rep.fails.size(), 2u);
}

class RandomIdeals : public ::testing::TestWithParam<int> {};

TEST_P(RandomIdeals, ChainMatchesDefinition) {
  Rng rng(static_cast<std::uint64_t>(GetParam()));
  auto m = ideal_module(random_primary_ideal(rng, 2, 8, 3));
  auto ch = coefficient_chain(m, rng);
  ASSERT_TRUE(ch.top);
  for (const auto& c : ch.links) {
    auto oracle = coefficient_oracle(m.monomial_module(), ch.top->monomial_module(), ch.s, c.k);
    EXPECT_EQ(c.result.monomial_module().to_string(), oracle.to_string()) << m.to_string() << " k = " << c.k;
    EXPECT_LT(c.degree.fit.degree, ch.s - c.k);
  }
}

TEST_P(RandomIdeals, ProbeFindsNoCounterexample) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 40);
  auto m = ideal_module(random_primary_ideal(rng, 2, 8, 3));
  auto ch = coefficient_chain(m, rng);
  for (const auto& c : ch.links) {
    auto rep = maximality_probe(m, c, 50, rng);
    EXPECT_TRUE(rep.clean()) << m.to_string() << " k = " << c.k;
  }
}

TEST_P(RandomIdeals, RatliffRushLiesInEveryLink) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 80);
  auto m = ideal_module(random_primary_ideal(rng, 2, 7, 3));
  auto rr = ratliff_rush(m).module;
  auto ch = coefficient_chain(m, rng);
  for (const auto& c : ch.links) EXPECT_TRUE(contains(c.result, rr));
  EXPECT_TRUE(check_prop_5_2(m, rng).pass);
}

TEST_P(RandomIdeals, SpreadCoefficientsPreserved) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 120);
  auto m = ideal_module(random_primary_ideal(rng, 2, 6, 3));
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(check_coefficient_preservation(m, k, rng).pass) << k;
}

TEST_P(RandomIdeals, GradedChainProperties) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 160);
  auto m = ideal_module(random_primary_ideal(rng, 2, 5, 2));
  auto g = assoc_graded_chain(m, rng);
  EXPECT_TRUE(g.nested);
  for (const auto& c : g.links) {
    EXPECT_LE(c.degree.fit.degree, g.s - (c.k + 1));
    EXPECT_TRUE(contains(m, c.result));
    EXPECT_TRUE(contains(c.result, product(fitting_ideal(m), m)));
  }
}

TEST_P(RandomIdeals, JoinIsMonotoneInBudget) {
  Rng a(static_cast<std::uint64_t>(GetParam()) + 200);
  auto m = ideal_module(random_primary_ideal(a, 2, 7, 3));
  Options small;
  small.budget = 1;
  small.n0_max = 1;
  Options large;
  Rng r1(1), r2(1);
  auto lo = coefficient_module(m, 1, r1, small);
  auto hi = coefficient_module(m, 1, r2, large);
  EXPECT_TRUE(contains(hi.result, lo.result));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomIdeals, ::testing::Range(0, 10));

class RandomModules : public ::testing::TestWithParam<int> {};

TEST_P(RandomModules, ChainMatchesDefinition) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 300);
  auto m = random_primary_module(rng, 2, 2);
  auto ch = coefficient_chain(m, rng);
  EXPECT_TRUE(ch.nested);
  for (const auto& c : ch.links) {
    auto oracle = coefficient_oracle(m.monomial_module(), ch.top->monomial_module(), ch.s, c.k);
    EXPECT_EQ(c.result.monomial_module().to_string(), oracle.to_string()) << m.to_string() << " k = " << c.k;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomModules, ::testing::Range(0, 4));

TEST(IdealPredicates, Agreement) {
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    auto m = ideal_module(random_primary_ideal(rng, 2, 4, 2));
    for (int k = 1; k <= 2; ++k) {
      auto rep = check_ideal_power_predicates(m, k, 3, rng);
      EXPECT_TRUE(rep.agree()) << m.to_string() << " k = " << k;
    }
  }
}

TEST(IdealPredicates, DegreeZeroTorsionExhibit) {
  // Ratliff-Rush adds x^2y^2 to I, so I_k != I, but every z in I \ I^2 has
  // linear growth modulo I^{n+1}, so (I)_[k] = I^2.
  Rng rng(8);
  auto m = ideal_module(MonomialIdeal(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}}));
  for (int k = 1; k <= 2; ++k) {
    auto rep = check_ideal_power_predicates(m, k, 2, rng);
    EXPECT_TRUE(rep.graded_predicate) << "k = " << k;
    EXPECT_FALSE(rep.coefficient_predicate) << "k = " << k;
    EXPECT_EQ(rep.coefficient_fails, std::vector<int>{1}) << "k = " << k;
  }
}
