#include <gtest/gtest.h>

#include "samples.hpp"

using namespace coefmod;
using namespace coefmod::testing;

namespace {

using P = ModulePresentation<Fp>;

P parse_module(const RingDescriptor<Fp>& r, Exp tdeg, std::vector<std::string> gens) {
  std::vector<Poly<Fp>> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, r));
  return P(r, tdeg, ps);
}

P ideal(const std::vector<std::string>& gens, int d = 2) { return parse_module(ring_fp(d, 1), 1, gens); }

// The same module with its generators disguised by a unit-free change of
// generators, so that the general regime is used.
P disguised(const P& m) {
  auto gens = m.gens();
  if (gens.size() >= 2) gens[0] = gens[0] + gens[1].scaled(3);
  P out(m.ring(), m.tdeg(), gens);
  return out;
}

}  // namespace

TEST(Pieces, Examples) {
  auto r1 = ring_fp(1, 1);
  auto pc = piece(parse_module(r1, 1, {"x1^2*t1"}), 3, 7);
  EXPECT_EQ(pc.dim(), 1u);
  auto r2 = ring_fp(2, 2);
  auto mf = parse_module(r2, 1, {"x1*t1", "x2*t1", "x1*t2", "x2*t2"});
  EXPECT_EQ(piece(mf, 1, 2).dim(), 4u);
  auto j = ideal({"x1^2*t1", "x2^2*t1"});
  auto p2 = piece(j, 2, 5);
  auto x2y2 = detail::truncated_image(*p2.coords, parse_poly("x1^2*x2^2*t1^2", j.ring()), 5);
  EXPECT_TRUE(p2.space.contains(x2y2));
}

TEST(Lengths, Examples) {
  auto r2 = ring_fp(2, 2);
  auto mf = parse_module(r2, 1, {"x1*t1", "x2*t1", "x1*t2", "x2*t2"});
  EXPECT_EQ(length_of_quotient(P::free(r2, 1), mf, 2), 9u);
  EXPECT_EQ(length_of_quotient(mf, mf, 3), 0u);
  auto m2 = ideal({"x1^2*t1", "x1*x2*t1", "x2^2*t1"});
  auto j = ideal({"x1^2*t1", "x2^2*t1"});
  EXPECT_EQ(length_of_quotient(m2, j, 3), 3u);
  EXPECT_THROW(length_of_quotient(j, m2, 1), Error);
  try {
    length_of_quotient(j, m2, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_a_subpair);
  }
}

TEST(Lengths, InfiniteLengthDetected) {
  auto big = ideal({"x1*t1"});
  auto small = ideal({"x1^2*t1"});
  try {
    length_of_quotient(big, small, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::infinite_length);
  }
}

TEST(Lengths, BuchsbaumRimClosedForm) {
  auto r2 = ring_fp(2, 2);
  auto mf = parse_module(r2, 1, {"x1*t1", "x2*t1", "x1*t2", "x2*t2"});
  auto general = disguised(mf);
  ASSERT_FALSE(general.monomial());
  auto a = length_table(P::free(r2, 1), mf, 6);
  auto b = length_table(P::free(r2, 1), general, 6);
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t closed = static_cast<std::uint64_t>(n) * (n + 1) * (n + 1) / 2;
    EXPECT_EQ(a[static_cast<std::size_t>(n - 1)], closed);
    EXPECT_EQ(b[static_cast<std::size_t>(n - 1)], closed);
  }
}

TEST(Lengths, GeneralIdealAgainstStaircase) {
  // A complete intersection of two quadrics: l(R/J^n) = 4 C(n+1, 2).
  auto j = ideal({"x1^2*t1 + 2*x1*x2*t1", "x2^2*t1"});
  ASSERT_FALSE(j.monomial());
  auto w = colength_exponent(j);
  ASSERT_TRUE(w.finite());
  auto free = P::free(j.ring(), 1);
  auto t = length_table(free, j, 4);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(t[static_cast<std::size_t>(n - 1)], static_cast<std::uint64_t>(2 * n * (n + 1)));
}

TEST(Colon, Examples) {
  auto i = ideal({"x1^4*t1", "x1^3*x2*t1", "x1*x2^3*t1", "x2^4*t1"});
  auto free = P::free(i.ring(), 1);
  EXPECT_TRUE(same_module(colon_into_frame(power(i, 2), i.gens(), i, i), i));
  EXPECT_TRUE(same_module(colon_into_frame(power(i, 2), {}, free, free), free));
  Rng rng(5);
  auto wit = minimal_reduction(i, 1, 2, rng);
  auto c = colon_into_frame(power(i, 2), wit.elems, free, i);
  EXPECT_TRUE(contains(c, ideal({"x1^2*x2^2*t1"})));
  auto cg = colon_into_frame(disguised(power(i, 2)), wit.elems, free, i);
  EXPECT_TRUE(same_module(cg, c));
}

TEST(Colon, FloorOutsideTargetIsStructural) {
  auto i = ideal({"x1^2*t1", "x2^2*t1"});
  auto free = P::free(i.ring(), 1);
  try {
    colon_into_frame(power(i, 2), {parse_poly("x1*t1", i.ring())}, free, i);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::structural);
  }
}

class RandomPairs : public ::testing::TestWithParam<int> {};

TEST_P(RandomPairs, GeneralRegimeMatchesMonomial) {
  Rng rng(static_cast<std::uint64_t>(GetParam()));
  auto small = ideal_module(random_primary_ideal(rng, 2, 4, 2));
  auto big = sum(ideal_module(random_primary_ideal(rng, 2, 4, 2)), small);
  auto mono = length_table(big, small, 3);
  auto gen = length_table(disguised(big), disguised(small), 3);
  EXPECT_EQ(mono, gen);
}

TEST_P(RandomPairs, TruncationIsStable) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 100);
  auto small = disguised(ideal_module(random_primary_ideal(rng, 2, 4, 2)));
  auto big = P::free(small.ring(), 1);
  auto base = length_table(big, small, 3);
  EXPECT_EQ(base, length_table(big, small, 3, 1));
  EXPECT_EQ(base, length_table(big, small, 3, 2));
}

TEST_P(RandomPairs, Subadditivity) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 200);
  auto a = ideal_module(random_primary_ideal(rng, 2, 5, 2));
  auto b = ideal_module(random_primary_ideal(rng, 2, 5, 2));
  auto l = ideal_module(a.monomial_module().component({1}).intersect(b.monomial_module().component({1})) *
                        MonomialIdeal::maximal_power(2, 1));
  auto ab = sum(a, b);
  EXPECT_LE(length_of_quotient(ab, l, 1), length_of_quotient(a, l, 1) + length_of_quotient(b, l, 1));
}

TEST_P(RandomPairs, ColonResultProperties) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 300);
  auto m = ideal_module(random_primary_ideal(rng, 2, 5, 2));
  auto free = P::free(m.ring(), 1);
  auto wit = minimal_reduction(m, 1, 2, rng);
  auto target = power(m, 2);
  auto y = colon_into_frame(target, wit.elems, free, m);
  EXPECT_TRUE(contains(y, m));
  EXPECT_TRUE(contains(free, y));
  for (const auto& g : y.gens()) {
    for (const auto& e : wit.elems) {
      EXPECT_TRUE(contains(target, P(m.ring(), 2, {g * e})));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPairs, ::testing::Range(0, 12));
