#include <gtest/gtest.h>

#include <algorithm>

#include "ramify/bounds.hpp"
#include "ramify/serialize.hpp"

using namespace ramify;

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("010/08"), Rational(5, 4));
  EXPECT_EQ(parse_rational("0.075"), Rational(3, 40));
  EXPECT_EQ(parse_rational("-1/3"), Rational(-1, 3));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
  EXPECT_THROW(parse_rational("abc"), InvalidInput);
  EXPECT_THROW(parse_rational(""), InvalidInput);
}

TEST(Interval, EnclosuresAreOutward) {
  const auto third = Interval::ratio(1, 3);
  EXPECT_LT(third.lo(), third.hi());
  EXPECT_TRUE(third.contains(third));
  const auto sum = third + third + third;
  EXPECT_TRUE(sum.contains(Interval::exact(1)));
  const auto l = Interval::exact(1024).log2();
  EXPECT_TRUE(l.contains(Interval::exact(10)));
  EXPECT_TRUE(Interval::exact(10).exp2().contains(Interval::exact(1024)));
  EXPECT_THROW(Interval::exact(0).log2(), InvalidInput);
  EXPECT_THROW(Interval::exact(1) / Interval::exact(0), InvalidInput);
  EXPECT_NEAR(Interval::log2_e().mid(), 1.4426950408889634, 1e-15);
}

TEST(Interval, Verdicts) {
  EXPECT_EQ(compare_greater(Interval::exact(3), Interval::exact(2)), Verdict::holds);
  EXPECT_EQ(compare_greater(Interval::exact(2), Interval::exact(3)), Verdict::fails);
  EXPECT_EQ(compare_greater(Interval::exact(2), Interval::exact(2)), Verdict::within_error);
  EXPECT_EQ(compare_greater(Interval::between(1, 3), Interval::exact(2)), Verdict::within_error);
}

TEST(Euler, IdentityAndExampleValues) {
  EXPECT_EQ(euler_number(3, 5), 128);
  EXPECT_EQ(2 * euler_number(3, 5), 256);
  EXPECT_EQ(euler_number(3, 9), 2048);
  for (unsigned k = 3; k <= 12; ++k)
    for (unsigned nu = 1; nu <= 2; ++nu) {
      const unsigned l = (nu + 2) * k;
      const BigCount kk(k);
      EXPECT_EQ(2 * euler_number(k, l), (BigCount(1) << l) * (kk * kk + kk - 4));
    }
}

TEST(Log2, ExactAndCertifiedAgree) {
  const auto e = log2_binomial(5, 3, Log2Mode::exact);
  ASSERT_TRUE(e.exact_value);
  EXPECT_EQ(*e.exact_value, 10);
  EXPECT_NEAR(e.value.mid(), 3.321928094887362, 1e-14);
  const auto c = log2_binomial(5, 3, Log2Mode::certified);
  EXPECT_FALSE(c.exact_value);
  EXPECT_NEAR(c.value.mid(), 3.321928094887362, 1e-14);
  EXPECT_TRUE(log2_encloses(c.value, 10));
  EXPECT_TRUE(log2_encloses(log2_binomial(65, 4, Log2Mode::certified).value, 677040));
  EXPECT_TRUE(log2_encloses(log2_binomial(1000, 300, Log2Mode::certified).value, binomial(1000, 300)));
  EXPECT_TRUE(log2_encloses(log2_of(binomial(1000, 300)), binomial(1000, 300)));
}

TEST(Chain, ThreeNuOneBinomialLinkFails) {
  // m = 2^3 - 3 - 2 = 3, so h = C(65, 3) = 43680 while 2^(nu k 2^k) = 2^24.
  const auto rep = check_stirling_chain(3, 1);
  EXPECT_EQ(rep.l, 9u);
  EXPECT_EQ(rep.n, 65);
  EXPECT_EQ(rep.m, 3);
  EXPECT_EQ(*rep.log2_h.exact_value, 43680);
  EXPECT_EQ(rep.link(links::binomial_vs_power).verdict, Verdict::fails);
  EXPECT_LT(binomial(65, 4), BigCount(16777216));
  EXPECT_TRUE(rep.euler_identity);
  EXPECT_EQ(rep.euler, 2048);
}

TEST(Chain, CrossoverPinned) {
  EXPECT_EQ(stirling_crossover(1, 3, 14), 5u);
  EXPECT_EQ(stirling_crossover(2, 3, 14), 7u);
  for (unsigned k = 5; k <= 12; ++k)
    EXPECT_EQ(check_stirling_chain(k, 1, Log2Mode::certified).link(links::binomial_vs_power).verdict,
              Verdict::holds)
        << k;
}

TEST(Chain, StirlingLowerBoundHolds) {
  for (unsigned k = 3; k <= 10; ++k)
    EXPECT_EQ(check_stirling_chain(k, 1).link(links::stirling_lower).verdict, Verdict::holds) << k;
}

TEST(Chain, BinomialDominatesEulerAtNuOne) {
  for (unsigned k = 3; k <= 8; ++k) {
    const auto rep = check_stirling_chain(k, 1);
    EXPECT_TRUE(rep.log2_h.value.certainly_greater(Interval::exact(rep.euler).log2())) << k;
  }
}

TEST(Chain, RejectsBadParameters) {
  EXPECT_THROW(check_stirling_chain(2, 1), InvalidInput);
  EXPECT_THROW(check_stirling_chain(3, 0), InvalidInput);
  EXPECT_THROW(check_stirling_chain(3, Rational(1, 2)), InvalidInput); // l = 7.5
  EXPECT_NO_THROW(check_stirling_chain(4, Rational(1, 2)));
  EXPECT_THROW(final_bound_table(1, Rational(1, 2), 3, 5), InvalidInput);
  EXPECT_THROW(final_bound_table(1, Rational(-1, 4), 3, 5), InvalidInput);
  EXPECT_THROW(final_bound_table(1, 0, 5, 3), InvalidInput);
}

TEST(Table, CrossoverFlagAndCsvShape) {
  const auto rows = final_bound_table(1, Rational(2, 5), 3, 8);
  ASSERT_EQ(rows.size(), 6u);
  int flags = 0;
  for (const auto &r : rows) {
    flags += r.is_crossover;
    EXPECT_EQ(r.x_k * 4, r.chain.euler);
    EXPECT_EQ(r.y_k, 2 * r.chain.euler);
  }
  EXPECT_EQ(flags, 1);
  EXPECT_TRUE(rows[2].is_crossover);
  const auto csv = bounds_csv(rows);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.rfind("k,l,log2_h,log2_h_err,", 0), 0u);
  EXPECT_NE(csv.find("\n5,15,"), std::string::npos);
  EXPECT_EQ(csv, bounds_csv(final_bound_table(1, Rational(2, 5), 3, 8)));
}
