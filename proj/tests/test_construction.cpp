#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ramify/construction.hpp"

using namespace ramify;

namespace {

// Binomials via Pascal's rule, independent of the product-tree code.
BigCount pascal(unsigned n, unsigned m) {
  static std::map<std::pair<unsigned, unsigned>, BigCount> memo;
  if (m > n)
    return 0;
  if (m == 0 || m == n)
    return 1;
  const auto key = std::make_pair(n, m);
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  return memo[key] = pascal(n - 1, m - 1) + pascal(n - 1, m);
}

} // namespace

TEST(Binomial, MatchesPascal) {
  for (unsigned n = 0; n <= 70; ++n)
    for (unsigned m = 0; m <= n; ++m)
      ASSERT_EQ(binomial(n, m), pascal(n, m)) << n << " " << m;
}

TEST(Binomial, PinnedValuesAndEdges) {
  EXPECT_EQ(binomial(5, 3), 10);
  EXPECT_EQ(binomial(17, 10), 19448);
  EXPECT_EQ(binomial(65, 4), 677040);
  EXPECT_EQ(binomial(65, 3), 43680);
  EXPECT_EQ(binomial(33, 10), 92561040);
  const auto r = binomial_checked(3, 5);
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(r.out_of_range);
  EXPECT_EQ(binomial(BigCount(1000), BigCount(500)), binomial(BigCount(1000), BigCount(500)));
  EXPECT_EQ(to_decimal(binomial(200, 100)).size(), 59u);
}

TEST(Params, ValidationAndDerivedSizes) {
  const FamilyParams p(3, 5);
  EXPECT_EQ(p.r1(), 12u);
  EXPECT_EQ(p.r2(), 12u);
  EXPECT_EQ(p.composition_total(), 6u);
  EXPECT_EQ(p.composition_parts(), 4u);
  EXPECT_THROW(FamilyParams(2, 5), Refusal);
  EXPECT_THROW(FamilyParams(3, 2), InvalidInput);
  // 2^(4-4)+2 = 3 < 11 parts.
  EXPECT_THROW(FamilyParams(4, 4), Refusal);
  EXPECT_THROW(FamilyParams(3, 3), Refusal);
  EXPECT_NO_THROW(FamilyParams(3, 4));
}

TEST(Compositions, LexicographicAndComplete) {
  std::vector<std::vector<std::uint64_t>> got;
  for (const auto &c : compositions(5, 3))
    got.push_back(c);
  const std::vector<std::vector<std::uint64_t>> want{{1, 1, 3}, {1, 2, 2}, {1, 3, 1}, {2, 1, 2},
                                                      {2, 2, 1}, {3, 1, 1}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(compositions(3, 4).count(), 0u);
  EXPECT_EQ(compositions(4, 4).count(), 1u);
  EXPECT_EQ(compositions(7, 1).count(), 1u);
  EXPECT_EQ(compositions(7, 0).count(), 0u);
}

TEST(Compositions, CountMatchesPascalAndEntriesAreDistinct) {
  for (unsigned total = 1; total <= 16; ++total)
    for (unsigned parts = 1; parts <= total; ++parts) {
      std::set<std::vector<std::uint64_t>> seen;
      std::vector<std::uint64_t> prev;
      for (const auto &c : compositions(total, parts)) {
        ASSERT_EQ(c.size(), parts);
        std::uint64_t s = 0;
        for (auto x : c) {
          ASSERT_GE(x, 1u);
          s += x;
        }
        ASSERT_EQ(s, total);
        ASSERT_TRUE(prev.empty() || prev < c);
        prev = c;
        seen.insert(c);
      }
      EXPECT_EQ(BigCount(seen.size()), pascal(total - 1, parts - 1));
    }
}

TEST(Compositions, WeakCountsAllowZeros) {
  std::uint64_t n = 0;
  bool zero_seen = false;
  for (auto it = WeakCompositionRange(4, 3).begin(); it != std::default_sentinel; ++it) {
    ++n;
    for (auto x : *it)
      zero_seen = zero_seen || x == 0;
  }
  EXPECT_EQ(BigCount(n), pascal(6, 2));
  EXPECT_TRUE(zero_seen);
}

TEST(Bijection, PhiOnRankThree) {
  EXPECT_EQ(phi(3, 1).to_string(), "110");
  EXPECT_EQ(phi(3, 2).to_string(), "101");
  EXPECT_EQ(phi(3, 3).to_string(), "011");
  EXPECT_EQ(phi(3, 4).to_string(), "111");
  EXPECT_THROW(phi(3, 0), InvalidInput);
  EXPECT_THROW(phi(3, 5), InvalidInput);
  for (unsigned k = 3; k <= 8; ++k)
    EXPECT_EQ(ElementBijection(k).size(), (1u << k) - k - 1);
}

TEST(Build, T1Shape) {
  const auto t = build_T1(3);
  EXPECT_EQ(t.size(), 12u);
  EXPECT_TRUE(t.sum().is_zero());
  EXPECT_EQ(span_rank(t.entries()), 3u);
  std::map<std::string, int> mult;
  for (const auto &e : t)
    ++mult[e.to_string()];
  EXPECT_EQ(mult["100"], 2);
  EXPECT_EQ(mult["010"], 4);
  EXPECT_EQ(mult["001"], 6);
}

TEST(Build, T2FromComposition) {
  const auto t = build_T2(3, {1, 1, 1, 3});
  EXPECT_EQ(t.size(), 12u);
  EXPECT_EQ(t.to_strings(), (std::vector<std::string>{"110", "110", "101", "101", "011", "011", "111",
                                                      "111", "111", "111", "111", "111"}));
  EXPECT_THROW(build_T2(2, {1}), Refusal);
  EXPECT_THROW(build_T2(3, {1, 1, 1}), InvalidInput);
}

TEST(Family, CountMatchesStreamForSmallParameters) {
  for (unsigned k = 3; k <= 4; ++k)
    for (unsigned l = k; (1u << (l - k)) + 2 <= 18; ++l) {
      try {
        const FamilyParams p(k, l);
        EXPECT_EQ(family_count(p), BigCount(compositions(p.composition_total(), p.composition_parts()).count()));
        EXPECT_EQ(family_count(p), pascal(p.composition_total() - 1, p.composition_parts() - 1));
      } catch (const Refusal &) {
        EXPECT_LT((1u << (l - k)) + 2, (1u << k) - k - 1);
      }
    }
}

TEST(Family, K3L5) {
  const FamilyParams p(3, 5);
  EXPECT_EQ(family_count(p), 10);
  const auto fam = build_family(p).collect();
  ASSERT_EQ(fam.size(), 10u);
  for (const auto &s : fam) {
    EXPECT_EQ(s.T1(), build_T1(3));
    EXPECT_EQ(s.T2().size(), p.r2());
    EXPECT_EQ(s.invariants().chi, 32);
  }
}

TEST(Family, RelaxedPositivityKeepsGeneratingSupports) {
  const FamilyParams p(3, 5);
  const auto strict = build_family(p).collect();
  const auto relaxed = build_family(p, {true}).collect();
  EXPECT_GT(relaxed.size(), strict.size());
  for (const auto &s : relaxed)
    EXPECT_EQ(span_rank(s.T2().entries()), 3u);
  // {110, 101, 011} spans only rank 2, so of the weak compositions of 6 into
  // 4 parts we keep full support (10) and the other three 3-supports (10 each).
  EXPECT_EQ(relaxed.size(), 40u);
}

TEST(Family, LargeLevelStaysExact) {
  const FamilyParams p(3, 65);
  EXPECT_EQ(family_count(p), binomial(BigCount((std::uint64_t{1} << 62) + 1), BigCount(3)));
  EXPECT_THROW(FamilyParams(3, 66), InvalidInput);
}
