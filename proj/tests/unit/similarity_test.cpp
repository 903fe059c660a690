#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "facetrank/errors.hpp"
#include "facetrank/similarity.hpp"
#include "oracles.hpp"

namespace facetrank {
namespace {

TopList ids(const oracle::IdList& xs) { return TopList(xs.begin(), xs.end()); }

std::vector<std::string> names(const oracle::IdList& xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back("u" + std::to_string(x));
  return out;
}

constexpr NodeId a = 0, b = 1, c = 2, d = 3, e = 4, f = 5;

TEST(OSim, Examples) {
  EXPECT_DOUBLE_EQ(osim(TopList{a, b, c, d}, TopList{c, d, e, f}, 4), 0.5);
  EXPECT_DOUBLE_EQ(osim(TopList{a, b, c}, TopList{a, b, c}, 3), 1.0);
  EXPECT_DOUBLE_EQ(osim(TopList{a, b}, TopList{c, d}, 2), 0.0);
  EXPECT_DOUBLE_EQ(osim(TopList{a, b, c, d}, TopList{b, a, d, c}, 2), 1.0);
}

TEST(OSim, ShortListsKeepTheWindowAsDenominator) {
  EXPECT_DOUBLE_EQ(osim(TopList{a, b}, TopList{a, b}, 4), 0.5);
  EXPECT_DOUBLE_EQ(osim(TopList{}, TopList{a}, 1), 0.0);
}

TEST(OSim, ZeroWindowThrows) {
  EXPECT_THROW(osim(TopList{a}, TopList{a}, 0), DomainError);
}

TEST(KSim, Examples) {
  EXPECT_DOUBLE_EQ(ksim(TopList{a, b, c}, TopList{a, b, c}), 1.0);
  EXPECT_DOUBLE_EQ(ksim(TopList{a, b}, TopList{b, a}), 0.0);
  EXPECT_DOUBLE_EQ(ksim(TopList{a, b, c}, TopList{a, c, b}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ksim(TopList{a}, TopList{a}), 1.0);
  // U = {a, b}: a-only vs b-only, each list orders the pair the other ties.
  EXPECT_DOUBLE_EQ(ksim(TopList{a}, TopList{b}), 0.0);
  // U = {a, b, c}: (a,b) agree, (a,c) agree, (b,c) ordered by one list only.
  EXPECT_DOUBLE_EQ(ksim(TopList{a, b}, TopList{a, c}), 2.0 / 3.0);
}

TEST(KSim, EmptyListThrows) {
  EXPECT_THROW(ksim(TopList{}, TopList{a}), DomainError);
  EXPECT_THROW(ksim(TopList{a}, TopList{}), DomainError);
}

TEST(KSim, ReversalOfCommonSupportIsZero) {
  for (std::size_t n = 2; n <= 12; ++n) {
    TopList x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<NodeId>(i);
    TopList y(x.rbegin(), x.rend());
    EXPECT_EQ(ksim(x, y), 0.0) << n;
  }
}

TEST(KSim, ExhaustiveAgainstBruteForceUpToFive) {
  std::size_t checked = 0;
  oracle::for_each_list_pair(5, [&](const oracle::IdList& x, const oracle::IdList& y) {
    const double fast = ksim(ids(x), ids(y));
    ASSERT_NEAR(fast, oracle::brute_ksim(names(x), names(y)), 1e-12);
    ++checked;
  });
  EXPECT_GT(checked, 50000u);
}

TEST(KSim, RandomAgainstBruteForceUpToTwelve) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto [x, y] = oracle::random_list_pair(rng, 12);
    ASSERT_NEAR(ksim(ids(x), ids(y)), oracle::brute_ksim(names(x), names(y)), 1e-12);
  }
}

TEST(Properties, RangeSymmetrySelfSimilarity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto [xs, ys] = oracle::random_list_pair(rng, 12);
    const auto x = ids(xs);
    const auto y = ids(ys);
    const double k = ksim(x, y);
    EXPECT_GE(k, 0.0);
    EXPECT_LE(k, 1.0);
    EXPECT_EQ(k, ksim(y, x));
    EXPECT_EQ(ksim(x, x), 1.0);
    for (std::size_t n = 1; n <= 12; ++n) {
      const double o = osim(x, y, n);
      EXPECT_GE(o, 0.0);
      EXPECT_LE(o, 1.0);
      EXPECT_EQ(o, osim(y, x, n));
      EXPECT_DOUBLE_EQ(o, oracle::brute_osim(names(xs), names(ys), n));
      if (n <= x.size()) EXPECT_EQ(osim(x, x, n), 1.0);
    }
  }
}

TEST(Properties, OSimIgnoresOrderInsideTheWindow) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [xs, ys] = oracle::random_list_pair(rng, 12);
    auto x = ids(xs);
    const auto y = ids(ys);
    const std::size_t n = std::min<std::size_t>(x.size(), 1 + trial % 12);
    const double before = osim(x, y, n);
    std::shuffle(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), rng);
    EXPECT_EQ(osim(x, y, n), before);
  }
}

TEST(Properties, DisjointWindowsGiveZeroOverlap) {
  EXPECT_EQ(osim(TopList{a, b, c}, TopList{d, e, f, a}, 3), 0.0);
}

}  // namespace
}  // namespace facetrank
