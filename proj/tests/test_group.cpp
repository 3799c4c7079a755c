#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "vilenkin/group.hpp"

using namespace vilenkin;

TEST(Base, OrdersDyadic) {
  const auto b = make_base({2}, 4);
  EXPECT_EQ(std::vector<std::uint64_t>(b.orders().begin(), b.orders().end()),
            (std::vector<std::uint64_t>{1, 2, 4, 8, 16}));
  EXPECT_TRUE(b.is_dyadic());
  EXPECT_EQ(b.lambda(), 2);
}

TEST(Base, OrdersMixed) {
  const auto b = make_base({2, 3, 2, 3}, 4);
  EXPECT_EQ(std::vector<std::uint64_t>(b.orders().begin(), b.orders().end()),
            (std::vector<std::uint64_t>{1, 2, 6, 12, 36}));
  EXPECT_FALSE(b.is_dyadic());
  EXPECT_EQ(b.lambda(), 3);
}

TEST(Base, ShortModulusListRepeats) {
  const auto b = make_base({2, 3}, 5);
  EXPECT_EQ(std::vector<int>(b.moduli().begin(), b.moduli().end()), (std::vector<int>{2, 3, 2, 3, 2}));
}

TEST(Base, RejectsBadInput) {
  EXPECT_THROW(make_base({1, 2}, 2), std::invalid_argument);
  EXPECT_THROW(make_base({2}, 0), std::invalid_argument);
  EXPECT_THROW(VilenkinBase(std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(dyadic_base(41), std::invalid_argument);
}

TEST(Points, AddSubExamples) {
  const auto d = dyadic_base(3);
  EXPECT_EQ(d.add({{1, 0, 1}}, {{1, 1, 0}}).coords, (std::vector<int>{0, 1, 1}));
  const auto b = make_base({2, 3}, 2);
  EXPECT_EQ(b.add({{1, 2}}, {{1, 2}}).coords, (std::vector<int>{0, 1}));
  EXPECT_EQ(b.add({{1, 2}}, b.zero()).coords, (std::vector<int>{1, 2}));
}

TEST(Points, MismatchedPointsRejected) {
  const auto b = make_base({2, 3}, 2);
  EXPECT_THROW(b.add({{1, 2, 0}}, b.zero()), std::invalid_argument);
  EXPECT_THROW(b.add({{2, 0}}, b.zero()), std::invalid_argument);
}

TEST(Points, SubInvertsAddExhaustive) {
  const auto b = make_base({2, 3, 4}, 4);  // M_K = 48
  for (std::uint64_t i = 0; i < b.size(); ++i)
    for (std::uint64_t j = 0; j < b.size(); ++j) {
      const auto x = b.point_of(i, 4), y = b.point_of(j, 4);
      ASSERT_EQ(b.sub(b.add(x, y), y), x);
    }
}

TEST(Ranks, Examples) {
  const auto d = dyadic_base(3);
  EXPECT_EQ(d.rank_of({{1, 0, 1}}, 3), 5u);
  EXPECT_EQ(d.point_of(0, 3), d.zero());
  const auto b = make_base({2, 3}, 2);
  EXPECT_EQ(b.rank_of({{1, 2}}, 2), 5u);
  EXPECT_THROW(b.rank_of({{1, 2}}, 3), std::out_of_range);
  EXPECT_THROW(b.point_of(6, 2), std::out_of_range);
}

TEST(Ranks, BijectionAtEveryLevel) {
  const auto b = make_base({3, 2, 5}, 4);
  for (std::size_t L = 0; L <= 4; ++L)
    for (std::uint64_t r = 0; r < b.order(L); ++r) {
      ASSERT_EQ(b.rank_of(b.point_of(r, L), L), r);
      for (std::size_t k = 0; k < L; ++k) ASSERT_EQ(b.digit_of_rank(r, L, k), b.point_of(r, L).coords[k]);
    }
}

TEST(Ranks, CylindersAreContiguousBlocks) {
  const auto b = make_base({2, 3}, 5);
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::uint64_t r = 0; r < b.size(); ++r) {
      const auto x = b.point_of(r, 5);
      const auto c = b.cylinder(x, n);
      auto [lo, hi] = b.rank_block(c, 5);
      ASSERT_TRUE(r >= lo && r < hi);
      ASSERT_TRUE(b.contains(c, x));
      ASSERT_EQ(hi - lo, b.block(n, 5));
    }
}

TEST(NatExpansion, Examples) {
  const auto d = dyadic_base(3);
  const auto e = d.expand(5);
  EXPECT_EQ(e.digits, (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(e.order, 2u);
  EXPECT_EQ(d.expand(0).digits, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(d.expand(0).order, 0u);
  const auto b = make_base({2, 3, 2}, 3);
  EXPECT_EQ(b.expand(7).digits, (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(b.expand(7).order, 2u);
  EXPECT_THROW(b.expand(12), std::out_of_range);
}

TEST(NatExpansion, RoundTrip) {
  const auto b = make_base({3, 2, 4, 5}, 4);
  for (std::uint64_t n = 0; n < b.size(); ++n) {
    const auto e = b.expand(n);
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < 4; ++j) v += static_cast<std::uint64_t>(e.digits[j]) * b.order(j);
    ASSERT_EQ(v, n);
  }
}

TEST(Partition, DyadicMTwo) {
  const auto b = dyadic_base(3);
  const auto parts = coset_partition(b, 2);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].anchor.coords, (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(parts[1].anchor.coords, (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(parts[2].anchor.coords, (std::vector<int>{0, 1, 0}));
  double m = 0.0;
  for (const auto& c : parts) m += b.measure(c);
  EXPECT_DOUBLE_EQ(m, 0.75);
}

TEST(Partition, ExactTilingOfComplement) {
  for (const auto& b : {dyadic_base(6), make_base({2, 3}, 6), make_base({3, 4, 2}, 5), make_base({6}, 4)}) {
    const std::size_t K = b.depth();
    ASSERT_LE(b.size(), 1296u);
    for (std::size_t M = 1; M <= K; ++M) {
      std::vector<int> hits(b.size(), 0);
      double measure = 0.0;
      for (const auto& c : coset_partition(b, M)) {
        auto [lo, hi] = b.rank_block(c, K);
        for (auto r = lo; r < hi; ++r) ++hits[r];
        measure += b.measure(c);
      }
      const std::uint64_t inside = b.block(M, K);  // ranks of I_M
      for (std::uint64_t r = 0; r < b.size(); ++r) ASSERT_EQ(hits[r], r < inside ? 0 : 1) << "M=" << M << " r=" << r;
      EXPECT_NEAR(measure, 1.0 - 1.0 / static_cast<double>(b.order(M)), 1e-12);
    }
  }
}

TEST(Partition, RangeChecked) {
  const auto b = dyadic_base(3);
  EXPECT_THROW(coset_partition(b, 0), std::out_of_range);
  EXPECT_THROW(coset_partition(b, 4), std::out_of_range);
}
