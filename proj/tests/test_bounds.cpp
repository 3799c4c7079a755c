#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vilenkin/bounds.hpp"

using namespace vilenkin;

TEST(CylinderClasses, TileComplementOfIN) {
  const auto b = make_base({2, 3}, 6);
  for (std::size_t N = 1; N <= 5; ++N) {
    double measure = 0.0;
    for (const auto& c : cylinder_classes(b, N)) {
      EXPECT_EQ(c.cylinder.level, N);
      measure += b.measure(c.cylinder);
    }
    // pairs plus singles cover the points of G \ I_N with at most two nonzero digits below N
    std::size_t expected = 0;
    for (std::size_t k = 0; k < N; ++k) {
      expected += static_cast<std::size_t>(b.modulus(k) - 1);
      for (std::size_t l = k + 1; l < N; ++l) expected += static_cast<std::size_t>((b.modulus(k) - 1) * (b.modulus(l) - 1));
    }
    EXPECT_EQ(cylinder_classes(b, N).size(), expected);
    EXPECT_NEAR(measure, static_cast<double>(expected) / static_cast<double>(b.order(N)), 1e-12);
  }
}

TEST(ClassSweep, BlockIntegralMatchesBruteForce) {
  const auto b = dyadic_base(7);
  const std::size_t N = 3;
  const auto psi = oracle::character_table(b, 7);
  const auto D = oracle::dirichlet_family(psi);
  const auto sweep = class_sweep(b, N, b.order(N), b.size());
  const std::uint64_t blk = b.block(N, 7);
  double series_max = 0.0;
  std::vector<double> series(sweep.classes.size(), 0.0);
  HarmonicSums l(b.size());
  for (std::uint64_t n = 1; n <= b.size(); ++n) {
    const auto K = oracle::fejer(D, n, true);
    double worst = 0.0;
    for (std::size_t c = 0; c < sweep.classes.size(); ++c) {
      const auto& cl = sweep.classes[c];
      double acc = 0.0;
      for (std::uint64_t r = cl.cylinder.rank * blk; r < (cl.cylinder.rank + 1) * blk; ++r) acc += std::abs(K[r]);
      acc /= static_cast<double>(b.size());
      if (n >= b.order(N) + 1) series[c] += acc / static_cast<double>(n + 1);
      if (n < b.order(N)) continue;
      const double Mk = static_cast<double>(b.order(cl.k)), MN = static_cast<double>(b.order(N));
      const double rhs = cl.pair ? Mk * static_cast<double>(b.order(cl.l)) / (static_cast<double>(n) * MN) : Mk / MN;
      worst = std::max(worst, acc / rhs);
      const double rhs4 = cl.pair ? Mk * static_cast<double>(b.order(cl.l)) / (MN * MN) : Mk * l(n) / MN;
      series_max = std::max(series_max, series[c] / rhs4);
    }
    if (n >= b.order(N)) {
      ASSERT_NEAR(sweep.integral_ratio[n - sweep.n_first], worst, 1e-12);
    }
  }
  EXPECT_NEAR(sweep.series_constant(), series_max, 1e-12);
  EXPECT_TRUE(std::isfinite(sweep.integral_constant()));
}

TEST(ClassSweep, PreconditionsChecked) {
  const auto b = dyadic_base(6);
  EXPECT_THROW(class_sweep(b, 0, 1, 8), std::out_of_range);
  EXPECT_THROW(class_sweep(b, 6, 64, 64), std::out_of_range);
  EXPECT_THROW(class_sweep(b, 3, 4, 64), std::domain_error);
  EXPECT_THROW(class_sweep(b, 3, 8, 65), std::out_of_range);
}

TEST(FejerL1, RunningMaxIsMonotoneAndMatchesOracle) {
  const auto b = make_base({2, 3}, 5);
  const auto sweep = fejer_l1_sweep(b, 5, b.size());
  const auto D = oracle::dirichlet_family(oracle::character_table(b, 5));
  for (std::uint64_t n = 1; n <= b.size(); ++n) {
    double acc = 0.0;
    for (const cplx& v : oracle::fejer(D, n, true)) acc += std::abs(v);
    ASSERT_NEAR(sweep.l1[n - 1], acc / static_cast<double>(b.size()), 1e-12);
    if (n > 1) {
      ASSERT_GE(sweep.running_max[n - 1], sweep.running_max[n - 2]);
    }
  }
  EXPECT_GE(sweep.growth(10, b.size()), 0.0);
}
