#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;

namespace {

double rel_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / std::max(den, 1e-300);
}

}  // namespace

TEST(Rademacher, Examples) {
  const auto d = dyadic_base(3);
  EXPECT_EQ(rademacher(d, 0, {{1, 0, 0}}), cplx(-1.0, 0.0));
  const auto t = make_base({3}, 2);
  const cplx w = rademacher(t, 0, {{1, 0}});
  EXPECT_NEAR(std::abs(w - std::polar(1.0, 2 * std::numbers::pi / 3)), 0.0, 1e-15);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(rademacher(t, k, t.zero()), cplx(1.0));
  EXPECT_THROW(rademacher(t, 2, t.zero()), std::out_of_range);
}

TEST(Character, Examples) {
  const auto b = make_base({2, 3, 4}, 3);
  for (std::uint64_t r = 0; r < b.size(); ++r) EXPECT_EQ(character(b, 0, b.point_of(r, 3)), cplx(1.0));
  for (std::uint64_t n = 0; n < b.size(); ++n) EXPECT_EQ(character(b, n, b.zero()), cplx(1.0));
  const auto d = dyadic_base(3);
  for (std::uint64_t r = 0; r < 8; ++r) {
    const auto x = d.point_of(r, 3);
    EXPECT_EQ(character(d, 1, x).real(), x.coords[0] ? -1.0 : 1.0);
  }
  EXPECT_THROW(character(b, b.size(), b.zero()), std::out_of_range);
}

TEST(Character, MatchesDefinitionAndGroupLaw) {
  const auto b = make_base({3, 2, 4}, 4);  // M_K = 72
  for (std::uint64_t n = 0; n < b.size(); ++n)
    for (std::uint64_t i = 0; i < b.size(); ++i) {
      const auto x = b.point_of(i, 4);
      ASSERT_LT(std::abs(character(b, n, x) - oracle::psi(b, n, x.coords)), 1e-13);
      for (std::uint64_t j = 0; j < b.size(); j += 7) {
        const auto y = b.point_of(j, 4);
        ASSERT_LT(std::abs(character(b, n, b.add(x, y)) - character(b, n, x) * character(b, n, y)), 1e-13);
      }
    }
}

TEST(Character, OrthonormalExhaustive) {
  for (const auto& b : {dyadic_base(8), make_base({2, 3}, 5), make_base({5, 3}, 3)}) {
    ASSERT_LE(b.size(), 256u);
    const std::size_t K = b.depth();
    std::vector<LevelFunction> psi;
    for (std::uint64_t n = 0; n < b.size(); ++n) psi.push_back(character_function(b, n, K));
    for (std::uint64_t n = 0; n < b.size(); ++n)
      for (std::uint64_t m = 0; m < b.size(); ++m) {
        cplx acc = 0.0;
        for (std::uint64_t r = 0; r < b.size(); ++r) acc += psi[n][r] * std::conj(psi[m][r]);
        acc /= static_cast<double>(b.size());
        ASSERT_LT(std::abs(acc - (n == m ? 1.0 : 0.0)), 1e-12) << n << "," << m;
      }
  }
}

TEST(Transform, MatchesNaiveOracle) {
  std::mt19937_64 rng(42);
  for (const auto& b : {dyadic_base(10), make_base({2, 3}, 8), make_base({6}, 4), make_base({3, 5, 2, 4}, 4)}) {
    const std::size_t K = b.depth();
    ASSERT_LE(b.size(), 1296u);
    const auto table = oracle::character_table(b, K);
    const auto f = oracle::random_values(rng, b.size());
    const auto fast = forward(LevelFunction(b, K, f)).coeffs;
    EXPECT_LT(rel_error(fast, oracle::naive_forward(table, f)), 1e-10);
  }
}

TEST(Transform, Examples) {
  const auto b = make_base({3, 2}, 3);
  for (std::uint64_t j = 0; j < b.size(); ++j) {
    const auto c = forward(character_function(b, j, 3)).coeffs;
    for (std::uint64_t k = 0; k < c.size(); ++k) ASSERT_LT(std::abs(c[k] - (k == j ? 1.0 : 0.0)), 1e-12);
  }
  const auto spike = LevelFunction::indicator(b, b.cylinder(b.zero(), 3), 3, static_cast<double>(b.size()));
  for (const cplx& c : forward(spike).coeffs) EXPECT_LT(std::abs(c - 1.0), 1e-12);
  const auto one = forward(LevelFunction::constant(b, 3, 1.0)).coeffs;
  for (std::uint64_t k = 0; k < one.size(); ++k) EXPECT_LT(std::abs(one[k] - (k == 0 ? 1.0 : 0.0)), 1e-15);

  Spectrum all{b, 3, std::vector<cplx>(b.size(), 1.0)};
  const auto d = inverse(all);
  EXPECT_LT(max_abs_difference(d, spike), 1e-12);
}

TEST(Transform, ParsevalAndRoundTrip) {
  std::mt19937_64 rng(7);
  const VilenkinBase bases[] = {dyadic_base(9), make_base({2, 3}, 7), make_base({3, 4, 5}, 4)};
  for (int t = 0; t < 100; ++t) {
    const auto& b = bases[t % 3];
    const std::size_t L = b.depth();
    const LevelFunction f(b, L, oracle::random_values(rng, b.size()));
    const Spectrum s = forward(f);
    double energy_f = 0.0, energy_s = 0.0;
    for (const cplx& v : f.values()) energy_f += std::norm(v);
    for (const cplx& c : s.coeffs) energy_s += std::norm(c);
    energy_f /= static_cast<double>(f.size());
    EXPECT_LT(std::abs(energy_s - energy_f) / energy_f, 1e-10);
    EXPECT_LT(max_abs_difference(inverse(s), f), 1e-9);
  }
}

TEST(Transform, InverseOfIndicatorIsCharacter) {
  const auto b = make_base({4, 3}, 3);
  for (std::uint64_t n = 0; n < b.size(); n += 5) {
    Spectrum s{b, 3, std::vector<cplx>(b.size(), 0.0)};
    s.coeffs[n] = 1.0;
    EXPECT_LT(max_abs_difference(inverse(s), character_function(b, n, 3)), 1e-12);
  }
  EXPECT_THROW(inverse(Spectrum{b, 3, std::vector<cplx>(5)}), std::invalid_argument);
}

TEST(CharacterStream, WalksAllCharacters) {
  const auto b = make_base({3, 2, 5}, 4);
  CharacterStream s(b, 4);
  for (std::uint64_t n = 0; n < b.size(); ++n) {
    ASSERT_EQ(s.index(), n);
    for (std::uint64_t r = 0; r < b.size(); ++r)
      ASSERT_LT(std::abs(s[r] - oracle::psi(b, n, oracle::point_digits(b, r, 4))), 1e-12);
    s.advance();
  }
  EXPECT_TRUE(s.done());
  EXPECT_THROW(s.advance(), std::out_of_range);
}
