#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rank1lab;

namespace {

std::vector<std::size_t> mixed_radix(std::uint64_t k, const Construction& c, std::size_t base, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = static_cast<std::size_t>(k % c.gamma(base + i));
    k /= c.gamma(base + i);
  }
  return d;
}

std::vector<Construction> sample_constructions() {
  std::vector<Construction> out;
  for (const auto& e : builtin_registry()) out.push_back(e.construction);
  const GroupSpec z3 = GroupSpec::cyclic(3);
  out.emplace_back("periodic_z3", z3,
                   std::vector<NamedGamma>{{"a", GammaElement({1, 0, 2}, {z3.zero(), z3.basis(0), z3.zero()})},
                                           {"b", GammaElement({0, 3}, {z3.basis(0), z3.zero()})}},
                   Schedule{ScheduleKind::periodic, {0, 1, 1}});
  return out;
}

}  // namespace

TEST(Heights, Recurrence) {
  const auto reg = builtin_registry();
  const auto chacon2 = find_entry(reg, "chacon2")->construction;
  EXPECT_EQ(chacon2.height(0), 1);
  EXPECT_EQ(chacon2.height(1), 3);
  EXPECT_EQ(chacon2.height(4), 31);
  const auto stair = find_entry(reg, "staircase")->construction;
  const std::vector<long> h{1, 3, 18, 408, 137088};
  for (std::size_t n = 0; n < h.size(); ++n) EXPECT_EQ(stair.height(n), h[n]);
  EXPECT_THROW(stair.height(5), std::out_of_range);
  const auto tp = find_entry(reg, "two_point")->construction;
  for (std::size_t m = 0; m < 12; ++m) EXPECT_EQ(tp.height(m), (BigInt(1) << (m + 1)) - 1);
  EXPECT_EQ(stair.cut_product(4), 32768);
  EXPECT_EQ(stair.level_mass(2), Rational(1, 8));
}

TEST(Construction, ValidatesInputs) {
  const GroupSpec z2 = GroupSpec::cyclic(2);
  EXPECT_THROW(GammaElement::plain({1}), std::invalid_argument);
  EXPECT_THROW(GammaElement({0, 1}, {z2.zero()}), std::invalid_argument);
  EXPECT_THROW(GammaElement::plain({0, -1}), std::invalid_argument);
  // label from the wrong group
  EXPECT_THROW(Construction("x", GroupSpec::integers(2), {{"a", GammaElement({0, 1}, {z2.zero(), z2.zero()})}},
                            {ScheduleKind::constant, {0}}),
               std::invalid_argument);
  EXPECT_THROW(Construction("x", GroupSpec::trivial(), {{"a", GammaElement::plain({0, 1})}},
                            {ScheduleKind::periodic, {1}}),
               std::invalid_argument);
  EXPECT_THROW(Construction("x", GroupSpec::trivial(), {{"a", GammaElement::plain({0, 1})}},
                            {ScheduleKind::constant, {0, 0}}),
               std::invalid_argument);
}

TEST(Schedule, PeriodicAndPrefixLookup) {
  Schedule p{ScheduleKind::periodic, {2, 0, 1}};
  EXPECT_EQ(p.at(0), 2u);
  EXPECT_EQ(p.at(4), 0u);
  EXPECT_TRUE(p.decision_eligible());
  Schedule f{ScheduleKind::prefix, {0, 1}};
  EXPECT_FALSE(f.decision_eligible());
  EXPECT_EQ(*f.horizon(), 2u);
  EXPECT_THROW(f.at(2), std::out_of_range);
}

TEST(CopyArithmetic, MatchesConcatenationOracle) {
  for (const auto& c : sample_constructions()) {
    const std::size_t horizon = c.schedule().horizon().value_or(6);
    for (std::size_t base = 0; base + 1 <= std::min<std::size_t>(horizon, 5); ++base) {
      oracle::StackOracle orc(c, base);
      for (std::size_t n = 1; base + n <= std::min<std::size_t>(horizon, 5); ++n) {
        if (c.cut_product(base + n) / c.cut_product(base) > 5000) break;
        std::vector<GroupElement> colors = c.group().is_finite() ? c.group().elements() : std::vector{c.group().zero()};
        for (const auto& g : colors) {
          const auto copies = orc.copies(base + n, g);
          ASSERT_EQ(BigInt(orc.height(base + n, g)), c.height(base + n)) << c.name();
          ASSERT_EQ(BigInt(copies.size()), c.cut_product(base + n) / c.cut_product(base));
          const std::vector<std::size_t> zero(n, 0);
          for (std::size_t k = 0; k < copies.size(); ++k) {
            const auto digits = mixed_radix(k, c, base, n);
            EXPECT_EQ(copy_distance(c, base, zero, digits), copies[k].first) << c.name() << " base " << base;
            EXPECT_EQ(copy_color(c, {base, g, digits}), copies[k].second) << c.name();
          }
        }
      }
    }
  }
}

TEST(CopyArithmetic, LastDigitIsMostSignificant) {
  const auto c = find_entry(builtin_registry(), "chacon3")->construction;
  // digit a_{n-1} moves by whole generation-(N+n-1) columns
  EXPECT_EQ(copy_distance(c, 0, {0, 0}, {0, 1}), c.height(1));
  EXPECT_EQ(copy_distance(c, 0, {0, 0}, {1, 0}), c.height(0));
  EXPECT_THROW(copy_distance(c, 0, {0, 3}, {0, 0}), std::out_of_range);
}

TEST(CopyArithmetic, CarryDistanceIsTPlusCVectors) {
  // (gamma-1,...,gamma-1,a) -> (0,...,0,a+1) equals t_{N,0} + sum_{i<m} c_{N+i,0} + c_{N+m,a}
  for (const auto& c : sample_constructions()) {
    const std::size_t horizon = c.schedule().horizon().value_or(7);
    for (std::size_t n0 = 0; n0 + 2 < horizon; ++n0) {
      for (std::size_t m = 0; n0 + m + 2 < horizon && m < 3; ++m) {
        for (std::size_t a = 0; a + 2 <= c.gamma(n0 + m + 1); ++a) {
          std::vector<std::size_t> from, to;
          for (std::size_t i = 0; i <= m; ++i) {
            from.push_back(c.gamma(n0 + i) - 1);
            to.push_back(0);
          }
          from.push_back(a);
          to.push_back(a + 1);
          const auto [dist, dcol] = copy_delta(c, n0, c.group().zero(), from, to);
          EXPECT_EQ(dist, consecutive_copy_distance(c, n0, m, a));
          ExtendedVector sum = t_vector(c, n0, 0);
          for (std::size_t i = 0; i < m; ++i) sum = add(c.group(), sum, c_vector(c, n0 + i, 0));
          sum = add(c.group(), sum, c_vector(c, n0 + m, a));
          EXPECT_EQ(sum.ints[0], dist) << c.name();
          EXPECT_EQ(sum.group, dcol) << c.name();
        }
      }
    }
  }
}

TEST(CopyArithmetic, TVectorIsAdjacentPieceStep) {
  for (const auto& c : sample_constructions()) {
    for (std::size_t i = 0; i + 2 <= c.gamma(0); ++i) {
      const auto [dist, dcol] = copy_delta(c, 0, c.group().zero(), {i}, {i + 1});
      const auto t = t_vector(c, 0, i);
      EXPECT_EQ(t.ints[0], dist);
      EXPECT_EQ(t.group, dcol);
    }
  }
}

TEST(CopyArithmetic, CVectorFromTwoPointExtension) {
  const auto c = find_entry(builtin_registry(), "two_point")->construction;
  const auto cv = c_vector(c, 0, 0);
  EXPECT_EQ(cv.ints[0], 1);
  EXPECT_EQ(cv.group[0], 1);
  EXPECT_EQ(t_vector(c, 3, 0).ints[0], c.height(3));
}
