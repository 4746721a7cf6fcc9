#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rank1lab;

namespace {

Construction entry(const std::string& name) { return find_entry(builtin_registry(), name)->construction; }

Construction random_periodic(std::mt19937_64& rng, const std::string& name) {
  const GroupSpec g = oracle::random_small_group(rng);
  const std::size_t letters = 1 + rng() % 2;
  std::vector<NamedGamma> alphabet;
  for (std::size_t k = 0; k < letters; ++k) {
    const std::size_t gamma = 2 + rng() % 3;
    std::vector<BigInt> s(gamma);
    std::vector<GroupElement> labels(gamma, g.zero());
    for (std::size_t i = 0; i < gamma; ++i) {
      s[i] = static_cast<long>(rng() % 4);
      if (!g.is_trivial()) labels[i] = g.element({BigInt(static_cast<long>(rng() % 5) - 2)});
    }
    alphabet.push_back({std::string(1, static_cast<char>('a' + k)), GammaElement(s, labels)});
  }
  Schedule sched{ScheduleKind::periodic, {}};
  const std::size_t period = 1 + rng() % 3;
  for (std::size_t i = 0; i < period; ++i) sched.sequence.push_back(rng() % letters);
  return Construction(name, g, std::move(alphabet), std::move(sched));
}

// Every generation up to two full passes through the (N mod P, h_N mod D) cycle.
bool direct_all(const Construction& c, std::size_t generations) {
  for (std::size_t n = 0; n < generations; ++n)
    if (!condition2_at(c, n).certificate) return false;
  return true;
}

}  // namespace

TEST(Condition1, Examples) {
  EXPECT_EQ(check_condition1(entry("chacon2")).value, Value::holds);
  EXPECT_EQ(check_condition1(entry("z_extension")).value, Value::holds);
  const GroupSpec z2 = GroupSpec::cyclic(2);
  Construction flat("flat", z2, {{"a", GammaElement({0, 1}, {z2.zero(), z2.zero()})}}, {ScheduleKind::constant, {0}});
  EXPECT_EQ(check_condition1(flat).value, Value::fails);
  EXPECT_EQ(check_pwm(flat).value, Value::fails);
}

TEST(Condition1, ReportsVariantMismatch) {
  const GroupSpec z2 = GroupSpec::cyclic(2);
  Construction shifted("shifted", z2, {{"a", GammaElement({0, 1}, {z2.basis(0), z2.basis(0)})}},
                       {ScheduleKind::constant, {0}});
  const auto v = check_condition1(shifted);
  EXPECT_EQ(v.value, Value::fails);
  EXPECT_TRUE(v.condition1->labels_generate);
  EXPECT_FALSE(v.condition1->differences_generate);
  EXPECT_FALSE(v.notes.empty());
}

TEST(Condition1, PrefixScheduleIsInconclusive) {
  const auto v = check_condition1(entry("countable_chacon4"));
  EXPECT_EQ(v.value, Value::inconclusive);
  EXPECT_TRUE(v.condition1->differences_generate);
}

TEST(Pwm, ChaconHolds) {
  for (const char* name : {"chacon2", "chacon3", "chacon4"}) {
    const auto v = check_pwm(entry(name));
    EXPECT_EQ(v.value, Value::holds) << name;
    EXPECT_EQ(v.condition2->positions.at(0).line_generator, 1);
    EXPECT_EQ(check_total_ergodicity(entry(name)).property, Property::totally_ergodic);
  }
}

TEST(Pwm, NotTSquaredErgodic) {
  const auto c = entry("not_t2_ergodic");
  const auto v = check_pwm(c);
  EXPECT_EQ(v.value, Value::fails);
  EXPECT_EQ(v.condition2->positions.at(0).line_generator, 0);
  ASSERT_TRUE(v.condition2->failing_generation);
  EXPECT_EQ(*v.condition2->failing_generation, 0u);
  // span is (1 + h_N)Z: 2, 6, 18, 54, ...
  for (std::size_t n = 0; n < 6; ++n) {
    const auto at = condition2_at(c, n);
    EXPECT_FALSE(at.certificate);
    EXPECT_EQ(at.obstruction, c.height(n) + 1);
    EXPECT_EQ(at.obstruction % 2, 0);
  }
}

TEST(Pwm, ZExtensionCertificate) {
  const auto c = entry("z_extension");
  const auto v = check_pwm(c);
  EXPECT_EQ(v.value, Value::holds);
  for (std::size_t n = 0; n < 5; ++n) {
    const auto at = condition2_at(c, n);
    ASSERT_TRUE(at.certificate);
    EXPECT_TRUE(verify_certificate(c.group(), at.generators, {{1}, c.group().zero()}, *at.certificate));
  }
}

TEST(Pwm, TwoPointFailsModTwo) {
  const auto c = entry("two_point");
  const auto v = check_pwm(c);
  EXPECT_EQ(v.value, Value::fails);
  const auto& pos = v.condition2->positions.at(0);
  EXPECT_EQ(pos.line_generator, 2);
  ASSERT_EQ(pos.residues.size(), 1u);
  EXPECT_EQ(pos.residues[0].residue, 1);
  EXPECT_FALSE(pos.residues[0].certificate);
  EXPECT_EQ(v.condition2->obstruction, 2);
}

TEST(Pwm, PrefixIsInconclusiveWithEvidence) {
  const auto v = check_pwm(entry("countable_chacon4"));
  EXPECT_EQ(v.value, Value::inconclusive);
  bool evidence = false;
  for (const auto& n : v.notes) evidence = evidence || n.find("finite-horizon") != std::string::npos;
  EXPECT_TRUE(evidence);
  // the c-vector (1,0) appears at every prefix generation
  const auto c = entry("countable_chacon4");
  for (std::size_t m = 0; m + 1 < 8; ++m) {
    const auto cv = c_vector(c, m, 0);
    EXPECT_EQ(cv.ints[0], 1);
    EXPECT_TRUE(cv.group.is_zero());
  }
}

TEST(Pwm, ReductionAgreesWithDirectChecks) {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = trial % 2 ? random_periodic(rng, "p") : oracle::random_constant(rng, "c");
    const auto v = check_condition2(c);
    ASSERT_NE(v.value, Value::inconclusive);
    BigInt cycle = c.schedule().period();
    for (const auto& p : v.condition2->positions) cycle = std::max(cycle, BigInt(p.line_generator * c.schedule().period()));
    const std::size_t span = static_cast<std::size_t>(std::min<BigInt>(BigInt(2 * cycle + 2 * c.schedule().period() + 4), BigInt(60)));
    if (v.value == Value::holds) {
      EXPECT_TRUE(direct_all(c, span)) << serialize_config(c);
    } else {
      ASSERT_TRUE(v.condition2->failing_generation) << serialize_config(c);
      const auto at = condition2_at(c, *v.condition2->failing_generation);
      EXPECT_FALSE(at.certificate) << serialize_config(c);
      EXPECT_EQ(v.condition2->obstruction, at.obstruction);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 150);
}

TEST(Pwm, SimpleFormAgreesOnConstantSchedules) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::random_constant(rng, "c");
    EXPECT_EQ(check_condition2_simple(c).value, check_condition2(c).value) << serialize_config(c);
  }
  for (const auto& e : builtin_registry())
    if (e.construction.schedule().kind == ScheduleKind::constant) {
      EXPECT_EQ(check_condition2_simple(e.construction).value, check_condition2(e.construction).value) << e.name;
    }
}

TEST(Pwm, SimpleFormDomain) {
  EXPECT_THROW(check_condition2_simple(entry("countable_chacon4")), std::invalid_argument);
  const GroupSpec z2 = GroupSpec::cyclic(2);
  Construction shifted("shifted", z2, {{"a", GammaElement({0, 1}, {z2.basis(0), z2.zero()})}},
                       {ScheduleKind::constant, {0}});
  EXPECT_THROW(check_condition2_simple(shifted), std::invalid_argument);
}

TEST(Pwm, PeriodRotationKeepsVerdictAndD) {
  std::mt19937_64 rng(37);
  int mismatches = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto c = random_periodic(rng, "p");
    const auto base = check_pwm(c);
    const std::size_t period = c.schedule().period();
    for (std::size_t k = 1; k < period; ++k) {
      Schedule rot = c.schedule();
      std::rotate(rot.sequence.begin(), rot.sequence.begin() + static_cast<std::ptrdiff_t>(k), rot.sequence.end());
      const Construction r("rot", c.group(), c.alphabet(), rot);
      const auto v = check_pwm(r);
      if (v.value != base.value) ++mismatches;
      for (std::size_t p = 0; p < period; ++p)
        EXPECT_EQ(v.condition2->positions[p].line_generator,
                  base.condition2->positions[(p + k) % period].line_generator);
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ProductCriterion, StaircaseValues) {
  const auto f = staircase_2pow2pow();
  const auto h = f.heights(4);
  EXPECT_EQ(h, (std::vector<BigInt>{1, 3, 18, 408, 137088}));
  const auto v = product_criterion(f, 2, 6);
  EXPECT_EQ(v.value, Value::holds);
  const auto& rows = v.criterion->rows;
  EXPECT_EQ(rows[2].value, Rational(18, 64));
  EXPECT_EQ(rows[3].value, Rational(408, 16384));
  EXPECT_EQ(rows[4].value, Rational(BigInt(137088), BigInt(32768) * 32768));
  EXPECT_TRUE(v.criterion->strictly_decreasing);
  ASSERT_TRUE(v.criterion->hook);
  EXPECT_TRUE(v.criterion->hook->passed);
}

TEST(ProductCriterion, DimensionOneIsTrivial) {
  const auto v = product_criterion(staircase_2pow2pow(), 1, 5);
  EXPECT_EQ(v.value, Value::holds);
  for (const auto& r : v.criterion->rows) EXPECT_EQ(r.value, Rational(BigInt(1), r.cut_product));
}

TEST(ProductCriterion, NeverFails) {
  // Chacon-2 read as a family: h_n^(d-1)/2^(nd) still tends to 0 but no hook is registered
  const auto f = family_from(entry("chacon2"));
  const auto v = product_criterion(f, 2, 8);
  EXPECT_EQ(v.value, Value::inconclusive);
  EXPECT_TRUE(v.criterion->strictly_decreasing);
  // a family with a violated hook stays inconclusive
  RankOneFamily broken = staircase_2pow2pow();
  broken.spacer_total = [](std::size_t n) { return detail::double_exponential_cut(n) * 8; };
  const auto b = product_criterion(broken, 2, 4);
  EXPECT_EQ(b.value, Value::inconclusive);
  EXPECT_THROW(family_from(entry("two_point")), std::invalid_argument);
}

TEST(ProductCriterion, QuadraticBoundUpToSix) {
  const auto f = staircase_2pow2pow();
  const auto h = f.heights(6);
  for (std::size_t m = 0; m <= 6; ++m) EXPECT_LE(2 * h[m], BigInt(m + 1) * f.cuts(m)) << m;
  const auto g = staircase_even_variant();
  const auto hv = g.heights(6);
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(hv[m] % 2, 0);
}

TEST(ProductClasses, WorkedExample) {
  const auto r = enumerate_product_classes(3, {1, 2});
  EXPECT_EQ(r.count, 7);
  EXPECT_EQ(r.bound, 9);
  for (const auto& rep : r.representatives) EXPECT_TRUE(rep[0] < 1 || rep[1] < 2);
  // (0,0)~(1,2) and (1,0)~(2,2) merge
  EXPECT_EQ(std::count(r.representatives.begin(), r.representatives.end(), std::vector<std::int64_t>{1, 2}), 0);
  EXPECT_EQ(enumerate_product_classes(9, {1}).count, 1);
}

TEST(ProductClasses, MatchesChainCount) {
  for (std::int64_t h = 1; h <= 8; ++h)
    for (std::int64_t k1 = 1; k1 <= 4; ++k1)
      for (std::int64_t k2 = 1; k2 <= 4; ++k2) {
        const auto r = enumerate_product_classes(h, {k1, k2});
        EXPECT_EQ(r.count, oracle::class_count(h, {k1, k2}));
        EXPECT_LE(r.count, r.bound);
        EXPECT_EQ(BigInt(r.representatives.size()), r.count);
        for (const auto& a : r.representatives) EXPECT_TRUE(a[0] < k1 || a[1] < k2);
      }
  const auto r = enumerate_product_classes(5, {2, 3});
  EXPECT_EQ(r.bound, 25);
  EXPECT_LE(r.count, 25);
}

TEST(ProductClasses, Guards) {
  EXPECT_THROW(enumerate_product_classes(1000, {1, 1, 1}), GuardError);
  EXPECT_THROW(enumerate_product_classes(5, {1, -2}), std::invalid_argument);
  EXPECT_THROW(enumerate_product_classes(5, {}), std::invalid_argument);
}

TEST(Parity, Examples) {
  const auto tp = entry("two_point");
  const auto v = parity_obstruction(tp, 2, {1, tp.group().zero(), 2}, {1, tp.group().zero(), 1}, 10);
  EXPECT_EQ(v.value, Value::holds);
  EXPECT_EQ(*v.parity->residue, 1);

  const auto var = entry("staircase_variant");
  EXPECT_EQ(parity_obstruction(var, 2, {1, var.group().zero(), 0}, {1, var.group().zero(), 1}, 4).value,
            Value::holds);

  const auto ch = entry("chacon2");
  const auto c = parity_obstruction(ch, 2, {1, ch.group().zero(), 0}, {1, ch.group().zero(), 1}, 3);
  EXPECT_EQ(c.value, Value::inconclusive);
  EXPECT_EQ(c.parity->generations.back().self_residues.size(), 2u);
  EXPECT_THROW(parity_obstruction(ch, 1, {1, ch.group().zero(), 0}, {1, ch.group().zero(), 1}, 3),
               std::invalid_argument);
}
