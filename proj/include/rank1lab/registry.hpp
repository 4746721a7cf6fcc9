#pragma once

// Built-in example constructions with their known verdicts.

#include "rank1lab/abelian.hpp"
#include "rank1lab/criteria.hpp"
#include "rank1lab/tower.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rank1lab {

struct Expectation {
  Property property = Property::power_weakly_mixing;
  Value expected = Value::holds;
  // Expected D at schedule position 0 for condition 2 failures.
  std::optional<BigInt> line_generator;
  // power_conservative_criterion
  std::size_t dimension = 2;
  std::size_t n_max = 6;
  // parity_obstruction
  BigInt modulus = 2;
  std::optional<LevelRef> i_level;
  std::optional<LevelRef> j_level;
  std::size_t resolution = 0;
};

struct RegistryEntry {
  std::string name;
  std::string provenance;
  Construction construction;
  std::optional<RankOneFamily> family;
  std::vector<Expectation> expectations;
};

struct ExpectationOutcome {
  Expectation expectation;
  Verdict verdict;
  bool matches = false;
  std::string mismatch;
};

struct EntryOutcome {
  std::string name;
  std::vector<ExpectationOutcome> outcomes;
  bool matches() const {
    for (const auto& o : outcomes)
      if (!o.matches) return false;
    return true;
  }
};

inline Expectation expect(Property p, Value v) {
  Expectation e;
  e.property = p;
  e.expected = v;
  return e;
}

namespace detail {

inline Construction chacon(std::size_t m) {
  std::vector<BigInt> s(m, 0);
  s.back() = 1;
  return Construction("chacon" + std::to_string(m), GroupSpec::trivial(), {{"c", GammaElement::plain(s)}},
                      {ScheduleKind::constant, {0}});
}

inline Construction staircase_prefix(const std::string& name, bool even_variant) {
  std::vector<NamedGamma> alphabet;
  Schedule sched{ScheduleKind::prefix, {}};
  for (std::size_t n = 0; n < 4; ++n) {
    const std::size_t r = std::size_t{1} << (std::size_t{1} << n);
    std::vector<BigInt> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = even_variant ? (i % 2 == 0 ? 2 * i : 0) : i;
    alphabet.push_back({"r" + std::to_string(r), GammaElement::plain(std::move(s))});
    sched.sequence.push_back(n);
  }
  return Construction(name, GroupSpec::trivial(), std::move(alphabet), std::move(sched));
}

inline std::vector<Expectation> decidable(Value pwm) {
  return {expect(Property::ergodic, Value::holds),
          expect(Property::power_weakly_mixing, pwm),
          expect(Property::totally_ergodic, pwm),
          expect(Property::condition2, pwm)};
}

}  // namespace detail

inline std::vector<RegistryEntry> builtin_registry() {
  std::vector<RegistryEntry> out;
  for (std::size_t m : {2, 3, 4})
    out.push_back({"chacon" + std::to_string(m),
                   "Chacon-" + std::to_string(m) + ": trivial G, one spacer on the last piece; power weakly mixing",
                   detail::chacon(m), std::nullopt, detail::decidable(Value::holds)});

  {
    Construction c("not_t2_ergodic", GroupSpec::trivial(), {{"a", GammaElement::plain({1, 1, 0})}},
                   {ScheduleKind::constant, {0}});
    out.push_back({"not_t2_ergodic", "gamma 3, spacers (1,1,0), trivial G; T^2 is not ergodic", std::move(c),
                   std::nullopt, detail::decidable(Value::fails)});
  }
  {
    const GroupSpec z = GroupSpec::integers();
    Construction c("z_extension", z,
                   {{"a", GammaElement({0, 0, 0, 1, 0}, {z.zero(), z.basis(0), z.zero(), z.zero(), z.zero()})}},
                   {ScheduleKind::constant, {0}});
    out.push_back({"z_extension", "Z-extension, gamma 5, spacers (0,0,0,1,0), g_1 = 1; infinite measure, power weakly mixing",
                   std::move(c), std::nullopt, detail::decidable(Value::holds)});
  }
  {
    const GroupSpec g = GroupSpec::integers(4);
    std::vector<NamedGamma> alphabet;
    for (std::size_t k = 0; k < 4; ++k)
      alphabet.push_back({"e" + std::to_string(k),
                          GammaElement({0, 0, 0, 1}, {g.zero(), g.zero(), g.basis(k), g.zero()})});
    Schedule sched{ScheduleKind::prefix, {}};
    for (std::size_t n = 0; n < 8; ++n) {
      std::size_t v = 0;
      for (std::size_t x = n + 1; x % 2 == 0; x /= 2) ++v;
      sched.sequence.push_back(v);
    }
    Construction c("countable_chacon4", g, std::move(alphabet), std::move(sched));
    out.push_back({"countable_chacon4",
                   "extension of Chacon-4 by a countably generated group (first 8 generations, Z^4); "
                   "power weakly mixing, decidable only on its finite prefix",
                   std::move(c),
                   std::nullopt,
                   {expect(Property::ergodic, Value::inconclusive),
                    expect(Property::power_weakly_mixing, Value::inconclusive)}});
  }
  {
    const GroupSpec z2 = GroupSpec::cyclic(2);
    Construction c("two_point", z2, {{"a", GammaElement({0, 1}, {z2.zero(), z2.basis(0)})}},
                   {ScheduleKind::constant, {0}});
    auto ex = detail::decidable(Value::fails);
    ex[1].line_generator = 2;
    Expectation parity = expect(Property::parity_obstruction, Value::holds);
    parity.i_level = LevelRef{1, z2.zero(), 2};
    parity.j_level = LevelRef{1, z2.zero(), 1};
    parity.resolution = 10;
    ex.push_back(parity);
    out.push_back({"two_point", "two-point extension of Chacon-2 over Z/2; T^2 is not ergodic", std::move(c),
                   std::nullopt, std::move(ex)});
  }
  {
    Expectation crit = expect(Property::power_conservative_criterion, Value::holds);
    out.push_back({"staircase", "staircase r_n = 2^(2^n), s_{n,i} = i (first 4 generations); power conservative index",
                   detail::staircase_prefix("staircase", false), staircase_2pow2pow(), {crit}});
  }
  {
    Expectation crit = expect(Property::power_conservative_criterion, Value::holds);
    Expectation parity = expect(Property::parity_obstruction, Value::holds);
    parity.i_level = LevelRef{1, GroupSpec::trivial().zero(), 0};
    parity.j_level = LevelRef{1, GroupSpec::trivial().zero(), 1};
    parity.resolution = 4;
    out.push_back({"staircase_variant",
                   "staircase variant, s_{n,i} = 2i for even i and 0 otherwise (first 4 generations); "
                   "power conservative index with T^2 not ergodic",
                   detail::staircase_prefix("staircase_variant", true), staircase_even_variant(), {crit, parity}});
  }
  return out;
}

inline std::optional<RegistryEntry> find_entry(const std::vector<RegistryEntry>& reg, const std::string& name) {
  for (const auto& e : reg)
    if (e.name == name) return e;
  return std::nullopt;
}

inline Verdict evaluate(const RegistryEntry& entry, const Expectation& ex) {
  const Construction& c = entry.construction;
  switch (ex.property) {
    case Property::ergodic: return check_condition1(c);
    case Property::power_weakly_mixing: return check_pwm(c);
    case Property::totally_ergodic: return check_total_ergodicity(c);
    case Property::condition2: return check_condition2_simple(c);
    case Property::power_conservative_criterion:
      return product_criterion(entry.family ? *entry.family : family_from(c), ex.dimension, ex.n_max);
    case Property::parity_obstruction:
      return parity_obstruction(c, ex.modulus, ex.i_level.value(), ex.j_level.value(), ex.resolution);
  }
  throw std::logic_error("unknown property");
}

inline EntryOutcome run_entry(const RegistryEntry& entry) {
  EntryOutcome out;
  out.name = entry.name;
  for (const auto& ex : entry.expectations) {
    ExpectationOutcome o{ex, evaluate(entry, ex), false, {}};
    o.matches = o.verdict.value == ex.expected;
    if (!o.matches) {
      o.mismatch = to_string(ex.property) + ": expected " + to_string(ex.expected) + ", got " +
                   to_string(o.verdict.value) + " (" + o.verdict.reason + ")";
    } else if (ex.line_generator) {
      const auto& ev = o.verdict.condition2;
      const BigInt got = ev && !ev->positions.empty() ? ev->positions.front().line_generator : BigInt(-1);
      if (got != *ex.line_generator) {
        o.matches = false;
        o.mismatch = to_string(ex.property) + ": expected D = " + ex.line_generator->str() + ", got " + got.str();
      }
    }
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

inline std::vector<EntryOutcome> run_registry(const std::vector<RegistryEntry>& entries) {
  std::vector<EntryOutcome> out;
  for (const auto& e : entries) out.push_back(run_entry(e));
  return out;
}

}  // namespace rank1lab
