#pragma once

// Decision procedures: ergodicity, power weak mixing (and total ergodicity),
// product-conservativity criteria, equivalence classes of level products,
// and residue obstructions read off explicit columns.

#include "rank1lab/abelian.hpp"
#include "rank1lab/bigint.hpp"
#include "rank1lab/simulator.hpp"
#include "rank1lab/tower.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rank1lab {

enum class Property {
  ergodic,
  power_weakly_mixing,
  totally_ergodic,
  condition2,
  power_conservative_criterion,
  parity_obstruction,
};

enum class Value { holds, fails, inconclusive };

inline std::string to_string(Property p) {
  switch (p) {
    case Property::ergodic: return "ergodic";
    case Property::power_weakly_mixing: return "power_weakly_mixing";
    case Property::totally_ergodic: return "totally_ergodic";
    case Property::condition2: return "condition2";
    case Property::power_conservative_criterion: return "power_conservative_criterion";
    case Property::parity_obstruction: return "parity_obstruction";
  }
  return "?";
}

inline std::string to_string(Value v) {
  switch (v) {
    case Value::holds: return "holds";
    case Value::fails: return "fails";
    case Value::inconclusive: return "inconclusive";
  }
  return "?";
}

struct Condition1Evidence {
  std::vector<GroupElement> differences;  // g(N,i) - g(N,0)
  bool differences_generate = false;
  bool labels_generate = false;  // the undifferenced labels g(N,i)
};

// The residue check for one residue of h_N mod D.
struct ResidueCheck {
  BigInt residue;
  std::size_t first_generation = 0;
  std::optional<SpanCertificate> certificate;
};

// Analysis of one position of the schedule period.
struct PositionAnalysis {
  std::size_t position = 0;
  BigInt line_generator;  // minimal D with (D,0,0) in the span, 0 if none
  std::vector<ResidueCheck> residues;
};

struct Condition2Evidence {
  std::vector<PositionAnalysis> positions;
  std::optional<std::size_t> failing_generation;
  // Generator of span(t_{N,i}, c_{M,i}) meet (Z x 0) at the failing generation.
  BigInt obstruction;
};

struct CriterionRow {
  std::size_t n = 0;
  BigInt height;
  BigInt cut_product;
  Rational value;
};

struct ProofHookResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;
};

struct CriterionTable {
  std::size_t dimension = 1;
  std::vector<CriterionRow> rows;
  bool strictly_decreasing = false;  // over rows with n >= 1
  std::optional<ProofHookResult> hook;
};

struct ParityGeneration {
  std::size_t generation = 0;
  std::set<BigInt> self_residues;   // (p' - p) mod q over copies of I
  std::set<BigInt> cross_residues;  // (p_J - p_I) mod q
};

struct ParityEvidence {
  BigInt modulus;
  std::vector<ParityGeneration> generations;
  std::optional<BigInt> residue;  // the common I-to-J residue when it exists
};

struct Verdict {
  Property property = Property::ergodic;
  Value value = Value::inconclusive;
  std::string reason;
  std::vector<std::string> notes;
  std::optional<Condition1Evidence> condition1;
  std::optional<Condition2Evidence> condition2;
  std::optional<CriterionTable> criterion;
  std::optional<ParityEvidence> parity;
};

namespace detail {

// c_{M,i} for every M in one schedule period (or every M whose successor is
// inside a prefix horizon).
inline std::vector<ExtendedVector> c_vectors(const Construction& c) {
  std::vector<ExtendedVector> out;
  const Schedule& s = c.schedule();
  const std::size_t count = s.horizon() ? (*s.horizon() > 0 ? *s.horizon() - 1 : 0) : s.period();
  for (std::size_t m = 0; m < count; ++m)
    for (std::size_t i = 0; i + 2 <= c.gamma(m + 1); ++i) out.push_back(c_vector(c, m, i));
  return out;
}

inline std::vector<std::size_t> schedule_generations(const Construction& c) {
  const Schedule& s = c.schedule();
  const std::size_t count = s.horizon() ? *s.horizon() : s.period();
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

inline ExtendedVector lift(const ExtendedVector& v, const BigInt& trailing) {
  ExtendedVector out = v;
  out.ints.push_back(trailing);
  return out;
}

// Visits (N, h_N mod D) for N = 0, 1, ... until the state
// (N mod period, h_N mod D) repeats. Returns first N per state.
inline std::map<std::pair<std::size_t, BigInt>, std::size_t> height_residues(const Construction& c,
                                                                             const BigInt& d) {
  std::map<std::pair<std::size_t, BigInt>, std::size_t> first;
  const std::size_t period = c.schedule().period();
  BigInt h = mod_floor(1, d);
  for (std::size_t n = 0;; ++n) {
    auto key = std::make_pair(n % period, h);
    if (first.count(key)) break;
    first.emplace(key, n);
    const GammaElement& e = c.step(n);
    h = mod_floor(h * e.gamma() + e.spacer_total(), d);
  }
  return first;
}

}  // namespace detail

// Condition 1: the differences g(N,i) - g(N,0) generate G.
inline Verdict check_condition1(const Construction& c) {
  Verdict v;
  v.property = Property::ergodic;
  Condition1Evidence ev;
  std::vector<GroupElement> raw;
  for (std::size_t n : detail::schedule_generations(c)) {
    const GammaElement& e = c.step(n);
    for (std::size_t i = 0; i < e.gamma(); ++i) {
      ev.differences.push_back(subtract(c.group(), e.label(i), e.label(0)));
      raw.push_back(e.label(i));
    }
  }
  ev.differences_generate = generates_group(c.group(), ev.differences);
  ev.labels_generate = generates_group(c.group(), raw);
  if (ev.differences_generate != ev.labels_generate)
    v.notes.push_back("label differences and raw labels disagree on generating G (some g(N,0) != 0); "
                      "the differences decide");
  if (!c.schedule().decision_eligible()) {
    v.value = Value::inconclusive;
    v.reason = "prefix schedule: no decision beyond the horizon";
    v.notes.push_back(std::string("finite-horizon evidence: label differences on the prefix ") +
                      (ev.differences_generate ? "generate" : "do not generate") + " G");
  } else if (ev.differences_generate) {
    v.value = Value::holds;
    v.reason = "label differences generate " + c.group().to_string();
  } else {
    v.value = Value::fails;
    v.reason = "label differences generate a proper subgroup of " + c.group().to_string();
  }
  v.condition1 = std::move(ev);
  return v;
}

struct Condition2AtGeneration {
  std::optional<SpanCertificate> certificate;  // (1,0) in span(t_{N,i}, c_{M,i})
  BigInt obstruction;                          // generator of span meet (Z x 0)
  std::vector<ExtendedVector> generators;
};

// Direct check of condition 2 at one generation N, with the true h_N.
inline Condition2AtGeneration condition2_at(const Construction& c, std::size_t n) {
  Condition2AtGeneration out;
  for (std::size_t i = 0; i + 2 <= c.gamma(n); ++i) out.generators.push_back(t_vector(c, n, i));
  for (auto& v : detail::c_vectors(c)) out.generators.push_back(std::move(v));
  const ExtendedVector target{{1}, c.group().zero()};
  out.certificate = span_contains(c.group(), out.generators, target);
  out.obstruction = span_meet_line(c.group(), out.generators, 0);
  return out;
}

namespace detail {

// Shared D-then-residue reduction. `line_gens(p)` builds the Z x G x Z
// system for schedule position p; `residue_gens(p, r)` the Z x G system with
// h_N replaced by r.
inline Verdict reduce_condition2(
    const Construction& c, Property property,
    const std::function<std::vector<ExtendedVector>(std::size_t)>& line_gens,
    const std::function<std::vector<ExtendedVector>(std::size_t, const BigInt&)>& residue_gens) {
  Verdict v;
  v.property = property;
  Condition2Evidence ev;
  const GroupSpec& g = c.group();
  const ExtendedVector target{{1}, g.zero()};
  const std::size_t period = c.schedule().period();

  std::optional<std::size_t> failing;
  std::string failure_reason;
  for (std::size_t p = 0; p < period; ++p) {
    PositionAnalysis pa;
    pa.position = p;
    pa.line_generator = span_meet_line(g, line_gens(p), 0);
    if (pa.line_generator == 0) {
      // The span meets Z x 0 x 0 trivially; the condition can hold for at
      // most two heights, so a failing generation appears within a few periods.
      for (std::size_t n = p; n < p + 8 * period; n += period) {
        if (!condition2_at(c, n).certificate) {
          if (!failing || n < *failing) {
            failing = n;
            failure_reason = "no D exists at schedule position " + std::to_string(p);
          }
          break;
        }
      }
      if (!failing) failure_reason = "no D exists at schedule position " + std::to_string(p);
      ev.positions.push_back(std::move(pa));
      if (failure_reason.empty()) failure_reason = "no D exists";
      v.value = Value::fails;
      continue;
    }
    const BigInt& d = pa.line_generator;
    if (d * period > 10'000'000) {
      v.value = Value::inconclusive;
      v.reason = "residue cycle bound D * period = " + BigInt(d * period).str() + " exceeds the guard";
      v.condition2 = std::move(ev);
      return v;
    }
    for (const auto& [state, n] : height_residues(c, d)) {
      if (state.first != p) continue;
      ResidueCheck rc;
      rc.residue = state.second;
      rc.first_generation = n;
      auto gens = residue_gens(p, state.second);
      gens.push_back(ExtendedVector{{d}, g.zero()});
      rc.certificate = span_contains(g, gens, target);
      if (!rc.certificate && (!failing || n < *failing)) {
        failing = n;
        failure_reason = "(1,0) is not in the span modulo D = " + d.str() + " for h_N = " +
                         state.second.str() + " (mod D) at schedule position " + std::to_string(p);
      }
      pa.residues.push_back(std::move(rc));
    }
    ev.positions.push_back(std::move(pa));
  }

  if (failing || v.value == Value::fails) {
    v.value = Value::fails;
    v.reason = failure_reason;
    if (failing) {
      ev.failing_generation = failing;
      ev.obstruction = condition2_at(c, *failing).obstruction;
    }
  } else {
    v.value = Value::holds;
    v.reason = "(1,0) is in the span for every residue of h_N";
  }
  v.condition2 = std::move(ev);
  return v;
}

inline Verdict condition2_ineligible(const Construction& c, Property property) {
  Verdict v;
  v.property = property;
  v.value = Value::inconclusive;
  v.reason = "prefix schedule: the all-N quantifier cannot be discharged";
  const std::size_t hz = *c.schedule().horizon();
  std::size_t ok = 0;
  for (std::size_t n = 0; n < hz; ++n)
    if (condition2_at(c, n).certificate) ++ok;
  v.notes.push_back("finite-horizon evidence: condition 2 holds directly at " + std::to_string(ok) + " of " +
                    std::to_string(hz) + " prefix generations");
  return v;
}

}  // namespace detail

// Condition 2 through the finite reduction: find D with (D,0,0) in the span
// of {(s(N,i), g(N,i+1)-g(N,i), 1)} and {(c_{M,i}, 0)}, then test (1,0) modulo
// D for every residue that h_N takes.
inline Verdict check_condition2(const Construction& c) {
  if (!c.schedule().decision_eligible()) return detail::condition2_ineligible(c, Property::condition2);
  const GroupSpec& g = c.group();
  const auto cs = detail::c_vectors(c);
  return detail::reduce_condition2(
      c, Property::condition2,
      [&](std::size_t p) {
        std::vector<ExtendedVector> gens;
        const GammaElement& e = c.step(p);
        for (std::size_t i = 0; i + 2 <= e.gamma(); ++i)
          gens.push_back({{e.spacer(i), 1}, subtract(g, e.label(i + 1), e.label(i))});
        for (const auto& v : cs) gens.push_back(detail::lift(v, 0));
        return gens;
      },
      [&](std::size_t p, const BigInt& r) {
        std::vector<ExtendedVector> gens;
        const GammaElement& e = c.step(p);
        for (std::size_t i = 0; i + 2 <= e.gamma(); ++i)
          gens.push_back({{e.spacer(i) + r}, subtract(g, e.label(i + 1), e.label(i))});
        gens.insert(gens.end(), cs.begin(), cs.end());
        return gens;
      });
}

// Condition 2 in the single-recipe form: (1,0) in the span of
// {(s_i + h_N, g_{i+1} - g_i)} and (s_{n-1}, -g_{n-1}). Needs a constant
// schedule with g_0 = 0.
inline Verdict check_condition2_simple(const Construction& c) {
  if (c.schedule().kind != ScheduleKind::constant)
    throw std::invalid_argument("the simple form needs a constant schedule");
  const GammaElement& e = c.step(0);
  if (!e.label(0).is_zero()) throw std::invalid_argument("the simple form needs g_0 = 0");
  const GroupSpec& g = c.group();
  const std::size_t last = e.gamma() - 1;
  const ExtendedVector tail{{e.spacer(last)}, negate(g, e.label(last))};
  return detail::reduce_condition2(
      c, Property::condition2,
      [&](std::size_t) {
        std::vector<ExtendedVector> gens;
        for (std::size_t i = 0; i + 2 <= e.gamma(); ++i)
          gens.push_back({{e.spacer(i), 1}, subtract(g, e.label(i + 1), e.label(i))});
        gens.push_back(detail::lift(tail, 0));
        return gens;
      },
      [&](std::size_t, const BigInt& r) {
        std::vector<ExtendedVector> gens;
        for (std::size_t i = 0; i + 2 <= e.gamma(); ++i)
          gens.push_back({{e.spacer(i) + r}, subtract(g, e.label(i + 1), e.label(i))});
        gens.push_back(tail);
        return gens;
      });
}

namespace detail {

inline Verdict combine_pwm(const Construction& c, Property property) {
  Verdict c1 = check_condition1(c);
  Verdict c2 = check_condition2(c);
  Verdict v;
  v.property = property;
  v.condition1 = c1.condition1;
  v.condition2 = c2.condition2;
  v.notes = c1.notes;
  v.notes.insert(v.notes.end(), c2.notes.begin(), c2.notes.end());
  if (c1.value == Value::fails || c2.value == Value::fails) {
    v.value = Value::fails;
    v.reason = c1.value == Value::fails ? "condition 1: " + c1.reason : "condition 2: " + c2.reason;
  } else if (c1.value == Value::inconclusive || c2.value == Value::inconclusive) {
    v.value = Value::inconclusive;
    v.reason = c1.value == Value::inconclusive ? c1.reason : c2.reason;
  } else {
    v.value = Value::holds;
    v.reason = "conditions 1 and 2 hold";
  }
  return v;
}

}  // namespace detail

inline Verdict check_pwm(const Construction& c) {
  return detail::combine_pwm(c, Property::power_weakly_mixing);
}

// Total ergodicity coincides with power weak mixing for these constructions.
inline Verdict check_total_ergodicity(const Construction& c) {
  return detail::combine_pwm(c, Property::totally_ergodic);
}

// A plain rank-one family given by rules rather than an explicit schedule.
struct RankOneFamily {
  std::string name;
  std::string description;
  std::function<BigInt(std::size_t)> cuts;          // r_n >= 2
  std::function<BigInt(std::size_t)> spacer_total;  // sum_i s_{n,i}
  std::function<ProofHookResult(const RankOneFamily&, std::size_t)> proof_hook;

  std::vector<BigInt> heights(std::size_t n_max) const {
    std::vector<BigInt> h{1};
    for (std::size_t n = 0; n < n_max; ++n) h.push_back(h[n] * cuts(n) + spacer_total(n));
    return h;
  }
};

// Family with r_n = 2^(2^n) and s_{n,i} = i.
inline RankOneFamily staircase_2pow2pow();
// Same cuts, s_{n,i} = 2i for even i and 0 for odd i.
inline RankOneFamily staircase_even_variant();

namespace detail {

inline BigInt double_exponential_cut(std::size_t n) {
  if (n > 20) throw std::length_error("cut 2^(2^n) is too large for n > 20");
  BigInt r = 1;
  r <<= (std::size_t{1} << n);
  return r;
}

// h_m <= (m+1)/2 * r_m by induction: the base case is checked exactly, and
// the step needs r_{m+1} = r_m^2 and 2 * spacer_total(m) <= r_m^2, which
// are checked up to n_max alongside the bound itself.
inline ProofHookResult quadratic_cut_bound(const RankOneFamily& f, std::size_t n_max) {
  ProofHookResult out;
  out.name = "h_m <= (m+1)/2 * r_m";
  const auto h = f.heights(n_max);
  bool ok = true;
  for (std::size_t m = 0; m <= n_max; ++m) {
    const BigInt r = f.cuts(m);
    const bool bound = 2 * h[m] <= BigInt(m + 1) * r;
    bool step = true;
    if (m < n_max) step = f.cuts(m + 1) == r * r && 2 * f.spacer_total(m) <= r * r;
    ok = ok && bound && step;
    out.lines.push_back("m=" + std::to_string(m) + " h=" + h[m].str() + " bound=" +
                        to_string(Rational(BigInt(m + 1) * r, 2)) + (bound ? " ok" : " VIOLATED") +
                        (step ? "" : " (step premise violated)"));
  }
  out.passed = ok;
  return out;
}

}  // namespace detail

inline RankOneFamily staircase_2pow2pow() {
  RankOneFamily f;
  f.name = "staircase-2pow2pow";
  f.description = "staircase r_n = 2^(2^n), s_{n,i} = i";
  f.cuts = detail::double_exponential_cut;
  f.spacer_total = [](std::size_t n) {
    const BigInt r = detail::double_exponential_cut(n);
    return r * (r - 1) / 2;
  };
  f.proof_hook = detail::quadratic_cut_bound;
  return f;
}

inline RankOneFamily staircase_even_variant() {
  RankOneFamily f;
  f.name = "staircase-even";
  f.description = "r_n = 2^(2^n), s_{n,i} = 2i for even i, 0 otherwise";
  f.cuts = detail::double_exponential_cut;
  f.spacer_total = [](std::size_t n) {
    const BigInt r = detail::double_exponential_cut(n);
    return r * (r - 2) / 2;
  };
  f.proof_hook = detail::quadratic_cut_bound;
  return f;
}

// Family read from a construction over the trivial group.
inline RankOneFamily family_from(const Construction& c) {
  if (!c.group().is_trivial()) throw std::invalid_argument("product criteria apply to plain rank-one constructions");
  RankOneFamily f;
  f.name = c.name();
  f.description = "construction " + c.name();
  f.cuts = [c](std::size_t n) { return BigInt(c.gamma(n)); };
  f.spacer_total = [c](std::size_t n) { return c.step(n).spacer_total(); };
  return f;
}

// v_n = h_n^(d-1) / (prod_{i<n} r_i)^d for n <= n_max. The liminf condition
// is only sufficient, so the verdict is never `fails`.
inline Verdict product_criterion(const RankOneFamily& f, std::size_t d, std::size_t n_max) {
  if (d < 1) throw std::invalid_argument("product dimension must be at least 1");
  Verdict v;
  v.property = Property::power_conservative_criterion;
  CriterionTable t;
  t.dimension = d;
  const auto h = f.heights(n_max);
  BigInt prod = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) prod *= f.cuts(n - 1);
    CriterionRow row{n, h[n], prod, Rational(pow(h[n], static_cast<unsigned>(d - 1)), pow(prod, static_cast<unsigned>(d)))};
    t.rows.push_back(std::move(row));
  }
  t.strictly_decreasing = true;
  for (std::size_t n = 2; n < t.rows.size(); ++n)
    if (!(t.rows[n].value < t.rows[n - 1].value)) t.strictly_decreasing = false;

  if (d == 1) {
    v.value = Value::holds;
    v.reason = "d = 1: v_n = 1/prod r_i <= 2^-n tends to 0";
  } else if (f.proof_hook) {
    t.hook = f.proof_hook(f, n_max);
    if (t.hook->passed) {
      v.value = Value::holds;
      v.reason = "proof hook '" + t.hook->name + "' gives v_n <= (n+1)^d / r_n -> 0";
    } else {
      v.value = Value::inconclusive;
      v.reason = "proof hook '" + t.hook->name + "' did not verify";
    }
  } else {
    v.value = Value::inconclusive;
    v.reason = t.strictly_decreasing ? "values decrease numerically; no proof hook registered"
                                     : "no proof hook registered";
  }
  v.criterion = std::move(t);
  return v;
}

struct EquivClassReport {
  std::int64_t height = 0;
  std::vector<std::int64_t> powers;
  BigInt count;
  BigInt bound;  // (sum k_i) h^(d-1)
  std::vector<std::vector<std::int64_t>> representatives;
};

// Partitions [0,h)^d into classes of the relation a ~ a + k (both tuples in
// range), closed transitively.
inline EquivClassReport enumerate_product_classes(std::int64_t h, const std::vector<std::int64_t>& powers,
                                                  std::int64_t guard = 10'000'000) {
  if (powers.empty()) throw std::invalid_argument("need at least one power");
  if (h < 1) throw std::invalid_argument("column height must be positive");
  for (auto k : powers)
    if (k <= 0) throw std::invalid_argument("class enumeration needs positive powers");
  const std::size_t d = powers.size();
  BigInt cells = pow(BigInt(h), static_cast<unsigned>(d));
  if (cells > guard) throw GuardError("h^d = " + cells.str() + " exceeds the enumeration guard " + std::to_string(guard));
  const auto n = static_cast<std::size_t>(cells);

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<std::int64_t> a(d, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    // a is the tuple for idx, coordinate 0 least significant
    bool in_range = true;
    std::size_t jdx = 0, mul = 1;
    for (std::size_t i = 0; i < d; ++i) {
      const std::int64_t b = a[i] + powers[i];
      if (b >= h) in_range = false;
      jdx += static_cast<std::size_t>(b) * mul;
      mul *= static_cast<std::size_t>(h);
    }
    if (in_range) {
      const std::size_t ra = find(idx), rb = find(jdx);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (++a[i] < h) break;
      a[i] = 0;
    }
  }

  // minimal representative per class: smallest coordinate sum
  std::map<std::size_t, std::pair<std::int64_t, std::size_t>> best;
  std::fill(a.begin(), a.end(), 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::int64_t sum = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const std::size_t root = find(idx);
    auto it = best.find(root);
    if (it == best.end() || sum < it->second.first) best[root] = {sum, idx};
    for (std::size_t i = 0; i < d; ++i) {
      if (++a[i] < h) break;
      a[i] = 0;
    }
  }

  EquivClassReport r;
  r.height = h;
  r.powers = powers;
  r.count = best.size();
  r.bound = BigInt(std::accumulate(powers.begin(), powers.end(), std::int64_t{0})) *
            pow(BigInt(h), static_cast<unsigned>(d - 1));
  for (const auto& [root, rep] : best) {
    std::vector<std::int64_t> t(d);
    std::size_t idx = rep.second;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(h));
      idx /= static_cast<std::size_t>(h);
    }
    r.representatives.push_back(std::move(t));
  }
  std::sort(r.representatives.begin(), r.representatives.end());
  return r;
}

// Checks over generations up to M that copies of I sit at mutually congruent
// heights mod q and that every copy of J sits at one fixed nonzero residue
// above the copies of I. Holds means T^q cannot carry I onto J.
inline Verdict parity_obstruction(const Construction& c, const BigInt& q, const LevelRef& i_level,
                                  const LevelRef& j_level, std::size_t resolution,
                                  const StackLimits& limits = {}) {
  if (q < 2) throw std::invalid_argument("modulus must be at least 2");
  Verdict v;
  v.property = Property::parity_obstruction;
  ParityEvidence ev;
  ev.modulus = q;
  const LevelSet is = LevelSet::of(i_level), js = LevelSet::of(j_level);
  std::set<BigInt> all_self, all_cross;
  for (std::size_t m = std::max(i_level.generation, j_level.generation); m <= resolution; ++m) {
    const auto marks = detail::mark_levels(c, {&is, &js}, m, limits);
    ParityGeneration pg;
    pg.generation = m;
    for (const auto& col : marks.columns) {
      std::set<BigInt> ri, rj;
      for (std::size_t p = 0; p < col.size(); ++p) {
        if (col[p] & 1u) ri.insert(mod_floor(BigInt(p), q));
        if (col[p] & 2u) rj.insert(mod_floor(BigInt(p), q));
      }
      for (const auto& x : ri) {
        for (const auto& y : ri) pg.self_residues.insert(mod_floor(y - x, q));
        for (const auto& y : rj) pg.cross_residues.insert(mod_floor(y - x, q));
      }
    }
    all_self.insert(pg.self_residues.begin(), pg.self_residues.end());
    all_cross.insert(pg.cross_residues.begin(), pg.cross_residues.end());
    ev.generations.push_back(std::move(pg));
  }
  const bool self_ok = all_self.size() <= 1 && (all_self.empty() || *all_self.begin() == 0);
  if (all_cross.size() == 1) ev.residue = *all_cross.begin();
  if (self_ok && ev.residue && *ev.residue != 0) {
    v.value = Value::holds;
    v.reason = "copies of I are congruent mod " + q.str() + " and J sits at residue " + ev.residue->str() +
               " above them through generation " + std::to_string(resolution);
  } else {
    v.value = Value::inconclusive;
    v.reason = !self_ok ? "copies of I occur at mixed residues mod " + q.str()
                        : "I-to-J distances do not share one nonzero residue mod " + q.str();
  }
  v.parity = std::move(ev);
  return v;
}

}  // namespace rank1lab
