#pragma once

// Brute-force stacking. Columns are built generation by generation exactly
// as the cutting-and-stacking recipe prescribes, and measure questions are
// answered by counting levels. Nothing here uses the closed-form copy
// arithmetic of tower.hpp; the two are meant to be checked against each other.

#include "rank1lab/abelian.hpp"
#include "rank1lab/bigint.hpp"
#include "rank1lab/tower.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rank1lab {

class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct StackLimits {
  // (color, generation) cells tracked while closing color windows.
  std::size_t max_color_cells = 1'000'000;
  // Levels materialized in any single generation.
  std::size_t max_levels = 30'000'000;
};

template <class Payload>
struct ColumnStack {
  std::size_t generation = 0;
  std::vector<GroupElement> colors;  // sorted
  std::vector<std::vector<Payload>> columns;

  std::optional<std::size_t> find(const GroupElement& g) const {
    auto it = std::lower_bound(colors.begin(), colors.end(), g);
    if (it == colors.end() || !(*it == g)) return std::nullopt;
    return static_cast<std::size_t>(it - colors.begin());
  }
  const std::vector<Payload>& column(const GroupElement& g) const {
    auto i = find(g);
    if (!i) throw std::out_of_range("column " + g.to_string() + " was not built");
    return columns[*i];
  }
};

namespace detail {

inline std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline void check_generation(const Construction& c, std::size_t m) {
  if (auto hz = c.schedule().horizon(); hz && m > *hz)
    throw std::out_of_range("generation " + std::to_string(m) + " is beyond the schedule horizon " +
                            std::to_string(*hz));
}

// needed[k] = colors of generation (base + k) columns required to build the
// top colors.
inline std::vector<std::vector<GroupElement>> needed_colors(const Construction& c, std::size_t base,
                                                            std::size_t top,
                                                            std::vector<GroupElement> top_colors,
                                                            const StackLimits& limits) {
  std::vector<std::vector<GroupElement>> needed(top - base + 1);
  needed[top - base] = sorted_unique(std::move(top_colors));
  std::size_t cells = needed[top - base].size();
  for (std::size_t m = top; m > base; --m) {
    std::vector<GroupElement> below;
    const GammaElement& e = c.step(m - 1);
    for (const auto& g : needed[m - base])
      for (std::size_t i = 0; i < e.gamma(); ++i) below.push_back(add(c.group(), g, e.label(i)));
    needed[m - 1 - base] = sorted_unique(std::move(below));
    cells += needed[m - 1 - base].size();
    if (cells > limits.max_color_cells)
      throw GuardError("color closure exceeds " + std::to_string(limits.max_color_cells) + " cells");
  }
  return needed;
}

}  // namespace detail

// Colors of generation-`top` columns containing copies of the
// generation-`level_generation` columns with the given colors.
inline std::vector<GroupElement> covering_colors(const Construction& c, std::size_t level_generation,
                                                 std::vector<GroupElement> colors, std::size_t top,
                                                 const StackLimits& limits = {}) {
  if (top < level_generation) throw std::invalid_argument("covering generation is below the level generation");
  detail::check_generation(c, top);
  std::vector<GroupElement> cur = detail::sorted_unique(std::move(colors));
  std::size_t cells = cur.size();
  for (std::size_t m = level_generation; m < top; ++m) {
    std::vector<GroupElement> next;
    const GammaElement& e = c.step(m);
    for (const auto& g : cur)
      for (std::size_t i = 0; i < e.gamma(); ++i) next.push_back(subtract(c.group(), g, e.label(i)));
    cur = detail::sorted_unique(std::move(next));
    cells += cur.size();
    if (cells > limits.max_color_cells)
      throw GuardError("color closure exceeds " + std::to_string(limits.max_color_cells) + " cells");
  }
  return cur;
}

// Generic stacking engine.
//   base(color, height)            payload of a base level
//   spacer(m, color, piece, j)     payload of the j-th spacer on piece `piece` added at cut m
//   relabel(payload, m, piece)     payload of a level copied into piece `piece` at cut m
//   inject(stack)                  called once per built generation (base included)
template <class Payload, class BaseFn, class SpacerFn, class RelabelFn, class InjectFn>
ColumnStack<Payload> stack_columns(const Construction& c, std::size_t base, std::size_t top,
                                   std::vector<GroupElement> top_colors, BaseFn&& base_fn,
                                   SpacerFn&& spacer_fn, RelabelFn&& relabel, InjectFn&& inject,
                                   const StackLimits& limits = {}) {
  if (top < base) throw std::invalid_argument("top generation is below the base generation");
  detail::check_generation(c, top);
  for (const auto& g : top_colors)
    if (g.size() != c.group().dimension()) throw std::invalid_argument("window color has wrong dimension");
  const auto needed = detail::needed_colors(c, base, top, std::move(top_colors), limits);

  auto level_count = [&](std::size_t m, std::size_t ncolors) {
    const BigInt total = c.height(m) * ncolors;
    if (total > limits.max_levels)
      throw GuardError("generation " + std::to_string(m) + " needs " + total.str() +
                       " levels, over the limit of " + std::to_string(limits.max_levels));
    return static_cast<std::size_t>(to_int64(c.height(m)));
  };

  ColumnStack<Payload> cur;
  cur.generation = base;
  cur.colors = needed[0];
  {
    const std::size_t h = level_count(base, cur.colors.size());
    for (const auto& g : cur.colors) {
      std::vector<Payload> col;
      col.reserve(h);
      for (std::size_t j = 0; j < h; ++j) col.push_back(base_fn(g, static_cast<std::int64_t>(j)));
      cur.columns.push_back(std::move(col));
    }
  }
  inject(cur);

  for (std::size_t m = base; m < top; ++m) {
    const GammaElement& e = c.step(m);
    ColumnStack<Payload> next;
    next.generation = m + 1;
    next.colors = needed[m + 1 - base];
    const std::size_t h = level_count(m + 1, next.colors.size());
    for (const auto& g : next.colors) {
      std::vector<Payload> col;
      col.reserve(h);
      for (std::size_t i = 0; i < e.gamma(); ++i) {
        const auto& src = cur.column(add(c.group(), g, e.label(i)));
        for (const auto& p : src) col.push_back(relabel(p, m, i));
        const std::int64_t s = to_int64(e.spacer(i));
        for (std::int64_t j = 0; j < s; ++j) col.push_back(spacer_fn(m, g, i, j));
      }
      next.columns.push_back(std::move(col));
    }
    cur = std::move(next);
    inject(cur);
  }
  return cur;
}

// What a generation-M level is: a copy of a base level (reached through
// `path`) or a spacer added at cut `born`.
struct LevelDescriptor {
  enum class Kind : std::uint8_t { copy, spacer };
  Kind kind = Kind::copy;
  std::uint32_t base_color = 0;  // index into ExplicitColumnSet::base_colors
  std::uint32_t born = 0;        // spacer: cut generation
  std::uint32_t piece = 0;       // spacer: piece it sits on
  std::int64_t index = 0;        // copy: base height; spacer: position among its spacers
  std::uint64_t path = 0;        // mixed-radix digit code, digit i weighted by prod_{j<i} gamma_{base+j}
};

struct ExplicitColumnSet {
  std::size_t base_generation = 0;
  std::size_t generation = 0;
  std::vector<GroupElement> base_colors;
  std::vector<std::size_t> radices;  // gamma_{base}, ..., gamma_{generation-1}
  ColumnStack<LevelDescriptor> stack;

  const std::vector<GroupElement>& colors() const { return stack.colors; }
  const std::vector<LevelDescriptor>& column(const GroupElement& g) const { return stack.column(g); }

  std::vector<std::size_t> digits(const LevelDescriptor& d) const {
    std::vector<std::size_t> out(radices.size());
    std::uint64_t code = d.path;
    for (std::size_t i = 0; i < radices.size(); ++i) {
      out[i] = static_cast<std::size_t>(code % radices[i]);
      code /= radices[i];
    }
    return out;
  }
};

// Generation-M columns built from generation-`base` columns. Without a
// window, finite groups build every color and infinite groups build the
// columns that contain copies of C_{base,0}.
inline ExplicitColumnSet build_columns(const Construction& c, std::size_t base, std::size_t top,
                                       std::optional<std::vector<GroupElement>> window = std::nullopt,
                                       const StackLimits& limits = {}) {
  std::vector<GroupElement> top_colors;
  if (window) {
    top_colors = *window;
  } else if (c.group().is_finite()) {
    top_colors = c.group().elements();
  } else {
    top_colors = covering_colors(c, base, {c.group().zero()}, top, limits);
  }

  ExplicitColumnSet out;
  out.base_generation = base;
  out.generation = top;
  std::vector<std::uint64_t> weight;
  std::uint64_t w = 1;
  for (std::size_t m = base; m < top; ++m) {
    out.radices.push_back(c.gamma(m));
    weight.push_back(w);
    if (w > (std::uint64_t{1} << 62) / c.gamma(m))
      throw GuardError("copy paths over " + std::to_string(top - base) + " generations do not fit in 64 bits");
    w *= c.gamma(m);
  }

  out.stack = stack_columns<LevelDescriptor>(
      c, base, top, std::move(top_colors),
      [&](const GroupElement&, std::int64_t j) {
        LevelDescriptor d;
        d.index = j;
        return d;
      },
      [&](std::size_t m, const GroupElement&, std::size_t piece, std::int64_t j) {
        LevelDescriptor d;
        d.kind = LevelDescriptor::Kind::spacer;
        d.born = static_cast<std::uint32_t>(m);
        d.piece = static_cast<std::uint32_t>(piece);
        d.index = j;
        return d;
      },
      [&](LevelDescriptor d, std::size_t m, std::size_t piece) {
        d.path += piece * weight[m - base];
        return d;
      },
      [&](ColumnStack<LevelDescriptor>& s) {
        if (s.generation != base) return;
        out.base_colors = s.colors;
        for (std::size_t k = 0; k < s.columns.size(); ++k)
          for (auto& d : s.columns[k]) d.base_color = static_cast<std::uint32_t>(k);
      },
      limits);
  return out;
}

// A finite union of pairwise disjoint levels.
struct LevelSet {
  std::vector<LevelRef> levels;

  static LevelSet of(LevelRef l) { return LevelSet{{std::move(l)}}; }
  bool empty() const { return levels.empty(); }
  std::size_t max_generation() const {
    std::size_t g = 0;
    for (const auto& l : levels) g = std::max(g, l.generation);
    return g;
  }
  std::size_t min_generation() const {
    std::size_t g = levels.empty() ? 0 : levels.front().generation;
    for (const auto& l : levels) g = std::min(g, l.generation);
    return g;
  }
  Rational mass(const Construction& c) const {
    Rational m = 0;
    for (const auto& l : levels) m += c.level_mass(l.generation);
    return m;
  }
};

// Exact lower bound `resolved` and the mass `unresolved` that finite
// resolution could not place; the true value lies in [resolved, resolved + unresolved].
struct MeasureEstimate {
  Rational resolved = 0;
  Rational unresolved = 0;
  friend bool operator==(const MeasureEstimate&, const MeasureEstimate&) = default;
};

namespace detail {

using Mask = std::uint8_t;

// Marks copies of each level set (bit k for sets[k]) in generation-M columns
// covering the first set.
inline ColumnStack<Mask> mark_levels(const Construction& c, const std::vector<const LevelSet*>& sets,
                                     std::size_t resolution, const StackLimits& limits) {
  const LevelSet& primary = *sets.front();
  std::size_t base = primary.min_generation();
  for (const auto* s : sets)
    if (!s->empty()) base = std::min(base, s->min_generation());
  for (const auto* s : sets)
    if (s->max_generation() > resolution)
      throw std::invalid_argument("level generation exceeds the resolution generation");
  for (const auto* s : sets)
    for (const auto& l : s->levels) {
      if (l.color.size() != c.group().dimension()) throw std::invalid_argument("level color has wrong dimension");
      if (l.height < 0 || BigInt(l.height) >= c.height(l.generation))
        throw std::out_of_range("level " + l.to_string() + " is outside its column");
    }

  std::vector<GroupElement> top;
  for (const auto& l : primary.levels) {
    auto cov = covering_colors(c, l.generation, {l.color}, resolution, limits);
    top.insert(top.end(), cov.begin(), cov.end());
  }

  return stack_columns<Mask>(
      c, base, resolution, std::move(top), [](const GroupElement&, std::int64_t) { return Mask{0}; },
      [](std::size_t, const GroupElement&, std::size_t, std::int64_t) { return Mask{0}; },
      [](Mask m, std::size_t, std::size_t) { return m; },
      [&](ColumnStack<Mask>& s) {
        for (std::size_t k = 0; k < sets.size(); ++k) {
          const Mask bit = static_cast<Mask>(1u << k);
          for (const auto& l : sets[k]->levels) {
            if (l.generation != s.generation) continue;
            auto idx = s.find(l.color);
            if (!idx) continue;
            Mask& cell = s.columns[*idx][static_cast<std::size_t>(l.height)];
            if (cell & bit) throw std::invalid_argument("level set contains overlapping levels");
            cell |= bit;
          }
        }
      },
      limits);
}

}  // namespace detail

// Estimate of mu(T^n A  cap  B) at resolution generation M.
inline MeasureEstimate measure_intersection(const Construction& c, std::int64_t n, const LevelSet& a,
                                            const LevelSet& b, std::size_t resolution,
                                            const StackLimits& limits = {}) {
  if (a.empty()) return {};
  const auto marks = detail::mark_levels(c, {&a, &b}, resolution, limits);
  BigInt hit = 0, escaped = 0;
  for (const auto& col : marks.columns) {
    const auto h = static_cast<std::int64_t>(col.size());
    for (std::int64_t p = 0; p < h; ++p) {
      if (!(col[static_cast<std::size_t>(p)] & 1u)) continue;
      const std::int64_t q = p + n;
      if (q < 0 || q >= h)
        ++escaped;
      else if (col[static_cast<std::size_t>(q)] & 2u)
        ++hit;
    }
  }
  const Rational mass = c.level_mass(resolution);
  MeasureEstimate est{Rational(hit) * mass, Rational(escaped) * mass};
  const Rational room = b.mass(c) - est.resolved;
  if (est.unresolved > room) est.unresolved = room;
  return est;
}

struct RecurrenceWitness {
  std::int64_t n = 0;
  MeasureEstimate measure;
};

// Smallest n in [1, n_max] with resolved mu(A cap T^n A cap ... cap T^{dn} A) > 0.
inline std::optional<RecurrenceWitness> recurrence_witness(const Construction& c, const LevelSet& a,
                                                           std::size_t d, std::int64_t n_max,
                                                           std::size_t resolution,
                                                           const StackLimits& limits = {}) {
  if (d < 1) throw std::invalid_argument("recurrence depth must be at least 1");
  if (a.empty()) return std::nullopt;
  const auto marks = detail::mark_levels(c, {&a}, resolution, limits);
  std::vector<std::vector<std::int64_t>> hits(marks.columns.size());
  for (std::size_t k = 0; k < marks.columns.size(); ++k)
    for (std::size_t p = 0; p < marks.columns[k].size(); ++p)
      if (marks.columns[k][p]) hits[k].push_back(static_cast<std::int64_t>(p));

  const Rational mass = c.level_mass(resolution);
  const auto dd = static_cast<std::int64_t>(d);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    BigInt good = 0, open = 0;
    for (std::size_t k = 0; k < hits.size(); ++k) {
      const auto& col = marks.columns[k];
      const auto h = static_cast<std::int64_t>(col.size());
      for (std::int64_t p : hits[k]) {
        if (p + dd * n >= h) {
          ++open;
          continue;
        }
        bool all = true;
        for (std::int64_t j = 1; j <= dd && all; ++j) all = col[static_cast<std::size_t>(p + j * n)] != 0;
        if (all) ++good;
      }
    }
    if (good > 0) {
      MeasureEstimate est{Rational(good) * mass, Rational(open) * mass};
      const Rational room = a.mass(c) - est.resolved;
      if (est.unresolved > room) est.unresolved = room;
      return RecurrenceWitness{n, est};
    }
  }
  return std::nullopt;
}

struct LevelPair {
  LevelRef from;
  LevelRef to;
};

// Smallest n in [1, n_max] with resolved mu(T^{k_i n} I_i  cap  J_i) > 0 for every i.
inline std::optional<std::int64_t> product_orbit_witness(const Construction& c,
                                                         const std::vector<LevelPair>& pairs,
                                                         const std::vector<std::int64_t>& powers,
                                                         std::int64_t n_max, std::size_t resolution,
                                                         const StackLimits& limits = {}) {
  if (pairs.size() != powers.size()) throw std::invalid_argument("one power per level pair is required");
  if (pairs.empty()) throw std::invalid_argument("product needs at least one factor");
  for (auto k : powers)
    if (k == 0) throw std::invalid_argument("product powers must be nonzero");

  struct Factor {
    ColumnStack<detail::Mask> marks;
    std::vector<std::vector<std::int64_t>> from;
  };
  std::vector<Factor> factors;
  for (const auto& pr : pairs) {
    const LevelSet i = LevelSet::of(pr.from), j = LevelSet::of(pr.to);
    Factor f{detail::mark_levels(c, {&i, &j}, resolution, limits), {}};
    f.from.resize(f.marks.columns.size());
    for (std::size_t k = 0; k < f.marks.columns.size(); ++k)
      for (std::size_t p = 0; p < f.marks.columns[k].size(); ++p)
        if (f.marks.columns[k][p] & 1u) f.from[k].push_back(static_cast<std::int64_t>(p));
    factors.push_back(std::move(f));
  }

  for (std::int64_t n = 1; n <= n_max; ++n) {
    bool all = true;
    for (std::size_t i = 0; i < factors.size() && all; ++i) {
      const std::int64_t shift = powers[i] * n;
      bool found = false;
      for (std::size_t k = 0; k < factors[i].from.size() && !found; ++k) {
        const auto& col = factors[i].marks.columns[k];
        const auto h = static_cast<std::int64_t>(col.size());
        for (std::int64_t p : factors[i].from[k]) {
          const std::int64_t q = p + shift;
          if (q >= 0 && q < h && (col[static_cast<std::size_t>(q)] & 2u)) {
            found = true;
            break;
          }
        }
      }
      all = found;
    }
    if (all) return n;
  }
  return std::nullopt;
}

// Positions of the copies of `level` inside each generation-M column that
// contains one, keyed by column color.
inline std::vector<std::pair<GroupElement, std::vector<std::int64_t>>> copy_positions(
    const Construction& c, const LevelRef& level, std::size_t resolution, const StackLimits& limits = {}) {
  const LevelSet s = LevelSet::of(level);
  const auto marks = detail::mark_levels(c, {&s}, resolution, limits);
  std::vector<std::pair<GroupElement, std::vector<std::int64_t>>> out;
  for (std::size_t k = 0; k < marks.columns.size(); ++k) {
    std::vector<std::int64_t> pos;
    for (std::size_t p = 0; p < marks.columns[k].size(); ++p)
      if (marks.columns[k][p]) pos.push_back(static_cast<std::int64_t>(p));
    if (!pos.empty()) out.emplace_back(marks.colors[k], std::move(pos));
  }
  return out;
}

}  // namespace rank1lab
