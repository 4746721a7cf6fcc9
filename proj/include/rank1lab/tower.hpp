#pragma once

// Cutting-and-stacking data: cutting recipes, schedules, constructions, and
// the closed-form copy arithmetic (colors, distances, t/c vectors).

#include "rank1lab/abelian.hpp"
#include "rank1lab/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rank1lab {

// One cutting recipe: cut into `gamma` pieces, put spacers[i] spacers on
// piece i, and route piece i to the column shifted by labels[i].
class GammaElement {
 public:
  GammaElement(std::vector<BigInt> spacers, std::vector<GroupElement> labels)
      : spacers_(std::move(spacers)), labels_(std::move(labels)) {
    if (spacers_.size() < 2) throw std::invalid_argument("a cutting recipe needs at least 2 pieces");
    if (labels_.size() != spacers_.size())
      throw std::invalid_argument("cutting recipe has " + std::to_string(spacers_.size()) +
                                  " spacer counts but " + std::to_string(labels_.size()) + " labels");
    prefix_.resize(spacers_.size() + 1);
    for (std::size_t i = 0; i < spacers_.size(); ++i) {
      if (spacers_[i] < 0) throw std::invalid_argument("negative spacer count");
      prefix_[i + 1] = prefix_[i] + spacers_[i];
    }
  }

  // Recipe with no group labels (G trivial).
  static GammaElement plain(std::vector<BigInt> spacers) {
    std::vector<GroupElement> labels(spacers.size(), GroupSpec::trivial().zero());
    return GammaElement(std::move(spacers), std::move(labels));
  }

  std::size_t gamma() const { return spacers_.size(); }
  const BigInt& spacer(std::size_t i) const { return spacers_.at(i); }
  const GroupElement& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<BigInt>& spacers() const { return spacers_; }
  const std::vector<GroupElement>& labels() const { return labels_; }
  // Spacers on pieces 0..i-1.
  const BigInt& spacers_before(std::size_t i) const { return prefix_.at(i); }
  const BigInt& spacer_total() const { return prefix_.back(); }

  friend bool operator==(const GammaElement& a, const GammaElement& b) {
    return a.spacers_ == b.spacers_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<BigInt> spacers_;
  std::vector<GroupElement> labels_;
  std::vector<BigInt> prefix_;
};

enum class ScheduleKind { constant, periodic, prefix };

inline std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::periodic: return "periodic";
    case ScheduleKind::prefix: return "prefix";
  }
  return "?";
}

// Which recipe is applied at each generation. Constant and periodic
// schedules repeat `sequence` forever; prefix schedules stop after it.
struct Schedule {
  ScheduleKind kind = ScheduleKind::constant;
  std::vector<std::size_t> sequence;

  bool decision_eligible() const { return kind != ScheduleKind::prefix; }
  std::size_t period() const { return sequence.size(); }

  // Largest generation whose columns are defined, if bounded.
  std::optional<std::size_t> horizon() const {
    if (kind == ScheduleKind::prefix) return sequence.size();
    return std::nullopt;
  }

  std::size_t at(std::size_t n) const {
    if (kind == ScheduleKind::prefix) {
      if (n >= sequence.size())
        throw std::out_of_range("generation " + std::to_string(n) + " is beyond the schedule prefix of length " +
                                std::to_string(sequence.size()));
      return sequence[n];
    }
    return sequence[n % sequence.size()];
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct NamedGamma {
  std::string name;
  GammaElement element;
  friend bool operator==(const NamedGamma&, const NamedGamma&) = default;
};

// The data (G, recipes, schedule) defining one transformation. Immutable;
// heights are memoized in a cache shared between copies.
class Construction {
 public:
  Construction(std::string name, GroupSpec group, std::vector<NamedGamma> alphabet, Schedule schedule)
      : name_(std::move(name)),
        group_(std::move(group)),
        alphabet_(std::move(alphabet)),
        schedule_(std::move(schedule)),
        memo_(std::make_shared<HeightMemo>()) {
    if (alphabet_.empty()) throw std::invalid_argument("construction has no cutting recipes");
    if (schedule_.sequence.empty()) throw std::invalid_argument("schedule is empty");
    if (schedule_.kind == ScheduleKind::constant && schedule_.sequence.size() != 1)
      throw std::invalid_argument("a constant schedule names exactly one recipe");
    for (auto idx : schedule_.sequence)
      if (idx >= alphabet_.size()) throw std::invalid_argument("schedule refers to an unknown recipe");
    for (const auto& ng : alphabet_)
      for (const auto& l : ng.element.labels())
        if (l.size() != group_.dimension() || group_.element(l.coords()) != l)
          throw std::invalid_argument("label " + l.to_string() + " of recipe '" + ng.name +
                                      "' is not an element of " + group_.to_string());
  }

  const std::string& name() const { return name_; }
  const GroupSpec& group() const { return group_; }
  const std::vector<NamedGamma>& alphabet() const { return alphabet_; }
  const Schedule& schedule() const { return schedule_; }

  const GammaElement& step(std::size_t n) const { return alphabet_[schedule_.at(n)].element; }
  std::size_t gamma(std::size_t n) const { return step(n).gamma(); }
  const BigInt& spacer(std::size_t n, std::size_t i) const { return step(n).spacer(i); }
  const GroupElement& label(std::size_t n, std::size_t i) const { return step(n).label(i); }

  // h_0 = 1, h_{n+1} = gamma_n h_n + sum_j s(n, j).
  BigInt height(std::size_t n) const {
    if (auto hz = schedule_.horizon(); hz && n > *hz)
      throw std::out_of_range("generation " + std::to_string(n) + " is beyond the schedule horizon " +
                              std::to_string(*hz));
    std::lock_guard lock(memo_->mutex);
    auto& h = memo_->heights;
    if (h.empty()) h.push_back(1);
    while (h.size() <= n) {
      const std::size_t k = h.size() - 1;
      const GammaElement& e = step(k);
      h.push_back(h[k] * e.gamma() + e.spacer_total());
    }
    return h[n];
  }

  // Product of gamma_i for i < n; a generation-n level has mass 1 / this.
  BigInt cut_product(std::size_t n) const {
    BigInt p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= gamma(i);
    return p;
  }

  Rational level_mass(std::size_t n) const { return Rational(BigInt(1), cut_product(n)); }

 private:
  struct HeightMemo {
    std::mutex mutex;
    std::vector<BigInt> heights;
  };

  std::string name_;
  GroupSpec group_;
  std::vector<NamedGamma> alphabet_;
  Schedule schedule_;
  std::shared_ptr<HeightMemo> memo_;
};

// P_{N+n,g}[a_0..a_{n-1}]: the copy of a generation-N column reached by
// digit a_i at the generation N+i cut, inside C_{N+n,g}.
struct CopyAddress {
  std::size_t base_generation = 0;
  GroupElement color;
  std::vector<std::size_t> digits;
};

// Level `height` of column C_{generation,color}.
struct LevelRef {
  std::size_t generation = 0;
  GroupElement color;
  std::int64_t height = 0;

  friend bool operator==(const LevelRef&, const LevelRef&) = default;
  std::string to_string() const {
    return std::to_string(generation) + ":" + color.to_string() + ":" + std::to_string(height);
  }
};

namespace detail {

inline void check_digits(const Construction& c, std::size_t n0, const std::vector<std::size_t>& digits) {
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] >= c.gamma(n0 + i))
      throw std::out_of_range("digit " + std::to_string(digits[i]) + " at generation " +
                              std::to_string(n0 + i) + " exceeds gamma - 1 = " +
                              std::to_string(c.gamma(n0 + i) - 1));
}

}  // namespace detail

inline BigInt height(const Construction& c, std::size_t n) { return c.height(n); }

// Color of the generation-N column that the address is a copy of.
inline GroupElement copy_color(const Construction& c, const CopyAddress& addr) {
  detail::check_digits(c, addr.base_generation, addr.digits);
  const GroupSpec& g = c.group();
  GroupElement acc = g.element(addr.color.coords());
  for (std::size_t i = 0; i < addr.digits.size(); ++i)
    acc = add(g, acc, c.label(addr.base_generation + i, addr.digits[i]));
  return acc;
}

// k with T^k(P[a]) = P[b] inside one generation-(N+n) column.
inline BigInt copy_distance(const Construction& c, std::size_t n0, const std::vector<std::size_t>& a,
                            const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("digit lists differ in length");
  detail::check_digits(c, n0, a);
  detail::check_digits(c, n0, b);
  BigInt k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const GammaElement& e = c.step(n0 + i);
    k += c.height(n0 + i) * (BigInt(b[i]) - BigInt(a[i])) + e.spacers_before(b[i]) - e.spacers_before(a[i]);
  }
  return k;
}

// Distance across a carry: (gamma_N-1, ..., gamma_{N+m}-1, a) -> (0, ..., 0, a+1).
inline BigInt consecutive_copy_distance(const Construction& c, std::size_t n0, std::size_t m, std::size_t a) {
  if (a + 2 > c.gamma(n0 + m + 1))
    throw std::out_of_range("carry digit " + std::to_string(a) + " must be at most gamma - 2 = " +
                            std::to_string(c.gamma(n0 + m + 1) - 2));
  BigInt k = c.height(n0) + c.spacer(n0 + m + 1, a);
  for (std::size_t i = 0; i <= m; ++i) k += c.spacer(n0 + i, c.gamma(n0 + i) - 1);
  return k;
}

// (distance, color change) between two copies in the same column.
inline std::pair<BigInt, GroupElement> copy_delta(const Construction& c, std::size_t n0,
                                                  const GroupElement& color,
                                                  const std::vector<std::size_t>& a,
                                                  const std::vector<std::size_t>& b) {
  BigInt k = copy_distance(c, n0, a, b);
  const GroupElement ca = copy_color(c, {n0, color, a});
  const GroupElement cb = copy_color(c, {n0, color, b});
  return {std::move(k), subtract(c.group(), cb, ca)};
}

// t_{N,i} = (s(N,i) + h_N, g(N,i+1) - g(N,i)).
inline ExtendedVector t_vector(const Construction& c, std::size_t n, std::size_t i) {
  if (i + 2 > c.gamma(n)) throw std::out_of_range("t-vector index out of range");
  return {{c.spacer(n, i) + c.height(n)}, subtract(c.group(), c.label(n, i + 1), c.label(n, i))};
}

// c_{M,i} = (s(M+1,i) + s(M,gamma_M-1) - s(M,0),
//            g(M+1,i+1) - g(M+1,i) + 2g(M,0) - g(M,gamma_M-1) - g(M,1)).
inline ExtendedVector c_vector(const Construction& c, std::size_t m, std::size_t i) {
  if (i + 2 > c.gamma(m + 1)) throw std::out_of_range("c-vector index out of range");
  const GroupSpec& g = c.group();
  const std::size_t last = c.gamma(m) - 1;
  BigInt k = c.spacer(m + 1, i) + c.spacer(m, last) - c.spacer(m, 0);
  GroupElement h = subtract(g, c.label(m + 1, i + 1), c.label(m + 1, i));
  h = add(g, h, scale(g, 2, c.label(m, 0)));
  h = subtract(g, h, c.label(m, last));
  h = subtract(g, h, c.label(m, 1));
  return {{std::move(k)}, std::move(h)};
}

}  // namespace rank1lab
