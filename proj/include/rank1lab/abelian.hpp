#pragma once

// Finitely generated abelian groups Z^r + Z/d_1 + ... + Z/d_k, their elements,
// and integer-span questions in Z^m x G.

#include "rank1lab/bigint.hpp"
#include "rank1lab/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rank1lab {

class GroupElement;

class GroupSpec {
 public:
  GroupSpec() = default;
  GroupSpec(std::size_t free_rank, std::vector<BigInt> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (const auto& d : torsion_)
      if (d < 2) throw std::invalid_argument("torsion modulus " + d.str() + " is less than 2");
  }

  static GroupSpec trivial() { return {}; }
  static GroupSpec integers(std::size_t rank = 1) { return GroupSpec(rank, {}); }
  static GroupSpec cyclic(const BigInt& d) { return GroupSpec(0, {d}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }
  std::size_t dimension() const { return free_rank_ + torsion_.size(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return dimension() == 0; }

  // Modulus of coordinate i, or 0 for a free coordinate.
  BigInt modulus(std::size_t i) const {
    return i < free_rank_ ? BigInt(0) : torsion_.at(i - free_rank_);
  }

  BigInt order() const {
    if (!is_finite()) throw std::domain_error("group has infinite order");
    BigInt n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  GroupElement element(std::vector<BigInt> coords) const;
  GroupElement zero() const;
  GroupElement basis(std::size_t i) const;
  // Every element; only for finite groups of order <= limit.
  std::vector<GroupElement> elements(const BigInt& limit = 1'000'000) const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

class GroupElement {
 public:
  GroupElement() = default;

  const std::vector<BigInt>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const BigInt& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const BigInt& v) { return v == 0; });
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].str();
    }
    return s + ")";
  }

 private:
  friend class GroupSpec;
  explicit GroupElement(std::vector<BigInt> c) : coords_(std::move(c)) {}
  std::vector<BigInt> coords_;
};

inline GroupElement GroupSpec::element(std::vector<BigInt> coords) const {
  if (coords.size() != dimension())
    throw std::invalid_argument("element has " + std::to_string(coords.size()) +
                                " coordinates, group " + to_string() + " needs " +
                                std::to_string(dimension()));
  for (std::size_t i = free_rank_; i < coords.size(); ++i)
    coords[i] = mod_floor(coords[i], torsion_[i - free_rank_]);
  return GroupElement(std::move(coords));
}

inline GroupElement GroupSpec::zero() const { return GroupElement(std::vector<BigInt>(dimension())); }

inline GroupElement GroupSpec::basis(std::size_t i) const {
  std::vector<BigInt> c(dimension());
  c.at(i) = 1;
  return element(std::move(c));
}

inline std::vector<GroupElement> GroupSpec::elements(const BigInt& limit) const {
  if (order() > limit) throw std::length_error("group " + to_string() + " is too large to enumerate");
  std::vector<GroupElement> out;
  std::vector<BigInt> c(dimension());
  for (;;) {
    out.push_back(GroupElement(c));
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++c[i] < torsion_[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (c.empty()) return out;
  }
}

inline std::string GroupSpec::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (std::size_t i = 0; i < free_rank_; ++i) s += (s.empty() ? "" : "+") + std::string("Z");
  for (const auto& d : torsion_) s += (s.empty() ? "" : "+") + std::string("Z/") + d.str();
  return s;
}

// Group law. Both operands must come from `spec`.
inline GroupElement add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  if (a.size() != spec.dimension() || b.size() != spec.dimension())
    throw std::invalid_argument("group element dimension mismatch");
  std::vector<BigInt> c(a.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return spec.element(std::move(c));
}

inline GroupElement negate(const GroupSpec& spec, const GroupElement& a) {
  std::vector<BigInt> c(a.coords());
  for (auto& v : c) v = -v;
  return spec.element(std::move(c));
}

inline GroupElement subtract(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return add(spec, a, negate(spec, b));
}

inline GroupElement scale(const GroupSpec& spec, const BigInt& k, const GroupElement& a) {
  std::vector<BigInt> c(a.coords());
  for (auto& v : c) v *= k;
  return spec.element(std::move(c));
}

// An element of Z^m x G. `ints` holds the free integer slots; in Z x G x Z
// vectors slot 0 is the leading integer and slot 1 the trailing one.
struct ExtendedVector {
  std::vector<BigInt> ints;
  GroupElement group;

  friend bool operator==(const ExtendedVector&, const ExtendedVector&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < ints.size(); ++i) s += (i ? "," : "") + ints[i].str();
    s += ";";
    for (std::size_t i = 0; i < group.size(); ++i) s += (i ? "," : "") + group[i].str();
    return s + ")";
  }
};

inline ExtendedVector make_extended(const GroupSpec& spec, std::vector<BigInt> ints,
                                    std::vector<BigInt> group) {
  return {std::move(ints), spec.element(std::move(group))};
}

inline ExtendedVector add(const GroupSpec& spec, const ExtendedVector& a, const ExtendedVector& b) {
  if (a.ints.size() != b.ints.size()) throw std::invalid_argument("extended vector shape mismatch");
  ExtendedVector out{a.ints, add(spec, a.group, b.group)};
  for (std::size_t i = 0; i < out.ints.size(); ++i) out.ints[i] += b.ints[i];
  return out;
}

inline ExtendedVector subtract(const GroupSpec& spec, const ExtendedVector& a,
                               const ExtendedVector& b) {
  if (a.ints.size() != b.ints.size()) throw std::invalid_argument("extended vector shape mismatch");
  ExtendedVector out{a.ints, subtract(spec, a.group, b.group)};
  for (std::size_t i = 0; i < out.ints.size(); ++i) out.ints[i] -= b.ints[i];
  return out;
}

inline ExtendedVector scale(const GroupSpec& spec, const BigInt& k, const ExtendedVector& a) {
  ExtendedVector out{a.ints, scale(spec, k, a.group)};
  for (auto& v : out.ints) v *= k;
  return out;
}

// Integer coefficients, one per generator, reproducing a span target.
struct SpanCertificate {
  std::vector<BigInt> coefficients;
  friend bool operator==(const SpanCertificate&, const SpanCertificate&) = default;
};

inline ExtendedVector combine(const GroupSpec& spec, const std::vector<ExtendedVector>& gens,
                              const std::vector<BigInt>& coefficients, std::size_t int_slots) {
  if (coefficients.size() != gens.size())
    throw std::invalid_argument("certificate length does not match generator count");
  ExtendedVector acc{std::vector<BigInt>(int_slots), spec.zero()};
  for (std::size_t i = 0; i < gens.size(); ++i) acc = add(spec, acc, scale(spec, coefficients[i], gens[i]));
  return acc;
}

inline bool verify_certificate(const GroupSpec& spec, const std::vector<ExtendedVector>& gens,
                               const ExtendedVector& target, const SpanCertificate& cert) {
  return combine(spec, gens, cert.coefficients, target.ints.size()) == target;
}

namespace detail {

inline void check_shape(const GroupSpec& spec, const ExtendedVector& v, std::size_t int_slots) {
  if (v.ints.size() != int_slots)
    throw std::invalid_argument("vector " + v.to_string() + " has " + std::to_string(v.ints.size()) +
                                " integer slots, expected " + std::to_string(int_slots));
  if (v.group.size() != spec.dimension())
    throw std::invalid_argument("vector " + v.to_string() + " does not belong to group " +
                                spec.to_string());
}

// Columns: generators, then one relation column per torsion coordinate.
// Rows: integer slots followed by group coordinates.
inline IntMatrix relation_matrix(const GroupSpec& spec, const std::vector<ExtendedVector>& gens,
                                 std::size_t int_slots) {
  const std::size_t rows = int_slots + spec.dimension();
  const std::size_t t = spec.torsion().size();
  IntMatrix a(rows, gens.size() + t);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t r = 0; r < int_slots; ++r) a(r, j) = gens[j].ints[r];
    for (std::size_t r = 0; r < spec.dimension(); ++r) a(int_slots + r, j) = gens[j].group[r];
  }
  for (std::size_t k = 0; k < t; ++k)
    a(int_slots + spec.free_rank() + k, gens.size() + k) = spec.torsion()[k];
  return a;
}

inline std::vector<BigInt> flatten(const ExtendedVector& v) {
  std::vector<BigInt> out(v.ints);
  out.insert(out.end(), v.group.coords().begin(), v.group.coords().end());
  return out;
}

inline BigInt norm2(const std::vector<BigInt>& v) {
  BigInt s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

// Greedy size reduction of a solution against kernel directions.
inline void size_reduce(std::vector<BigInt>& x, const std::vector<std::vector<BigInt>>& kernel) {
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (const auto& k : kernel) {
      const BigInt kk = norm2(k);
      if (kk == 0) continue;
      BigInt dot = 0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * k[i];
      const BigInt t = round_div(dot, kk);
      if (t == 0) continue;
      std::vector<BigInt> y(x);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] -= t * k[i];
      if (norm2(y) < norm2(x)) {
        x = std::move(y);
        changed = true;
      }
    }
    if (!changed) return;
  }
}

}  // namespace detail

// True iff the integer span of `gens` is all of G.
inline bool generates_group(const GroupSpec& spec, const std::vector<GroupElement>& gens) {
  std::vector<ExtendedVector> vs;
  vs.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.size() != spec.dimension())
      throw std::invalid_argument("generator " + g.to_string() + " does not belong to group " +
                                  spec.to_string());
    vs.push_back({{}, g});
  }
  if (spec.dimension() == 0) return true;
  const SmithForm snf = smith_form(detail::relation_matrix(spec, vs, 0));
  const auto inv = snf.invariants();
  if (inv.size() != spec.dimension()) return false;
  return std::all_of(inv.begin(), inv.end(), [](const BigInt& d) { return d == 1; });
}

// Some integer combination of `gens` equal to `target`, if one exists.
inline std::optional<SpanCertificate> span_contains(const GroupSpec& spec,
                                                    const std::vector<ExtendedVector>& gens,
                                                    const ExtendedVector& target) {
  const std::size_t slots = target.ints.size();
  detail::check_shape(spec, target, slots);
  for (const auto& g : gens) detail::check_shape(spec, g, slots);

  const IntMatrix a = detail::relation_matrix(spec, gens, slots);
  const ColumnEchelon ce = column_echelon(a);
  auto z = solve_integer(ce, detail::flatten(target));
  if (!z) return std::nullopt;

  std::vector<BigInt> x(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(gens.size()));
  std::vector<std::vector<BigInt>> kernel;
  for (std::size_t j = ce.pivot_rows.size(); j < a.cols(); ++j) {
    auto col = ce.transform.column(j);
    col.resize(gens.size());
    kernel.push_back(std::move(col));
  }
  detail::size_reduce(x, kernel);
  return SpanCertificate{std::move(x)};
}

// Smallest D > 0 with D * e_slot in the span (all other coordinates zero),
// or 0 when the span meets that line only at the origin.
inline BigInt span_meet_line(const GroupSpec& spec, const std::vector<ExtendedVector>& gens,
                             std::size_t slot) {
  if (gens.empty()) return 0;
  const std::size_t slots = gens.front().ints.size();
  for (const auto& g : gens) detail::check_shape(spec, g, slots);
  if (slot >= slots) throw std::out_of_range("slot " + std::to_string(slot) + " is not an integer slot");

  IntMatrix a = detail::relation_matrix(spec, gens, slots);
  // move the chosen slot to the last row
  for (std::size_t r = slot; r + 1 < a.rows(); ++r) a.swap_rows(r, r + 1);
  const ColumnEchelon ce = column_echelon(a);
  if (ce.pivot_rows.empty() || ce.pivot_rows.back() != a.rows() - 1) return 0;
  return ce.echelon(a.rows() - 1, ce.pivot_rows.size() - 1);
}

}  // namespace rank1lab
