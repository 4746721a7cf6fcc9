#pragma once

// Integer matrices and the two normal forms used by the span routines:
// a column echelon form (with unimodular column transform) and the Smith
// normal form (with both transforms). All arithmetic is exact.

#include "rank1lab/bigint.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rank1lab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<BigInt> column(std::size_t c) const {
    std::vector<BigInt> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  // (col a, col b) <- (x*a + y*b, u*a + v*b); unimodular when xv - yu = +-1.
  void combine_cols(std::size_t a, std::size_t b, const BigInt& x, const BigInt& y, const BigInt& u,
                    const BigInt& v) {
    for (std::size_t r = 0; r < rows_; ++r) {
      BigInt na = x * (*this)(r, a) + y * (*this)(r, b);
      BigInt nb = u * (*this)(r, a) + v * (*this)(r, b);
      (*this)(r, a) = std::move(na);
      (*this)(r, b) = std::move(nb);
    }
  }
  void combine_rows(std::size_t a, std::size_t b, const BigInt& x, const BigInt& y, const BigInt& u,
                    const BigInt& v) {
    for (std::size_t c = 0; c < cols_; ++c) {
      BigInt na = x * (*this)(a, c) + y * (*this)(b, c);
      BigInt nb = u * (*this)(a, c) + v * (*this)(b, c);
      (*this)(a, c) = std::move(na);
      (*this)(b, c) = std::move(nb);
    }
  }

  std::vector<BigInt> operator*(const std::vector<BigInt>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<BigInt> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// A * transform = echelon, where `echelon` is lower column-echelon: column j
// (j < pivot_rows.size()) is zero above pivot_rows[j], has a positive entry
// there, and the pivot rows strictly increase. Remaining columns are zero and
// the matching columns of `transform` span the kernel of A.
struct ColumnEchelon {
  IntMatrix echelon;
  IntMatrix transform;
  std::vector<std::size_t> pivot_rows;
};

inline ColumnEchelon column_echelon(const IntMatrix& a) {
  ColumnEchelon out{a, IntMatrix::identity(a.cols()), {}};
  IntMatrix& h = out.echelon;
  IntMatrix& u = out.transform;
  std::size_t pc = 0;
  for (std::size_t r = 0; r < h.rows() && pc < h.cols(); ++r) {
    for (std::size_t j = pc + 1; j < h.cols(); ++j) {
      if (h(r, j) == 0) continue;
      if (h(r, pc) == 0) {
        h.swap_cols(pc, j);
        u.swap_cols(pc, j);
        continue;
      }
      const BigInt p = h(r, pc);
      const BigInt q = h(r, j);
      auto [g, x, y] = extended_gcd(p, q);
      const BigInt pu = p / g;
      const BigInt qu = q / g;
      // (pc, j) <- (x*pc + y*j, -q/g*pc + p/g*j); determinant x*p/g + y*q/g = 1.
      h.combine_cols(pc, j, x, y, -qu, pu);
      u.combine_cols(pc, j, x, y, -qu, pu);
    }
    if (h(r, pc) != 0) {
      if (h(r, pc) < 0) {
        h.negate_col(pc);
        u.negate_col(pc);
      }
      out.pivot_rows.push_back(r);
      ++pc;
    }
  }
  return out;
}

// Solves A x = b over the integers using a precomputed echelon form of A.
inline std::optional<std::vector<BigInt>> solve_integer(const ColumnEchelon& ce,
                                                        const std::vector<BigInt>& b) {
  const IntMatrix& h = ce.echelon;
  if (b.size() != h.rows()) throw std::invalid_argument("right-hand side has wrong length");
  std::vector<BigInt> residual = b;
  std::vector<BigInt> w(h.cols());
  std::size_t row = 0;
  for (std::size_t j = 0; j < ce.pivot_rows.size(); ++j) {
    const std::size_t pr = ce.pivot_rows[j];
    for (; row < pr; ++row)
      if (residual[row] != 0) return std::nullopt;
    if (residual[pr] % h(pr, j) != 0) return std::nullopt;
    w[j] = residual[pr] / h(pr, j);
    for (std::size_t r = pr; r < h.rows(); ++r) residual[r] -= w[j] * h(r, j);
    row = pr + 1;
  }
  for (; row < h.rows(); ++row)
    if (residual[row] != 0) return std::nullopt;
  return ce.transform * w;
}

// left * A * right = diagonal, diagonal entries d_0 | d_1 | ... non-negative.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;

  std::vector<BigInt> invariants() const {
    std::vector<BigInt> out;
    const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
    for (std::size_t i = 0; i < n; ++i)
      if (diagonal(i, i) != 0) out.push_back(diagonal(i, i));
    return out;
  }
};

inline SmithForm smith_form(const IntMatrix& a) {
  SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = s.diagonal;
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // pick the smallest non-zero entry in the trailing block as pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    d.swap_rows(t, best->first);
    s.left.swap_rows(t, best->first);
    d.swap_cols(t, best->second);
    s.right.swap_cols(t, best->second);

    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        if (d(i, t) % d(t, t) == 0) {
          const BigInt q = d(i, t) / d(t, t);
          d.add_row(i, t, -q);
          s.left.add_row(i, t, -q);
          continue;
        }
        auto [g, x, y] = extended_gcd(d(t, t), d(i, t));
        const BigInt a0 = d(t, t) / g, b0 = d(i, t) / g;
        d.combine_rows(t, i, x, y, -b0, a0);
        s.left.combine_rows(t, i, x, y, -b0, a0);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        if (d(t, j) % d(t, t) == 0) {
          const BigInt q = d(t, j) / d(t, t);
          d.add_col(j, t, -q);
          s.right.add_col(j, t, -q);
          continue;
        }
        auto [g, x, y] = extended_gcd(d(t, t), d(t, j));
        const BigInt a0 = d(t, t) / g, b0 = d(t, j) / g;
        d.combine_cols(t, j, x, y, -b0, a0);
        s.right.combine_cols(t, j, x, y, -b0, a0);
      }
      // column operations may have refilled column t
      bool column_clear = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (d(i, t) != 0) column_clear = false;
      if (!column_clear) continue;
      // the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            s.left.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.left.negate_row(t);
    }
  }
  return s;
}

}  // namespace rank1lab
