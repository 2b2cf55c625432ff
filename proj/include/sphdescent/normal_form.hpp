#pragma once

// Hermite and Smith normal forms, plus the exact rational elimination the
// rest of the library leans on (rank, kernels, solving, inverses).

#include <optional>
#include <utility>

#include "sphdescent/arith.hpp"

namespace sphdescent {

struct HermiteResult {
  IntMatrix h;  // row Hermite normal form
  IntMatrix u;  // unimodular, u * m == h
};

struct SmithResult {
  IntMatrix s;  // diagonal, s(i,i) | s(i+1,i+1), all >= 0
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix v;  // unimodular, cols x cols; u * m * v == s
};

namespace detail {

// rows a, b of both matrices <- [[p, q], [r, t]] * (row a, row b)
inline void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                         const Integer& r, const Integer& t) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(a, j), y = m(b, j);
    m(a, j) = p * x + q * y;
    m(b, j) = r * x + t * y;
  }
}

inline void combine_cols(IntMatrix& m, std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                         const Integer& r, const Integer& t) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer x = m(i, a), y = m(i, b);
    m(i, a) = p * x + q * y;
    m(i, b) = r * x + t * y;
  }
}

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

inline void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

/// Row Hermite normal form: pivots positive, entries above a pivot reduced
/// into [0, pivot), zero rows last.
inline HermiteResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < h.rows() && h(pivot, c) == 0) ++pivot;
    if (pivot == h.rows()) continue;
    h.swap_rows(r, pivot);
    u.swap_rows(r, pivot);
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Integer s, t;
      Integer a = h(r, c), b = h(i, c);
      Integer g = extended_gcd(a, b, s, t);
      Integer ag = a / g, bg = b / g;
      detail::combine_rows(h, r, i, s, t, -bg, ag);
      detail::combine_rows(u, r, i, s, t, -bg, ag);
    }
    if (h(r, c) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer k = floor_div(h(i, c), h(r, c));
      detail::add_row_multiple(h, i, r, -k);
      detail::add_row_multiple(u, i, r, -k);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Smith normal form with transforms.
inline SmithResult snf(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second)))) best = {{i, j}};
      if (!best) break;
      s.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      s.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        Integer k = floor_div(s(i, t), s(t, t));
        detail::add_row_multiple(s, i, t, -k);
        detail::add_row_multiple(u, i, t, -k);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        Integer k = floor_div(s(t, j), s(t, t));
        detail::add_col_multiple(s, j, t, -k);
        detail::add_col_multiple(v, j, t, -k);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < s.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      detail::add_row_multiple(s, t, *offending, 1);
      detail::add_row_multiple(u, t, *offending, 1);
    }
    if (s(t, t) < 0) {
      detail::negate_row(s, t);
      detail::negate_row(u, t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

/// Diagonal of an SNF, length min(rows, cols).
inline IntVector invariant_factors(const IntMatrix& m) {
  auto res = snf(m);
  IntVector d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(res.s(i, i));
  return d;
}

// ---------------------------------------------------------------------------
// rational elimination

struct RowEchelon {
  RatMatrix r;                     // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RowEchelon rref(RatMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational k = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= k * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }
inline std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

/// Basis of {x : a x = 0} (rows of the result), RREF-derived, so canonical.
inline RatMatrix right_nullspace(const RatMatrix& a) {
  auto [r, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix out(0, a.cols());
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(a.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r(i, f);
    out.append_row(x);
  }
  return out;
}

inline Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
  RatMatrix m = a;
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational k = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= k * m(c, j);
    }
  }
  return det;
}

inline Integer determinant(const IntMatrix& a) { return numerator(determinant(to_rational(a))); }

inline bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  Integer d = determinant(a);
  return d == 1 || d == -1;
}

/// Throws std::domain_error for singular input.
inline RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto [r, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

/// Inverse of a unimodular integer matrix; throws if not unimodular.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!is_unimodular(a)) throw std::domain_error("matrix is not unimodular");
  return to_integer(inverse(to_rational(a)));
}

/// Coefficients c with c * basis == v (basis rows independent); nullopt if v
/// is outside the rational row span.
inline std::optional<RatVector> solve_in_row_span(const RatMatrix& basis, const RatVector& v) {
  if (v.size() != basis.cols()) throw DimensionError("solve_in_row_span: length mismatch");
  const std::size_t k = basis.rows(), n = basis.cols();
  // Solve basis^T c = v via the augmented system.
  RatMatrix aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(j, i);
    aug(i, k) = v[i];
  }
  auto [r, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  RatVector c(k, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = r(i, k);
  return c;
}

/// Integer coefficients c with c * basis == v, if any.
inline std::optional<IntVector> solve_integral(const IntMatrix& basis, const IntVector& v) {
  auto c = solve_in_row_span(to_rational(basis), to_rational(v));
  if (!c || !is_integral(*c)) return std::nullopt;
  return to_integer(*c);
}

/// Saturated basis (rows) of {x in Z^rows : x * m == 0}.
inline IntMatrix integer_left_kernel(const IntMatrix& m) {
  auto [h, u] = hnf(m);
  IntMatrix out(0, m.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (zero) out.append_row(u.row(i));
  }
  if (m.cols() == 0) return IntMatrix::identity(m.rows());
  return out;
}

/// Saturated basis (rows) of {x in Z^cols : m x == 0}.
inline IntMatrix integer_right_kernel(const IntMatrix& m) { return integer_left_kernel(m.transpose()); }

}  // namespace sphdescent
