#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

/// Dense row-major rational matrix.
using Matrix = std::vector<Vec>;

struct Rref {
  Matrix rows;                      // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form. Pivot columns are the lexicographically first
/// independent columns, which several charts rely on.
inline Rref rref(Matrix m, std::size_t ncols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Scalar inv = 1 / m[r][c];
    for (std::size_t j = c; j < ncols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Scalar factor = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return {std::move(m), std::move(pivots)};
}

inline Rref rref(const Matrix& m) { return rref(m, m.empty() ? 0 : m.front().size()); }

inline std::size_t rank(const Matrix& m) { return rref(m).rows.size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline Matrix nullspace(const Matrix& m, std::size_t ncols) {
  Rref r = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nothing when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b, std::size_t ncols) {
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref r = rref(aug, ncols + 1);
  Vec x = zeros(ncols);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.pivots[i] == ncols) return std::nullopt;
    x[r.pivots[i]] = r.rows[i][ncols];
  }
  return x;
}

inline Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Scalar factor = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  return det;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n, zeros(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Rref r = rref(aug, 2 * n);
  if (r.rows.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j];
  return inv;
}

inline Matrix transpose(const Matrix& m, std::size_t ncols) {
  Matrix t(ncols, zeros(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  return t;
}

inline Vec mat_vec(const Matrix& m, const Vec& x) {
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], x);
  return out;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b, std::size_t bcols) {
  Matrix out(a.size(), zeros(bcols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < bcols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
inline long affine_dimension(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return diffs.empty() ? 0 : static_cast<long>(rank(diffs));
}

}  // namespace polyfunctor
