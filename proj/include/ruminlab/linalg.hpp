#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ruminlab/rational.hpp"

namespace ruminlab {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major, rows of equal length

inline Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, Vec(cols, Rat(0))); }

inline Mat identity(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat c = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
  Vec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline Mat transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat t = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// In-place reduced row echelon form; returns the pivot columns.
/// Pivoting is first-nonzero (no magnitude concerns over Q), so the result is
/// the canonical RREF of the row space.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// in increasing free-column order (deterministic).
inline std::vector<Vec> kernel_basis(Mat m) {
  if (m.empty()) return {};
  std::size_t cols = m[0].size();
  std::vector<std::size_t> piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (std::size_t c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b; returns std::nullopt when inconsistent. Free variables are
/// set to zero (deterministic particular solution).
inline std::optional<Vec> solve(Mat m, Vec b) {
  if (m.empty()) return b.empty() ? std::optional<Vec>(Vec{}) : std::nullopt;
  std::size_t cols = m[0].size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  std::vector<std::size_t> piv = rref(m);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;  // pivot in RHS column
  Vec x(cols, Rat(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
  return x;
}

inline std::optional<Mat> inverse(Mat m) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  std::vector<std::size_t> piv = rref(m);
  if (piv.size() != n) return std::nullopt;
  Mat inv = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

inline Rat det(Mat m) {
  std::size_t n = m.size();
  Rat d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    Rat inv = 1 / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      Rat f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

}  // namespace ruminlab
