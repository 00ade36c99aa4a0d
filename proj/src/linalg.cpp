#include "dvr/linalg.hpp"

namespace dvr {

Matrix zero_matrix(Field f, size_t rows, size_t cols) { return Matrix(rows, Row(cols, f.zero())); }

std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> piv;
  if (m.empty()) return piv;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Scalar inv = m[r][c].inverse();
    for (size_t j = c; j < cols; ++j)
      if (!m[r][j].is_zero()) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Row> nullspace(Matrix m, size_t cols) {
  std::vector<Row> out;
  if (m.empty()) {
    return out;
  }
  Field f = m[0][0].field();
  auto piv = rref(m);
  std::vector<int> is_piv(cols, -1);
  for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
  for (size_t c = 0; c < cols; ++c) {
    if (is_piv[c] >= 0) continue;
    Row v(cols, f.zero());
    v[c] = f.one();
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][c];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Row> solve(const Matrix& m, const Row& b) {
  if (m.empty()) return std::nullopt;
  size_t cols = m[0].size();
  Field f = b[0].field();
  Matrix a = m;
  for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  Row x(cols, f.zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a[i][cols];
  return x;
}

Scalar determinant(Matrix m) {
  size_t n = m.size();
  Field f = m[0][0].field();
  Scalar det = f.one();
  for (size_t c = 0; c < n; ++c) {
    size_t sel = n;
    for (size_t i = c; i < n; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == n) return f.zero();
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar fct = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= fct * m[c][j];
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  size_t n = m.size();
  Field f = m[0][0].field();
  Matrix a = m;
  for (size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, f.zero());
    a[i][n + i] = f.one();
  }
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix r(n);
  for (size_t i = 0; i < n; ++i) r[i].assign(a[i].begin() + n, a[i].end());
  return r;
}

}  // namespace dvr
