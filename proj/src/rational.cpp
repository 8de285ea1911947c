#include "gbv/rational.hpp"

#include "gbv/errors.hpp"

#include <regex>

namespace gbv {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(^\s*-?\d+(/\d+)?\s*$)");
  if (!std::regex_match(s, re)) throw ValidationError("malformed rational '" + s + "'");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer den(s.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
  }
  Rational r(s);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t = zero_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  Matrix c = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Matrix matadd(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

Matrix matscale(const Matrix& a, const Rational& s) {
  Matrix c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

bool is_zero_matrix(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

std::size_t matrix_rank(Matrix a) {
  std::size_t rank = 0;
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

Rational determinant(Matrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  std::size_t n = a.size();
  Matrix m = a;
  Matrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw ValidationError("matrix is not square");
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw ValidationError("matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    Rational p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

bool is_symmetric(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) return false;
  }
  return true;
}

bool is_antisymmetric(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j <= i; ++j)
      if (a[i][j] != -a[j][i]) return false;
  }
  return true;
}

bool is_positive_definite(const Matrix& a) {
  if (!is_symmetric(a)) return false;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    Matrix minor(k);
    for (std::size_t i = 0; i < k; ++i) minor[i].assign(a[i].begin(), a[i].begin() + k);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

}  // namespace gbv
