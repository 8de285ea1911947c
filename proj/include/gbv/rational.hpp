#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gbv {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
// Accepts "p", "p/q", "-p/q"; throws ValidationError otherwise.
Rational parse_rational(const std::string& s);

Integer factorial(unsigned n);

// Dense exact matrices; rows of equal length.
using Matrix = std::vector<std::vector<Rational>>;

Matrix identity_matrix(std::size_t n);
Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matadd(const Matrix& a, const Matrix& b);
Matrix matscale(const Matrix& a, const Rational& s);
bool is_zero_matrix(const Matrix& a);
std::size_t matrix_rank(Matrix a);
Rational determinant(Matrix a);
// Throws ValidationError when singular.
Matrix inverse(const Matrix& a);
bool is_symmetric(const Matrix& a);
bool is_antisymmetric(const Matrix& a);
// Leading principal minors all positive.
bool is_positive_definite(const Matrix& a);

}  // namespace gbv
