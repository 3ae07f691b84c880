#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace galdesc {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix. Zero rows or zero columns are legal.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols);
  static Matrix from_cols(const std::vector<std::vector<T>>& cols,
                          std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  std::vector<std::vector<T>> row_list() const;
  std::vector<std::vector<T>> col_list() const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  std::vector<T> apply(const std::vector<T>& v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  // Lexicographic on (rows, cols, entries); used for canonical ordering.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator-() const;

  const std::vector<T>& entries() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const IntVector& a, const RatVector& b);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector scale(const Integer& c, const IntVector& v);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector scale(const Rational& c, const RatVector& v);

bool is_zero(const IntVector& v);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
bool is_primitive(const IntVector& v);
// Divides by the content; zero stays zero.
IntVector primitive_part(const IntVector& v);
// Positive multiple of v that is a primitive integer vector.
IntVector primitive_part(const RatVector& v);
Integer max_abs(const IntVector& v);
IntVector unit_vector(std::size_t n, std::size_t i);
IntVector zero_vector(std::size_t n);

// Exact Gaussian-elimination helpers over Q.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);
// Right kernel basis over Q (columns vectors x with m x = 0).
std::vector<RatVector> nullspace(const RatMatrix& m);
// Inverse over Q; throws Error("Singular") if not invertible.
RatMatrix inverse(const RatMatrix& m);
// Inverse of a unimodular integer matrix; throws Error("NotUnimodular").
IntMatrix inverse_unimodular(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);
std::string to_string(const IntMatrix& m);

// Parses decimal integers and "p/q" rationals; throws Error("BadNumber").
Integer parse_integer(const std::string& s);
Rational parse_rational(const std::string& s);

}  // namespace galdesc
