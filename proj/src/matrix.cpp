#include "galdesc/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "galdesc/error.hpp"

namespace galdesc {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw Error("DimensionMismatch", "ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows,
                               std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw Error("DimensionMismatch", "row length differs from column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_cols(const std::vector<std::vector<T>>& cols,
                               std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw Error("DimensionMismatch", "column length differs from row count");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::row_list() const {
  std::vector<std::vector<T>> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::col_list() const {
  std::vector<std::vector<T>> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
}

template <class T>
std::vector<T> Matrix<T>::apply(const std::vector<T>& v) const {
  if (v.size() != cols_) throw Error("DimensionMismatch", "vector length differs from column count");
  std::vector<T> out(rows_, T(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw Error("DimensionMismatch", "matrix product shapes");
  Matrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("DimensionMismatch", "matrix sum shapes");
  Matrix c = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

template <class T>
Matrix<T> Matrix<T>::operator-(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("DimensionMismatch", "matrix difference shapes");
  Matrix c = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

template <class T>
Matrix<T> Matrix<T>::operator-() const {
  Matrix c = *this;
  for (auto& x : c.data_) x = -x;
  return c;
}

template class Matrix<Integer>;
template class Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

namespace {
void check_len(std::size_t a, std::size_t b) {
  if (a != b) throw Error("DimensionMismatch", "vector lengths differ");
}
}  // namespace

Integer dot(const IntVector& a, const IntVector& b) {
  check_len(a.size(), b.size());
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  check_len(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
  check_len(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  check_len(a.size(), b.size());
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  check_len(a.size(), b.size());
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVector operator-(const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

IntVector scale(const Integer& c, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  check_len(a.size(), b.size());
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  check_len(a.size(), b.size());
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RatVector scale(const Rational& c, const RatVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

IntVector primitive_part(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive_part(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational y = v[i] * Rational(l);
    out[i] = y.get_num();
  }
  return primitive_part(out);
}

Integer max_abs(const IntVector& v) {
  Integer m = 0;
  for (const auto& x : v) {
    Integer a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw Error("DimensionMismatch", "determinant of non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<std::size_t> pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw Error("Singular", "inverse of non-square matrix");
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1))
    throw Error("Singular", "matrix is not invertible");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) throw Error("NotUnimodular", "matrix " + to_string(m) + " has |det| != 1");
  RatMatrix inv = inverse(to_rational(m));
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = inv(i, j).get_num();
  return out;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

namespace {
bool valid_integer_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace

Integer parse_integer(const std::string& s) {
  if (!valid_integer_text(s)) throw Error("BadNumber", "not an integer: '" + s + "'");
  std::string t = s[0] == '+' ? s.substr(1) : s;
  return Integer(t, 10);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw Error("BadNumber", "not a rational: '" + s + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw Error("BadNumber", "zero denominator in '" + s + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

}  // namespace galdesc
