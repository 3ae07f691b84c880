#pragma once

#include <random>
#include <vector>

#include "galdesc/matrix.hpp"

namespace testsupport {

using galdesc::Integer;
using galdesc::IntMatrix;
using galdesc::IntVector;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Determinant by cofactor expansion; independent of the library's elimination.
inline Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, kk++) = m(i, k);
      }
    Integer term = m(0, j) * cofactor_det(minor);
    if (j % 2) d -= term; else d += term;
  }
  return d;
}

}  // namespace testsupport
