#pragma once

#include <vector>

#include "galdesc/matrix.hpp"

namespace galdesc {

struct HermiteForm {
  IntMatrix h;  // row Hermite form of the input
  IntMatrix u;  // unimodular, u * a == h
};

struct SmithForm {
  IntMatrix s;  // diagonal, s(i,i) divides s(i+1,i+1), entries >= 0
  IntMatrix u;  // unimodular row transform
  IntMatrix v;  // unimodular column transform, u * a * v == s
};

// Row-style Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows are moved to the bottom.
HermiteForm hermite_normal_form(const IntMatrix& a);

SmithForm smith_normal_form(const IntMatrix& a);

// Nonzero diagonal entries of the Smith form.
std::vector<Integer> elementary_divisors(const IntMatrix& a);

// Reduces v modulo the row lattice of an HNF matrix h, leaving every pivot
// coordinate in [0, pivot). The result is the canonical coset representative.
IntVector reduce_modulo_hnf(const IntVector& v, const IntMatrix& h);

// Nonzero rows of the HNF of the given row vectors.
std::vector<IntVector> hnf_basis(const std::vector<IntVector>& rows, std::size_t n);

}  // namespace galdesc
