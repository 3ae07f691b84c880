#include "galdesc/normal_form.hpp"

#include "galdesc/error.hpp"

namespace galdesc {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid on column c among rows r.. until only row r is nonzero.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = -trunc_div(h(i, c), h(r, c));
        add_row_multiple(h, i, r, q);
        add_row_multiple(u, i, r, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = -floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, q);
      add_row_multiple(u, i, r, q);
    }
    ++r;
  }
  return {h, u};
}

SmithForm smith_normal_form(const IntMatrix& a) {
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  IntMatrix v = IntMatrix::identity(a.cols());
  const std::size_t m = s.rows(), n = s.cols();
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (pi == m || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = -trunc_div(s(i, t), s(t, t));
        add_row_multiple(s, i, t, q);
        add_row_multiple(u, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = -trunc_div(s(t, j), s(t, t));
        add_col_multiple(s, j, t, q);
        add_col_multiple(v, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the block; otherwise fold a row in.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row_multiple(s, t, bad, Integer(1));
      add_row_multiple(u, t, bad, Integer(1));
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return {s, u, v};
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (f.s(i, i) != 0) d.push_back(f.s(i, i));
  return d;
}

IntVector reduce_modulo_hnf(const IntVector& v, const IntMatrix& h) {
  if (v.size() != h.cols()) throw Error("DimensionMismatch", "reduce_modulo_hnf");
  IntVector x = v;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) break;
    Integer q = floor_div(x[c], h(r, c));
    for (std::size_t j = 0; j < h.cols(); ++j) x[j] -= q * h(r, j);
  }
  return x;
}

std::vector<IntVector> hnf_basis(const std::vector<IntVector>& rows, std::size_t n) {
  IntMatrix a = IntMatrix::from_rows(rows, n);
  IntMatrix h = hermite_normal_form(a).h;
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    IntVector r = h.row(i);
    if (is_zero(r)) break;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace galdesc
