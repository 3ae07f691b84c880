#include <doctest.h>

#include <functional>
#include <random>

#include "galdesc/error.hpp"
#include "galdesc/lattice.hpp"
#include "galdesc/normal_form.hpp"
#include "test_support.hpp"

using namespace galdesc;
using testsupport::cofactor_det;
using testsupport::iv;

namespace {

bool is_row_hermite(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && c <= last_pivot) return false;
    if (h(i, c) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, c) < 0 || h(k, c) >= h(i, c)) return false;
    last_pivot = c;
  }
  return true;
}

// Brute-force k-th determinantal divisor: gcd of all k x k minors.
Integer minor_gcd(const IntMatrix& a, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows, cols;
  auto choose = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  for (const auto& rs : choose(a.rows(), k))
    for (const auto& cs : choose(a.cols(), k)) {
      IntMatrix m(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rs[i], cs[j]);
      Integer d = cofactor_det(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("hermite form of a 2x2 example") {
  IntMatrix a{{2, 4}, {6, 8}};
  HermiteForm f = hermite_normal_form(a);
  CHECK(f.h == IntMatrix{{2, 0}, {0, 4}});
  CHECK(f.u * a == f.h);
  CHECK(abs(cofactor_det(f.u)) == 1);
}

TEST_CASE("hermite form of identity and zero") {
  HermiteForm f = hermite_normal_form(IntMatrix::identity(3));
  CHECK(f.h == IntMatrix::identity(3));
  CHECK(f.u == IntMatrix::identity(3));
  CHECK(hermite_normal_form(IntMatrix{{0, 0}}).h == IntMatrix{{0, 0}});
}

TEST_CASE("hermite form property on random matrices") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = testsupport::random_matrix(rng, r, c, -9, 9);
    HermiteForm f = hermite_normal_form(a);
    REQUIRE(f.u * a == f.h);
    REQUIRE(abs(cofactor_det(f.u)) == 1);
    REQUIRE(is_row_hermite(f.h));
  }
}

TEST_CASE("smith form examples") {
  SmithForm f = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  CHECK(f.s == IntMatrix{{2, 0}, {0, 4}});
  CHECK(smith_normal_form(IntMatrix::identity(2)).s == IntMatrix::identity(2));
  CHECK(smith_normal_form(IntMatrix{{6}}).s == IntMatrix{{6}});
  CHECK(smith_normal_form(IntMatrix{{-6}}).s == IntMatrix{{6}});
}

TEST_CASE("smith form agrees with determinantal divisors") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IntMatrix a = testsupport::random_matrix(rng, r, c, -12, 12);
    SmithForm f = smith_normal_form(a);
    REQUIRE(f.u * a * f.v == f.s);
    REQUIRE(abs(cofactor_det(f.u)) == 1);
    REQUIRE(abs(cofactor_det(f.v)) == 1);
    Integer prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j) REQUIRE(f.s(i, j) == 0);
      REQUIRE(f.s(k - 1, k - 1) >= 0);
      if (k < std::min(r, c) && f.s(k - 1, k - 1) != 0) REQUIRE(f.s(k, k) % f.s(k - 1, k - 1) == 0);
      prod *= f.s(k - 1, k - 1);
      REQUIRE(prod == minor_gcd(a, k));
    }
  }
}

TEST_CASE("saturation") {
  CHECK(saturate_sublattice({iv({2, 0})}) == std::vector<IntVector>{iv({1, 0})});
  CHECK(saturate_sublattice({iv({1, 1})}) == std::vector<IntVector>{iv({1, 1})});
  auto b = saturate_sublattice({iv({2, 4}), iv({6, 8})});
  REQUIRE(b.size() == 2);
  IntMatrix m = IntMatrix::from_rows(b, 2);
  CHECK(abs(cofactor_det(m)) == 1);
  CHECK(elementary_divisors(m) == std::vector<Integer>{1, 1});
}

TEST_CASE("saturation of a rank-deficient family") {
  auto b = saturate_sublattice({iv({2, 2, 4}), iv({3, 3, 6}), iv({0, 0, 0})});
  CHECK(b == std::vector<IntVector>{iv({1, 1, 2})});
}

TEST_CASE("quotient of the diagonal embedding") {
  LatticeMap f(IntMatrix{{1}, {1}});
  ExactSequence seq = quotient_with_section(f);
  CHECK(seq.p().matrix() == IntMatrix{{-1, 1}});
  CHECK(seq.section().matrix() == IntMatrix{{0}, {1}});
  CHECK(seq.p().compose(seq.f()).matrix().is_zero());
  CHECK(seq.p().compose(seq.section()).matrix() == IntMatrix::identity(1));
  CHECK(seq.retraction().matrix() == IntMatrix{{1, 0}});
}

TEST_CASE("quotient of identity is zero-rank") {
  ExactSequence seq = quotient_with_section(LatticeMap::identity(2));
  CHECK(seq.p().target_rank() == 0);
  CHECK(seq.p().matrix().rows() == 0);
  CHECK(seq.section().matrix().cols() == 0);
}

TEST_CASE("quotient rejects non-saturated image") {
  LatticeMap f(IntMatrix{{2}, {0}});
  CHECK_THROWS_WITH_AS(quotient_with_section(f), doctest::Contains("NotSaturated"), Error);
  try {
    quotient_with_section(f);
  } catch (const Error& e) {
    CHECK(e.code() == "NotSaturated");
  }
}

TEST_CASE("quotient property on random saturated embeddings") {
  std::mt19937 rng(11);
  int tested = 0;
  while (tested < 60) {
    std::size_t np = 2 + rng() % 3, n = 1 + rng() % (np - 1);
    IntMatrix fm = testsupport::random_matrix(rng, np, n, -4, 4);
    LatticeMap f(fm);
    if (!f.is_injective() || !f.has_saturated_image()) continue;
    ++tested;
    ExactSequence seq = quotient_with_section(f);
    const auto& P = seq.p().matrix();
    const auto& S = seq.section().matrix();
    const auto& R = seq.retraction().matrix();
    REQUIRE((P * fm).is_zero());
    REQUIRE(P * S == IntMatrix::identity(np - n));
    REQUIRE(R * fm == IntMatrix::identity(n));
    REQUIRE(fm * R + S * P == IntMatrix::identity(np));
    REQUIRE(seq.p().is_surjective());
    IntMatrix k = testsupport::random_matrix(rng, n, np - n, -3, 3);
    ExactSequence shifted = seq.with_shifted_section(k);
    REQUIRE(shifted.f().matrix() * shifted.retraction().matrix() +
                shifted.section().matrix() * P ==
            IntMatrix::identity(np));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_integer("+7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_integer("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
}

}
