#include <doctest.h>

#include <random>

#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"

using namespace galdesc;

namespace {

FieldElement el(const FieldPtr& k, std::vector<long> c) {
  std::vector<RatFunc> v;
  for (long x : c) v.emplace_back(x);
  return FieldElement(k, v);
}

MPoly var(std::size_t n, std::size_t i) { return MPoly::variable(n, i); }
MPoly cst(std::size_t n, const RatFunc& c) { return MPoly::constant(n, c); }

// The displayed biquadratic quartic with integers a, b substituted.
MPoly displayed_quartic(long a, long b) {
  const std::size_t n = 4;
  MPoly x = var(n, 0), y = var(n, 1), z = var(n, 2), w = var(n, 3);
  auto c = [&](long v) { return cst(n, RatFunc(v)); };
  MPoly x2 = x * x, y2 = y * y, z2 = z * z, w2 = w * w;
  return x2 * x2 + c(a * a) * y2 * y2 + c(b * b) * z2 * z2 + c(a * a * b * b) * w2 * w2 -
         c(2 * a) * x2 * y2 - c(2 * b) * x2 * z2 - c(2 * a * b) * (x2 * w2 + y2 * z2) -
         c(2 * a * a * b) * y2 * w2 - c(2 * a * b * b) * z2 * w2 + c(8 * a * b) * x * y * z * w;
}

Integer product_of_places(const Integer& a, const Integer& b) {
  std::vector<Integer> places{Integer(0), Integer(2)};
  for (const auto& p : prime_factors(a)) places.push_back(p);
  for (const auto& p : prime_factors(b)) places.push_back(p);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  Integer prod = 1;
  for (const auto& p : places) prod *= hilbert_symbol(a, b, p);
  return prod;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("rational function arithmetic") {
  RatFunc t = RatFunc::t();
  RatFunc f = (t * t - RatFunc(1)) / (t - RatFunc(1));
  CHECK(f == t + RatFunc(1));
  CHECK((RatFunc(1) / t).pow(-2) == t * t);
  CHECK(parse_ratfunc("(t^2-1)/(t-1)") == t + RatFunc(1));
  CHECK(parse_ratfunc("3/6") == RatFunc(Rational(1, 2)));
  CHECK(parse_ratfunc("-2*t^3 + t") == RatFunc(-2) * t.pow(3) + t);
  CHECK(parse_ratfunc("t^2").to_string() == "t^2");
  CHECK(parse_ratfunc("(t+1)/(t-1)").to_string() == "(t + 1)/(t - 1)");
  CHECK_THROWS_AS(parse_ratfunc("t +"), Error);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), Error);
}

TEST_CASE("arithmetic in Q(i)") {
  FieldPtr k = gaussian_field();
  FieldElement a = el(k, {1, 1}), b = el(k, {1, -1});
  CHECK(a * b == el(k, {2, 0}));
  FieldElement i = FieldElement::generator(k);
  CHECK(i.inverse() == el(k, {0, -1}));
  CHECK(inv(i) == -i);
  CHECK(mul(a, inv(a)).is_one());
  CHECK(add(a, b) == el(k, {2, 0}));
  CHECK_THROWS_WITH_AS(FieldElement::zero(k).inverse(), doctest::Contains("DivisionByZero"), Error);
  CHECK_THROWS_WITH_AS(a * FieldElement::one(quadratic_field(2)), doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("arithmetic in Q(t)[u]/(u^3 - t)") {
  FieldPtr k = cubic_radical_t_field();
  FieldElement u = FieldElement::generator(k);
  CHECK(u * u.pow(2) == FieldElement::constant(k, RatFunc::t()));
  CHECK(u.norm() == RatFunc::t());
  FieldElement x = u + FieldElement::constant(k, RatFunc::t());
  CHECK((x * x.inverse()).is_one());
}

TEST_CASE("automorphisms are validated") {
  FieldPtr k = gaussian_field();
  Automorphism conj(k, el(k, {0, -1}));
  CHECK(conj.apply(el(k, {3, 5})) == el(k, {3, -5}));
  CHECK(conj.compose(conj).is_identity());
  CHECK_THROWS_WITH_AS(Automorphism(k, el(k, {1, 1})), doctest::Contains("NotAnAutomorphism"), Error);
}

TEST_CASE("norm forms of small extensions") {
  FieldPtr qi = gaussian_field();
  MPoly n = norm_form(qi, {FieldElement::one(qi), FieldElement::generator(qi)});
  MPoly expected = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
  CHECK(n == expected);
  CHECK(n.to_string({"x", "y"}) == "x^2 + y^2");

  FieldPtr c = cubic_radical_t_field();
  FieldElement u = FieldElement::generator(c);
  MPoly nc = norm_form(c, {FieldElement::one(c), u, u * u});
  RatFunc t = RatFunc::t();
  MPoly x = var(3, 0), y = var(3, 1), z = var(3, 2);
  MPoly paper = x * x * x + cst(3, t) * y * y * y + cst(3, t * t) * z * z * z - cst(3, RatFunc(3) * t) * x * y * z;
  CHECK(nc == paper);
  CHECK(nc.to_string({"x", "y", "z"}) == "x^3 - 3*t*x*y*z + t*y^3 + t^2*z^3");

  FieldPtr q = rationals_field();
  CHECK(norm_form(q, {FieldElement::one(q)}) == var(1, 0));
}

TEST_CASE("norm form rejects dependent families") {
  FieldPtr qi = gaussian_field();
  CHECK_THROWS_WITH_AS(norm_form(qi, {el(qi, {1, 1}), el(qi, {2, 2})}), doctest::Contains("NotABasis"), Error);
  CHECK_THROWS_AS(norm_form(qi, {el(qi, {1, 1})}), Error);
}

TEST_CASE("biquadratic norm form matches the displayed quartic") {
  for (auto [a, b] : {std::pair<long, long>{2, 3}, {13, 17}}) {
    auto basis = biquadratic_standard_basis(a, b);
    FieldPtr k = basis[0].field();
    CHECK(basis[1] * basis[1] == FieldElement::constant(k, RatFunc(a)));
    CHECK(basis[2] * basis[2] == FieldElement::constant(k, RatFunc(b)));
    CHECK(norm_form(k, basis) == displayed_quartic(a, b));
  }
}

TEST_CASE("biquadratic norm equals the product of Galois conjugates") {
  auto basis = biquadratic_standard_basis(2, 3);
  FieldPtr k = basis[0].field();
  MPoly n = norm_form(k, basis);
  std::vector<Automorphism> group;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      group.emplace_back(k, FieldElement::constant(k, RatFunc(s1)) * basis[1] +
                                FieldElement::constant(k, RatFunc(s2)) * basis[2]);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatFunc> pt;
    FieldElement xi = FieldElement::zero(k);
    for (int i = 0; i < 4; ++i) {
      Rational r(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
      r.canonicalize();
      pt.emplace_back(r);
      xi = xi + FieldElement::constant(k, RatFunc(r)) * basis[i];
    }
    FieldElement prod = FieldElement::one(k);
    for (const auto& g : group) prod = prod * g.apply(xi);
    CHECK(prod == FieldElement::constant(k, n.evaluate(pt)));
  }
}

TEST_CASE("norm form is multiplicative on specializations") {
  FieldPtr c = cubic_radical_t_field();
  FieldElement u = FieldElement::generator(c);
  std::vector<FieldElement> basis{FieldElement::one(c), u, u * u};
  MPoly n = norm_form(c, basis);
  std::mt19937 rng(8);
  auto rnd = [&] { return RatFunc(static_cast<long>(rng() % 7) - 3) + RatFunc(static_cast<long>(rng() % 3)) * RatFunc::t(); };
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<RatFunc> v{rnd(), rnd(), rnd()}, w{rnd(), rnd(), rnd()};
    FieldElement ev(c, v), ew(c, w);
    // Power basis and {1,u,u^2} coincide, so coordinates are the variables.
    std::vector<RatFunc> vw = (ev * ew).coeffs();
    CHECK(n.evaluate(v) * n.evaluate(w) == n.evaluate(vw));
  }
}

TEST_CASE("Hilbert symbols") {
  CHECK(hilbert_symbol(-1, -1, 0) == -1);
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(2, 5, 5) == -1);
  CHECK(hilbert_symbol(5, -1, 5) == 1);
  std::mt19937 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    long a = static_cast<long>(rng() % 121) - 60, b = static_cast<long>(rng() % 121) - 60;
    if (a == 0 || b == 0) continue;
    REQUIRE(product_of_places(a, b) == 1);
  }
}

TEST_CASE("quadratic norm membership examples") {
  CHECK(!quadratic_norm_membership(-1, -1).member);
  auto five = quadratic_norm_membership(-1, 5);
  CHECK(five.member);
  REQUIRE(five.witness);
  CHECK(five.witness->first == 2);
  CHECK(five.witness->second == 1);
  auto m = quadratic_norm_membership(2, -1);
  CHECK(m.member);
  REQUIRE(m.witness);
  CHECK(m.witness->first == 1);
  CHECK(m.witness->second == 1);
  auto frac = quadratic_norm_membership(-1, Rational(5, 4));
  CHECK(frac.member);
  REQUIRE(frac.witness);
  auto [x, y] = *frac.witness;
  CHECK(x * x + y * y == Rational(5, 4));
  CHECK(!quadratic_norm_membership(-1, 3).member);
  CHECK(!quadratic_norm_membership(3, -1).member);
}

TEST_CASE("quadratic norm membership rejects bad input") {
  CHECK_THROWS_WITH_AS(quadratic_norm_membership(12, 1), doctest::Contains("NotSquarefree"), Error);
  CHECK_THROWS_WITH_AS(quadratic_norm_membership(-4, 1), doctest::Contains("NotSquarefree"), Error);
  CHECK_THROWS_AS(quadratic_norm_membership(1, 2), Error);
  CHECK_THROWS_AS(quadratic_norm_membership(0, 2), Error);
  CHECK_THROWS_AS(quadratic_norm_membership(2, 0), Error);
}

TEST_CASE("membership never contradicts a found witness") {
  for (long d : {-1, 2, -2, 3, -3, 5, 6, -7}) {
    for (long a = -15; a <= 15; ++a) {
      if (a == 0) continue;
      bool found = false;
      for (long q = 1; q <= 20 && !found; ++q)
        for (long y = 0; y <= 60 && !found; ++y) {
          Integer x2 = Integer(a) * q * q + Integer(d) * y * y;
          if (x2 >= 0 && mpz_perfect_square_p(x2.get_mpz_t())) found = true;
        }
      auto res = quadratic_norm_membership(d, a);
      if (found) REQUIRE(res.member);
      if (res.member && res.witness) {
        auto [x, y] = *res.witness;
        REQUIRE(x * x - Rational(d) * y * y == Rational(a));
      }
    }
  }
}

}
