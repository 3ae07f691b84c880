#include <doctest.h>

#include <random>
#include <functional>
#include <map>
#include <set>

#include "galdesc/ahdata.hpp"
#include "galdesc/error.hpp"
#include "test_support.hpp"

using namespace galdesc;
using testsupport::iv;

namespace {

GroupPtr c2() {
  static auto g = std::make_shared<const FiniteGroup>(std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}},
                                                      std::vector<std::string>{"id", "gamma"});
  return g;
}

GroupPtr c4() {
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = (a + b) % 4;
  return std::make_shared<const FiniteGroup>(t, std::vector<std::string>{"e", "g", "g2", "g3"});
}

Automorphism conj() {
  auto f = gaussian_field();
  return Automorphism(f, -FieldElement::generator(f));
}

GaloisPresentation gaussian_conj() {
  return GaloisPresentation(gaussian_field(), c2(), {Automorphism::identity(gaussian_field()), conj()});
}

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ConeRec ray_cone(std::size_t n, std::vector<IntVector> gens) { return ConeRec::from_generators(n, gens); }

// D(m) = m D0 - m Dinf on P^1, with Delta_0 = [1, oo) and Delta_inf = [-1, oo).
PPDivisor p1_divisor(bool swap) {
  BaseY base = BaseY::projective_line(GaloisPresentation::trivial(rationals_field(), c2()), swap);
  ConeRec tail = ray_cone(1, {iv({1})});
  return PPDivisor(base, tail,
                   {{"D0", PolyhedronRec::from_vertices(1, {rv({1})}, tail)},
                    {"Dinf", PolyhedronRec::from_vertices(1, {rv({-1})}, tail)}});
}

LatticeAction trivial_c2_action(std::size_t n) {
  return LatticeAction(c2(), {IntMatrix::identity(n), IntMatrix::identity(n)}, Convention::Homomorphism);
}

MonomialFunction mono(const FieldPtr& f, long c, IntVector u) {
  return {FieldElement::constant(f, RatFunc(c)), std::move(u)};
}

CocycleH p1_cocycle(long power) {
  auto q = rationals_field();
  CocycleH h;
  h.images = {{mono(q, 1, iv({0}))}, {mono(q, 1, iv({power}))}};
  return h;
}

LatticeAction s1_action() {
  return LatticeAction(c2(), {IntMatrix{{1}}, IntMatrix{{-1}}}, Convention::Homomorphism);
}

CocycleH s1_cocycle(const FieldElement& value) {
  CocycleH h;
  h.images = {{MonomialFunction{FieldElement::one(value.field()), {}}}, {MonomialFunction{value, {}}}};
  return h;
}

PPDivisor s1_divisor() {
  // Weight cone is all of M = Z, so the tail is the origin.
  return PPDivisor(BaseY::point(gaussian_conj()), ConeRec::zero(1), {});
}

}  // namespace

TEST_SUITE("ahdata") {
  TEST_CASE("evaluation on the projective line") {
    PPDivisor d = p1_divisor(false);
    auto v = ppdiv_evaluate(d, iv({2}));
    CHECK(v.at("D0") == 2);
    CHECK(v.at("Dinf") == -2);
    CHECK(ppdiv_evaluate(d, iv({0})).coeffs().empty());
    CHECK_THROWS_WITH_AS(ppdiv_evaluate(d, iv({-1})), doctest::Contains("OutsideWeightCone"), Error);
    CHECK_FALSE(definitely_improper_on_p1(d));
  }

  TEST_CASE("construction errors") {
    BaseY base = BaseY::projective_line(GaloisPresentation::trivial(rationals_field(), c2()), false);
    ConeRec tail = ray_cone(1, {iv({1})});
    CHECK_THROWS_WITH_AS(PPDivisor(base, tail, {{"D7", PolyhedronRec::from_vertices(1, {rv({1})}, tail)}}),
                         doctest::Contains("UnknownLabel"), Error);
    CHECK_THROWS_WITH_AS(
        PPDivisor(base, tail, {{"D0", PolyhedronRec::from_vertices(1, {rv({1})}, ConeRec::zero(1))}}),
        doctest::Contains("TailMismatch"), Error);
    auto f = gaussian_field();
    CHECK_THROWS_WITH_AS(GaloisPresentation(f, c2(), {conj(), conj()}), doctest::Contains("GaloisNotClosed"),
                         Error);
    CHECK_THROWS_WITH_AS(GaloisPresentation(f, c4(), {Automorphism::identity(f), conj(), conj(), conj()}),
                         doctest::Contains("GaloisNotClosed"), Error);
    GaloisPresentation ok(f, c4(), {Automorphism::identity(f), conj(), Automorphism::identity(f), conj()});
    CHECK(ok.apply(1, FieldElement::generator(f)) == -FieldElement::generator(f));
  }

  TEST_CASE("hilbert bases against brute force") {
    auto hb = hilbert_basis(ray_cone(2, {iv({1, 0}), iv({1, 2})}));
    CHECK(hb == std::vector<IntVector>{iv({1, 0}), iv({1, 1}), iv({1, 2})});
    auto quad = hilbert_basis(ray_cone(2, {iv({1, 0}), iv({0, 1})}));
    CHECK(quad == std::vector<IntVector>{iv({0, 1}), iv({1, 0})});
    // Every lattice point in a box is a nonnegative integer combination of
    // the basis; checked by dynamic programming over the box.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      IntVector a = iv({e(rng), e(rng)}), b = iv({e(rng), e(rng)});
      if (determinant(IntMatrix::from_cols({a, b}, 2)) <= 0) continue;
      ConeRec c = ray_cone(2, {a, b});
      auto basis = hilbert_basis(c);
      // x is reachable when x - h stays in the cone for some basis element h
      // and the remainder is reachable; pointedness makes this terminate.
      std::map<IntVector, bool> memo;
      std::function<bool(const IntVector&)> reachable = [&](const IntVector& x) {
        if (is_zero(x)) return true;
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (const auto& h : basis)
          if (c.contains(x - h) && reachable(x - h)) {
            ok = true;
            break;
          }
        return memo[x] = ok;
      };
      for (int x = -4; x <= 4; ++x)
        for (int y = -4; y <= 4; ++y)
          if (c.contains(iv({x, y}))) CHECK(reachable(iv({x, y})));
      for (const auto& h : basis) CHECK(c.contains(h));
    }
  }

  TEST_CASE("superadditivity of evaluation") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> e(-4, 4);
    ConeRec tail = ray_cone(2, {iv({1, 0}), iv({1, 3})});
    BaseY base = BaseY::projective_line(GaloisPresentation::trivial(rationals_field(), c2()), false);
    auto tests = condition_test_set(tail.dual());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RatVector> v0{rv({e(rng), e(rng)}), rv({e(rng), e(rng)})};
      std::vector<RatVector> v1{rv({e(rng), e(rng)})};
      PPDivisor d(base, tail,
                  {{"D0", PolyhedronRec::from_vertices(2, v0, tail)}, {"Dinf", PolyhedronRec::from_vertices(2, v1, tail)}});
      for (const auto& m : tests)
        for (const auto& m2 : tests) CHECK(ppdiv_evaluate(d, m + m2).dominates(ppdiv_evaluate(d, m) + ppdiv_evaluate(d, m2)));
    }
  }

  TEST_CASE("condition (1) examples") {
    // Trivial divisor on a point with the identity cocycle.
    auto q = rationals_field();
    PPDivisor triv(BaseY::point(GaloisPresentation::trivial(q, c2())), ray_cone(1, {iv({1})}), {});
    CHECK(check_condition1(triv, trivial_c2_action(1), CocycleH::trivial(q, 2, 1, 0)).passed());

    PPDivisor d = p1_divisor(true);
    auto good = check_condition1(d, trivial_c2_action(1), p1_cocycle(-2));
    CHECK(good.passed());
    auto bad = check_condition1(d, trivial_c2_action(1), p1_cocycle(0));
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.first_failure() != nullptr);
    CHECK(bad.first_failure()->m == iv({1}));
    CHECK(bad.first_failure()->gammas == std::vector<std::string>{"gamma"});
    CHECK(bad.first_failure()->lhs == "-1*D0 + 1*Dinf");
    CHECK(bad.first_failure()->rhs == "1*D0 + -1*Dinf");

    BaseY abs = BaseY::abstract({"E"}, {{0}, {0}}, GaloisPresentation::trivial(q, c2()));
    PPDivisor on_abs(abs, ray_cone(1, {iv({1})}), {});
    CHECK_THROWS_WITH_AS(check_condition1(on_abs, trivial_c2_action(1), CocycleH::trivial(q, 2, 1, 0)),
                         doctest::Contains("BaseNotSupported"), Error);
  }

  TEST_CASE("condition (2) on the circle torsor") {
    auto f = gaussian_field();
    FieldElement minus_one = FieldElement::constant(f, RatFunc(-1));
    FieldElement i = FieldElement::generator(f);
    PPDivisor d = s1_divisor();
    CHECK(check_condition2(s1_cocycle(minus_one), s1_action(), d).passed());
    // (-1) * conj((-1)^{-1}) = 1 by hand.
    CHECK(minus_one * conj().apply(minus_one.inverse()) == FieldElement::one(f));
    auto bad = check_condition2(s1_cocycle(i), s1_action(), d);
    CHECK_FALSE(bad.passed());
    CHECK(i * conj().apply(i.inverse()) == minus_one);
    CHECK(check_condition2(CocycleH::trivial(f, 2, 1, 0), s1_action(), d).passed());
    CHECK(check_condition1(d, s1_action(), s1_cocycle(minus_one)).passed());
  }

  TEST_CASE("twisted structure on graded terms") {
    auto f = gaussian_field();
    FieldElement one = FieldElement::one(f), minus_one = -one, i = FieldElement::generator(f);
    PPDivisor d = s1_divisor();
    CocycleH h = s1_cocycle(minus_one);
    GradedTerm t{one, {}, iv({1})};
    auto r = twisted_structure_apply(d, s1_action(), h, 1, t);
    CHECK(r.coefficient == minus_one);
    CHECK(r.exponent.empty());
    CHECK(r.degree == iv({-1}));
    CHECK(twisted_structure_apply(d, s1_action(), h, 0, t) == t);

    // Conjugation only.
    PPDivisor triv(BaseY::point(gaussian_conj()), ConeRec::zero(1), {});
    auto c = twisted_structure_apply(triv, trivial_c2_action(1), CocycleH::trivial(f, 2, 1, 0), 1,
                                     GradedTerm{i, {}, iv({3})});
    CHECK(c.coefficient == -i);
    CHECK(c.degree == iv({3}));

    // Group action property for every pair and a sample of terms.
    auto act = s1_action();
    for (long m = -3; m <= 3; ++m) {
      for (const auto& coeff : {one, i, i + one, FieldElement::constant(f, RatFunc(Rational(2, 3))) * i}) {
        GradedTerm term{coeff, {}, iv({m})};
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) {
            auto ab = twisted_structure_apply(d, act, h, c2()->mul(a, b), term);
            auto seq = twisted_structure_apply(d, act, h, a, twisted_structure_apply(d, act, h, b, term));
            CHECK(seq == ab);
          }
      }
    }
    CHECK_THROWS_WITH_AS(twisted_structure_apply(p1_divisor(true), trivial_c2_action(1), p1_cocycle(-2), 1,
                                                 GradedTerm{FieldElement::one(rationals_field()), iv({0}), iv({-1})}),
                         doctest::Contains("OutsideWeightCone"), Error);
  }

  TEST_CASE("coboundary shifts") {
    auto q = rationals_field();
    PPDivisor d = p1_divisor(true);
    MonomialMap one{{mono(q, 1, iv({0}))}};
    CHECK(shift_by_coboundary(d, one).coefficients().size() == d.coefficients().size());
    CHECK(shift_by_coboundary(d, one).coefficient("D0") == d.coefficient("D0"));

    MonomialMap t{{mono(q, 1, iv({1}))}};
    PPDivisor shifted = shift_by_coboundary(d, t);
    ConeRec tail = d.tail();
    CHECK(shifted.coefficient("D0") == PolyhedronRec::from_vertices(1, {rv({0})}, tail));
    CHECK(shifted.coefficient("Dinf") == PolyhedronRec::from_vertices(1, {rv({0})}, tail));
    for (long m = 0; m <= 4; ++m) {
      auto lhs = ppdiv_evaluate(shifted, iv({m}));
      auto rhs = ppdiv_evaluate(d, iv({m})) - d.base().divisor_of(t.evaluate(iv({m})));
      CHECK(lhs == rhs);
    }

    // t^{-2m} is the coboundary of g(m) = t^m under the swap.
    CocycleH h = coboundary_of(t, trivial_c2_action(1), d.base());
    CHECK(h.images[1][0] == mono(q, 1, iv({-2})));
    CHECK(check_condition1(d, trivial_c2_action(1), h).passed());
    CocycleH h2 = shift_cocycle(h, t, trivial_c2_action(1), d.base());
    CHECK(is_trivial_cocycle(h2));
    CHECK(check_condition1(shifted, trivial_c2_action(1), h2).passed());
    CHECK(check_condition2(h2, trivial_c2_action(1), shifted).passed());

    BaseY abs = BaseY::abstract({"E"}, {{0}, {0}}, GaloisPresentation::trivial(q, c2()));
    PPDivisor on_abs(abs, ray_cone(1, {iv({1})}), {});
    CHECK(shift_by_coboundary(on_abs, MonomialMap{{mono(q, 5, {})}}).coefficients().empty());
    CHECK_THROWS_WITH_AS(shift_by_coboundary(on_abs, MonomialMap{{mono(q, 1, iv({1}))}}),
                         doctest::Contains("NotPrincipalShift"), Error);
  }

  TEST_CASE("shifting preserves both conditions") {
    // Base P^2 with the swap of two rays; M = Z^2 with the swap as well.
    auto q = rationals_field();
    IntMatrix s = matrix_s(), id = IntMatrix::identity(2);
    auto fan = QuasifanRec::complete_fan_2d({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    BaseY base = BaseY::toric(fan, LatticeAction(c2(), {id, s}, Convention::AntiHomomorphism),
                              GaloisPresentation::trivial(q, c2()));
    LatticeAction tau(c2(), {id, s}, Convention::Homomorphism);
    ConeRec tail = ray_cone(2, {iv({1, 0}), iv({0, 1})});
    // Symmetric coefficients: Delta at ray v is the tail moved by the swap of
    // the vertex at the swapped ray.
    std::map<std::string, PolyhedronRec> coeffs;
    std::vector<RatVector> verts = {rv({1, 0}), rv({0, 1}), rv({2, 2})};
    for (std::size_t r = 0; r < 3; ++r) {
      const IntVector& v = base.rays()[r];
      // The ray fixed by s gets the symmetric vertex; the swapped rays get
      // mirrored vertices.
      RatVector w = v == iv({-1, -1}) ? rv({1, 1}) : (v == iv({1, 0}) ? rv({1, 0}) : rv({0, 1}));
      coeffs.emplace(base.labels()[r], PolyhedronRec::from_vertices(2, {w}, tail));
    }
    PPDivisor d(base, tail, coeffs);
    CocycleH triv = CocycleH::trivial(q, 2, 2, 2);
    REQUIRE(check_condition1(d, tau, triv).passed());
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
      MonomialMap g{{mono(q, 1 + trial % 3, iv({e(rng), e(rng)})), mono(q, 1, iv({e(rng), e(rng)}))}};
      PPDivisor d2 = shift_by_coboundary(d, g);
      CocycleH h2 = shift_cocycle(triv, g, tau, base);
      CHECK(check_condition1(d2, tau, h2).passed());
      CHECK(check_condition2(h2, tau, d2).passed());
      // Shifting back by g recovers the trivial cocycle.
      CocycleH h3 = coboundary_of(g, tau, base);
      CHECK(is_trivial_cocycle(shift_cocycle(h3, g, tau, base)));
    }
  }

  TEST_CASE("graded pieces on the projective line") {
    auto q = rationals_field();
    BaseY base = BaseY::projective_line(GaloisPresentation::trivial(q, c2()), false);
    ConeRec tail = ray_cone(1, {iv({1})});
    PPDivisor zero(base, tail, {});
    CHECK(graded_piece_points(zero, iv({1}), 3) == std::vector<IntVector>{iv({0})});
    PPDivisor one(base, tail, {{"D0", PolyhedronRec::from_vertices(1, {rv({1})}, tail)}});
    CHECK(graded_piece_points(one, iv({1}), 3) == std::vector<IntVector>{iv({-1}), iv({0})});
    PPDivisor neg(base, tail, {{"D0", PolyhedronRec::from_vertices(1, {rv({-1})}, tail)}});
    CHECK(graded_piece_points(neg, iv({1}), 3).empty());
    CHECK(definitely_improper_on_p1(neg));
  }
}
