#include <doctest.h>

#include <random>
#include <set>

#include "galdesc/convex.hpp"
#include "galdesc/error.hpp"
#include "test_support.hpp"

using namespace galdesc;
using testsupport::iv;

namespace {

ConeRec cone2(std::vector<IntVector> gens) { return ConeRec::from_generators(2, gens); }

// Every generator pairs nonnegatively with every covector, and each
// covector generator of the claimed dual vanishes on some generator set of
// rank n-1 (extremality), checked directly.
bool pairing_ok(const ConeRec& c, const ConeRec& d) {
  for (const auto& g : c.generators())
    for (const auto& u : d.generators())
      if (dot(g, u) < 0) return false;
  return true;
}

ConeRec random_cone(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(-5, 5);
  std::size_t k = 1 + rng() % (n + 2);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector g(n);
    for (auto& x : g) x = e(rng);
    gens.push_back(g);
  }
  return ConeRec::from_generators(n, gens);
}

// Faces by brute force: every covector in the dual cone with small entries
// cuts out the face spanned by the generators it annihilates.
std::set<std::set<IntVector>> brute_force_faces(const ConeRec& c, int bound) {
  std::set<std::set<IntVector>> faces;
  const std::size_t n = c.ambient_rank();
  IntVector u(n, Integer(-bound));
  for (;;) {
    bool supporting = true;
    for (const auto& g : c.generators())
      if (dot(u, g) < 0) supporting = false;
    if (supporting) {
      std::set<IntVector> tight;
      for (const auto& g : c.rays())
        if (dot(u, g) == 0) tight.insert(g);
      faces.insert(tight);
    }
    std::size_t i = 0;
    while (i < n && u[i] == bound) u[i++] = -bound;
    if (i == n) break;
    ++u[i];
  }
  return faces;
}

}  // namespace

TEST_SUITE("convex") {

TEST_CASE("duals of planar cones") {
  ConeRec q = cone2({iv({1, 0}), iv({0, 1})});
  CHECK(q.dual() == q);
  ConeRec c = cone2({iv({1, 0}), iv({1, 2})});
  ConeRec expected = cone2({iv({0, 1}), iv({2, -1})});
  CHECK(c.dual() == expected);
  CHECK(pairing_ok(c, c.dual()));
  ConeRec half = cone2({iv({1, 0}), iv({-1, 0}), iv({0, 1})});
  CHECK(half.dual() == cone2({iv({0, 1})}));
  CHECK(!half.is_pointed());
  CHECK(half.dim() == 2);
}

TEST_CASE("degenerate cones") {
  ConeRec z = ConeRec::zero(3);
  CHECK(z.is_zero());
  CHECK(z.dim() == 0);
  CHECK(z.dual() == ConeRec::full(3));
  CHECK(ConeRec::full(3).dual() == z);
  CHECK(z.faces().size() == 1);
  ConeRec rank0 = ConeRec::zero(0);
  CHECK(rank0.dim() == 0);
  CHECK(rank0 == ConeRec::full(0));
}

TEST_CASE("canonical form ignores redundant generators") {
  ConeRec a = cone2({iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({2, 0})});
  ConeRec b = cone2({iv({0, 3}), iv({5, 0})});
  CHECK(a == b);
  CHECK(a.rays() == std::vector<IntVector>{iv({0, 1}), iv({1, 0})});
  for (const auto& r : a.rays()) CHECK(is_primitive(r));
}

TEST_CASE("faces") {
  ConeRec q = cone2({iv({1, 0}), iv({0, 1})});
  CHECK(q.faces().size() == 4);
  ConeRec ray = cone2({iv({1, 1})});
  auto rf = ray.faces();
  REQUIRE(rf.size() == 2);
  CHECK(rf[0].is_zero());
  CHECK(rf[1] == ray);
  ConeRec simplex = ConeRec::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  CHECK(simplex.faces().size() == 8);
  CHECK(brute_force_faces(simplex, 1).size() == 8);
}

TEST_CASE("faces agree with brute-force supporting covectors") {
  std::vector<ConeRec> cones = {
      ConeRec::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 0, 1}), iv({0, 1, 1})}),
      ConeRec::from_generators(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})}),
      ConeRec::from_generators(3, {iv({1, 0, 0}), iv({-1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}),
  };
  for (const auto& c : cones) {
    auto brute = brute_force_faces(c, 2);
    std::set<std::set<IntVector>> ours;
    for (const auto& f : c.faces()) ours.insert(std::set<IntVector>(f.rays().begin(), f.rays().end()));
    CHECK(ours == brute);
  }
}

TEST_CASE("simplicial cones have 2^n faces") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector g = unit_vector(n, i);
      if (i + 1 < n) g[i + 1] = 1;
      gens.push_back(g);
    }
    CHECK(ConeRec::from_generators(n, gens).faces().size() == (std::size_t{1} << n));
  }
}

TEST_CASE("dual of dual is the identity on random cones") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    ConeRec c = random_cone(rng, n);
    REQUIRE(c.dual().dual() == c);
    REQUIRE(pairing_ok(c, c.dual()));
    for (const auto& g : c.generators()) REQUIRE(c.contains(g));
    ConeRec again = ConeRec::from_inequalities(n, c.inequalities(), c.equations());
    REQUIRE(again == c);
  }
}

TEST_CASE("intersections, images and face tests") {
  ConeRec q = cone2({iv({1, 0}), iv({0, 1})});
  ConeRec h = cone2({iv({1, 1}), iv({-1, 1})});
  CHECK(q.intersect(h) == cone2({iv({1, 1}), iv({0, 1})}));
  CHECK(cone2({iv({1, 0})}).is_face_of(q));
  CHECK(!cone2({iv({1, 1})}).is_face_of(q));
  CHECK(ConeRec::zero(2).is_face_of(q));
  IntMatrix p{{-1, 1}};
  CHECK(q.image(p) == ConeRec::full(1));
  CHECK(q.preimage(IntMatrix::identity(2)) == q);
}

TEST_CASE("polyhedron evaluation") {
  ConeRec tail1 = ConeRec::from_generators(1, {iv({1})});
  auto a = PolyhedronRec::from_vertices(1, {{Rational(1)}}, tail1);
  CHECK(a.evaluate_min(iv({2})) == 2);
  auto t = PolyhedronRec::from_vertices(1, {{Rational(0)}}, tail1);
  CHECK(t.evaluate_min(iv({5})) == 0);
  ConeRec up = cone2({iv({0, 1})});
  auto seg = PolyhedronRec::from_vertices(2, {{0, 0}, {1, 0}}, up);
  CHECK(seg.evaluate_min(iv({1, 1})) == 0);
  CHECK(seg.evaluate_min(iv({-1, 0})) == -1);
  CHECK_THROWS_WITH_AS(seg.evaluate_min(iv({0, -1})), doctest::Contains("UnboundedBelow"), Error);
}

TEST_CASE("polyhedron from inequalities") {
  auto p = PolyhedronRec::from_inequalities(1, {{iv({1}), Rational(1, 2)}});
  CHECK(p.vertices() == std::vector<RatVector>{{Rational(1, 2)}});
  CHECK(p.tail() == ConeRec::from_generators(1, {iv({1})}));
  auto box = PolyhedronRec::from_inequalities(
      2, {{iv({1, 0}), 0}, {iv({-1, 0}), -1}, {iv({0, 1}), 0}, {iv({0, -1}), -1}});
  CHECK(box.vertices().size() == 4);
  CHECK(box.tail().is_zero());
  auto empty = PolyhedronRec::from_inequalities(1, {{iv({1}), 1}, {iv({-1}), 0}});
  CHECK(empty.is_empty());
  CHECK_THROWS_AS(empty.evaluate_min(iv({1})), Error);
  auto roundtrip = PolyhedronRec::from_inequalities(2, box.inequalities());
  CHECK(roundtrip == box);
  CHECK(box.translate({1, 1}).contains({2, 2}));
  CHECK(!box.translate({1, 1}).contains({0, 0}));
}

TEST_CASE("evaluation is superadditive") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> e(-4, 4);
  int checked = 0;
  while (checked < 100) {
    std::size_t n = 1 + rng() % 3;
    ConeRec tail = random_cone(rng, n);
    std::vector<RatVector> verts;
    for (int i = 0; i < 3; ++i) {
      RatVector v(n);
      for (auto& x : v) x = Rational(e(rng), 1 + rng() % 3);
      verts.push_back(v);
    }
    auto p = PolyhedronRec::from_vertices(n, verts, tail);
    ConeRec adm = tail.dual();
    auto gens = adm.generators();
    if (gens.empty()) continue;
    IntVector m = zero_vector(n), m2 = zero_vector(n);
    for (const auto& g : gens) {
      m = m + scale(Integer(static_cast<long>(rng() % 3)), g);
      m2 = m2 + scale(Integer(static_cast<long>(rng() % 3)), g);
    }
    REQUIRE(p.evaluate_min(m + m2) >= p.evaluate_min(m) + p.evaluate_min(m2));
    ++checked;
  }
}

TEST_CASE("projecting the quadrant gives the fan of the projective line") {
  ConeRec q = cone2({iv({1, 0}), iv({0, 1})});
  QuasifanRec f = project_quasifan(q, LatticeMap(IntMatrix{{-1, 1}}));
  CHECK(f.cones().size() == 3);
  CHECK(f.rays() == std::vector<IntVector>{iv({-1}), iv({1})});
  CHECK(f.validate());
  CHECK(f.support_contains(iv({-7})));
}

TEST_CASE("degenerate projections") {
  QuasifanRec z = project_quasifan(ConeRec::zero(2), LatticeMap(IntMatrix{{-1, 1}}));
  CHECK(z.cones().size() == 1);
  CHECK(z.cones()[0].is_zero());
  QuasifanRec r = project_quasifan(cone2({iv({1, 1})}), LatticeMap(IntMatrix{{-1, 1}}));
  CHECK(r.cones().size() == 1);
  CHECK(r.cones()[0].is_zero());
  QuasifanRec half = project_quasifan(cone2({iv({1, 0}), iv({0, 1})}), LatticeMap(IntMatrix{{0, 1}}));
  CHECK(half.cones().size() == 2);
  CHECK(half.rays() == std::vector<IntVector>{iv({1})});
}

TEST_CASE("projecting the positive orthant along the diagonal") {
  ConeRec o = ConeRec::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  IntMatrix p{{-1, 1, 0}, {-1, 0, 1}};
  QuasifanRec f = project_quasifan(o, LatticeMap(p));
  CHECK(f.validate());
  CHECK(f.rays().size() == 3);
  CHECK(f.maximal_cones().size() == 3);
  for (const auto& c : f.maximal_cones()) CHECK(c.dim() == 2);
}

TEST_CASE("projection of a non-simplicial cone refines overlapping images") {
  ConeRec c = ConeRec::from_generators(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})});
  // Projection forgetting the second coordinate: images overlap.
  QuasifanRec f = project_quasifan(c, LatticeMap(IntMatrix{{1, 0, 0}, {0, 0, 1}}));
  CHECK(f.validate());
  for (const auto& m : f.maximal_cones()) CHECK(m.dim() == 2);
  CHECK(f.rays() == std::vector<IntVector>{iv({-1, 1}), iv({0, 1}), iv({1, 1})});
}

TEST_CASE("lattice points in a box") {
  CHECK(lattice_points_in_box(1, {}, 1) == std::vector<IntVector>{iv({-1}), iv({0}), iv({1})});
  CHECK(lattice_points_in_box(1, {{iv({1}), 0}, {iv({-1}), -1}}, 5) == std::vector<IntVector>{iv({0}), iv({1})});
  CHECK(lattice_points_in_box(2, {{iv({1, 0}), 0}, {iv({0, 1}), 0}}, 2).size() == 9);
  CHECK(lattice_points_in_box(0, {}, 3).size() == 1);
}

TEST_CASE("fan validation rejects overlapping cones") {
  CHECK_THROWS_AS(QuasifanRec::from_cones(2, {cone2({iv({1, 0}), iv({0, 1})}), cone2({iv({1, 1}), iv({-1, 1})})}),
                  Error);
  QuasifanRec hex = QuasifanRec::complete_fan_2d(
      {iv({1, 0}), iv({1, 1}), iv({0, 1}), iv({-1, 0}), iv({-1, -1}), iv({0, -1})});
  CHECK(hex.cones().size() == 13);
  CHECK(hex.validate());
}

}
