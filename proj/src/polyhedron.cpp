#include <algorithm>
#include <set>

#include "galdesc/convex.hpp"
#include "galdesc/error.hpp"

namespace galdesc {

namespace {

Integer denominator_lcm(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace

PolyhedronRec::PolyhedronRec(std::size_t rank, ConeRec homogenized) : rank_(rank) {
  std::vector<IntVector> tail_gens;
  for (const auto& r : homogenized.rays()) {
    if (r[rank] > 0) {
      RatVector v(rank);
      for (std::size_t i = 0; i < rank; ++i) v[i] = Rational(r[i], r[rank]);
      for (auto& x : v) x.canonicalize();
      vertices_.push_back(std::move(v));
    } else {
      tail_gens.emplace_back(r.begin(), r.begin() + rank);
    }
  }
  if (vertices_.empty()) {
    homogenized_ = ConeRec::zero(rank + 1);
    tail_ = ConeRec::zero(rank);
    return;
  }
  for (const auto& l : homogenized.lineality()) {
    IntVector x(l.begin(), l.begin() + rank);
    tail_gens.push_back(x);
    tail_gens.push_back(-x);
  }
  std::sort(vertices_.begin(), vertices_.end());
  homogenized_ = std::move(homogenized);
  tail_ = ConeRec::from_generators(rank, tail_gens);
}

PolyhedronRec PolyhedronRec::from_vertices(std::size_t rank, const std::vector<RatVector>& vertices,
                                           const ConeRec& tail) {
  if (tail.ambient_rank() != rank) throw Error("DimensionMismatch", "tail cone rank");
  if (vertices.empty()) return PolyhedronRec(rank, ConeRec::zero(rank + 1));
  std::vector<IntVector> gens;
  for (const auto& v : vertices) {
    if (v.size() != rank) throw Error("DimensionMismatch", "vertex length differs from rank");
    Integer l = denominator_lcm(v);
    IntVector g(rank + 1);
    for (std::size_t i = 0; i < rank; ++i) g[i] = Rational(v[i] * l).get_num();
    g[rank] = l;
    gens.push_back(primitive_part(g));
  }
  for (const auto& t : tail.generators()) {
    IntVector g = t;
    g.push_back(0);
    gens.push_back(g);
  }
  return PolyhedronRec(rank, ConeRec::from_generators(rank + 1, gens));
}

PolyhedronRec PolyhedronRec::from_inequalities(std::size_t rank, const std::vector<HalfSpace>& constraints) {
  std::vector<IntVector> ineqs;
  for (const auto& h : constraints) {
    if (h.normal.size() != rank) throw Error("DimensionMismatch", "constraint length differs from rank");
    Integer den = h.bound.get_den();
    IntVector a(rank + 1);
    for (std::size_t i = 0; i < rank; ++i) a[i] = h.normal[i] * den;
    a[rank] = -h.bound.get_num();
    ineqs.push_back(a);
  }
  ineqs.push_back(unit_vector(rank + 1, rank));
  return PolyhedronRec(rank, ConeRec::from_inequalities(rank + 1, ineqs));
}

std::vector<HalfSpace> PolyhedronRec::inequalities() const {
  std::vector<HalfSpace> out;
  for (const auto& a : homogenized_.halfspaces()) {
    IntVector normal(a.begin(), a.begin() + rank_);
    if (is_zero(normal)) continue;
    out.push_back({normal, Rational(-a[rank_])});
  }
  return out;
}

bool PolyhedronRec::contains(const RatVector& x) const {
  if (x.size() != rank_) throw Error("DimensionMismatch", "point length differs from rank");
  if (is_empty()) return false;
  RatVector h = x;
  h.push_back(1);
  return homogenized_.contains(h);
}

Rational PolyhedronRec::evaluate_min(const IntVector& m) const {
  if (m.size() != rank_) throw Error("DimensionMismatch", "covector length differs from rank");
  if (is_empty()) throw Error("EmptyPolyhedron", "minimum over the empty polyhedron");
  if (!tail_.dual().contains(m))
    throw Error("UnboundedBelow", "covector " + to_string(m) + " is not in the dual of the tail cone");
  Rational best = dot(m, vertices_.front());
  for (const auto& v : vertices_) {
    Rational val = dot(m, v);
    if (val < best) best = val;
  }
  return best;
}

PolyhedronRec PolyhedronRec::translate(const RatVector& w) const {
  if (is_empty()) return *this;
  std::vector<RatVector> moved;
  for (const auto& v : vertices_) moved.push_back(v + w);
  return from_vertices(rank_, moved, tail_);
}

std::vector<IntVector> lattice_points_in_box(std::size_t rank, const std::vector<HalfSpace>& constraints,
                                             long box) {
  if (box < 0) throw Error("InvalidArgument", "box must be nonnegative");
  for (const auto& h : constraints)
    if (h.normal.size() != rank) throw Error("DimensionMismatch", "constraint length differs from rank");
  std::vector<IntVector> out;
  IntVector x(rank, Integer(-box));
  for (;;) {
    bool ok = true;
    for (const auto& h : constraints)
      if (Rational(dot(h.normal, x)) < h.bound) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
    std::size_t i = 0;
    while (i < rank && x[i] == box) {
      x[i] = -box;
      ++i;
    }
    if (i == rank) break;
    ++x[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace galdesc
