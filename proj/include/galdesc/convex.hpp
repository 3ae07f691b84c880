#pragma once

#include <optional>
#include <vector>

#include "galdesc/lattice.hpp"
#include "galdesc/matrix.hpp"

namespace galdesc {

// Rational polyhedral cone  L + cone(R)  in Q^n, stored canonically:
// lineality basis in Hermite form, rays primitive and orthogonal to L,
// sorted. The H-representation (facet normals plus equations) is computed
// at construction, so values are immutable and freely shareable.
class ConeRec {
 public:
  ConeRec() = default;

  static ConeRec from_generators(std::size_t rank, const std::vector<IntVector>& gens);
  // {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}
  static ConeRec from_inequalities(std::size_t rank, const std::vector<IntVector>& ineqs,
                                   const std::vector<IntVector>& eqs = {});
  static ConeRec zero(std::size_t rank);
  static ConeRec full(std::size_t rank);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  // Rays together with both signs of the lineality basis.
  std::vector<IntVector> generators() const;
  const std::vector<IntVector>& inequalities() const { return inequalities_; }
  const std::vector<IntVector>& equations() const { return equations_; }
  // Inequalities plus both signs of the equations.
  std::vector<IntVector> halfspaces() const;

  std::size_t dim() const { return rank_ - equations_.size(); }
  std::size_t lineality_dim() const { return lineality_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_zero() const { return lineality_.empty() && rays_.empty(); }
  bool is_full_dimensional() const { return equations_.empty(); }

  bool contains(const IntVector& v) const;
  bool contains(const RatVector& v) const;
  bool contains(const ConeRec& other) const;
  bool contains_in_relative_interior(const IntVector& v) const;
  // Sum of the rays: a point of the relative interior.
  IntVector relative_interior_point() const;

  ConeRec dual() const;
  std::vector<ConeRec> faces() const;
  bool is_face_of(const ConeRec& other) const;
  ConeRec intersect(const ConeRec& other) const;
  ConeRec image(const IntMatrix& m) const;
  ConeRec image(const LatticeMap& m) const { return image(m.matrix()); }
  // {x : m x in this}
  ConeRec preimage(const IntMatrix& m) const;

  friend bool operator==(const ConeRec& a, const ConeRec& b) {
    return a.rank_ == b.rank_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }
  friend bool operator!=(const ConeRec& a, const ConeRec& b) { return !(a == b); }
  // Orders by dimension, then canonical data.
  friend bool operator<(const ConeRec& a, const ConeRec& b);

 private:
  ConeRec(std::size_t rank, std::vector<IntVector> lin, std::vector<IntVector> rays,
          std::vector<IntVector> eqs, std::vector<IntVector> ineqs)
      : rank_(rank),
        lineality_(std::move(lin)),
        rays_(std::move(rays)),
        equations_(std::move(eqs)),
        inequalities_(std::move(ineqs)) {}

  std::size_t rank_ = 0;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> equations_;
  std::vector<IntVector> inequalities_;
};

// Half-space  <normal, x> >= bound.
struct HalfSpace {
  IntVector normal;
  Rational bound;
};

// Polyhedron  conv(vertices) + tail,  stored through its homogenization
// cone in Q^{n+1} (last coordinate t >= 0).
class PolyhedronRec {
 public:
  PolyhedronRec() = default;

  static PolyhedronRec from_vertices(std::size_t rank, const std::vector<RatVector>& vertices,
                                     const ConeRec& tail);
  static PolyhedronRec from_inequalities(std::size_t rank, const std::vector<HalfSpace>& constraints);

  std::size_t ambient_rank() const { return rank_; }
  bool is_empty() const { return vertices_.empty(); }
  // Minimal-face representatives, sorted; these are the vertices when the
  // tail cone is pointed.
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const ConeRec& tail() const { return tail_; }
  std::vector<HalfSpace> inequalities() const;

  bool contains(const RatVector& x) const;
  // min <m, x> over the polyhedron. Throws UnboundedBelow / EmptyPolyhedron.
  Rational evaluate_min(const IntVector& m) const;
  PolyhedronRec translate(const RatVector& w) const;

  friend bool operator==(const PolyhedronRec& a, const PolyhedronRec& b) {
    return a.rank_ == b.rank_ && a.homogenized_ == b.homogenized_;
  }
  friend bool operator!=(const PolyhedronRec& a, const PolyhedronRec& b) { return !(a == b); }

 private:
  explicit PolyhedronRec(std::size_t rank, ConeRec homogenized);

  std::size_t rank_ = 0;
  ConeRec homogenized_;
  std::vector<RatVector> vertices_;
  ConeRec tail_;
};

// Face-closed collection of cones with pairwise intersections being common
// faces. face_closure[i] lists the indices of the faces of cones[i].
class QuasifanRec {
 public:
  QuasifanRec() = default;
  // Builds the face closure of the given cones; validates the intersection
  // property and throws Error("NotAFan") if it fails.
  static QuasifanRec from_cones(std::size_t rank, const std::vector<ConeRec>& cones);
  // Complete 2-dimensional fan from cyclically ordered rays.
  static QuasifanRec complete_fan_2d(const std::vector<IntVector>& cyclic_rays);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<ConeRec>& cones() const { return cones_; }
  const std::vector<std::vector<std::size_t>>& face_closure() const { return face_closure_; }
  std::vector<ConeRec> maximal_cones() const;
  // Primitive generators of the one-dimensional pointed cones, sorted.
  std::vector<IntVector> rays() const;
  const ConeRec& minimal_cone() const { return cones_.front(); }
  bool support_contains(const IntVector& v) const;
  std::optional<std::size_t> index_of(const ConeRec& c) const;
  // True when face-closed and intersections are common faces.
  bool validate() const;

  friend bool operator==(const QuasifanRec& a, const QuasifanRec& b) {
    return a.rank_ == b.rank_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<ConeRec> cones_;
  std::vector<std::vector<std::size_t>> face_closure_;
};

// Coarsest quasifan in N_Y refining the images p(tau) of the faces of c.
QuasifanRec project_quasifan(const ConeRec& c, const LatticeMap& p);

// Integer points with sup-norm <= box satisfying every constraint.
std::vector<IntVector> lattice_points_in_box(std::size_t rank, const std::vector<HalfSpace>& constraints,
                                             long box);

}  // namespace galdesc
