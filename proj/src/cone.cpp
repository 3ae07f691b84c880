#include <algorithm>
#include <map>
#include <set>

#include "galdesc/convex.hpp"
#include "galdesc/error.hpp"
#include "galdesc/normal_form.hpp"

namespace galdesc {

namespace {

struct Description {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

std::size_t rank_of_rows(const std::vector<const IntVector*>& rows, std::size_t n) {
  if (rows.empty()) return 0;
  RatMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (*rows[i])[j];
  return rank(m);
}

// Double description: generators of {x : <a,x> >= 0 for all constraints a}.
Description double_description(std::size_t n, const std::vector<IntVector>& constraints) {
  Description d;
  for (std::size_t i = 0; i < n; ++i) d.lineality.push_back(unit_vector(n, i));
  std::vector<const IntVector*> processed;

  for (const auto& a : constraints) {
    if (a.size() != n) throw Error("DimensionMismatch", "constraint length differs from rank");
    if (is_zero(a)) continue;

    std::size_t cut = d.lineality.size();
    for (std::size_t i = 0; i < d.lineality.size(); ++i)
      if (dot(a, d.lineality[i]) != 0) {
        cut = i;
        break;
      }

    if (cut < d.lineality.size()) {
      IntVector l0 = d.lineality[cut];
      Integer c = dot(a, l0);
      if (c < 0) {
        l0 = -l0;
        c = -c;
      }
      std::vector<IntVector> lin;
      for (std::size_t i = 0; i < d.lineality.size(); ++i) {
        if (i == cut) continue;
        const IntVector& l = d.lineality[i];
        lin.push_back(primitive_part(scale(c, l) - scale(dot(a, l), l0)));
      }
      std::vector<IntVector> rays;
      for (const auto& r : d.rays) rays.push_back(primitive_part(scale(c, r) - scale(dot(a, r), l0)));
      rays.push_back(primitive_part(l0));
      d.lineality = std::move(lin);
      d.rays = std::move(rays);
      processed.push_back(&a);
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<IntVector> next;
    std::vector<Integer> val(d.rays.size());
    for (std::size_t i = 0; i < d.rays.size(); ++i) {
      val[i] = dot(a, d.rays[i]);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
      if (val[i] >= 0) next.push_back(d.rays[i]);
    }
    const std::size_t target = n - d.lineality.size();
    if (!pos.empty() && !neg.empty()) {
      // Tight sets with respect to the constraints processed so far.
      std::vector<std::vector<bool>> tight(d.rays.size(), std::vector<bool>(processed.size()));
      for (std::size_t i = 0; i < d.rays.size(); ++i)
        for (std::size_t k = 0; k < processed.size(); ++k) tight[i][k] = dot(*processed[k], d.rays[i]) == 0;
      for (auto p : pos)
        for (auto q : neg) {
          std::vector<const IntVector*> common;
          for (std::size_t k = 0; k < processed.size(); ++k)
            if (tight[p][k] && tight[q][k]) common.push_back(processed[k]);
          if (target < 2 || common.size() + 2 < target) continue;
          if (rank_of_rows(common, n) != target - 2) continue;
          next.push_back(primitive_part(scale(val[p], d.rays[q]) - scale(val[q], d.rays[p])));
        }
    }
    d.rays = std::move(next);
    processed.push_back(&a);
  }
  return d;
}

// Component of v orthogonal to span(basis), scaled to a primitive vector.
class OrthogonalProjector {
 public:
  OrthogonalProjector(const std::vector<IntVector>& basis, std::size_t n) : basis_(basis), n_(n) {
    if (basis_.empty()) return;
    RatMatrix b(basis_.size(), n);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = basis_[i][j];
    gram_inv_ = inverse(b * b.transpose());
    b_ = b;
  }

  IntVector operator()(const IntVector& v) const {
    if (basis_.empty()) return primitive_part(v);
    RatVector x = to_rational(v);
    RatVector bx = b_.apply(x);
    RatVector c = gram_inv_.apply(bx);
    RatVector proj = b_.transpose().apply(c);
    return primitive_part(x - proj);
  }

 private:
  std::vector<IntVector> basis_;
  std::size_t n_;
  RatMatrix b_, gram_inv_;
};

Description canonicalize(std::size_t n, const Description& d) {
  Description out;
  if (!d.lineality.empty()) out.lineality = saturate_sublattice(d.lineality, n);
  OrthogonalProjector proj(out.lineality, n);
  std::set<IntVector> rays;
  for (const auto& r : d.rays) {
    IntVector p = proj(r);
    if (!is_zero(p)) rays.insert(p);
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

std::vector<IntVector> all_generators(const Description& d) {
  std::vector<IntVector> g = d.rays;
  for (const auto& l : d.lineality) {
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

}  // namespace

ConeRec ConeRec::from_generators(std::size_t rank, const std::vector<IntVector>& gens) {
  for (const auto& g : gens)
    if (g.size() != rank) throw Error("DimensionMismatch", "generator length differs from rank");
  Description dual = canonicalize(rank, double_description(rank, gens));
  Description primal = canonicalize(rank, double_description(rank, all_generators(dual)));
  return ConeRec(rank, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

ConeRec ConeRec::from_inequalities(std::size_t rank, const std::vector<IntVector>& ineqs,
                                   const std::vector<IntVector>& eqs) {
  std::vector<IntVector> constraints = ineqs;
  for (const auto& e : eqs) {
    constraints.push_back(e);
    constraints.push_back(-e);
  }
  Description primal = canonicalize(rank, double_description(rank, constraints));
  Description dual = canonicalize(rank, double_description(rank, all_generators(primal)));
  return ConeRec(rank, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

ConeRec ConeRec::zero(std::size_t rank) { return from_generators(rank, {}); }

ConeRec ConeRec::full(std::size_t rank) { return from_inequalities(rank, {}); }

std::vector<IntVector> ConeRec::generators() const {
  std::vector<IntVector> g = rays_;
  for (const auto& l : lineality_) {
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

std::vector<IntVector> ConeRec::halfspaces() const {
  std::vector<IntVector> h = inequalities_;
  for (const auto& e : equations_) {
    h.push_back(e);
    h.push_back(-e);
  }
  return h;
}

bool ConeRec::contains(const IntVector& v) const {
  if (v.size() != rank_) throw Error("DimensionMismatch", "point length differs from rank");
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& a : inequalities_)
    if (dot(a, v) < 0) return false;
  return true;
}

bool ConeRec::contains(const RatVector& v) const {
  if (v.size() != rank_) throw Error("DimensionMismatch", "point length differs from rank");
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& a : inequalities_)
    if (dot(a, v) < 0) return false;
  return true;
}

bool ConeRec::contains(const ConeRec& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool ConeRec::contains_in_relative_interior(const IntVector& v) const {
  if (!contains(v)) return false;
  for (const auto& a : inequalities_)
    if (dot(a, v) == 0) return false;
  return true;
}

IntVector ConeRec::relative_interior_point() const {
  IntVector s = zero_vector(rank_);
  for (const auto& r : rays_) s = s + r;
  return s;
}

ConeRec ConeRec::dual() const { return ConeRec(rank_, equations_, inequalities_, lineality_, rays_); }

std::vector<ConeRec> ConeRec::faces() const {
  // A face is determined by the set of rays it contains; intersecting with
  // facets one at a time reaches every face.
  std::vector<std::size_t> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    for (const auto& a : inequalities_) {
      std::vector<std::size_t> sub;
      for (auto i : cur)
        if (dot(a, rays_[i]) == 0) sub.push_back(i);
      if (seen.insert(sub).second) queue.push_back(sub);
    }
  }
  std::vector<ConeRec> out;
  for (const auto& s : seen) {
    std::vector<IntVector> gens;
    for (auto i : s) gens.push_back(rays_[i]);
    for (const auto& l : lineality_) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    out.push_back(from_generators(rank_, gens));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ConeRec::is_face_of(const ConeRec& other) const {
  if (!other.contains(*this)) return false;
  // A subcone is a face iff it equals other ∩ u^⊥ for u a relative interior
  // point of the dual face, here the sum of the inequalities tight on it.
  IntVector u = zero_vector(rank_);
  for (const auto& a : other.inequalities_) {
    bool tight = true;
    for (const auto& g : generators())
      if (dot(a, g) != 0) {
        tight = false;
        break;
      }
    if (tight) u = u + a;
  }
  std::vector<IntVector> eqs = other.equations_;
  eqs.push_back(u);
  return from_inequalities(rank_, other.inequalities_, eqs) == *this;
}

ConeRec ConeRec::intersect(const ConeRec& other) const {
  if (other.rank_ != rank_) throw Error("DimensionMismatch", "intersection of cones of different rank");
  std::vector<IntVector> ineqs = inequalities_;
  ineqs.insert(ineqs.end(), other.inequalities_.begin(), other.inequalities_.end());
  std::vector<IntVector> eqs = equations_;
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  return from_inequalities(rank_, ineqs, eqs);
}

ConeRec ConeRec::image(const IntMatrix& m) const {
  if (m.cols() != rank_) throw Error("DimensionMismatch", "image map source rank");
  std::vector<IntVector> gens;
  for (const auto& g : generators()) gens.push_back(m.apply(g));
  return from_generators(m.rows(), gens);
}

ConeRec ConeRec::preimage(const IntMatrix& m) const {
  if (m.rows() != rank_) throw Error("DimensionMismatch", "preimage map target rank");
  IntMatrix mt = m.transpose();
  std::vector<IntVector> ineqs, eqs;
  for (const auto& a : inequalities_) ineqs.push_back(mt.apply(a));
  for (const auto& e : equations_) eqs.push_back(mt.apply(e));
  return from_inequalities(m.cols(), ineqs, eqs);
}

bool operator<(const ConeRec& a, const ConeRec& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
  return a.rays_ < b.rays_;
}

}  // namespace galdesc
