#include <algorithm>
#include <set>

#include "galdesc/convex.hpp"
#include "galdesc/error.hpp"

namespace galdesc {

QuasifanRec QuasifanRec::from_cones(std::size_t rank, const std::vector<ConeRec>& cones) {
  std::set<ConeRec> all;
  for (const auto& c : cones) {
    if (c.ambient_rank() != rank) throw Error("DimensionMismatch", "cone rank differs from fan rank");
    for (auto& f : c.faces()) all.insert(std::move(f));
  }
  if (all.empty()) all.insert(ConeRec::zero(rank));
  QuasifanRec q;
  q.rank_ = rank;
  q.cones_.assign(all.begin(), all.end());
  q.face_closure_.resize(q.cones_.size());
  for (std::size_t i = 0; i < q.cones_.size(); ++i)
    for (const auto& f : q.cones_[i].faces()) q.face_closure_[i].push_back(*q.index_of(f));
  for (auto& fc : q.face_closure_) std::sort(fc.begin(), fc.end());
  if (!q.validate()) throw Error("NotAFan", "cones do not meet in common faces");
  return q;
}

QuasifanRec QuasifanRec::complete_fan_2d(const std::vector<IntVector>& cyclic_rays) {
  std::vector<ConeRec> cones;
  const std::size_t n = cyclic_rays.size();
  for (std::size_t i = 0; i < n; ++i)
    cones.push_back(ConeRec::from_generators(2, {cyclic_rays[i], cyclic_rays[(i + 1) % n]}));
  return from_cones(2, cones);
}

std::vector<ConeRec> QuasifanRec::maximal_cones() const {
  std::vector<bool> proper_face(cones_.size(), false);
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (auto j : face_closure_[i])
      if (j != i) proper_face[j] = true;
  std::vector<ConeRec> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (!proper_face[i]) out.push_back(cones_[i]);
  return out;
}

std::vector<IntVector> QuasifanRec::rays() const {
  std::vector<IntVector> out;
  for (const auto& c : cones_)
    if (c.dim() == 1 && c.is_pointed()) out.push_back(c.rays().front());
  std::sort(out.begin(), out.end());
  return out;
}

bool QuasifanRec::support_contains(const IntVector& v) const {
  for (const auto& c : cones_)
    if (c.contains(v)) return true;
  return false;
}

std::optional<std::size_t> QuasifanRec::index_of(const ConeRec& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
  if (it == cones_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

bool QuasifanRec::validate() const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (const auto& f : cones_[i].faces())
      if (!index_of(f)) return false;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = i + 1; j < cones_.size(); ++j) {
      ConeRec inter = cones_[i].intersect(cones_[j]);
      auto k = index_of(inter);
      if (!k) return false;
      if (!std::binary_search(face_closure_[i].begin(), face_closure_[i].end(), *k)) return false;
      if (!std::binary_search(face_closure_[j].begin(), face_closure_[j].end(), *k)) return false;
    }
  return true;
}

namespace {

IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) v = -v;
    break;
  }
  return v;
}

}  // namespace

QuasifanRec project_quasifan(const ConeRec& c, const LatticeMap& p) {
  if (p.source_rank() != c.ambient_rank()) throw Error("DimensionMismatch", "projection source rank");
  if (!p.is_surjective()) throw Error("NotSurjective", "projection must be surjective");
  const std::size_t k = p.target_rank();
  std::set<ConeRec> images;
  for (const auto& f : c.faces()) images.insert(f.image(p));

  std::set<IntVector> hyperplanes;
  for (const auto& im : images) {
    for (const auto& a : im.inequalities()) hyperplanes.insert(sign_normalized(a));
    for (const auto& e : im.equations()) hyperplanes.insert(sign_normalized(e));
  }

  // Cells of the arrangement, split one hyperplane at a time.
  std::set<ConeRec> cells{ConeRec::full(k)};
  for (const auto& h : hyperplanes) {
    std::set<ConeRec> next;
    for (const auto& cell : cells) {
      bool pos = false, neg = false;
      for (const auto& g : cell.generators()) {
        Integer v = dot(h, g);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (!(pos && neg)) {
        next.insert(cell);
        continue;
      }
      next.insert(ConeRec::from_inequalities(k, [&] {
        auto ineqs = cell.inequalities();
        ineqs.push_back(h);
        return ineqs;
      }(), cell.equations()));
      next.insert(ConeRec::from_inequalities(k, [&] {
        auto ineqs = cell.inequalities();
        ineqs.push_back(-h);
        return ineqs;
      }(), cell.equations()));
      next.insert(ConeRec::from_inequalities(k, cell.inequalities(), [&] {
        auto eqs = cell.equations();
        eqs.push_back(h);
        return eqs;
      }()));
    }
    cells = std::move(next);
  }

  std::set<ConeRec> pieces;
  for (const auto& cell : cells) {
    IntVector y = cell.relative_interior_point();
    std::optional<ConeRec> cy;
    for (const auto& im : images) {
      if (!im.contains(y)) continue;
      cy = cy ? cy->intersect(im) : im;
    }
    if (cy) pieces.insert(*cy);
  }
  return QuasifanRec::from_cones(k, std::vector<ConeRec>(pieces.begin(), pieces.end()));
}

}  // namespace galdesc
