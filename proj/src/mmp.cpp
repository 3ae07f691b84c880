#include "galdesc/mmp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "galdesc/error.hpp"

namespace galdesc {

namespace {

Integer det2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

double angle(const IntVector& v) {
  double a = std::atan2(v[1].get_d(), v[0].get_d());
  return a < 0 ? a + 2 * std::numbers::pi : a;
}

}  // namespace

FanSurface::FanSurface(std::vector<IntVector> rays) {
  const std::size_t n = rays.size();
  if (n < 3) throw Error("TooFewRays", "a complete fan in the plane needs at least 3 rays");
  for (const auto& v : rays) {
    if (v.size() != 2) throw Error("RankMismatch", "rays must lie in Z^2");
    if (!is_primitive(v)) throw Error("NotSmooth", "ray " + to_string(v) + " is not primitive");
  }
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = det2(rays[i], rays[(i + 1) % n]);
    if (abs(d) != 1) {
      throw Error("NotSmooth", "rays " + to_string(rays[i]) + " and " + to_string(rays[(i + 1) % n]) +
                                   " do not span Z^2");
    }
    int s = sgn(d);
    if (sign != 0 && s != sign) throw Error("NotComplete", "rays are not in cyclic order");
    sign = s;
  }
  if (sign < 0) std::reverse(rays.begin(), rays.end());
  // Each step turns by less than pi; the fan is complete iff the total is one turn.
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double step = angle(rays[(i + 1) % n]) - angle(rays[i]);
    if (step < 0) step += 2 * std::numbers::pi;
    total += step;
  }
  if (std::abs(total - 2 * std::numbers::pi) > 1e-6) throw Error("NotComplete", "rays wind more than once");
  auto first = std::min_element(rays.begin(), rays.end(),
                                [](const IntVector& a, const IntVector& b) { return angle(a) < angle(b); });
  std::rotate(rays.begin(), first, rays.end());
  rays_ = std::move(rays);
}

FanSurface FanSurface::hexagon() {
  return FanSurface({IntVector{1, 0}, IntVector{1, 1}, IntVector{0, 1}, IntVector{-1, 0}, IntVector{-1, -1},
                     IntVector{0, -1}});
}

FanSurface FanSurface::square() {
  return FanSurface({IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, 0}, IntVector{0, -1}});
}

FanSurface FanSurface::projective_plane() {
  return FanSurface({IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, -1}});
}

std::optional<std::size_t> FanSurface::index_of(const IntVector& v) const {
  auto it = std::find(rays_.begin(), rays_.end(), v);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

bool FanSurface::adjacent(std::size_t i, std::size_t j) const {
  const std::size_t n = rays_.size();
  return (i + 1) % n == j || (j + 1) % n == i;
}

std::vector<Integer> self_intersections(const FanSurface& f) {
  std::vector<Integer> out;
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector w = f.ray(i + n - 1) + f.ray(i + 1);
    const IntVector& v = f.ray(i);
    Integer k = v[0] != 0 ? Integer(w[0] / v[0]) : Integer(w[1] / v[1]);
    out.push_back(-k);
  }
  return out;
}

EquivariantSurface::EquivariantSurface(FanSurface s, LatticeAction a) : surface(std::move(s)), action(std::move(a)) {
  if (action.rank() != 2) throw Error("RankMismatch", "surface actions live on Z^2");
  if (action.convention() != Convention::AntiHomomorphism) {
    throw Error("ConventionMismatch", "surface actions are given on N (anti-homomorphism convention)");
  }
  ray_permutation();
}

std::vector<std::vector<std::size_t>> EquivariantSurface::ray_permutation() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t g = 0; g < action.size(); ++g) {
    std::vector<std::size_t> perm;
    for (const auto& v : surface.rays()) {
      auto j = surface.index_of(action.apply(g, v));
      if (!j) throw Error("NotStable", "element " + action.group()->label(g) + " does not permute the rays");
      perm.push_back(*j);
    }
    out.push_back(std::move(perm));
  }
  return out;
}

namespace {

// P with P image P^{-1} a subgroup of amb, preferring the class representative.
std::optional<IntMatrix> conjugate_into(const MatGroup& image, const MatGroup& amb) {
  if (image.is_trivial()) return IntMatrix::identity(2);
  ClassMembership cm = conjugacy_class_of(image);
  if (class_representative(cm.id).is_subgroup_of(amb)) return cm.conjugator;
  for (const auto& h : all_subgroups(amb)) {
    if (h.order() != image.order()) continue;
    try {
      if (auto p = find_conjugator(image, h)) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace

EquivariantSurface choose_compactification(const LatticeAction& torus_action, bool force_square) {
  if (torus_action.rank() != 2) throw Error("RankMismatch", "compactification is for rank-2 tori");
  MatGroup image = torus_action.image();
  if (!force_square) {
    if (auto p = conjugate_into(image, class_representative(ConjClassId::G1))) {
      return EquivariantSurface(FanSurface::hexagon(), torus_action.conjugated(*p));
    }
  }
  if (auto p = conjugate_into(image, class_representative(ConjClassId::G2))) {
    return EquivariantSurface(FanSurface::square(), torus_action.conjugated(*p));
  }
  throw Error("NotConjugable", subgroup_name(image) + (force_square ? " is not conjugate into <d,s>"
                                                                     : " is conjugate into neither <x,s> nor <d,s>"));
}

std::vector<RayOrbit> minus_one_orbits(const EquivariantSurface& es) {
  auto perm = es.ray_permutation();
  auto self = self_intersections(es.surface);
  const std::size_t n = es.surface.size();
  std::vector<bool> seen(n, false);
  std::vector<RayOrbit> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] || self[i] != -1) continue;
    RayOrbit orbit;
    for (const auto& p : perm) {
      if (!seen[p[i]]) {
        seen[p[i]] = true;
        orbit.push_back(es.surface.ray(p[i]));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RayOrbit> contractible_orbits(const EquivariantSurface& es) {
  std::vector<RayOrbit> out;
  for (auto& orbit : minus_one_orbits(es)) {
    bool ok = true;
    for (std::size_t a = 0; a < orbit.size() && ok; ++a)
      for (std::size_t b = a + 1; b < orbit.size() && ok; ++b)
        ok = !es.surface.adjacent(*es.surface.index_of(orbit[a]), *es.surface.index_of(orbit[b]));
    if (ok) out.push_back(std::move(orbit));
  }
  return out;
}

EquivariantSurface blow_down_orbit(const EquivariantSurface& es, const RayOrbit& orbit) {
  RayOrbit sorted = orbit;
  std::sort(sorted.begin(), sorted.end());
  auto options = contractible_orbits(es);
  if (std::find(options.begin(), options.end(), sorted) == options.end()) {
    std::string text;
    for (const auto& v : sorted) text += to_string(v);
    throw Error("NotContractible", "orbit " + text + " is not a disjoint stable set of (-1)-curves");
  }
  std::vector<IntVector> rest;
  for (const auto& v : es.surface.rays())
    if (std::find(sorted.begin(), sorted.end(), v) == sorted.end()) rest.push_back(v);
  return EquivariantSurface(FanSurface(rest), es.action);
}

std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::P2Form: return "P2Form";
    case ModelClass::DP6Form: return "DP6Form";
    case ModelClass::P1xP1Form: return "P1xP1Form";
    case ModelClass::Other: return "Other";
  }
  return "Other";
}

std::size_t picard_rank_form(const EquivariantSurface& es) {
  auto perm = es.ray_permutation();
  Integer total = 0;
  for (std::size_t g = 0; g < perm.size(); ++g) {
    for (std::size_t i = 0; i < perm[g].size(); ++i)
      if (perm[g][i] == i) total += 1;
    const IntMatrix& a = es.action.matrix(g);
    total -= a(0, 0) + a(1, 1);
  }
  return static_cast<std::size_t>(Integer(total / Integer(perm.size())).get_ui());
}

ModelClass classify_minimal(const FanSurface& f) {
  switch (f.size()) {
    case 3: return ModelClass::P2Form;
    case 6: return ModelClass::DP6Form;
    case 4: {
      auto self = self_intersections(f);
      bool zero = std::all_of(self.begin(), self.end(), [](const Integer& x) { return x == 0; });
      return zero ? ModelClass::P1xP1Form : ModelClass::Other;
    }
    default: return ModelClass::Other;
  }
}

namespace {

MMPResult finish(const EquivariantSurface& es, std::vector<Contraction> steps) {
  MMPResult r;
  r.contractions = std::move(steps);
  r.final = es.surface;
  r.model_class = classify_minimal(es.surface);
  r.picard_rank_form = picard_rank_form(es);
  r.picard_rank_closed = es.surface.size() - 2;
  return r;
}

}  // namespace

std::vector<MMPResult> run_equivariant_mmp(const EquivariantSurface& es, MMPStrategy strategy) {
  std::vector<MMPResult> out;
  std::function<void(const EquivariantSurface&, std::vector<Contraction>&)> go =
      [&](const EquivariantSurface& cur, std::vector<Contraction>& steps) {
        auto options = contractible_orbits(cur);
        if (options.empty()) {
          out.push_back(finish(cur, steps));
          return;
        }
        if (strategy == MMPStrategy::FirstOrbit) options.resize(1);
        for (const auto& orbit : options) {
          steps.push_back({steps.size(), orbit});
          go(blow_down_orbit(cur, orbit), steps);
          steps.pop_back();
        }
      };
  std::vector<Contraction> steps;
  go(es, steps);
  return out;
}

std::vector<std::pair<ModelClass, std::size_t>> distinct_outcomes(const std::vector<MMPResult>& results) {
  std::vector<std::pair<ModelClass, std::size_t>> out;
  for (const auto& r : results) out.emplace_back(r.model_class, r.picard_rank_form);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace galdesc
