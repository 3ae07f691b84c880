#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galdesc/matrix.hpp"
#include "galdesc/zgroups.hpp"

namespace galdesc {

// Smooth complete fan in Z^2 given by its rays in counterclockwise order.
class FanSurface {
 public:
  FanSurface() = default;
  // Accepts either orientation and stores the counterclockwise one.
  // Throws Error("NotSmooth"), Error("NotComplete") or Error("TooFewRays").
  explicit FanSurface(std::vector<IntVector> rays);

  static FanSurface hexagon();
  static FanSurface square();
  static FanSurface projective_plane();

  const std::vector<IntVector>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }
  const IntVector& ray(std::size_t i) const { return rays_[i % rays_.size()]; }
  std::optional<std::size_t> index_of(const IntVector& v) const;
  bool adjacent(std::size_t i, std::size_t j) const;

  friend bool operator==(const FanSurface&, const FanSurface&) = default;

 private:
  std::vector<IntVector> rays_;
};

// D_i^2 from v_{i-1} + v_{i+1} = -(D_i^2) v_i.
std::vector<Integer> self_intersections(const FanSurface& f);

struct EquivariantSurface {
  FanSurface surface;
  LatticeAction action;  // on N, anti-homomorphism convention

  // Throws Error("NotStable") unless every matrix permutes the rays.
  EquivariantSurface(FanSurface surface, LatticeAction action);
  // perm[g][i] = index of tau_hat_g(v_i)
  std::vector<std::vector<std::size_t>> ray_permutation() const;
};

// Hexagon when the image is conjugate into <x,s> (or the group is trivial),
// otherwise the square; force_square selects the square whenever the image
// is conjugate into <d,s>. The action is returned in the conjugated
// coordinates. Throws Error("NotConjugable").
EquivariantSurface choose_compactification(const LatticeAction& torus_action, bool force_square = false);

using RayOrbit = std::vector<IntVector>;  // sorted

// Orbits of (-1)-rays, whether or not they can be contracted.
std::vector<RayOrbit> minus_one_orbits(const EquivariantSurface& es);
// Orbits of (-1)-rays whose members are pairwise non-adjacent, sorted.
std::vector<RayOrbit> contractible_orbits(const EquivariantSurface& es);
// Throws Error("NotContractible").
EquivariantSurface blow_down_orbit(const EquivariantSurface& es, const RayOrbit& orbit);

enum class ModelClass { P2Form, DP6Form, P1xP1Form, Other };
std::string to_string(ModelClass c);

struct Contraction {
  std::size_t step;
  RayOrbit orbit;
};

struct MMPResult {
  std::vector<Contraction> contractions;
  FanSurface final;
  ModelClass model_class = ModelClass::Other;
  std::size_t picard_rank_form = 0;
  std::size_t picard_rank_closed = 0;
};

enum class MMPStrategy { FirstOrbit, Exhaustive };

// Rank of the invariants of Z^{rays} / M: (1/|G|) sum (fixed rays - trace).
std::size_t picard_rank_form(const EquivariantSurface& es);
// 3 rays -> P2Form, 6 -> DP6Form, 4 with all self-intersections 0 ->
// P1xP1Form; anything else (Hirzebruch F_n, n >= 2, ...) -> Other.
ModelClass classify_minimal(const FanSurface& f);

// FirstOrbit yields one result; Exhaustive yields one per maximal
// contraction sequence, in the order of the depth-first search.
std::vector<MMPResult> run_equivariant_mmp(const EquivariantSurface& es, MMPStrategy strategy);

// Distinct (model class, form Picard rank) pairs among the results.
std::vector<std::pair<ModelClass, std::size_t>> distinct_outcomes(const std::vector<MMPResult>& results);

}  // namespace galdesc
