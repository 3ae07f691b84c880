#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galdesc/ahdata.hpp"
#include "galdesc/convex.hpp"
#include "galdesc/lattice.hpp"
#include "galdesc/zgroups.hpp"

namespace galdesc {

// An affine toric variety X_sigma' together with a subtorus N -> N'. The
// optional ambient action is on N' (anti-homomorphism convention) and acts
// on monomials without twisting constants.
struct DowngradeInput {
  ConeRec ambient_cone;
  LatticeMap embedding;
  std::optional<LatticeAction> ambient_action;
  // When set, the section s of the quotient is replaced by s + F k.
  std::optional<IntMatrix> section_shift;
};

struct AHDatum {
  ConeRec weight_cone;
  BaseY base;
  PPDivisor divisor;
  std::optional<CocycleH> cocycle;
  LatticeAction torus_action;  // on M, homomorphism convention
  ExactSequence sequence;
  // Which reading of the section defect validated ("" without an action).
  std::string cocycle_convention;
};

// Splits sigma' along the section: Delta_rho = {n : F n + s v_rho in sigma'},
// omega = F^*(sigma'^dual), base fan = projection of the faces of sigma'.
// With an ambient action the cocycle comes from candidate_cocycle.
// Throws Error("ActionNotCompatible"); NotInjective / NotSaturated propagate.
AHDatum downgrade_cone(const DowngradeInput& inp);

// Section defect e_g(m) = s^T (tau'_g r^T m - r^T tau_g m) in M_Y. The
// readings chi^{e_g(tau_g^{-1} m)}, chi^{e_g(m)}, chi^{-e_g(m)},
// chi^{-e_g(tau_g^{-1} m)} are tried in that order; the first one passing
// both cocycle conditions is returned together with its name.
// Throws Error("CocycleDerivationFailed").
std::pair<CocycleH, std::string> candidate_cocycle(const DowngradeInput& inp, const AHDatum& datum);

struct DowngradeSample {
  IntVector m;
  std::vector<IntVector> fiber;   // m' in sigma'^dual, F^* m' = m, |m'| <= box
  std::vector<IntVector> graded;  // u in the graded piece whose lift is in the box
  bool match = false;
};

struct DowngradeReport {
  long box = 0;
  std::vector<DowngradeSample> samples;
  bool passed() const;
};

// Lattice-point oracle: compares the fibers of F^* over each sample with the
// graded pieces of the divisor, transported by m' = r^T m + P^T u.
DowngradeReport verify_downgrade(const DowngradeInput& inp, const AHDatum& datum, long box,
                                 const std::vector<IntVector>& samples);
// Samples defaulting to the points of omega with sup-norm <= 2.
DowngradeReport verify_downgrade(const DowngradeInput& inp, const AHDatum& datum, long box);

std::vector<IntVector> default_downgrade_samples(const ConeRec& omega);

}  // namespace galdesc
