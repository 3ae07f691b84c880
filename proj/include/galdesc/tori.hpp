#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/convex.hpp"
#include "galdesc/zgroups.hpp"

namespace galdesc {

// Character lattice M = Z^rank with the Galois action on it (homomorphism
// convention).
struct TorusDatum {
  std::size_t rank = 0;
  LatticeAction action;
  std::string name;
  bool faithful = true;

  TorusDatum() = default;
  TorusDatum(LatticeAction act, std::string name, bool require_faithful = true);
  // The dual action on cocharacters (anti-homomorphism convention).
  LatticeAction cocharacter_action() const { return action.dual(); }
};

TorusDatum torus_from_class(ConjClassId c);
// Long description of the torus as a combination of Weil restrictions and
// norm-one tori, e.g. "R_{k1/k}(R^{(1)}_{k'/k1}(G_m)) ∩ ...".
std::string torus_description(ConjClassId c);

enum class QuasiTrivialStatus { Yes, No, Inconclusive };

struct QuasiTrivialResult {
  QuasiTrivialStatus status = QuasiTrivialStatus::Inconclusive;
  std::vector<IntVector> basis;  // only for Yes
  std::string certificate;      // reason for No
};

std::string to_string(QuasiTrivialStatus s);

// Looks for a Z-basis permuted by the action among primitive vectors of
// sup-norm <= search_bound. No is certified by an element of negative
// trace or a cyclic subgroup with nonzero first cohomology; both are
// impossible for permutation lattices.
QuasiTrivialResult is_quasi_trivial(const TorusDatum& t, std::size_t search_bound = 3);

// Order of H^1(<g>, Z^n) = ker(1 + g + ... ) / im(g - 1).
Integer cyclic_h1_order(const IntMatrix& g);

bool weight_cone_stable(const TorusDatum& t, const ConeRec& omega);

// Symbolic entry of the classification table for torsors of 2-dimensional
// tori. Never evaluated.
struct H1Expr {
  enum class Kind { Zero, Br, Beta, Quotient, BrEta, Sum };
  Kind kind = Kind::Zero;
  std::string top, bottom;                // Br(top/bottom)
  std::string top2, bottom2;              // second extension for BrEta
  std::vector<std::shared_ptr<const H1Expr>> args;  // Beta: 1, Quotient: 2, Sum: n

  std::string to_string() const;
};

using H1ExprPtr = std::shared_ptr<const H1Expr>;

struct H1Entry {
  ConjClassId class_id = ConjClassId::Trivial;
  H1ExprPtr expression;
  // True for the row whose group is trivial in the table; unset for the
  // split torus, which is outside the table.
  std::optional<bool> auto_trivial;

  std::string text() const { return expression->to_string(); }
};

H1Entry h1_table_lookup(ConjClassId c);

}  // namespace galdesc
