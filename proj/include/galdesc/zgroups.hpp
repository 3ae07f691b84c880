#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/convex.hpp"
#include "galdesc/matrix.hpp"

namespace galdesc {

// Finite group of unimodular integer matrices. Elements are sorted
// lexicographically, so equal groups compare equal as lists.
class MatGroup {
 public:
  MatGroup() = default;

  std::size_t rank() const { return rank_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<IntMatrix>& elements() const { return elements_; }
  const std::vector<IntMatrix>& generators() const { return generators_; }

  bool contains(const IntMatrix& m) const;
  std::optional<std::size_t> index_of(const IntMatrix& m) const;
  bool is_subgroup_of(const MatGroup& other) const;
  bool is_normal_in(const MatGroup& other) const;
  bool is_abelian() const;
  bool is_trivial() const { return elements_.size() == 1; }
  // P g P^{-1} for every element.
  MatGroup conjugated(const IntMatrix& p) const;

  friend bool operator==(const MatGroup& a, const MatGroup& b) {
    return a.rank_ == b.rank_ && a.elements_ == b.elements_;
  }
  friend bool operator<(const MatGroup& a, const MatGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements_ < b.elements_;
  }

  friend MatGroup group_closure(const std::vector<IntMatrix>&, std::size_t, std::size_t);

 private:
  std::size_t rank_ = 0;
  std::vector<IntMatrix> elements_;
  std::vector<IntMatrix> generators_;
};

// Smallest group containing gens. Throws NotUnimodular, or NotFinite when
// the size exceeds cap.
MatGroup group_closure(const std::vector<IntMatrix>& gens, std::size_t rank, std::size_t cap = 1000);

IntMatrix matrix_d();  // [[-1,0],[0,1]]
IntMatrix matrix_s();  // [[0,1],[1,0]]
IntMatrix matrix_x();  // [[1,-1],[1,0]]

std::size_t element_order(const IntMatrix& m, std::size_t cap = 1000);
// "D12", "D8", "D6", "C2xC2", "C6", "C4", "C3", "C2", "trivial"; general
// groups get "order-<n>".
std::string isomorphism_type(const MatGroup& g);
// Short word for a rank-2 matrix in terms of d, s, x ("x^2", "-s", "ds"),
// falling back to the matrix literal.
std::string element_name(const IntMatrix& m);
// "<x^2, -s>" using a small generating set.
std::string subgroup_name(const MatGroup& g);

// Abstract finite group given by its multiplication table; element 0 is
// the identity.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels);
  static std::shared_ptr<const FiniteGroup> trivial();

  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of_label(const std::string& l) const;
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

enum class Convention { Homomorphism, AntiHomomorphism };

// Action of an abstract finite group by integer matrices. Homomorphism:
// M(ab) = M(a) M(b) (characters). AntiHomomorphism: M(ab) = M(b) M(a)
// (cocharacters). Non-faithful actions are allowed.
class LatticeAction {
 public:
  LatticeAction() = default;
  LatticeAction(GroupPtr group, std::vector<IntMatrix> matrices, Convention convention);
  // Abstract group read off the matrices; labels are element names.
  static LatticeAction from_matgroup(const MatGroup& g, Convention convention);
  static LatticeAction trivial(std::size_t rank, Convention convention);

  const GroupPtr& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return matrices_.size(); }
  Convention convention() const { return convention_; }
  const IntMatrix& matrix(std::size_t g) const { return matrices_[g]; }
  const std::vector<IntMatrix>& matrices() const { return matrices_; }
  IntVector apply(std::size_t g, const IntVector& v) const { return matrices_[g].apply(v); }

  MatGroup image() const;
  bool is_faithful() const;
  // Transposed matrices with the opposite convention: the action on the
  // dual lattice compatible with the pairing.
  LatticeAction dual() const;
  // Same group and convention with matrices P M P^{-1}.
  LatticeAction conjugated(const IntMatrix& p) const;

 private:
  GroupPtr group_;
  std::vector<IntMatrix> matrices_;
  Convention convention_ = Convention::Homomorphism;
  std::size_t rank_ = 0;
};

// P with P a(g) P^{-1} = b(g) for every labeled element, searched with
// entries bounded by bound. Both actions must share the group table.
std::optional<IntMatrix> representation_conjugator(const LatticeAction& a, const LatticeAction& b, int bound = 4);

enum class ConjClassId { Trivial, G1, G2, G3, G4, G5, G6, G7, G8, G9, G10, G11, G12 };

std::string to_string(ConjClassId c);
// Accepts "G1".."G12", "trivial", "Trivial"; throws Error("UnknownClass").
ConjClassId parse_class_id(const std::string& s);
std::vector<ConjClassId> all_class_ids();  // G1..G12, Trivial

MatGroup class_representative(ConjClassId c);
std::string class_generators_text(ConjClassId c);

struct ClassRecord {
  ConjClassId id;
  MatGroup representative;
  std::string generators;
  std::string isomorphism_type;
};

// Invariants used to certify non-conjugacy.
struct ConjugacyFingerprint {
  std::size_t order = 0;
  std::vector<std::vector<Integer>> elements;  // sorted (trace, det, divisors of g - 1)
  std::vector<Integer> coinvariants;           // divisors of the span of all g - 1
  friend bool operator==(const ConjugacyFingerprint&, const ConjugacyFingerprint&) = default;
};

ConjugacyFingerprint conjugacy_fingerprint(const MatGroup& g);

// P with P g P^{-1} = h. Returns nullopt when the fingerprints certify
// non-conjugacy; throws Error("ConjugatorNotFound") when the fingerprints
// agree but no conjugator with entries in [-bound, bound] exists.
std::optional<IntMatrix> find_conjugator(const MatGroup& g, const MatGroup& h, int bound = 4);

// All 12 nontrivial classes, found by enumerating the subgroups of <x,s>
// and <d,s> and merging conjugate ones.
std::vector<ClassRecord> enumerate_finite_subgroups_gl2(int conjugator_bound = 2);

struct ClassMembership {
  ConjClassId id;
  IntMatrix conjugator;  // conjugator * g * conjugator^{-1} == representative
};

ClassMembership conjugacy_class_of(const MatGroup& g, int bound = 4);

std::vector<MatGroup> all_subgroups(const MatGroup& g);
MatGroup normal_closure(const MatGroup& h, const MatGroup& g);
bool is_subnormal(const MatGroup& h, const MatGroup& g);

struct PosetEdge {
  MatGroup sub;
  MatGroup super;
  std::size_t index;
  bool normal;
};

// Inclusion diagram of the subnormal subgroups: covering relations among
// them, plus an edge N -> amb for every nontrivial proper normal subgroup
// N that is not already covered.
std::vector<PosetEdge> subgroup_poset(const MatGroup& amb);

// Throws Error("NotStable") if the vectors are not permuted by the action.
std::vector<std::vector<IntVector>> orbits_on_vectors(const LatticeAction& act, const std::vector<IntVector>& vectors);

// Rank of the fixed sublattice, (1/|G|) sum of traces.
std::size_t invariant_rank(const LatticeAction& act);

bool is_fan_stable(const LatticeAction& act, const QuasifanRec& fan);

}  // namespace galdesc
