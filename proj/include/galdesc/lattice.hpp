#pragma once

#include <vector>

#include "galdesc/matrix.hpp"

namespace galdesc {

// Homomorphism Z^source_rank -> Z^target_rank acting on column vectors.
class LatticeMap {
 public:
  LatticeMap() = default;
  LatticeMap(std::size_t source_rank, std::size_t target_rank, IntMatrix matrix);
  explicit LatticeMap(IntMatrix matrix);

  static LatticeMap identity(std::size_t n);
  static LatticeMap zero(std::size_t source_rank, std::size_t target_rank);

  std::size_t source_rank() const { return source_rank_; }
  std::size_t target_rank() const { return target_rank_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& v) const;
  // this after other
  LatticeMap compose(const LatticeMap& other) const;
  // Dual map between dual lattices (transpose).
  LatticeMap dual() const;

  bool is_injective() const;
  bool is_surjective() const;
  // Image is saturated in the target (torsion-free cokernel).
  bool has_saturated_image() const;

  friend bool operator==(const LatticeMap& a, const LatticeMap& b) {
    return a.source_rank_ == b.source_rank_ && a.target_rank_ == b.target_rank_ &&
           a.matrix_ == b.matrix_;
  }

 private:
  std::size_t source_rank_ = 0;
  std::size_t target_rank_ = 0;
  IntMatrix matrix_;
};

// 0 -> N --f--> N' --p--> N_Y -> 0 together with a section s of p.
class ExactSequence {
 public:
  ExactSequence() = default;
  ExactSequence(LatticeMap f, LatticeMap p, LatticeMap section);

  const LatticeMap& f() const { return f_; }
  const LatticeMap& p() const { return p_; }
  const LatticeMap& section() const { return section_; }
  // The left inverse r of f with f r + s p = id on N'.
  const LatticeMap& retraction() const { return retraction_; }

  // Same sequence with section s + f k, for k : N_Y -> N.
  ExactSequence with_shifted_section(const IntMatrix& k) const;

 private:
  LatticeMap f_, p_, section_, retraction_;
};

// Basis of span_Q(gens) ∩ Z^n, in Hermite normal form.
std::vector<IntVector> saturate_sublattice(const std::vector<IntVector>& gens, std::size_t n);
std::vector<IntVector> saturate_sublattice(const std::vector<IntVector>& gens);

// Saturated basis of {y : y^T a = 0}, rows in reverse Hermite form (HNF of
// the column-reversed matrix, reversed back).
std::vector<IntVector> left_kernel_basis(const IntMatrix& a);

// Cokernel of an injective map with saturated image, with a deterministic
// section. Throws Error("NotInjective") or Error("NotSaturated").
ExactSequence quotient_with_section(const LatticeMap& f);

}  // namespace galdesc
