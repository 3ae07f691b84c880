#include "galdesc/lattice.hpp"

#include <algorithm>

#include "galdesc/error.hpp"
#include "galdesc/normal_form.hpp"

namespace galdesc {

LatticeMap::LatticeMap(std::size_t source_rank, std::size_t target_rank, IntMatrix matrix)
    : source_rank_(source_rank), target_rank_(target_rank), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_rank_ || matrix_.cols() != source_rank_)
    throw Error("DimensionMismatch", "lattice map matrix must be target_rank x source_rank");
}

LatticeMap::LatticeMap(IntMatrix matrix)
    : source_rank_(matrix.cols()), target_rank_(matrix.rows()), matrix_(std::move(matrix)) {}

LatticeMap LatticeMap::identity(std::size_t n) { return LatticeMap(n, n, IntMatrix::identity(n)); }

LatticeMap LatticeMap::zero(std::size_t source_rank, std::size_t target_rank) {
  return LatticeMap(source_rank, target_rank, IntMatrix(target_rank, source_rank));
}

IntVector LatticeMap::apply(const IntVector& v) const { return matrix_.apply(v); }

LatticeMap LatticeMap::compose(const LatticeMap& other) const {
  if (other.target_rank_ != source_rank_)
    throw Error("DimensionMismatch", "composition of incompatible lattice maps");
  return LatticeMap(other.source_rank_, target_rank_, matrix_ * other.matrix_);
}

LatticeMap LatticeMap::dual() const {
  return LatticeMap(target_rank_, source_rank_, matrix_.transpose());
}

bool LatticeMap::is_injective() const { return rank(matrix_) == source_rank_; }

bool LatticeMap::is_surjective() const {
  if (rank(matrix_) != target_rank_) return false;
  for (const auto& d : elementary_divisors(matrix_))
    if (d != 1) return false;
  return true;
}

bool LatticeMap::has_saturated_image() const {
  for (const auto& d : elementary_divisors(matrix_))
    if (d != 1) return false;
  return true;
}

namespace {

IntMatrix compute_retraction(const LatticeMap& f, const LatticeMap& p, const LatticeMap& s) {
  const std::size_t n = f.source_rank(), np = f.target_rank();
  if (n == 0) return IntMatrix(0, np);
  // r = (F^T F)^{-1} F^T (I - s p), exact because (I - s p) lands in im F.
  RatMatrix F = to_rational(f.matrix());
  RatMatrix Ft = F.transpose();
  RatMatrix proj = RatMatrix::identity(np) - to_rational(s.matrix() * p.matrix());
  RatMatrix r = inverse(Ft * F) * Ft * proj;
  IntMatrix out(n, np);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      if (r(i, j).get_den() != 1) throw Error("NotExact", "retraction is not integral");
      out(i, j) = r(i, j).get_num();
    }
  return out;
}

}  // namespace

ExactSequence::ExactSequence(LatticeMap f, LatticeMap p, LatticeMap section)
    : f_(std::move(f)), p_(std::move(p)), section_(std::move(section)) {
  if (p_.source_rank() != f_.target_rank() || section_.source_rank() != p_.target_rank() ||
      section_.target_rank() != p_.source_rank())
    throw Error("DimensionMismatch", "exact sequence maps do not chain");
  if (f_.source_rank() + p_.target_rank() != f_.target_rank())
    throw Error("NotExact", "ranks do not add up");
  if (!p_.compose(f_).matrix().is_zero()) throw Error("NotExact", "p o f != 0");
  if (p_.compose(section_).matrix() != IntMatrix::identity(p_.target_rank()))
    throw Error("NotExact", "p o section != id");
  retraction_ = LatticeMap(f_.target_rank(), f_.source_rank(), compute_retraction(f_, p_, section_));
}

ExactSequence ExactSequence::with_shifted_section(const IntMatrix& k) const {
  if (k.rows() != f_.source_rank() || k.cols() != p_.target_rank())
    throw Error("DimensionMismatch", "section shift must be rank N x rank N_Y");
  LatticeMap s(p_.target_rank(), f_.target_rank(), section_.matrix() + f_.matrix() * k);
  return ExactSequence(f_, p_, s);
}

std::vector<IntVector> saturate_sublattice(const std::vector<IntVector>& gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.size() != n) throw Error("DimensionMismatch", "generator length differs from rank");
  if (gens.empty()) return {};
  IntMatrix a = IntMatrix::from_rows(gens, n);
  SmithForm f = smith_normal_form(a);
  std::size_t r = 0;
  while (r < std::min(a.rows(), a.cols()) && f.s(r, r) != 0) ++r;
  // Row space of a is spanned over Q by the first r rows of v^{-1}, which are
  // part of a Z-basis and hence span a saturated lattice.
  IntMatrix vinv = inverse_unimodular(f.v);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < r; ++i) rows.push_back(vinv.row(i));
  return hnf_basis(rows, n);
}

std::vector<IntVector> saturate_sublattice(const std::vector<IntVector>& gens) {
  if (gens.empty()) throw Error("DimensionMismatch", "rank of empty generator list is unknown");
  return saturate_sublattice(gens, gens.front().size());
}

std::vector<IntVector> left_kernel_basis(const IntMatrix& a) {
  std::vector<RatVector> ker = nullspace(to_rational(a.transpose()));
  std::vector<IntVector> gens;
  for (const auto& k : ker) gens.push_back(primitive_part(k));
  if (gens.empty()) return {};
  std::vector<IntVector> sat = saturate_sublattice(gens, a.rows());
  for (auto& v : sat) std::reverse(v.begin(), v.end());
  std::vector<IntVector> basis = hnf_basis(sat, a.rows());
  for (auto& v : basis) std::reverse(v.begin(), v.end());
  return basis;
}

ExactSequence quotient_with_section(const LatticeMap& f) {
  const std::size_t n = f.source_rank(), np = f.target_rank();
  if (!f.is_injective()) throw Error("NotInjective", "embedding " + to_string(f.matrix()) + " is not injective");
  if (!f.has_saturated_image())
    throw Error("NotSaturated", "image of " + to_string(f.matrix()) + " is not saturated");
  const std::size_t k = np - n;
  std::vector<IntVector> prow = left_kernel_basis(f.matrix());
  IntMatrix P = prow.empty() ? IntMatrix(0, np) : IntMatrix::from_rows(prow, np);

  // Particular solutions of P x = e_j from the Smith form of P, then reduced
  // modulo im f so the pivot coordinates of the HNF of im f lie in [0, pivot).
  IntMatrix S(np, k);
  if (k > 0) {
    SmithForm sf = smith_normal_form(P);
    IntMatrix hf = hermite_normal_form(f.matrix().transpose()).h;
    for (std::size_t j = 0; j < k; ++j) {
      IntVector y(np, Integer(0));
      for (std::size_t i = 0; i < k; ++i) {
        if (sf.s(i, i) != 1) throw Error("NotSaturated", "quotient map is not surjective");
        y[i] = sf.u(i, j);
      }
      IntVector x = reduce_modulo_hnf(sf.v.apply(y), hf);
      for (std::size_t i = 0; i < np; ++i) S(i, j) = x[i];
    }
  }
  return ExactSequence(f, LatticeMap(np, k, P), LatticeMap(k, np, S));
}

}  // namespace galdesc
