#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/convex.hpp"
#include "galdesc/fields.hpp"
#include "galdesc/zgroups.hpp"

namespace galdesc {

// Galois action on the constants: one field automorphism per element of
// the abstract group, composing as a homomorphism.
class GaloisPresentation {
 public:
  GaloisPresentation() = default;
  // Throws Error("GaloisNotClosed") unless aut[ab] == aut[a] o aut[b].
  GaloisPresentation(FieldPtr field, GroupPtr group, std::vector<Automorphism> automorphisms);
  // Every element acts trivially on the constants.
  static GaloisPresentation trivial(FieldPtr field, GroupPtr group);

  const FieldPtr& field() const { return field_; }
  const GroupPtr& group() const { return group_; }
  const Automorphism& automorphism(std::size_t g) const { return auts_[g]; }
  FieldElement apply(std::size_t g, const FieldElement& x) const { return auts_[g].apply(x); }

 private:
  FieldPtr field_;
  GroupPtr group_;
  std::vector<Automorphism> auts_;
};

// Monomial c * chi^u on the base; u is empty on a point base.
struct MonomialFunction {
  FieldElement constant;
  IntVector exponent;

  static MonomialFunction one(const FieldPtr& field, std::size_t base_rank);
  MonomialFunction operator*(const MonomialFunction& o) const;
  MonomialFunction inverse() const;
  MonomialFunction pow(const Integer& e) const;
  bool is_one() const;
  friend bool operator==(const MonomialFunction& a, const MonomialFunction& b) {
    return a.constant == b.constant && a.exponent == b.exponent;
  }
  std::string to_string() const;
};

// Weil Q-divisor on the base, zero coefficients omitted.
class WeightedDivisor {
 public:
  WeightedDivisor() = default;
  explicit WeightedDivisor(const std::map<std::string, Rational>& coeffs);

  Rational at(const std::string& label) const;
  void set(const std::string& label, const Rational& c);
  const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
  WeightedDivisor operator+(const WeightedDivisor& o) const;
  WeightedDivisor operator-(const WeightedDivisor& o) const;
  // Coefficientwise a >= b.
  bool dominates(const WeightedDivisor& o) const;
  friend bool operator==(const WeightedDivisor& a, const WeightedDivisor& b) { return a.coeffs_ == b.coeffs_; }
  std::string to_string() const;

 private:
  std::map<std::string, Rational> coeffs_;
};

enum class BaseKind { Point, ToricFan, AbstractDivisors };

// Combinatorial base Y with its Galois action. For a toric base the action
// is given on N_Y (anti-homomorphism convention); functions transform by
// the transposed action on M_Y.
class BaseY {
 public:
  BaseY() = default;

  static BaseY point(GaloisPresentation constants);
  // Ray labels default to "D0", "D1", ... in the order of fan.rays().
  static BaseY toric(QuasifanRec fan, LatticeAction action_on_ny, GaloisPresentation constants,
                     std::vector<std::string> ray_labels = {});
  // P^1 with rays +1 ("D0") and -1 ("Dinf"); swap selects whether the
  // non-identity elements exchange them (the group must then have order 2).
  static BaseY projective_line(GaloisPresentation constants, bool swap);
  // Prime divisors permuted by the group: perms[g][i] = j means that
  // (g^* D) at label i equals D at label j.
  static BaseY abstract(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> perms,
                        GaloisPresentation constants);

  BaseKind kind() const { return kind_; }
  const GaloisPresentation& constants() const { return constants_; }
  const GroupPtr& group() const { return constants_.group(); }
  std::size_t rank() const { return rank_; }  // rank of M_Y; 0 unless toric
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const QuasifanRec& fan() const { return fan_; }
  const LatticeAction& action_on_ny() const { return action_ny_; }
  std::optional<std::size_t> label_index(const std::string& l) const;
  const IntVector& ray_of(const std::string& label) const;

  // (g^* D) at label i equals D at the label whose ray is tau_hat_g(v_i).
  WeightedDivisor pullback(std::size_t g, const WeightedDivisor& d) const;
  // div(c chi^u) = sum <u, v_rho> D_rho.
  WeightedDivisor divisor_of(const MonomialFunction& f) const;
  // sigma^#_g(c chi^u) = g(c) chi^{tau_tilde_g u}.
  MonomialFunction sharp(std::size_t g, const MonomialFunction& f) const;

 private:
  BaseKind kind_ = BaseKind::Point;
  GaloisPresentation constants_;
  std::size_t rank_ = 0;
  std::vector<std::string> labels_;
  std::vector<IntVector> rays_;
  QuasifanRec fan_;
  LatticeAction action_ny_;
  std::vector<std::vector<std::size_t>> perms_;  // pullback index map per element
};

// D = sum Delta_i (x) D_i with common tail cone sigma in N_Q. Labels absent
// from the map carry the trivial coefficient sigma.
class PPDivisor {
 public:
  PPDivisor() = default;
  // Throws Error("TailMismatch") or Error("UnknownLabel").
  PPDivisor(BaseY base, ConeRec tail, std::map<std::string, PolyhedronRec> coefficients);

  const BaseY& base() const { return base_; }
  const ConeRec& tail() const { return tail_; }
  const ConeRec& weight_cone() const { return omega_; }
  std::size_t rank() const { return tail_.ambient_rank(); }
  const std::map<std::string, PolyhedronRec>& coefficients() const { return coeffs_; }
  PolyhedronRec coefficient(const std::string& label) const;

 private:
  BaseY base_;
  ConeRec tail_, omega_;
  std::map<std::string, PolyhedronRec> coeffs_;
};

// Throws Error("OutsideWeightCone").
WeightedDivisor ppdiv_evaluate(const PPDivisor& d, const IntVector& m);

// Map M -> monomial functions given on the standard basis; h_g for each
// element g of the group.
struct CocycleH {
  std::vector<std::vector<MonomialFunction>> images;  // images[g][i] = h_g(e_i)

  static CocycleH trivial(const FieldPtr& field, std::size_t group_order, std::size_t rank_m,
                          std::size_t base_rank);
  MonomialFunction evaluate(std::size_t g, const IntVector& m) const;
};

// Group homomorphism g : M -> monomial functions, by basis images.
struct MonomialMap {
  std::vector<MonomialFunction> images;
  MonomialFunction evaluate(const IntVector& m) const;
};

struct CheckEntry {
  std::vector<std::string> gammas;
  IntVector m;
  bool pass = false;
  std::string lhs, rhs;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool passed() const;
  const CheckEntry* first_failure() const;
};

// Characters m used by the condition checks: the Hilbert basis of omega and
// pairwise sums when omega is pointed; otherwise nonzero points of sup-norm
// at most 2.
std::vector<IntVector> condition_test_set(const ConeRec& omega);
// Minimal generators of the monoid of lattice points of a pointed cone.
std::vector<IntVector> hilbert_basis(const ConeRec& cone);

// g^*(D(m)) = D(tau_g m) + div h_g(tau_g m) for every g and test m.
// Throws Error("BaseNotSupported") for abstract bases.
CheckReport check_condition1(const PPDivisor& d, const LatticeAction& tau, const CocycleH& h);
// h_a(m) * sigma^#_a(h_b(tau_a^{-1} m)) == h_{ab}(m).
CheckReport check_condition2(const CocycleH& h, const LatticeAction& tau, const BaseY& base,
                             const std::vector<IntVector>& test_set);
CheckReport check_condition2(const CocycleH& h, const LatticeAction& tau, const PPDivisor& d);

// f X_m  with f = c chi^u, on the graded piece of degree m.
struct GradedTerm {
  FieldElement coefficient;
  IntVector exponent;
  IntVector degree;
  friend bool operator==(const GradedTerm& a, const GradedTerm& b) {
    return a.coefficient == b.coefficient && a.exponent == b.exponent && a.degree == b.degree;
  }
};

// f X_m -> sigma^#_g(f) h_g(tau_g m) X_{tau_g m}. When condition (2) holds,
// apply(a, apply(b, t)) == apply(ab, t).
GradedTerm twisted_structure_apply(const PPDivisor& d, const LatticeAction& tau, const CocycleH& h, std::size_t g,
                                   const GradedTerm& term);

// D'(m) = D(m) - div g(m): each Delta_rho moves by -(<u_i, v_rho>)_i.
// Throws Error("NotPrincipalShift") when div g is not computable.
PPDivisor shift_by_coboundary(const PPDivisor& d, const MonomialMap& g);
// h_g(m) = g(m)^{-1} sigma^#_g(g(tau_g^{-1} m)).
CocycleH coboundary_of(const MonomialMap& g, const LatticeAction& tau, const BaseY& base);
// h'_g(m) = h_g(m) g(m) / sigma^#_g(g(tau_g^{-1} m)); trivial exactly when
// h is the coboundary of g.
CocycleH shift_cocycle(const CocycleH& h, const MonomialMap& g, const LatticeAction& tau, const BaseY& base);
bool is_trivial_cocycle(const CocycleH& h);

// Lattice points u in M_Y with sup-norm <= box and <u, v_rho> >= -D(m)_rho.
std::vector<IntVector> graded_piece_points(const PPDivisor& d, const IntVector& m, long box);

// P^1-only heuristic: true when some Hilbert basis element has negative
// degree, which rules out properness. Silent (false) otherwise.
bool definitely_improper_on_p1(const PPDivisor& d);

}  // namespace galdesc
