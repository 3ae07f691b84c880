#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galdesc/matrix.hpp"

namespace galdesc {

// Univariate polynomial over Q in the variable t, dense, low degree first,
// no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c) : QPoly(Rational(c)) {}
  QPoly(const Rational& c);
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly t();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator-() const;
  // Euclidean division; throws DivisionByZero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  static QPoly gcd(QPoly a, QPoly b);  // monic, or zero
  QPoly monic() const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }
  friend bool operator<(const QPoly& a, const QPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return a.c_ < b.c_;
  }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Element of Q(t): reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(const QPoly& p) : num_(p), den_(1) {}
  RatFunc(QPoly num, QPoly den);
  static RatFunc t() { return RatFunc(QPoly::t()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const;  // throws if not constant

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(long e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  friend bool operator<(const RatFunc& a, const RatFunc& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  std::string to_string() const;

 private:
  QPoly num_, den_;
};

// Parses "3/2", "t", "t^2-3*t+1", "(t+1)/(t-1)" style text.
RatFunc parse_ratfunc(const std::string& s);

enum class BaseField { Rationals, RationalFunctions };

// K = F[x]/(f) with f monic of degree d >= 1. Irreducibility is the
// caller's responsibility.
struct NumberFieldSpec {
  BaseField base = BaseField::Rationals;
  std::vector<RatFunc> min_poly;  // coefficients, low degree first, monic
  std::string label;

  std::size_t degree() const { return min_poly.size() - 1; }
  friend bool operator==(const NumberFieldSpec& a, const NumberFieldSpec& b) {
    return a.base == b.base && a.min_poly == b.min_poly;
  }
};

using FieldPtr = std::shared_ptr<const NumberFieldSpec>;

// Validates and wraps a field spec. Throws Error("InvalidField").
FieldPtr make_field(BaseField base, std::vector<RatFunc> min_poly, std::string label);
FieldPtr rationals_field();
FieldPtr gaussian_field();                                // Q(i), i^2 = -1
FieldPtr quadratic_field(const Integer& d);               // Q(sqrt d)
FieldPtr cubic_radical_t_field();                         // Q(t)[u]/(u^3 - t)
// Q(sqrt a, sqrt b) through the primitive element sqrt a + sqrt b.
FieldPtr biquadratic_field(const Integer& a, const Integer& b);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<RatFunc> coeffs);
  static FieldElement constant(FieldPtr field, const RatFunc& c);
  static FieldElement generator(FieldPtr field);
  static FieldElement zero(FieldPtr field) { return constant(std::move(field), RatFunc(0)); }
  static FieldElement one(FieldPtr field) { return constant(std::move(field), RatFunc(1)); }

  const FieldPtr& field() const { return field_; }
  const std::vector<RatFunc>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;  // throws DivisionByZero
  FieldElement pow(long e) const;

  // Matrix of multiplication by this element on the power basis
  // (column j holds the coordinates of this * alpha^j).
  std::vector<std::vector<RatFunc>> multiplication_matrix() const;
  RatFunc norm() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string to_string(const std::string& gen = "a") const;

 private:
  FieldPtr field_;
  std::vector<RatFunc> coeffs_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

// Base-linear field automorphism determined by the image of the generator.
class Automorphism {
 public:
  Automorphism() = default;
  // Throws Error("NotAnAutomorphism") unless min_poly(image) == 0.
  Automorphism(FieldPtr field, FieldElement image_of_generator);
  static Automorphism identity(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const FieldElement& image_of_generator() const { return image_; }
  FieldElement apply(const FieldElement& x) const;
  // this after other
  Automorphism compose(const Automorphism& other) const;
  bool is_identity() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.image_ == b.image_; }

 private:
  FieldPtr field_;
  FieldElement image_;
};

// Polynomial in named variables with coefficients in Q(t).
class MPoly {
 public:
  using Monomial = std::vector<int>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static MPoly constant(std::size_t nvars, const RatFunc& c);
  static MPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, RatFunc>& terms() const { return terms_; }
  RatFunc coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const RatFunc& c);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  bool is_zero() const { return terms_.empty(); }
  RatFunc evaluate(const std::vector<RatFunc>& point) const;

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  // Terms in descending lexicographic order of exponents.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Monomial, RatFunc> terms_;
};

// {1, sqrt a, sqrt b, sqrt a * sqrt b} inside biquadratic_field(a, b).
std::vector<FieldElement> biquadratic_standard_basis(const Integer& a, const Integer& b);

// det of multiplication by  sum_i basis_i * x_i  on the power basis.
// Throws Error("NotABasis").
MPoly norm_form(const FieldPtr& field, const std::vector<FieldElement>& basis);

// Hilbert symbol (a, b)_p over Q for nonzero integers; p = 0 means the real place.
int hilbert_symbol(const Integer& a, const Integer& b, const Integer& p);

// Prime factors (distinct, ascending) of |n| for n != 0.
std::vector<Integer> prime_factors(const Integer& n);

struct NormMembership {
  bool member = false;
  std::optional<std::pair<Rational, Rational>> witness;  // x^2 - d y^2 = alpha
};

// Whether alpha is a norm from Q(sqrt d). Throws Error("NotSquarefree"),
// Error("InvalidArgument") for d in {0, 1} or alpha = 0.
NormMembership quadratic_norm_membership(const Integer& d, const Rational& alpha, long witness_bound = 50);

}  // namespace galdesc
