#include <algorithm>
#include <functional>

#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"

namespace galdesc {

namespace {

using RFMatrix = std::vector<std::vector<RatFunc>>;

// Solves a x = b over Q(t); returns nullopt when a is singular.
std::optional<std::vector<RatFunc>> solve(RFMatrix a, std::vector<RatFunc> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<RatFunc> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

RatFunc determinant(RFMatrix a) {
  const std::size_t n = a.size();
  RatFunc det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return RatFunc(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      RatFunc f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || (a && b && *a == *b); }

void require_same(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw Error("FieldMismatch", "elements belong to different fields");
}

// Product of coefficient vectors reduced modulo the monic minimal polynomial.
std::vector<RatFunc> mul_mod(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b,
                             const std::vector<RatFunc>& f) {
  const std::size_t d = f.size() - 1;
  std::vector<RatFunc> prod(2 * d - 1, RatFunc(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (!b[j].is_zero()) prod[i + j] += a[i] * b[j];
  }
  for (std::size_t k = prod.size(); k-- > d;) {
    if (prod[k].is_zero()) continue;
    RatFunc c = prod[k];
    for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= c * f[i];
  }
  prod.resize(d);
  return prod;
}

}  // namespace

FieldPtr make_field(BaseField base, std::vector<RatFunc> min_poly, std::string label) {
  while (!min_poly.empty() && min_poly.back().is_zero()) min_poly.pop_back();
  if (min_poly.size() < 2) throw Error("InvalidField", "minimal polynomial must have degree >= 1");
  if (min_poly.back() != RatFunc(1)) throw Error("InvalidField", "minimal polynomial must be monic");
  if (base == BaseField::Rationals)
    for (const auto& c : min_poly)
      if (!c.is_constant()) throw Error("InvalidField", "coefficients over Q must be rational");
  auto spec = std::make_shared<NumberFieldSpec>();
  spec->base = base;
  spec->min_poly = std::move(min_poly);
  spec->label = std::move(label);
  return spec;
}

FieldPtr rationals_field() { return make_field(BaseField::Rationals, {RatFunc(0), RatFunc(1)}, "Q"); }

FieldPtr gaussian_field() { return make_field(BaseField::Rationals, {RatFunc(1), RatFunc(0), RatFunc(1)}, "Q(i)"); }

FieldPtr quadratic_field(const Integer& d) {
  return make_field(BaseField::Rationals, {RatFunc(Rational(-d)), RatFunc(0), RatFunc(1)},
                    "Q(sqrt(" + d.get_str() + "))");
}

FieldPtr cubic_radical_t_field() {
  return make_field(BaseField::RationalFunctions, {-RatFunc::t(), RatFunc(0), RatFunc(0), RatFunc(1)},
                    "Q(t)[u]/(u^3 - t)");
}

FieldPtr biquadratic_field(const Integer& a, const Integer& b) {
  if (a == b) throw Error("InvalidField", "biquadratic field needs a != b");
  Rational s = Rational(a + b), d = Rational((a - b) * (a - b));
  return make_field(BaseField::Rationals, {RatFunc(d), RatFunc(0), RatFunc(Rational(-2 * s)), RatFunc(0), RatFunc(1)},
                    "Q(sqrt(" + a.get_str() + "), sqrt(" + b.get_str() + "))");
}

std::vector<FieldElement> biquadratic_standard_basis(const Integer& a, const Integer& b) {
  FieldPtr k = biquadratic_field(a, b);
  FieldElement alpha = FieldElement::generator(k);
  // alpha^3 - (3a + b) alpha = 2 (b - a) sqrt a
  FieldElement lin = alpha.pow(3) - FieldElement::constant(k, RatFunc(Rational(3 * a + b))) * alpha;
  FieldElement sa = FieldElement::constant(k, RatFunc(Rational(1, 2 * (b - a)))) * lin;
  FieldElement sb = alpha - sa;
  return {FieldElement::one(k), sa, sb, sa * sb};
}

FieldElement::FieldElement(FieldPtr field, std::vector<RatFunc> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw Error("InvalidField", "field element without a field");
  if (coeffs_.size() != field_->degree())
    throw Error("DimensionMismatch", "field element needs exactly degree-many coordinates");
  if (field_->base == BaseField::Rationals)
    for (const auto& c : coeffs_)
      if (!c.is_constant()) throw Error("InvalidField", "coordinates over Q must be rational");
}

FieldElement FieldElement::constant(FieldPtr field, const RatFunc& c) {
  std::vector<RatFunc> v(field->degree(), RatFunc(0));
  v[0] = c;
  return FieldElement(std::move(field), std::move(v));
}

FieldElement FieldElement::generator(FieldPtr field) {
  std::vector<RatFunc> v(field->degree(), RatFunc(0));
  if (v.size() == 1) {
    v[0] = -field->min_poly[0];
  } else {
    v[1] = RatFunc(1);
  }
  return FieldElement(std::move(field), std::move(v));
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const RatFunc& c) { return c.is_zero(); });
}

bool FieldElement::is_one() const { return *this == one(field_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(field_, o.field_);
  std::vector<RatFunc> r = coeffs_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.coeffs_[i];
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
  std::vector<RatFunc> r = coeffs_;
  for (auto& c : r) c = -c;
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(field_, o.field_);
  return FieldElement(field_, mul_mod(coeffs_, o.coeffs_, field_->min_poly));
}

std::vector<std::vector<RatFunc>> FieldElement::multiplication_matrix() const {
  const std::size_t d = field_->degree();
  RFMatrix m(d, std::vector<RatFunc>(d));
  std::vector<RatFunc> power(d, RatFunc(0));
  power[0] = RatFunc(1);
  std::vector<RatFunc> alpha = generator(field_).coeffs_;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<RatFunc> col = mul_mod(coeffs_, power, field_->min_poly);
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    power = mul_mod(power, alpha, field_->min_poly);
  }
  return m;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  std::vector<RatFunc> e(field_->degree(), RatFunc(0));
  e[0] = RatFunc(1);
  auto x = solve(multiplication_matrix(), e);
  if (!x) throw Error("DivisionByZero", "element is a zero divisor");
  return FieldElement(field_, std::move(*x));
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  FieldElement r = one(field_);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

RatFunc FieldElement::norm() const { return determinant(multiplication_matrix()); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
}

std::string FieldElement::to_string(const std::string& gen) const {
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    std::string c = coeffs_[k].to_string();
    if (c.find(' ') != std::string::npos) c = "(" + c + ")";
    std::string term = k == 0 ? c : (coeffs_[k] == RatFunc(1) ? "" : c + "*") + gen + (k > 1 ? "^" + std::to_string(k) : "");
    s += s.empty() ? term : " + " + term;
  }
  return s.empty() ? "0" : s;
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inverse(); }

namespace {

FieldElement horner(const std::vector<RatFunc>& poly, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + FieldElement::constant(x.field(), poly[k]);
  return acc;
}

}  // namespace

Automorphism::Automorphism(FieldPtr field, FieldElement image_of_generator)
    : field_(std::move(field)), image_(std::move(image_of_generator)) {
  require_same(field_, image_.field());
  if (!horner(field_->min_poly, image_).is_zero())
    throw Error("NotAnAutomorphism", "image " + image_.to_string() + " is not a root of the minimal polynomial");
}

Automorphism Automorphism::identity(FieldPtr field) {
  FieldElement g = FieldElement::generator(field);
  return Automorphism(std::move(field), std::move(g));
}

FieldElement Automorphism::apply(const FieldElement& x) const {
  require_same(field_, x.field());
  return horner(x.coeffs(), image_);
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  return Automorphism(field_, apply(other.image_));
}

bool Automorphism::is_identity() const { return image_ == FieldElement::generator(field_); }

MPoly norm_form(const FieldPtr& field, const std::vector<FieldElement>& basis) {
  const std::size_t d = field->degree();
  if (basis.size() != d) throw Error("NotABasis", "basis must have exactly degree-many elements");
  RFMatrix coords(d, std::vector<RatFunc>(d));
  for (std::size_t j = 0; j < d; ++j) {
    require_same(field, basis[j].field());
    for (std::size_t i = 0; i < d; ++i) coords[i][j] = basis[j].coeffs()[i];
  }
  if (determinant(coords).is_zero()) throw Error("NotABasis", "elements are linearly dependent");

  std::vector<std::vector<MPoly>> m(d, std::vector<MPoly>(d, MPoly(d)));
  for (std::size_t k = 0; k < d; ++k) {
    auto mk = basis[k].multiplication_matrix();
    MPoly var = MPoly::variable(d, k);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!mk[i][j].is_zero()) m[i][j] = m[i][j] + MPoly::constant(d, mk[i][j]) * var;
  }
  // Laplace expansion along the first row; d is small.
  std::function<MPoly(const std::vector<std::size_t>&, std::size_t)> det =
      [&](const std::vector<std::size_t>& cols, std::size_t row) -> MPoly {
    if (cols.empty()) return MPoly::constant(d, RatFunc(1));
    MPoly acc(d);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const MPoly& entry = m[row][cols[k]];
      if (entry.is_zero()) continue;
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      MPoly term = entry * det(rest, row + 1);
      acc = k % 2 ? acc - term : acc + term;
    }
    return acc;
  };
  std::vector<std::size_t> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = i;
  return det(cols, 0);
}

}  // namespace galdesc
