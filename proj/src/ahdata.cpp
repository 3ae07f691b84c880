#include "galdesc/ahdata.hpp"

#include <algorithm>
#include <set>

#include "galdesc/error.hpp"

namespace galdesc {

namespace {

void require_same_group(const GroupPtr& a, const GroupPtr& b, const std::string& what) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw Error("GroupMismatch", what + " uses a different group table");
}

}  // namespace

// ---- GaloisPresentation ----

GaloisPresentation::GaloisPresentation(FieldPtr field, GroupPtr group, std::vector<Automorphism> automorphisms)
    : field_(std::move(field)), group_(std::move(group)), auts_(std::move(automorphisms)) {
  if (!group_ || auts_.size() != group_->order()) {
    throw Error("GaloisNotClosed", "one automorphism per group element is required");
  }
  for (const auto& a : auts_) {
    if (!(*a.field() == *field_)) throw Error("FieldMismatch", "automorphism of a different field");
  }
  if (!auts_[0].is_identity()) throw Error("GaloisNotClosed", "the identity element must act trivially");
  for (std::size_t a = 0; a < auts_.size(); ++a) {
    for (std::size_t b = 0; b < auts_.size(); ++b) {
      if (!(auts_[group_->mul(a, b)] == auts_[a].compose(auts_[b]))) {
        throw Error("GaloisNotClosed", "automorphisms of " + group_->label(a) + " and " + group_->label(b) +
                                           " do not compose to that of their product");
      }
    }
  }
}

GaloisPresentation GaloisPresentation::trivial(FieldPtr field, GroupPtr group) {
  std::vector<Automorphism> auts(group->order(), Automorphism::identity(field));
  return GaloisPresentation(std::move(field), std::move(group), std::move(auts));
}

// ---- MonomialFunction ----

MonomialFunction MonomialFunction::one(const FieldPtr& field, std::size_t base_rank) {
  return {FieldElement::one(field), zero_vector(base_rank)};
}

MonomialFunction MonomialFunction::operator*(const MonomialFunction& o) const {
  if (exponent.size() != o.exponent.size()) throw Error("RankMismatch", "monomials on different bases");
  return {constant * o.constant, exponent + o.exponent};
}

MonomialFunction MonomialFunction::inverse() const { return {constant.inverse(), -exponent}; }

MonomialFunction MonomialFunction::pow(const Integer& e) const {
  if (!e.fits_slong_p()) throw Error("InvalidArgument", "exponent too large");
  return {constant.pow(e.get_si()), scale(e, exponent)};
}

bool MonomialFunction::is_one() const { return constant.is_one() && is_zero(exponent); }

std::string MonomialFunction::to_string() const {
  std::string c = constant.to_string();
  if (exponent.empty() || is_zero(exponent)) return c;
  return c + "*chi^" + galdesc::to_string(exponent);
}

// ---- WeightedDivisor ----

WeightedDivisor::WeightedDivisor(const std::map<std::string, Rational>& coeffs) {
  for (const auto& [k, v] : coeffs) set(k, v);
}

Rational WeightedDivisor::at(const std::string& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void WeightedDivisor::set(const std::string& label, const Rational& c) {
  if (c == 0) coeffs_.erase(label);
  else coeffs_[label] = c;
}

WeightedDivisor WeightedDivisor::operator+(const WeightedDivisor& o) const {
  WeightedDivisor r = *this;
  for (const auto& [k, v] : o.coeffs_) r.set(k, Rational(r.at(k) + v));
  return r;
}

WeightedDivisor WeightedDivisor::operator-(const WeightedDivisor& o) const {
  WeightedDivisor r = *this;
  for (const auto& [k, v] : o.coeffs_) r.set(k, Rational(r.at(k) - v));
  return r;
}

bool WeightedDivisor::dominates(const WeightedDivisor& o) const {
  std::set<std::string> keys;
  for (const auto& [k, v] : coeffs_) keys.insert(k);
  for (const auto& [k, v] : o.coeffs_) keys.insert(k);
  return std::all_of(keys.begin(), keys.end(), [&](const std::string& k) { return at(k) >= o.at(k); });
}

std::string WeightedDivisor::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += galdesc::to_string(v) + "*" + k;
  }
  return out;
}

// ---- BaseY ----

BaseY BaseY::point(GaloisPresentation constants) {
  BaseY b;
  b.kind_ = BaseKind::Point;
  b.constants_ = std::move(constants);
  return b;
}

BaseY BaseY::toric(QuasifanRec fan, LatticeAction action_on_ny, GaloisPresentation constants,
                   std::vector<std::string> ray_labels) {
  BaseY b;
  b.kind_ = BaseKind::ToricFan;
  b.constants_ = std::move(constants);
  if (action_on_ny.convention() != Convention::AntiHomomorphism) {
    throw Error("ConventionMismatch", "the base action is expected on N_Y (anti-homomorphism convention)");
  }
  require_same_group(action_on_ny.group(), b.constants_.group(), "base action");
  if (action_on_ny.rank() != fan.ambient_rank()) throw Error("RankMismatch", "base action and fan ranks differ");
  if (!is_fan_stable(action_on_ny, fan)) throw Error("NotStable", "the base action does not permute the fan");
  b.rank_ = fan.ambient_rank();
  b.rays_ = fan.rays();
  if (ray_labels.empty()) {
    for (std::size_t i = 0; i < b.rays_.size(); ++i) ray_labels.push_back("D" + std::to_string(i));
  }
  if (ray_labels.size() != b.rays_.size()) throw Error("InvalidArgument", "one label per ray is required");
  b.labels_ = std::move(ray_labels);
  b.fan_ = std::move(fan);
  b.action_ny_ = std::move(action_on_ny);
  for (std::size_t g = 0; g < b.action_ny_.size(); ++g) {
    std::vector<std::size_t> perm;
    for (const auto& v : b.rays_) {
      IntVector w = b.action_ny_.apply(g, v);
      auto it = std::find(b.rays_.begin(), b.rays_.end(), w);
      perm.push_back(static_cast<std::size_t>(it - b.rays_.begin()));
    }
    b.perms_.push_back(std::move(perm));
  }
  return b;
}

BaseY BaseY::projective_line(GaloisPresentation constants, bool swap) {
  ConeRec plus = ConeRec::from_generators(1, {IntVector{Integer(1)}});
  ConeRec minus = ConeRec::from_generators(1, {IntVector{Integer(-1)}});
  QuasifanRec fan = QuasifanRec::from_cones(1, {plus, minus});
  const GroupPtr& grp = constants.group();
  std::vector<IntMatrix> mats(grp->order(), IntMatrix::identity(1));
  if (swap) {
    if (grp->order() != 2) throw Error("InvalidArgument", "a swapping P^1 action needs a group of order 2");
    mats[1] = IntMatrix{{-1}};
  }
  LatticeAction act(grp, std::move(mats), Convention::AntiHomomorphism);
  // fan.rays() lists -1 before +1.
  return toric(std::move(fan), std::move(act), std::move(constants), {"Dinf", "D0"});
}

BaseY BaseY::abstract(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> perms,
                      GaloisPresentation constants) {
  BaseY b;
  b.kind_ = BaseKind::AbstractDivisors;
  b.constants_ = std::move(constants);
  if (perms.size() != b.constants_.group()->order()) throw Error("InvalidArgument", "one permutation per element");
  for (const auto& p : perms) {
    std::vector<std::size_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != labels.size() || sorted[i] != i) throw Error("InvalidArgument", "not a permutation");
  }
  b.labels_ = std::move(labels);
  b.perms_ = std::move(perms);
  return b;
}

std::optional<std::size_t> BaseY::label_index(const std::string& l) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == l) return i;
  return std::nullopt;
}

const IntVector& BaseY::ray_of(const std::string& label) const {
  auto i = label_index(label);
  if (!i || kind_ != BaseKind::ToricFan) throw Error("UnknownLabel", label);
  return rays_[*i];
}

WeightedDivisor BaseY::pullback(std::size_t g, const WeightedDivisor& d) const {
  if (kind_ == BaseKind::Point) return d;
  WeightedDivisor out;
  for (std::size_t i = 0; i < labels_.size(); ++i) out.set(labels_[i], d.at(labels_[perms_[g][i]]));
  return out;
}

WeightedDivisor BaseY::divisor_of(const MonomialFunction& f) const {
  if (f.exponent.size() != rank_) throw Error("RankMismatch", "monomial exponent does not live on M_Y");
  WeightedDivisor out;
  if (kind_ != BaseKind::ToricFan) return out;
  for (std::size_t i = 0; i < rays_.size(); ++i) out.set(labels_[i], Rational(dot(f.exponent, rays_[i])));
  return out;
}

MonomialFunction BaseY::sharp(std::size_t g, const MonomialFunction& f) const {
  MonomialFunction r{constants_.apply(g, f.constant), f.exponent};
  if (kind_ == BaseKind::ToricFan) r.exponent = action_ny_.matrix(g).transpose().apply(f.exponent);
  return r;
}

// ---- PPDivisor ----

PPDivisor::PPDivisor(BaseY base, ConeRec tail, std::map<std::string, PolyhedronRec> coefficients)
    : base_(std::move(base)), tail_(std::move(tail)), coeffs_(std::move(coefficients)) {
  omega_ = tail_.dual();
  for (const auto& [label, poly] : coeffs_) {
    if (!base_.label_index(label)) throw Error("UnknownLabel", "'" + label + "' is not a prime divisor of the base");
    if (poly.ambient_rank() != tail_.ambient_rank()) throw Error("RankMismatch", "coefficient of " + label);
    if (poly.is_empty() || !(poly.tail() == tail_)) {
      throw Error("TailMismatch", "coefficient of " + label + " does not have the common tail cone");
    }
  }
}

PolyhedronRec PPDivisor::coefficient(const std::string& label) const {
  auto it = coeffs_.find(label);
  if (it != coeffs_.end()) return it->second;
  return PolyhedronRec::from_vertices(rank(), {RatVector(rank(), Rational(0))}, tail_);
}

WeightedDivisor ppdiv_evaluate(const PPDivisor& d, const IntVector& m) {
  if (m.size() != d.rank()) throw Error("RankMismatch", "degree has the wrong rank");
  if (!d.weight_cone().contains(m)) throw Error("OutsideWeightCone", to_string(m) + " is not in the weight cone");
  WeightedDivisor out;
  for (const auto& [label, poly] : d.coefficients()) out.set(label, poly.evaluate_min(m));
  return out;
}

// ---- cocycles ----

CocycleH CocycleH::trivial(const FieldPtr& field, std::size_t group_order, std::size_t rank_m,
                           std::size_t base_rank) {
  CocycleH h;
  h.images.assign(group_order, std::vector<MonomialFunction>(rank_m, MonomialFunction::one(field, base_rank)));
  return h;
}

MonomialFunction CocycleH::evaluate(std::size_t g, const IntVector& m) const {
  if (g >= images.size()) throw Error("CocycleShape", "no images for element " + std::to_string(g));
  return MonomialMap{images[g]}.evaluate(m);
}

MonomialFunction MonomialMap::evaluate(const IntVector& m) const {
  if (images.size() != m.size() || images.empty()) throw Error("CocycleShape", "basis images do not match M");
  MonomialFunction r = MonomialFunction::one(images[0].constant.field(), images[0].exponent.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) r = r * images[i].pow(m[i]);
  return r;
}

bool CheckReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

const CheckEntry* CheckReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return &e;
  return nullptr;
}

std::vector<IntVector> hilbert_basis(const ConeRec& cone) {
  if (!cone.is_pointed()) throw Error("NotPointed", "Hilbert basis requested for a cone with lineality");
  if (cone.is_zero()) return {};
  Integer bound = 0;
  for (const auto& r : cone.rays()) bound += max_abs(r);
  std::vector<HalfSpace> cons;
  for (const auto& a : cone.halfspaces()) cons.push_back({a, Rational(0)});
  std::vector<IntVector> cand;
  for (auto& p : lattice_points_in_box(cone.ambient_rank(), cons, bound.get_si()))
    if (!is_zero(p)) cand.push_back(std::move(p));
  std::vector<IntVector> out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& y : cand) {
      if (y == x) continue;
      if (cone.contains(x - y)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

std::vector<IntVector> condition_test_set(const ConeRec& omega) {
  std::set<IntVector> pts;
  if (omega.is_pointed()) {
    auto hb = hilbert_basis(omega);
    for (std::size_t i = 0; i < hb.size(); ++i) {
      pts.insert(hb[i]);
      for (std::size_t j = i; j < hb.size(); ++j) pts.insert(hb[i] + hb[j]);
    }
  } else {
    std::vector<HalfSpace> cons;
    for (const auto& a : omega.halfspaces()) cons.push_back({a, Rational(0)});
    for (auto& p : lattice_points_in_box(omega.ambient_rank(), cons, 2))
      if (!is_zero(p)) pts.insert(std::move(p));
  }
  return {pts.begin(), pts.end()};
}

namespace {

void check_action(const LatticeAction& tau, const BaseY& base, std::size_t rank) {
  if (tau.convention() != Convention::Homomorphism) {
    throw Error("ConventionMismatch", "the torus action is expected on M (homomorphism convention)");
  }
  if (tau.rank() != rank) throw Error("RankMismatch", "torus action rank differs from the divisor rank");
  require_same_group(tau.group(), base.group(), "torus action");
}

void check_shape(const CocycleH& h, const LatticeAction& tau, const BaseY& base) {
  if (h.images.size() != tau.size()) throw Error("CocycleShape", "one list of basis images per element");
  for (const auto& row : h.images) {
    if (row.size() != tau.rank()) throw Error("CocycleShape", "one image per basis vector of M");
    for (const auto& f : row) {
      if (f.exponent.size() != base.rank()) throw Error("CocycleShape", "exponent not in M_Y");
      if (f.constant.is_zero()) throw Error("CocycleShape", "zero constant");
    }
  }
}

}  // namespace

CheckReport check_condition1(const PPDivisor& d, const LatticeAction& tau, const CocycleH& h) {
  const BaseY& base = d.base();
  if (base.kind() == BaseKind::AbstractDivisors) {
    throw Error("BaseNotSupported", "pullbacks of principal divisors need a point or toric base");
  }
  check_action(tau, base, d.rank());
  check_shape(h, tau, base);
  CheckReport rep;
  for (const auto& m : condition_test_set(d.weight_cone())) {
    for (std::size_t g = 0; g < tau.size(); ++g) {
      IntVector tm = tau.apply(g, m);
      WeightedDivisor lhs = base.pullback(g, ppdiv_evaluate(d, m));
      WeightedDivisor rhs = ppdiv_evaluate(d, tm) + base.divisor_of(h.evaluate(g, tm));
      rep.entries.push_back({{tau.group()->label(g)}, m, lhs == rhs, lhs.to_string(), rhs.to_string()});
    }
  }
  return rep;
}

CheckReport check_condition2(const CocycleH& h, const LatticeAction& tau, const BaseY& base,
                             const std::vector<IntVector>& test_set) {
  check_action(tau, base, tau.rank());
  check_shape(h, tau, base);
  const auto& grp = *tau.group();
  CheckReport rep;
  for (std::size_t a = 0; a < tau.size(); ++a) {
    IntMatrix inv_a = inverse_unimodular(tau.matrix(a));
    for (std::size_t b = 0; b < tau.size(); ++b) {
      for (const auto& m : test_set) {
        MonomialFunction lhs = h.evaluate(a, m) * base.sharp(a, h.evaluate(b, inv_a.apply(m)));
        MonomialFunction rhs = h.evaluate(grp.mul(a, b), m);
        rep.entries.push_back({{grp.label(a), grp.label(b)}, m, lhs == rhs, lhs.to_string(), rhs.to_string()});
      }
    }
  }
  return rep;
}

CheckReport check_condition2(const CocycleH& h, const LatticeAction& tau, const PPDivisor& d) {
  return check_condition2(h, tau, d.base(), condition_test_set(d.weight_cone()));
}

GradedTerm twisted_structure_apply(const PPDivisor& d, const LatticeAction& tau, const CocycleH& h, std::size_t g,
                                   const GradedTerm& term) {
  check_action(tau, d.base(), d.rank());
  if (!d.weight_cone().contains(term.degree)) {
    throw Error("OutsideWeightCone", to_string(term.degree) + " is not in the weight cone");
  }
  IntVector tm = tau.apply(g, term.degree);
  MonomialFunction f = d.base().sharp(g, MonomialFunction{term.coefficient, term.exponent}) * h.evaluate(g, tm);
  return {f.constant, f.exponent, tm};
}

PPDivisor shift_by_coboundary(const PPDivisor& d, const MonomialMap& g) {
  const BaseY& base = d.base();
  if (g.images.size() != d.rank()) throw Error("CocycleShape", "one image per basis vector of M");
  bool monomial_part = std::any_of(g.images.begin(), g.images.end(),
                                   [](const MonomialFunction& f) { return !is_zero(f.exponent); });
  if (!monomial_part) return d;
  if (base.kind() != BaseKind::ToricFan) {
    throw Error("NotPrincipalShift", "divisors of non-constant functions are only known on toric bases");
  }
  std::map<std::string, PolyhedronRec> coeffs;
  for (std::size_t r = 0; r < base.labels().size(); ++r) {
    const IntVector& v = base.rays()[r];
    RatVector w(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) w[i] = -Rational(dot(g.images[i].exponent, v));
    coeffs.emplace(base.labels()[r], d.coefficient(base.labels()[r]).translate(w));
  }
  return PPDivisor(base, d.tail(), std::move(coeffs));
}

CocycleH coboundary_of(const MonomialMap& g, const LatticeAction& tau, const BaseY& base) {
  CocycleH h;
  for (std::size_t c = 0; c < tau.size(); ++c) {
    IntMatrix inv = inverse_unimodular(tau.matrix(c));
    std::vector<MonomialFunction> row;
    for (std::size_t i = 0; i < tau.rank(); ++i) {
      IntVector e = unit_vector(tau.rank(), i);
      row.push_back(g.evaluate(e).inverse() * base.sharp(c, g.evaluate(inv.apply(e))));
    }
    h.images.push_back(std::move(row));
  }
  return h;
}

CocycleH shift_cocycle(const CocycleH& h, const MonomialMap& g, const LatticeAction& tau, const BaseY& base) {
  check_shape(h, tau, base);
  CocycleH out;
  for (std::size_t c = 0; c < tau.size(); ++c) {
    IntMatrix inv = inverse_unimodular(tau.matrix(c));
    std::vector<MonomialFunction> row;
    for (std::size_t i = 0; i < tau.rank(); ++i) {
      IntVector e = unit_vector(tau.rank(), i);
      row.push_back(h.images[c][i] * g.evaluate(e) * base.sharp(c, g.evaluate(inv.apply(e))).inverse());
    }
    out.images.push_back(std::move(row));
  }
  return out;
}

bool is_trivial_cocycle(const CocycleH& h) {
  for (const auto& row : h.images)
    for (const auto& f : row)
      if (!f.is_one()) return false;
  return true;
}

std::vector<IntVector> graded_piece_points(const PPDivisor& d, const IntVector& m, long box) {
  const BaseY& base = d.base();
  if (base.kind() != BaseKind::ToricFan) throw Error("BaseNotSupported", "graded pieces need a toric base");
  WeightedDivisor dm = ppdiv_evaluate(d, m);
  std::vector<HalfSpace> cons;
  for (std::size_t r = 0; r < base.rays().size(); ++r) {
    cons.push_back({base.rays()[r], Rational(-dm.at(base.labels()[r]))});
  }
  return lattice_points_in_box(base.rank(), cons, box);
}

bool definitely_improper_on_p1(const PPDivisor& d) {
  const BaseY& base = d.base();
  if (base.kind() != BaseKind::ToricFan || base.rank() != 1 || base.rays().size() != 2) return false;
  if (!d.weight_cone().is_pointed()) return false;
  for (const auto& m : hilbert_basis(d.weight_cone())) {
    Rational deg = 0;
    WeightedDivisor dm = ppdiv_evaluate(d, m);
    for (const auto& [k, v] : dm.coeffs()) deg += v;
    if (deg < 0) return true;
  }
  return false;
}

}  // namespace galdesc
