#include "galdesc/downgrade.hpp"

#include <algorithm>

#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"

namespace galdesc {

namespace {

std::string ray_label(const IntVector& v) { return "D" + to_string(v); }

void check_action(const DowngradeInput& inp, const ExactSequence& seq) {
  const LatticeAction& a = *inp.ambient_action;
  if (a.convention() != Convention::AntiHomomorphism) {
    throw Error("ConventionMismatch", "the ambient action is expected on N' (anti-homomorphism convention)");
  }
  if (a.rank() != inp.ambient_cone.ambient_rank()) throw Error("RankMismatch", "ambient action rank");
  const IntMatrix& f = seq.f().matrix();
  const IntMatrix& p = seq.p().matrix();
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (inp.ambient_cone.image(a.matrix(g)) != inp.ambient_cone) {
      throw Error("ActionNotCompatible", "element " + a.group()->label(g) + " does not stabilize the cone");
    }
    if (p.rows() > 0 && !(p * a.matrix(g) * f).is_zero()) {
      throw Error("ActionNotCompatible", "element " + a.group()->label(g) + " does not stabilize the subtorus");
    }
  }
}

}  // namespace

AHDatum downgrade_cone(const DowngradeInput& inp) {
  const ConeRec& sigma = inp.ambient_cone;
  const LatticeMap& fmap = inp.embedding;
  if (fmap.target_rank() != sigma.ambient_rank()) throw Error("RankMismatch", "embedding target differs from the cone");
  ExactSequence seq = quotient_with_section(fmap);
  if (inp.section_shift) seq = seq.with_shifted_section(*inp.section_shift);
  if (inp.ambient_action) check_action(inp, seq);

  const std::size_t k = fmap.source_rank();
  const std::size_t ny = seq.p().target_rank();
  const IntMatrix& f = seq.f().matrix();
  const IntMatrix& p = seq.p().matrix();
  const IntMatrix& s = seq.section().matrix();
  const IntMatrix& r = seq.retraction().matrix();

  GroupPtr group = inp.ambient_action ? inp.ambient_action->group() : FiniteGroup::trivial();
  std::vector<IntMatrix> on_n, on_ny;
  for (std::size_t g = 0; g < group->order(); ++g) {
    IntMatrix a = inp.ambient_action ? inp.ambient_action->matrix(g) : IntMatrix::identity(sigma.ambient_rank());
    on_n.push_back(r * a * f);
    on_ny.push_back(p * a * s);
  }

  AHDatum out;
  out.sequence = seq;
  out.torus_action = LatticeAction(group, on_n, Convention::AntiHomomorphism).dual();
  out.weight_cone = sigma.dual().image(f.transpose());
  ConeRec tail = sigma.preimage(f);
  GaloisPresentation constants = GaloisPresentation::trivial(rationals_field(), group);

  std::map<std::string, PolyhedronRec> coeffs;
  if (ny == 0) {
    out.base = BaseY::point(constants);
  } else {
    QuasifanRec fan = project_quasifan(sigma, seq.p());
    std::vector<std::string> labels;
    for (const auto& v : fan.rays()) labels.push_back(ray_label(v));
    out.base = BaseY::toric(fan, LatticeAction(group, on_ny, Convention::AntiHomomorphism), constants, labels);
    std::vector<IntVector> normals = sigma.halfspaces();
    for (const auto& v : out.base.rays()) {
      IntVector sv = s.apply(v);
      std::vector<HalfSpace> cons;
      for (const auto& a : normals) cons.push_back({f.transpose().apply(a), Rational(-dot(a, sv))});
      coeffs.emplace(ray_label(v), PolyhedronRec::from_inequalities(k, cons));
    }
  }
  out.divisor = PPDivisor(out.base, tail, coeffs);

  if (inp.ambient_action) {
    auto [h, name] = candidate_cocycle(inp, out);
    out.cocycle = std::move(h);
    out.cocycle_convention = std::move(name);
  }
  return out;
}

std::pair<CocycleH, std::string> candidate_cocycle(const DowngradeInput& inp, const AHDatum& datum) {
  if (!inp.ambient_action) throw Error("InvalidArgument", "candidate_cocycle needs an ambient action");
  const LatticeAction& tau = datum.torus_action;
  const std::size_t k = tau.rank();
  const std::size_t ny = datum.base.rank();
  const std::size_t order = tau.size();
  FieldPtr field = rationals_field();
  if (ny == 0) return {CocycleH::trivial(field, order, k, 0), "trivial base"};

  const IntMatrix& s = datum.sequence.section().matrix();
  const IntMatrix rt = datum.sequence.retraction().matrix().transpose();
  std::vector<IntMatrix> defect;  // columns e_g(e_i)
  for (std::size_t g = 0; g < order; ++g) {
    IntMatrix d = inp.ambient_action->matrix(g).transpose() * rt - rt * tau.matrix(g);
    defect.push_back(s.transpose() * d);
  }

  auto build = [&](int sign, bool inverse_argument) {
    CocycleH h;
    for (std::size_t g = 0; g < order; ++g) {
      IntMatrix e = defect[g];
      if (inverse_argument) e = e * tau.matrix(tau.group()->inv(g));
      std::vector<MonomialFunction> row;
      for (std::size_t i = 0; i < k; ++i) {
        IntVector u = e.col(i);
        if (sign < 0) u = -u;
        row.push_back({FieldElement::one(field), u});
      }
      h.images.push_back(std::move(row));
    }
    return h;
  };

  struct Reading {
    const char* name;
    int sign;
    bool inverse_argument;
  };
  const Reading readings[] = {{"defect at tau^-1 m", 1, true},
                              {"defect at m", 1, false},
                              {"inverse defect at m", -1, false},
                              {"inverse defect at tau^-1 m", -1, true}};
  for (const auto& rd : readings) {
    CocycleH h = build(rd.sign, rd.inverse_argument);
    if (check_condition1(datum.divisor, tau, h).passed() && check_condition2(h, tau, datum.divisor).passed()) {
      return {h, rd.name};
    }
  }
  throw Error("CocycleDerivationFailed", "no reading of the section defect satisfies both cocycle conditions");
}

bool DowngradeReport::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const DowngradeSample& s) { return s.match; });
}

std::vector<IntVector> default_downgrade_samples(const ConeRec& omega) {
  std::vector<HalfSpace> cons;
  for (const auto& a : omega.halfspaces()) cons.push_back({a, Rational(0)});
  return lattice_points_in_box(omega.ambient_rank(), cons, 2);
}

DowngradeReport verify_downgrade(const DowngradeInput& inp, const AHDatum& datum, long box,
                                 const std::vector<IntVector>& samples) {
  const ExactSequence& seq = datum.sequence;
  const IntMatrix& f = seq.f().matrix();
  const IntMatrix st = seq.section().matrix().transpose();
  const IntMatrix rt = seq.retraction().matrix().transpose();
  const IntMatrix pt = seq.p().matrix().transpose();
  const std::size_t n = f.rows();

  long widest = 1;
  for (std::size_t i = 0; i < st.rows(); ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < st.cols(); ++j) sum += abs(st(i, j));
    widest = std::max(widest, sum.get_si());
  }
  const long image_box = widest * box;

  std::vector<HalfSpace> dual_cons;
  for (const auto& x : inp.ambient_cone.generators()) dual_cons.push_back({x, Rational(0)});

  DowngradeReport rep;
  rep.box = box;
  for (const auto& m : samples) {
    DowngradeSample smp;
    smp.m = m;
    std::vector<HalfSpace> cons = dual_cons;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      IntVector c = f.col(j);
      cons.push_back({c, Rational(m[j])});
      cons.push_back({-c, Rational(-m[j])});
    }
    smp.fiber = lattice_points_in_box(n, cons, box);

    std::vector<IntVector> candidates;
    if (datum.base.rank() == 0) {
      candidates.push_back({});
    } else {
      candidates = graded_piece_points(datum.divisor, m, image_box);
    }
    IntVector base_lift = rt.apply(m);
    for (const auto& u : candidates) {
      IntVector lift = u.empty() ? base_lift : base_lift + pt.apply(u);
      if (max_abs(lift) <= box) smp.graded.push_back(u);
    }

    std::vector<IntVector> projected;
    for (const auto& mp : smp.fiber) projected.push_back(st.rows() ? st.apply(mp) : IntVector{});
    std::sort(projected.begin(), projected.end());
    std::vector<IntVector> graded = smp.graded;
    std::sort(graded.begin(), graded.end());
    smp.match = projected == graded;
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

DowngradeReport verify_downgrade(const DowngradeInput& inp, const AHDatum& datum, long box) {
  return verify_downgrade(inp, datum, box, default_downgrade_samples(datum.weight_cone));
}

}  // namespace galdesc
