#include "galdesc/tori.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "galdesc/error.hpp"
#include "galdesc/normal_form.hpp"

namespace galdesc {

TorusDatum::TorusDatum(LatticeAction act, std::string n, bool require_faithful)
    : rank(act.rank()), action(std::move(act)), name(std::move(n)) {
  if (action.convention() != Convention::Homomorphism) {
    throw Error("ConventionMismatch", "the character action must follow the homomorphism convention");
  }
  faithful = action.is_faithful();
  if (require_faithful && !faithful) throw Error("NotFaithful", "action on characters has a kernel");
}

TorusDatum torus_from_class(ConjClassId c) {
  static const char* names[] = {
      "G_m^2 (split)",
      "R_{k1/k}(R^{(1)}_{k'/k1}(G_m)) ∩ R_{k2/k}(R^{(1)}_{k3/k2}(G_m))",
      "R_{k2/k}(R^{(1)}_{k1/k2}(G_m))",
      "R_{k1/k}(R^{(1)}_{k'/k1}(G_m)) ∩ R_{k2/k}(G_m)",
      "R_{k1/k}(R^{(1)}_{k'/k1}(G_m)) ∩ R_{k2/k}(R^{(1)}_{k'/k2}(G_m))",
      "R^{(1)}_{k1/k}(G_m) x R^{(1)}_{k2/k}(G_m)",
      "R_{k1/k}(R^{(1)}_{k'/k1}(G_m))",
      "R_{k2/k}(R^{(1)}_{k'/k2}(G_m)) ∩ R_{k1/k}(R^{(1)}_{k'/k1}(G_m))",
      "R_{k1/k}(R^{(1)}_{k'/k1}(G_m)), k1 = k'^<-id>",
      "R^{(1)} cubic norm-one",
      "R^{(1)}_{k'/k}(G_m) x R^{(1)}_{k'/k}(G_m)",
      "R^{(1)}_{k'/k}(G_m) x G_m",
      "R_{k'/k}(G_m)",
  };
  std::string name = names[c == ConjClassId::Trivial ? 0 : static_cast<int>(c)];
  return TorusDatum(LatticeAction::from_matgroup(class_representative(c), Convention::Homomorphism), name);
}

std::string torus_description(ConjClassId c) { return torus_from_class(c).name; }

std::string to_string(QuasiTrivialStatus s) {
  switch (s) {
    case QuasiTrivialStatus::Yes: return "yes";
    case QuasiTrivialStatus::No: return "no";
    case QuasiTrivialStatus::Inconclusive: return "inconclusive";
  }
  return "";
}

Integer cyclic_h1_order(const IntMatrix& g) {
  // ker N is saturated and has the same rank as im(g - 1), so the index is
  // the product of the elementary divisors of g - 1.
  Integer order = 1;
  for (const auto& e : elementary_divisors(g - IntMatrix::identity(g.rows()))) order *= e;
  return order;
}

namespace {

std::vector<IntVector> primitive_vectors(std::size_t n, long bound) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i));
  std::vector<long> e(n, -bound);
  while (true) {
    IntVector v;
    for (long x : e) v.emplace_back(x);
    if (is_primitive(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::size_t i = n;
    while (i > 0 && e[i - 1] == bound) e[--i] = -bound;
    if (i == 0) break;
    ++e[i - 1];
  }
  std::stable_sort(out.begin() + static_cast<long>(n), out.end(),
                   [](const IntVector& a, const IntVector& b) { return max_abs(a) < max_abs(b); });
  return out;
}

}  // namespace

QuasiTrivialResult is_quasi_trivial(const TorusDatum& t, std::size_t search_bound) {
  QuasiTrivialResult res;
  const auto& act = t.action;
  for (std::size_t g = 0; g < act.size(); ++g) {
    const IntMatrix& m = act.matrix(g);
    Integer tr = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    if (tr < 0) {
      res.status = QuasiTrivialStatus::No;
      res.certificate = "element " + act.group()->label(g) + " has trace " + to_string(tr);
      return res;
    }
    Integer h1 = cyclic_h1_order(m);
    if (h1 != 1) {
      res.status = QuasiTrivialStatus::No;
      res.certificate = "H^1 of <" + act.group()->label(g) + "> has order " + to_string(h1);
      return res;
    }
  }

  // Orbits of candidate vectors that are small enough to be part of a basis.
  std::vector<std::vector<IntVector>> orbits;
  std::set<IntVector> covered;
  for (const auto& v : primitive_vectors(t.rank, static_cast<long>(search_bound))) {
    if (covered.count(v)) continue;
    std::set<IntVector> orbit;
    for (const auto& m : act.matrices()) orbit.insert(m.apply(v));
    covered.insert(orbit.begin(), orbit.end());
    if (orbit.size() > t.rank) continue;
    // Keep the candidate itself first so results read naturally.
    std::vector<IntVector> ordered{v};
    for (const auto& w : orbit)
      if (w != v) ordered.push_back(w);
    orbits.push_back(std::move(ordered));
  }

  std::vector<IntVector> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t start) {
    if (chosen.size() == t.rank) {
      return is_unimodular(IntMatrix::from_cols(chosen, t.rank));
    }
    for (std::size_t i = start; i < orbits.size(); ++i) {
      if (chosen.size() + orbits[i].size() > t.rank) continue;
      std::size_t before = chosen.size();
      chosen.insert(chosen.end(), orbits[i].begin(), orbits[i].end());
      if (rank(IntMatrix::from_cols(chosen, t.rank)) == chosen.size() && search(i + 1)) return true;
      chosen.resize(before);
    }
    return false;
  };
  if (search(0)) {
    res.status = QuasiTrivialStatus::Yes;
    res.basis = chosen;
  }
  return res;
}

bool weight_cone_stable(const TorusDatum& t, const ConeRec& omega) {
  if (omega.ambient_rank() != t.rank) throw Error("RankMismatch", "weight cone and torus ranks differ");
  for (const auto& m : t.action.matrices())
    if (!(omega.image(m) == omega)) return false;
  return true;
}

std::string H1Expr::to_string() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Br: return "Br(" + top + "/" + bottom + ")";
    case Kind::Beta: return "beta(" + args.at(0)->to_string() + ")";
    case Kind::Quotient: return args.at(0)->to_string() + " / " + args.at(1)->to_string();
    case Kind::BrEta: return "Br_eta(" + top + "/" + bottom + " | " + top2 + "/" + bottom2 + ")";
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += " ⊕ ";
        out += args[i]->to_string();
      }
      return out;
    }
  }
  return "";
}

namespace {

H1ExprPtr zero() { return std::make_shared<H1Expr>(); }

H1ExprPtr br(std::string top, std::string bottom) {
  auto e = std::make_shared<H1Expr>();
  e->kind = H1Expr::Kind::Br;
  e->top = std::move(top);
  e->bottom = std::move(bottom);
  return e;
}

H1ExprPtr quotient_by_beta(H1ExprPtr num, H1ExprPtr den) {
  auto b = std::make_shared<H1Expr>();
  b->kind = H1Expr::Kind::Beta;
  b->args = {std::move(den)};
  auto q = std::make_shared<H1Expr>();
  q->kind = H1Expr::Kind::Quotient;
  q->args = {std::move(num), b};
  return q;
}

H1ExprPtr br_eta(std::string t1, std::string b1, std::string t2, std::string b2) {
  auto e = std::make_shared<H1Expr>();
  e->kind = H1Expr::Kind::BrEta;
  e->top = std::move(t1);
  e->bottom = std::move(b1);
  e->top2 = std::move(t2);
  e->bottom2 = std::move(b2);
  return e;
}

H1ExprPtr sum(std::vector<H1ExprPtr> parts) {
  auto e = std::make_shared<H1Expr>();
  e->kind = H1Expr::Kind::Sum;
  e->args = std::move(parts);
  return e;
}

}  // namespace

H1Entry h1_table_lookup(ConjClassId c) {
  H1Entry e;
  e.class_id = c;
  e.auto_trivial = false;
  switch (c) {
    case ConjClassId::G1:
      e.expression = sum({quotient_by_beta(br("k'^<s>", "k'^<x^2,s>"), br("k'^<s,-s>", "k")),
                          br_eta("k'^<s,-s>", "k", "k'^<s>", "k'^<x^2,s>")});
      break;
    case ConjClassId::G2: e.expression = br("k'^<d>", "k'^<d,-d>"); break;
    case ConjClassId::G3: e.expression = br("k'^<s>", "k"); break;
    case ConjClassId::G4: e.expression = quotient_by_beta(br("k'", "k'^<x^2>"), br("k'^<-s>", "k")); break;
    case ConjClassId::G5: e.expression = sum({br("k'^<d>", "k"), br("k'^<d>", "k")}); break;
    case ConjClassId::G6: e.expression = br("k'", "k'^<-id>"); break;
    case ConjClassId::G7:
      e.expression = sum({quotient_by_beta(br("k'", "k'^<x^2>"), br("k'", "k")),
                          br_eta("k'", "k", "k'", "k'^<x^2>")});
      break;
    case ConjClassId::G8: e.expression = br("k'", "k'^<-id>"); break;
    case ConjClassId::G9: e.expression = br("k'", "k"); break;
    case ConjClassId::G10: e.expression = sum({br("k'", "k"), br("k'", "k")}); break;
    case ConjClassId::G11: e.expression = br("k'", "k"); break;
    case ConjClassId::G12:
      e.expression = zero();
      e.auto_trivial = true;
      break;
    case ConjClassId::Trivial:
      // Split torus: every torsor is trivial, but the row is not in the table.
      e.expression = zero();
      e.auto_trivial = std::nullopt;
      break;
  }
  return e;
}

}  // namespace galdesc
