#include "galdesc/zgroups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "galdesc/error.hpp"
#include "galdesc/normal_form.hpp"

namespace galdesc {

namespace {

IntMatrix identity_like(std::size_t n) { return IntMatrix::identity(n); }

void check_unimodular_square(const IntMatrix& m, std::size_t rank) {
  if (m.rows() != rank || m.cols() != rank) {
    throw Error("RankMismatch", "expected " + std::to_string(rank) + "x" + std::to_string(rank) +
                                    " matrix, got " + to_string(m));
  }
  if (!is_unimodular(m)) throw Error("NotUnimodular", to_string(m));
}

// Elementary divisors padded with zeros to length n.
std::vector<Integer> padded_divisors(const IntMatrix& a, std::size_t n) {
  std::vector<Integer> d = elementary_divisors(a);
  d.resize(n, Integer(0));
  return d;
}

}  // namespace

bool MatGroup::contains(const IntMatrix& m) const { return index_of(m).has_value(); }

std::optional<std::size_t> MatGroup::index_of(const IntMatrix& m) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), m);
  if (it == elements_.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool MatGroup::is_subgroup_of(const MatGroup& other) const {
  if (rank_ != other.rank_) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](const IntMatrix& m) { return other.contains(m); });
}

bool MatGroup::is_normal_in(const MatGroup& other) const {
  if (!is_subgroup_of(other)) return false;
  for (const auto& g : other.elements_) {
    IntMatrix gi = inverse_unimodular(g);
    for (const auto& h : generators_.empty() ? elements_ : generators_) {
      if (!contains(g * h * gi)) return false;
    }
  }
  return true;
}

bool MatGroup::is_abelian() const {
  const auto& gens = generators_.empty() ? elements_ : generators_;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

MatGroup MatGroup::conjugated(const IntMatrix& p) const {
  IntMatrix pi = inverse_unimodular(p);
  std::vector<IntMatrix> gens;
  for (const auto& g : generators_) gens.push_back(p * g * pi);
  return group_closure(gens, rank_, elements_.size());
}

MatGroup group_closure(const std::vector<IntMatrix>& gens, std::size_t rank, std::size_t cap) {
  MatGroup g;
  g.rank_ = rank;
  for (const auto& m : gens) {
    check_unimodular_square(m, rank);
    if (std::find(g.generators_.begin(), g.generators_.end(), m) == g.generators_.end()) g.generators_.push_back(m);
  }
  std::set<IntMatrix> seen{identity_like(rank)};
  std::deque<IntMatrix> queue{identity_like(rank)};
  while (!queue.empty()) {
    IntMatrix cur = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators_) {
      IntMatrix next = cur * s;
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw Error("NotFinite", "closure exceeds " + std::to_string(cap) + " elements");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  g.elements_.assign(seen.begin(), seen.end());
  return g;
}

IntMatrix matrix_d() { return IntMatrix{{-1, 0}, {0, 1}}; }
IntMatrix matrix_s() { return IntMatrix{{0, 1}, {1, 0}}; }
IntMatrix matrix_x() { return IntMatrix{{1, -1}, {1, 0}}; }

std::size_t element_order(const IntMatrix& m, std::size_t cap) {
  IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix p = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  throw Error("NotFinite", "element order exceeds " + std::to_string(cap));
}

std::string isomorphism_type(const MatGroup& g) {
  std::size_t n = g.order();
  if (n == 1) return "trivial";
  std::size_t max_order = 0, involutions = 0;
  for (const auto& m : g.elements()) {
    std::size_t k = element_order(m);
    max_order = std::max(max_order, k);
    if (k == 2) ++involutions;
  }
  if (max_order == n) return "C" + std::to_string(n);
  if (g.is_abelian()) {
    if (n == 4) return "C2xC2";
    return "order-" + std::to_string(n);
  }
  // Non-abelian with a cyclic subgroup of index two and enough reflections.
  if (2 * max_order == n && involutions >= max_order) return "D" + std::to_string(n);
  return "order-" + std::to_string(n);
}

namespace {

struct NamedElement {
  std::string name;
  IntMatrix m;
};

// Order matters: the first entries are preferred when naming subgroups.
const std::vector<NamedElement>& element_names() {
  static const std::vector<NamedElement> names = [] {
    IntMatrix d = matrix_d(), s = matrix_s(), x = matrix_x();
    IntMatrix id = IntMatrix::identity(2);
    IntMatrix x2 = x * x, x4 = x2 * x2, x5 = x4 * x;
    std::vector<NamedElement> v = {
        {"id", id},      {"x^2", x2},       {"x", x},           {"d", d},           {"-d", -d},
        {"s", s},        {"-s", -s},        {"ds", d * s},      {"-ds", -(d * s)},  {"-id", -id},
        {"x^4", x4},     {"x^5", x5},       {"xs", x * s},      {"x^2s", x2 * s},   {"x^4s", x4 * s},
        {"x^5s", x5 * s},
    };
    return v;
  }();
  return names;
}

}  // namespace

std::string element_name(const IntMatrix& m) {
  for (const auto& e : element_names())
    if (e.m == m) return e.name;
  return to_string(m);
}

std::string subgroup_name(const MatGroup& g) {
  if (g.is_trivial()) return "<id>";
  std::vector<IntMatrix> pool;
  for (const auto& e : element_names())
    if (g.contains(e.m)) pool.push_back(e.m);
  for (const auto& m : g.elements())
    if (std::find(pool.begin(), pool.end(), m) == pool.end()) pool.push_back(m);
  for (const auto& a : pool) {
    if (element_order(a) == g.order()) return "<" + element_name(a) + ">";
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (group_closure({pool[i], pool[j]}, g.rank(), g.order()).order() == g.order()) {
        return "<" + element_name(pool[i]) + ", " + element_name(pool[j]) + ">";
      }
    }
  }
  std::string out = "<";
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (i) out += ", ";
    out += element_name(g.generators()[i]);
  }
  return out + ">";
}

// ---- FiniteGroup ----

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  std::size_t n = table_.size();
  if (n == 0) throw Error("InvalidGroup", "empty multiplication table");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("g" + std::to_string(i));
  }
  if (labels_.size() != n) throw Error("InvalidGroup", "label count differs from group order");
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n) throw Error("InvalidGroup", "table is not square");
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a][b] >= n) throw Error("InvalidGroup", "table entry out of range");
    }
    if (table_[0][a] != a || table_[a][0] != a) throw Error("InvalidGroup", "element 0 is not the identity");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw Error("InvalidGroup", "not associative");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) inverse_[a] = b;
    if (inverse_[a] == n) throw Error("InvalidGroup", "element without inverse");
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() {
  static const auto g = std::make_shared<const FiniteGroup>(std::vector<std::vector<std::size_t>>{{0}},
                                                            std::vector<std::string>{"id"});
  return g;
}

std::optional<std::size_t> FiniteGroup::index_of_label(const std::string& l) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == l) return i;
  return std::nullopt;
}

// ---- LatticeAction ----

LatticeAction::LatticeAction(GroupPtr group, std::vector<IntMatrix> matrices, Convention convention)
    : group_(std::move(group)), matrices_(std::move(matrices)), convention_(convention) {
  if (!group_) throw Error("InvalidArgument", "null group");
  if (matrices_.size() != group_->order()) throw Error("RankMismatch", "one matrix per group element is required");
  rank_ = matrices_.front().rows();
  for (const auto& m : matrices_) check_unimodular_square(m, rank_);
  if (matrices_[0] != IntMatrix::identity(rank_)) throw Error("ConventionMismatch", "identity must act trivially");
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      IntMatrix expected = convention_ == Convention::Homomorphism ? matrices_[a] * matrices_[b]
                                                                   : matrices_[b] * matrices_[a];
      if (matrices_[group_->mul(a, b)] != expected) {
        throw Error("ConventionMismatch", "matrices of " + group_->label(a) + " and " + group_->label(b) +
                                              " do not compose as required");
      }
    }
  }
}

LatticeAction LatticeAction::from_matgroup(const MatGroup& g, Convention convention) {
  // Put the identity first, keep the canonical order for the rest.
  std::vector<IntMatrix> mats{IntMatrix::identity(g.rank())};
  for (const auto& m : g.elements())
    if (m != mats.front()) mats.push_back(m);
  std::size_t n = mats.size();
  auto pos = [&](const IntMatrix& m) {
    return static_cast<std::size_t>(std::find(mats.begin(), mats.end(), m) - mats.begin());
  };
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(element_name(mats[a]));
    for (std::size_t b = 0; b < n; ++b) {
      table[a][b] = convention == Convention::Homomorphism ? pos(mats[a] * mats[b]) : pos(mats[b] * mats[a]);
    }
  }
  return LatticeAction(std::make_shared<const FiniteGroup>(std::move(table), std::move(labels)), std::move(mats),
                       convention);
}

LatticeAction LatticeAction::trivial(std::size_t rank, Convention convention) {
  return LatticeAction(FiniteGroup::trivial(), {IntMatrix::identity(rank)}, convention);
}

MatGroup LatticeAction::image() const { return group_closure(matrices_, rank_, matrices_.size()); }

bool LatticeAction::is_faithful() const {
  std::set<IntMatrix> distinct(matrices_.begin(), matrices_.end());
  return distinct.size() == matrices_.size();
}

LatticeAction LatticeAction::dual() const {
  std::vector<IntMatrix> t;
  for (const auto& m : matrices_) t.push_back(m.transpose());
  Convention flipped =
      convention_ == Convention::Homomorphism ? Convention::AntiHomomorphism : Convention::Homomorphism;
  return LatticeAction(group_, std::move(t), flipped);
}

LatticeAction LatticeAction::conjugated(const IntMatrix& p) const {
  check_unimodular_square(p, rank_);
  IntMatrix pi = inverse_unimodular(p);
  std::vector<IntMatrix> mats;
  for (const auto& m : matrices_) mats.push_back(p * m * pi);
  return LatticeAction(group_, std::move(mats), convention_);
}

namespace {

// Unimodular candidates with entries in [-b, b] and at least one entry of
// absolute value b, ordered by L1 norm and then lexicographically.
std::vector<IntMatrix> candidate_shell(std::size_t n, int b) {
  std::vector<IntMatrix> out;
  std::size_t k = n * n;
  std::vector<int> e(k, -b);
  while (true) {
    int mx = 0;
    for (int v : e) mx = std::max(mx, std::abs(v));
    if (mx == b) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < k; ++i) m(i / n, i % n) = e[i];
      if (is_unimodular(m)) out.push_back(std::move(m));
    }
    std::size_t i = k;
    while (i > 0 && e[i - 1] == b) e[--i] = -b;
    if (i == 0) break;
    ++e[i - 1];
  }
  auto l1 = [](const IntMatrix& m) {
    Integer s = 0;
    for (const auto& v : m.entries()) s += abs(v);
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const IntMatrix& a, const IntMatrix& c) {
    Integer la = l1(a), lc = l1(c);
    if (la != lc) return la < lc;
    return a.entries() < c.entries();
  });
  // The identity goes first among the smallest candidates.
  auto id = std::find(out.begin(), out.end(), IntMatrix::identity(n));
  if (id != out.end()) std::rotate(out.begin(), id, id + 1);
  return out;
}

const std::vector<IntMatrix>& shell_cached(std::size_t n, int b) {
  static std::map<std::pair<std::size_t, int>, std::vector<IntMatrix>> cache;
  auto key = std::make_pair(n, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, candidate_shell(n, b)).first;
  return it->second;
}

}  // namespace

std::optional<IntMatrix> representation_conjugator(const LatticeAction& a, const LatticeAction& b, int bound) {
  if (!(*a.group() == *b.group())) throw Error("GroupMismatch", "actions are defined on different group tables");
  if (a.rank() != b.rank()) return std::nullopt;
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (determinant(a.matrix(g)) != determinant(b.matrix(g))) return std::nullopt;
  }
  for (int bb = 1; bb <= bound; ++bb) {
    for (const auto& p : shell_cached(a.rank(), bb)) {
      bool ok = true;
      for (std::size_t g = 0; g < a.size() && ok; ++g) ok = p * a.matrix(g) == b.matrix(g) * p;
      if (ok) return p;
    }
  }
  return std::nullopt;
}

// ---- classes ----

std::string to_string(ConjClassId c) {
  if (c == ConjClassId::Trivial) return "trivial";
  return "G" + std::to_string(static_cast<int>(c));
}

ConjClassId parse_class_id(const std::string& s) {
  if (s == "trivial" || s == "Trivial") return ConjClassId::Trivial;
  if (s.size() >= 2 && s[0] == 'G') {
    std::string digits = s.substr(1);
    if (std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() <= 2) {
      int k = std::stoi(digits);
      if (k >= 1 && k <= 12 && std::to_string(k) == digits) return static_cast<ConjClassId>(k);
    }
  }
  throw Error("UnknownClass", "'" + s + "' is not one of G1..G12, trivial");
}

std::vector<ConjClassId> all_class_ids() {
  std::vector<ConjClassId> out;
  for (int k = 1; k <= 12; ++k) out.push_back(static_cast<ConjClassId>(k));
  out.push_back(ConjClassId::Trivial);
  return out;
}

MatGroup class_representative(ConjClassId c) {
  IntMatrix d = matrix_d(), s = matrix_s(), x = matrix_x();
  IntMatrix x2 = x * x;
  switch (c) {
    case ConjClassId::G1: return group_closure({x, s}, 2);
    case ConjClassId::G2: return group_closure({d, s}, 2);
    case ConjClassId::G3: return group_closure({x2, s}, 2);
    case ConjClassId::G4: return group_closure({x2, -s}, 2);
    case ConjClassId::G5: return group_closure({d, -d}, 2);
    case ConjClassId::G6: return group_closure({s, -s}, 2);
    case ConjClassId::G7: return group_closure({x}, 2);
    case ConjClassId::G8: return group_closure({d * s}, 2);
    case ConjClassId::G9: return group_closure({x2}, 2);
    case ConjClassId::G10: return group_closure({x2 * x}, 2);
    case ConjClassId::G11: return group_closure({d}, 2);
    case ConjClassId::G12: return group_closure({s}, 2);
    case ConjClassId::Trivial: return group_closure({}, 2);
  }
  throw Error("UnknownClass", "unhandled class id");
}

std::string class_generators_text(ConjClassId c) {
  switch (c) {
    case ConjClassId::G1: return "x, s";
    case ConjClassId::G2: return "d, s";
    case ConjClassId::G3: return "x^2, s";
    case ConjClassId::G4: return "x^2, -s";
    case ConjClassId::G5: return "d, -d";
    case ConjClassId::G6: return "s, -s";
    case ConjClassId::G7: return "x";
    case ConjClassId::G8: return "ds";
    case ConjClassId::G9: return "x^2";
    case ConjClassId::G10: return "x^3=-id";
    case ConjClassId::G11: return "d";
    case ConjClassId::G12: return "s";
    case ConjClassId::Trivial: return "id";
  }
  return "";
}

ConjugacyFingerprint conjugacy_fingerprint(const MatGroup& g) {
  ConjugacyFingerprint f;
  f.order = g.order();
  std::size_t n = g.rank();
  IntMatrix id = IntMatrix::identity(n);
  std::vector<IntVector> span;
  for (const auto& m : g.elements()) {
    IntMatrix diff = m - id;
    std::vector<Integer> row{Integer(0), determinant(m)};
    for (std::size_t i = 0; i < n; ++i) row[0] += m(i, i);
    for (const auto& v : padded_divisors(diff, n)) row.push_back(v);
    f.elements.push_back(std::move(row));
    for (const auto& c : diff.col_list()) span.push_back(c);
  }
  std::sort(f.elements.begin(), f.elements.end());
  f.coinvariants = padded_divisors(IntMatrix::from_rows(span, n), n);
  return f;
}

std::optional<IntMatrix> find_conjugator(const MatGroup& g, const MatGroup& h, int bound) {
  if (g.rank() != h.rank()) return std::nullopt;
  if (!(conjugacy_fingerprint(g) == conjugacy_fingerprint(h))) return std::nullopt;
  const auto& gens = g.generators().empty() ? g.elements() : g.generators();
  for (int b = 1; b <= bound; ++b) {
    for (const auto& p : shell_cached(g.rank(), b)) {
      IntMatrix pi = inverse_unimodular(p);
      bool ok = true;
      for (const auto& m : gens) {
        if (!h.contains(p * m * pi)) {
          ok = false;
          break;
        }
      }
      if (ok) return p;
    }
  }
  throw Error("ConjugatorNotFound", "groups " + subgroup_name(g) + " and " + subgroup_name(h) +
                                        " share all invariants but no conjugator has entries within " +
                                        std::to_string(bound));
}

std::vector<MatGroup> all_subgroups(const MatGroup& g) {
  std::set<MatGroup> subs;
  for (const auto& m : g.elements()) subs.insert(group_closure({m}, g.rank(), g.order()));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<MatGroup> cur(subs.begin(), subs.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (cur[i].is_subgroup_of(cur[j]) || cur[j].is_subgroup_of(cur[i])) continue;
        std::vector<IntMatrix> gens = cur[i].generators();
        for (const auto& m : cur[j].generators()) gens.push_back(m);
        if (subs.insert(group_closure(gens, g.rank(), g.order())).second) grew = true;
      }
    }
  }
  return {subs.begin(), subs.end()};
}

MatGroup normal_closure(const MatGroup& h, const MatGroup& g) {
  std::vector<IntMatrix> gens;
  for (const auto& x : g.elements()) {
    IntMatrix xi = inverse_unimodular(x);
    for (const auto& m : h.generators()) {
      IntMatrix c = x * m * xi;
      if (std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
    }
  }
  return group_closure(gens, g.rank(), g.order());
}

bool is_subnormal(const MatGroup& h, const MatGroup& g) {
  if (!h.is_subgroup_of(g)) return false;
  MatGroup cur = g;
  while (!(cur == h)) {
    MatGroup next = normal_closure(h, cur);
    if (next == cur) return false;
    cur = next;
  }
  return true;
}

std::vector<ClassRecord> enumerate_finite_subgroups_gl2(int conjugator_bound) {
  std::vector<MatGroup> found;
  for (auto amb : {class_representative(ConjClassId::G1), class_representative(ConjClassId::G2)}) {
    for (const auto& sub : all_subgroups(amb)) {
      if (sub.is_trivial()) continue;
      bool merged = false;
      for (const auto& k : found) {
        if (find_conjugator(sub, k, conjugator_bound)) {
          merged = true;
          break;
        }
      }
      if (!merged) found.push_back(sub);
    }
  }
  std::vector<ClassRecord> out;
  for (const auto& grp : found) {
    ClassMembership cm = conjugacy_class_of(grp, conjugator_bound);
    MatGroup rep = class_representative(cm.id);
    out.push_back({cm.id, rep, class_generators_text(cm.id), isomorphism_type(rep)});
  }
  std::sort(out.begin(), out.end(), [](const ClassRecord& a, const ClassRecord& b) { return a.id < b.id; });
  return out;
}

ClassMembership conjugacy_class_of(const MatGroup& g, int bound) {
  if (g.rank() != 2) throw Error("RankMismatch", "classification is for rank-2 groups");
  IntMatrix id = IntMatrix::identity(2);
  if (g.is_trivial()) return {ConjClassId::Trivial, id};
  for (int k = 1; k <= 12; ++k) {
    auto c = static_cast<ConjClassId>(k);
    MatGroup rep = class_representative(c);
    if (auto p = find_conjugator(g, rep, bound)) return {c, *p};
  }
  throw Error("ConjugatorNotFound", "no class shares the invariants of " + subgroup_name(g));
}

std::vector<PosetEdge> subgroup_poset(const MatGroup& amb) {
  std::vector<MatGroup> nodes;
  for (const auto& h : all_subgroups(amb))
    if (is_subnormal(h, amb)) nodes.push_back(h);
  std::vector<PosetEdge> edges;
  auto add = [&](const MatGroup& a, const MatGroup& b) {
    edges.push_back({a, b, b.order() / a.order(), a.is_normal_in(b)});
  };
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (a.order() >= b.order() || !a.is_subgroup_of(b)) continue;
      bool covered = true;
      for (const auto& c : nodes) {
        if (c.order() > a.order() && c.order() < b.order() && a.is_subgroup_of(c) && c.is_subgroup_of(b)) {
          covered = false;
          break;
        }
      }
      if (covered) {
        add(a, b);
      } else if (b == amb && !a.is_trivial() && a.is_normal_in(amb)) {
        add(a, b);
      }
    }
  }
  return edges;
}

std::vector<std::vector<IntVector>> orbits_on_vectors(const LatticeAction& act, const std::vector<IntVector>& vectors) {
  auto index = [&](const IntVector& v) -> std::size_t {
    auto it = std::find(vectors.begin(), vectors.end(), v);
    if (it == vectors.end()) throw Error("NotStable", "image " + to_string(v) + " is not in the vector set");
    return static_cast<std::size_t>(it - vectors.begin());
  };
  std::vector<bool> seen(vectors.size(), false);
  std::vector<std::vector<IntVector>> orbits;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> members;
    for (const auto& m : act.matrices()) members.insert(index(m.apply(vectors[i])));
    std::vector<IntVector> orbit;
    for (std::size_t j : members) {
      seen[j] = true;
      orbit.push_back(vectors[j]);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::size_t invariant_rank(const LatticeAction& act) {
  Integer total = 0;
  for (const auto& m : act.matrices())
    for (std::size_t i = 0; i < m.rows(); ++i) total += m(i, i);
  Integer n = static_cast<unsigned long>(act.size());
  if (total % n != 0 || total < 0) throw Error("InvalidArgument", "trace average is not a nonnegative integer");
  return static_cast<std::size_t>(Integer(total / n).get_ui());
}

bool is_fan_stable(const LatticeAction& act, const QuasifanRec& fan) {
  if (act.rank() != fan.ambient_rank()) throw Error("RankMismatch", "action and fan ranks differ");
  for (const auto& m : act.matrices()) {
    for (const auto& c : fan.cones()) {
      if (!fan.index_of(c.image(m))) return false;
    }
  }
  return true;
}

}  // namespace galdesc
