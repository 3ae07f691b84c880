#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "galdesc/ahdata.hpp"
#include "galdesc/downgrade.hpp"
#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"
#include "galdesc/mmp.hpp"
#include "galdesc/tori.hpp"
#include "galdesc/zgroups.hpp"

namespace galdesc::cli {

namespace {

// Malformed input: exit status 2.
struct InputError {
  std::string code;
  std::string detail;
  std::vector<ValidationError> errors;
};

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> lg = [] {
    auto l = spdlog::stderr_logger_st("galdesc-cli");
    const char* env = std::getenv("GALDESC_LOG");
    std::string level = env ? env : "";
    if (level == "debug") {
      l->set_level(spdlog::level::debug);
    } else if (level == "info") {
      l->set_level(spdlog::level::info);
    } else if (level == "quiet") {
      l->set_level(spdlog::level::off);
    } else {
      l->set_level(spdlog::level::warn);
    }
    return l;
  }();
  return lg;
}

// ---- JSON rendering ----

json str(const Integer& x) { return x.get_str(); }
json str(const Rational& x) { return galdesc::to_string(x); }
json str(std::size_t x) { return std::to_string(x); }

json vec(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

json vec(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

json vecs(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

json mat(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i)));
  return a;
}

json cone_json(const ConeRec& c) {
  return {{"rank", str(c.ambient_rank())}, {"rays", vecs(c.rays())}, {"lineality", vecs(c.lineality())}};
}

json divisor_json(const WeightedDivisor& d) {
  json o = json::object();
  for (const auto& [label, c] : d.coeffs()) o[label] = str(c);
  return o;
}

// ---- validation ----

class Validator {
 public:
  std::vector<ValidationError> errors;

  void fail(std::string code, std::string path, std::string message) {
    errors.push_back({std::move(code), std::move(path), std::move(message)});
  }

  std::optional<Integer> integer(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail("NotAString", path, "numbers are written as decimal strings");
      return std::nullopt;
    }
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::exception&) {
      fail("NotAnInteger", path, "'" + j.get<std::string>() + "' is not an integer");
      return std::nullopt;
    }
  }

  std::optional<Rational> rational(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail("NotAString", path, "numbers are written as decimal strings");
      return std::nullopt;
    }
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      fail("NotARational", path, "'" + j.get<std::string>() + "' is not a rational number");
      return std::nullopt;
    }
  }

  bool array(const json& j, const std::string& path) {
    if (j.is_array()) return true;
    fail("NotAnArray", path, "expected an array");
    return false;
  }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail("NotAnObject", path, "expected an object");
    return false;
  }

  const json* field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
      fail("MissingField", path + "/" + key, "required field is missing");
      return nullptr;
    }
    return &obj.at(key);
  }

  std::optional<IntVector> ivec(const json& j, const std::string& path, std::optional<std::size_t> len = {}) {
    if (!array(j, path)) return std::nullopt;
    IntVector out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto x = integer(j[i], path + "/" + std::to_string(i));
      if (x) out.push_back(*x);
      else ok = false;
    }
    if (len && j.size() != *len) {
      fail("WrongLength", path, "expected " + std::to_string(*len) + " entries");
      return std::nullopt;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<RatVector> rvec(const json& j, const std::string& path) {
    if (!array(j, path)) return std::nullopt;
    RatVector out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto x = rational(j[i], path + "/" + std::to_string(i));
      if (x) out.push_back(*x);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<IntVector>> ivecs(const json& j, const std::string& path) {
    if (!array(j, path)) return std::nullopt;
    std::vector<IntVector> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = ivec(j[i], path + "/" + std::to_string(i), out.empty() ? std::nullopt : std::optional(out[0].size()));
      if (v) out.push_back(*v);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<IntMatrix> imat(const json& j, const std::string& path, bool square) {
    auto rows = ivecs(j, path);
    if (!rows) return std::nullopt;
    if (rows->empty()) {
      fail("EmptyMatrix", path, "a matrix needs at least one row");
      return std::nullopt;
    }
    IntMatrix m = IntMatrix::from_rows(*rows, (*rows)[0].size());
    if (square && m.rows() != m.cols()) {
      fail("NotSquare", path, "expected a square matrix");
      return std::nullopt;
    }
    return m;
  }

  void unimodular_list(const json& j, const std::string& path) {
    if (!array(j, path)) return;
    std::optional<std::size_t> size;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::string p = path + "/" + std::to_string(i);
      auto m = imat(j[i], p, true);
      if (!m) continue;
      if (size && m->rows() != *size) fail("RankMismatch", p, "matrices of different sizes");
      size = m->rows();
      if (!is_unimodular(*m)) fail("NotUnimodular", p, "determinant is " + determinant(*m).get_str());
    }
  }
};

json canonical_numbers(const json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    try {
      return parse_integer(s).get_str();
    } catch (const std::exception&) {
    }
    try {
      return galdesc::to_string(parse_rational(s));
    } catch (const std::exception&) {
    }
    return j;
  }
  if (j.is_array()) {
    json a = json::array();
    for (const auto& x : j) a.push_back(canonical_numbers(x));
    return a;
  }
  if (j.is_object()) {
    json o = json::object();
    for (const auto& [k, v] : j.items()) o[k] = canonical_numbers(v);
    return o;
  }
  return j;
}

const std::vector<std::string> kKnownFields = {"fan",  "group", "ambient_cone", "embedding", "ambient_action",
                                               "section_shift", "m", "base", "tail", "coefficients",
                                               "field", "tau", "h"};

}  // namespace

Validation validate_input(const json& doc) {
  Validator v;
  Validation out;
  if (!doc.is_object()) {
    v.fail("NotAnObject", "", "the document must be a JSON object");
    out.errors = v.errors;
    return out;
  }
  for (const auto& [k, val] : doc.items()) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), k) == kKnownFields.end()) {
      v.fail("UnknownField", "/" + k, "unrecognized field");
    }
  }
  if (doc.contains("fan") && v.object(doc["fan"], "/fan")) {
    if (const json* rays = v.field(doc["fan"], "rays", "/fan")) {
      if (v.array(*rays, "/fan/rays")) {
        std::vector<IntVector> rs;
        bool ok = true;
        for (std::size_t i = 0; i < rays->size(); ++i) {
          std::string p = "/fan/rays/" + std::to_string(i);
          auto r = v.ivec((*rays)[i], p, 2);
          if (!r) {
            ok = false;
            continue;
          }
          if (!is_primitive(*r)) {
            v.fail("RayNotPrimitive", p, to_string(*r) + " is not primitive");
            ok = false;
          }
          rs.push_back(*r);
        }
        if (ok) {
          try {
            FanSurface f(rs);
          } catch (const Error& e) {
            v.fail(e.code(), "/fan/rays", e.detail());
          }
        }
      }
    }
  }
  if (doc.contains("group") && v.object(doc["group"], "/group")) {
    if (const json* g = v.field(doc["group"], "generators", "/group")) v.unimodular_list(*g, "/group/generators");
  }
  if (doc.contains("ambient_action") && v.object(doc["ambient_action"], "/ambient_action")) {
    if (const json* g = v.field(doc["ambient_action"], "generators", "/ambient_action"))
      v.unimodular_list(*g, "/ambient_action/generators");
  }
  std::optional<std::size_t> ambient_rank;
  if (doc.contains("ambient_cone") && v.object(doc["ambient_cone"], "/ambient_cone")) {
    if (const json* g = v.field(doc["ambient_cone"], "generators", "/ambient_cone")) {
      auto gens = v.ivecs(*g, "/ambient_cone/generators");
      if (gens && gens->empty()) v.fail("EmptyCone", "/ambient_cone/generators", "at least one generator is needed");
      if (gens && !gens->empty()) ambient_rank = (*gens)[0].size();
    }
  }
  if (doc.contains("embedding") && v.object(doc["embedding"], "/embedding")) {
    if (const json* c = v.field(doc["embedding"], "columns", "/embedding")) {
      auto cols = v.ivecs(*c, "/embedding/columns");
      if (cols && cols->empty()) v.fail("EmptyEmbedding", "/embedding/columns", "at least one column is needed");
      if (cols && !cols->empty() && ambient_rank && (*cols)[0].size() != *ambient_rank) {
        v.fail("RankMismatch", "/embedding/columns", "columns must live in the ambient lattice");
      }
    }
  }
  if (doc.contains("section_shift")) v.imat(doc["section_shift"], "/section_shift", false);
  if (doc.contains("m")) v.ivec(doc["m"], "/m");
  if (doc.contains("field")) {
    const json& f = doc["field"];
    if (!f.is_string() || (f != "Q" && f != "Q(i)")) v.fail("UnknownField", "/field", "field must be \"Q\" or \"Q(i)\"");
  }
  std::optional<std::size_t> group_order;
  if (doc.contains("tau") && v.array(doc["tau"], "/tau")) {
    v.unimodular_list(doc["tau"], "/tau");
    group_order = doc["tau"].size();
    if (*group_order != 1 && *group_order != 2) {
      v.fail("UnsupportedGroup", "/tau", "documents describe the trivial group or a group of order 2");
    }
  }
  std::optional<std::size_t> tail_rank;
  if (doc.contains("tail") && v.object(doc["tail"], "/tail")) {
    if (const json* r = v.field(doc["tail"], "rank", "/tail")) {
      auto n = v.integer(*r, "/tail/rank");
      if (n && (*n < 0 || *n > 8)) v.fail("InvalidRank", "/tail/rank", "rank must be between 0 and 8");
      else if (n) tail_rank = n->get_ui();
    }
    if (const json* g = v.field(doc["tail"], "generators", "/tail")) {
      auto gens = v.ivecs(*g, "/tail/generators");
      if (gens && tail_rank)
        for (const auto& x : *gens)
          if (x.size() != *tail_rank) v.fail("RankMismatch", "/tail/generators", "generator length differs from rank");
    }
  }
  if (doc.contains("coefficients") && v.object(doc["coefficients"], "/coefficients")) {
    for (const auto& [label, poly] : doc["coefficients"].items()) {
      std::string p = "/coefficients/" + label;
      if (!v.object(poly, p)) continue;
      if (const json* vs = v.field(poly, "vertices", p)) {
        if (v.array(*vs, p + "/vertices")) {
          if (vs->empty()) v.fail("EmptyPolyhedron", p + "/vertices", "at least one vertex is needed");
          for (std::size_t i = 0; i < vs->size(); ++i) {
            auto x = v.rvec((*vs)[i], p + "/vertices/" + std::to_string(i));
            if (x && tail_rank && x->size() != *tail_rank)
              v.fail("RankMismatch", p + "/vertices/" + std::to_string(i), "vertex length differs from the tail rank");
          }
        }
      }
    }
  }
  if (doc.contains("base") && v.object(doc["base"], "/base")) {
    const json& b = doc["base"];
    if (const json* kind = v.field(b, "kind", "/base")) {
      if (*kind == "toric") {
        if (const json* rays = v.field(b, "rays", "/base")) v.ivecs(*rays, "/base/rays");
        if (b.contains("action")) v.unimodular_list(json::array({b["action"]}), "/base/action");
      } else if (*kind == "projective_line") {
        if (b.contains("swap") && !b["swap"].is_boolean()) v.fail("NotABoolean", "/base/swap", "expected true or false");
      } else if (*kind != "point") {
        v.fail("UnknownBase", "/base/kind", "kind must be point, projective_line or toric");
      }
    }
  }
  if (doc.contains("h") && v.array(doc["h"], "/h")) {
    if (group_order && doc["h"].size() != *group_order)
      v.fail("WrongLength", "/h", "one row of images per group element");
    for (std::size_t g = 0; g < doc["h"].size(); ++g) {
      std::string pg = "/h/" + std::to_string(g);
      if (!v.array(doc["h"][g], pg)) continue;
      for (std::size_t i = 0; i < doc["h"][g].size(); ++i) {
        std::string p = pg + "/" + std::to_string(i);
        const json& mono = doc["h"][g][i];
        if (!v.object(mono, p)) continue;
        if (const json* c = v.field(mono, "constant", p)) v.rvec(*c, p + "/constant");
        if (const json* e = v.field(mono, "exponent", p)) v.ivec(*e, p + "/exponent");
      }
    }
  }
  out.errors = std::move(v.errors);
  if (out.ok()) out.normalized = canonical_numbers(doc);
  return out;
}

std::string serialize(const json& doc) { return doc.dump(2) + "\n"; }

std::optional<json> example_document(const std::string& name) {
  // Built with explicit arrays: brace lists of pairs would turn into objects.
  auto p = [](std::initializer_list<long> xs) {
    json a = json::array();
    for (long x : xs) a.push_back(std::to_string(x));
    return a;
  };
  auto arr = [](std::initializer_list<json> xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x);
    return a;
  };
  auto obj = [](const std::string& k, json v) {
    json o = json::object();
    o[k] = std::move(v);
    return o;
  };
  json quadrant = obj("generators", arr({p({1, 0}), p({0, 1})}));
  json orthant3 = obj("generators", arr({p({1, 0, 0}), p({0, 1, 0}), p({0, 0, 1})}));
  auto downgrade_doc = [&](json cone, json column) {
    json d = json::object();
    d["ambient_cone"] = std::move(cone);
    d["embedding"] = obj("columns", arr({std::move(column)}));
    return d;
  };
  if (name == "diagonal") return downgrade_doc(quadrant, p({1, 1}));
  if (name == "line") return downgrade_doc(quadrant, p({1, 0}));
  if (name == "orthant3") return downgrade_doc(orthant3, p({1, 1, 1}));
  if (name == "diagonal-swap") {
    json d = downgrade_doc(quadrant, p({1, 1}));
    d["ambient_action"] = obj("generators", arr({arr({p({0, 1}), p({1, 0})})}));
    return d;
  }
  if (name == "orthant3-swap") {
    json d = downgrade_doc(orthant3, p({1, 0, 0}));
    d["ambient_action"] = obj("generators", arr({arr({p({1, 0, 0}), p({0, 0, 1}), p({0, 1, 0})})}));
    d["section_shift"] = arr({p({1, 0})});
    return d;
  }
  auto mono = [&](std::initializer_list<long> c, std::initializer_list<long> e) {
    json m = json::object();
    m["constant"] = p(c);
    m["exponent"] = p(e);
    return m;
  };
  if (name == "circle" || name == "circle-bad") {
    json d = json::object();
    d["field"] = "Q(i)";
    d["base"] = obj("kind", "point");
    d["tail"] = obj("rank", "1");
    d["tail"]["generators"] = json::array();
    d["tau"] = arr({arr({p({1})}), arr({p({-1})})});
    d["h"] = arr({arr({mono({1, 0}, {})}), arr({name == "circle" ? mono({-1, 0}, {}) : mono({0, 1}, {})})});
    return d;
  }
  json p1 = json::object();
  p1["field"] = "Q";
  p1["tail"] = obj("rank", "1");
  p1["tail"]["generators"] = arr({p({1})});
  p1["coefficients"] = obj("D0", obj("vertices", arr({p({1})})));
  p1["coefficients"]["Dinf"] = obj("vertices", arr({p({-1})}));
  p1["base"] = obj("kind", "projective_line");
  if (name == "p1") {
    p1["base"]["swap"] = false;
    p1["m"] = p({1});
    return p1;
  }
  if (name == "p1-swap" || name == "p1-swap-trivial") {
    p1["base"]["swap"] = true;
    p1["tau"] = arr({arr({p({1})}), arr({p({1})})});
    p1["h"] = arr({arr({mono({1}, {0})}), arr({mono({1}, {name == "p1-swap" ? -2 : 0})})});
    return p1;
  }
  return std::nullopt;
}

namespace {

// ---- builders from validated documents ----

IntVector to_ivec(const json& j) {
  IntVector v;
  for (const auto& x : j) v.push_back(parse_integer(x.get<std::string>()));
  return v;
}

RatVector to_rvec(const json& j) {
  RatVector v;
  for (const auto& x : j) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

std::vector<IntVector> to_ivecs(const json& j) {
  std::vector<IntVector> out;
  for (const auto& x : j) out.push_back(to_ivec(x));
  return out;
}

IntMatrix to_mat(const json& j) {
  auto rows = to_ivecs(j);
  return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows[0].size());
}

MatGroup group_from_generators(const json& gens) {
  std::vector<IntMatrix> ms;
  for (const auto& g : gens) ms.push_back(to_mat(g));
  if (ms.empty()) throw InputError{"MissingField", "a group needs at least one generator", {}};
  return group_closure(ms, ms[0].rows());
}

GroupPtr order_two_group() {
  static auto g = std::make_shared<const FiniteGroup>(std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}},
                                                      std::vector<std::string>{"id", "gamma"});
  return g;
}

struct Problem {
  PPDivisor divisor;
  LatticeAction tau;
  std::optional<CocycleH> h;
};

void require(const json& doc, std::initializer_list<const char*> keys) {
  std::vector<ValidationError> errs;
  for (const char* k : keys)
    if (!doc.contains(k)) errs.push_back({"MissingField", std::string("/") + k, "required field is missing"});
  if (!errs.empty()) throw InputError{"InvalidInput", errs.front().path + " is missing", errs};
}

Problem build_problem(const json& doc) {
  require(doc, {"tail", "base"});
  std::size_t order = doc.contains("tau") ? doc["tau"].size() : 1;
  GroupPtr group = order == 2 ? order_two_group() : FiniteGroup::trivial();
  FieldPtr field = doc.value("field", "Q") == "Q(i)" ? gaussian_field() : rationals_field();
  GaloisPresentation constants =
      (order == 2 && field != rationals_field())
          ? GaloisPresentation(field, group, {Automorphism::identity(field), Automorphism(field, -FieldElement::generator(field))})
          : GaloisPresentation::trivial(field, group);

  const json& b = doc["base"];
  BaseY base;
  std::string kind = b["kind"];
  if (kind == "point") {
    base = BaseY::point(constants);
  } else if (kind == "projective_line") {
    base = BaseY::projective_line(constants, b.value("swap", false));
  } else {
    auto rays = to_ivecs(b["rays"]);
    QuasifanRec fan = rays.size() > 0 && rays[0].size() == 2 ? QuasifanRec::complete_fan_2d(rays)
                                                               : QuasifanRec::from_cones(rays.empty() ? 0 : rays[0].size(), [&] {
                                                                   std::vector<ConeRec> cs;
                                                                   for (const auto& r : rays)
                                                                     cs.push_back(ConeRec::from_generators(r.size(), {r}));
                                                                   return cs;
                                                                 }());
    std::size_t n = fan.ambient_rank();
    std::vector<IntMatrix> mats(order, IntMatrix::identity(n));
    if (b.contains("action")) {
      if (order != 2) throw InputError{"InvalidInput", "/base/action needs a group of order 2", {}};
      mats[1] = to_mat(b["action"]);
    }
    base = BaseY::toric(fan, LatticeAction(group, mats, Convention::AntiHomomorphism), constants);
  }

  std::size_t rank = parse_integer(doc["tail"]["rank"].get<std::string>()).get_ui();
  ConeRec tail = ConeRec::from_generators(rank, to_ivecs(doc["tail"]["generators"]));
  std::map<std::string, PolyhedronRec> coeffs;
  if (doc.contains("coefficients")) {
    for (const auto& [label, poly] : doc["coefficients"].items()) {
      std::vector<RatVector> verts;
      for (const auto& x : poly["vertices"]) verts.push_back(to_rvec(x));
      coeffs.emplace(label, PolyhedronRec::from_vertices(rank, verts, tail));
    }
  }
  Problem pr;
  pr.divisor = PPDivisor(base, tail, coeffs);
  std::vector<IntMatrix> tau_mats;
  if (doc.contains("tau")) {
    for (const auto& m : doc["tau"]) tau_mats.push_back(to_mat(m));
  } else {
    tau_mats.push_back(IntMatrix::identity(rank));
  }
  pr.tau = LatticeAction(group, tau_mats, Convention::Homomorphism);
  if (pr.tau.rank() != rank) throw InputError{"RankMismatch", "/tau matrices must act on M of the tail rank", {}};
  if (doc.contains("h")) {
    CocycleH h;
    for (const auto& row : doc["h"]) {
      std::vector<MonomialFunction> images;
      for (const auto& mono : row) {
        RatVector c = to_rvec(mono["constant"]);
        if (c.size() != field->degree()) {
          throw InputError{"WrongLength", "constants have one coefficient per power of the generator", {}};
        }
        std::vector<RatFunc> coeffs_c(c.begin(), c.end());
        IntVector e = to_ivec(mono["exponent"]);
        if (e.size() != base.rank()) throw InputError{"RankMismatch", "exponents live on the base character lattice", {}};
        images.push_back({FieldElement(field, coeffs_c), e});
      }
      if (images.size() != rank) throw InputError{"WrongLength", "one image per basis vector of M", {}};
      h.images.push_back(std::move(images));
    }
    pr.h = std::move(h);
  }
  return pr;
}

DowngradeInput build_downgrade(const json& doc) {
  require(doc, {"ambient_cone", "embedding"});
  auto gens = to_ivecs(doc["ambient_cone"]["generators"]);
  std::size_t n = gens[0].size();
  auto cols = to_ivecs(doc["embedding"]["columns"]);
  IntMatrix f = IntMatrix::from_cols(cols, n);
  DowngradeInput inp{ConeRec::from_generators(n, gens), LatticeMap(cols.size(), n, f), std::nullopt, std::nullopt};
  if (doc.contains("ambient_action")) {
    inp.ambient_action =
        LatticeAction::from_matgroup(group_from_generators(doc["ambient_action"]["generators"]), Convention::AntiHomomorphism);
  }
  if (doc.contains("section_shift")) inp.section_shift = to_mat(doc["section_shift"]);
  return inp;
}

// ---- flags ----

long flag_long(const CommandSpec& s, const std::string& name, long def, long lo, long hi) {
  auto it = s.flags.find(name);
  if (it == s.flags.end()) return def;
  try {
    std::size_t pos = 0;
    long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    if (v < lo || v > hi) throw std::out_of_range("range");
    return v;
  } catch (const std::exception&) {
    throw InputError{"InvalidFlag", "--" + name + " expects an integer in [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]", {}};
  }
}

std::optional<std::string> flag(const CommandSpec& s, const std::string& name) {
  auto it = s.flags.find(name);
  if (it == s.flags.end()) return std::nullopt;
  return it->second;
}

Integer flag_integer(const CommandSpec& s, const std::string& name) {
  auto v = flag(s, name);
  if (!v) throw InputError{"MissingFlag", "--" + name + " is required", {}};
  try {
    return parse_integer(*v);
  } catch (const std::exception&) {
    throw InputError{"InvalidFlag", "--" + name + " expects an integer", {}};
  }
}

ConjClassId class_flag(const std::string& text) {
  try {
    return parse_class_id(text);
  } catch (const Error& e) {
    throw InputError{e.code(), e.detail(), {}};
  }
}

FanSurface fan_fixture(const std::string& name) {
  if (name == "hexagon") return FanSurface::hexagon();
  if (name == "square") return FanSurface::square();
  if (name == "p2") return FanSurface::projective_plane();
  throw InputError{"UnknownFixture", "fan fixture must be hexagon, square or p2", {}};
}

// Document from --input / input_text, or from --example; empty object otherwise.
json load_document(const CommandSpec& s) {
  json doc = json::object();
  std::string text;
  bool have = false;
  if (s.input_text) {
    text = *s.input_text;
    have = true;
  } else if (s.input_path) {
    std::stringstream ss;
    if (*s.input_path == "-") {
      ss << std::cin.rdbuf();
    } else {
      std::ifstream in(*s.input_path);
      if (!in) throw InputError{"UnreadableInput", "cannot open " + *s.input_path, {}};
      ss << in.rdbuf();
    }
    text = ss.str();
    have = true;
  } else if (auto ex = flag(s, "example")) {
    auto d = example_document(*ex);
    if (!d) throw InputError{"UnknownFixture", "no built-in example named " + *ex, {}};
    doc = *d;
  }
  if (have) {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError{"MalformedJson", e.what(), {}};
    }
  }
  Validation v = validate_input(doc);
  if (!v.ok()) {
    throw InputError{"InvalidInput", v.errors.front().code + " at " + v.errors.front().path, v.errors};
  }
  return v.normalized;
}

MatGroup group_from(const CommandSpec& s, const json& doc, bool required) {
  if (auto g = flag(s, "group")) return class_representative(class_flag(*g));
  if (doc.contains("group")) return group_from_generators(doc["group"]["generators"]);
  if (required) throw InputError{"MissingFlag", "--group or a group document is required", {}};
  return class_representative(ConjClassId::Trivial);
}

json report_json(const CheckReport& r) {
  json failures = json::array();
  for (const auto& e : r.entries) {
    if (e.pass) continue;
    failures.push_back({{"gammas", e.gammas}, {"m", vec(e.m)}, {"lhs", e.lhs}, {"rhs", e.rhs}});
  }
  return {{"passed", r.passed()}, {"checked", str(r.entries.size())}, {"failures", failures}};
}

json mmp_result_json(const MMPResult& r) {
  json steps = json::array();
  for (const auto& c : r.contractions) steps.push_back({{"step", str(c.step)}, {"orbit", vecs(c.orbit)}});
  return {{"contractions", steps},
          {"final_rays", vecs(r.final.rays())},
          {"model_class", to_string(r.model_class)},
          {"picard_rank_form", str(r.picard_rank_form)},
          {"picard_rank_closed", str(r.picard_rank_closed)}};
}

// ---- subcommands ----

json cmd_classify(const CommandSpec& s) {
  int bound = static_cast<int>(flag_long(s, "bound", 2, 1, 4));
  json out = json::array();
  for (const auto& rec : enumerate_finite_subgroups_gl2(bound)) {
    json elems = json::array();
    for (const auto& m : rec.representative.elements()) elems.push_back(mat(m));
    out.push_back({{"id", to_string(rec.id)},
                   {"generators", rec.generators},
                   {"order", str(rec.representative.order())},
                   {"isomorphism_type", rec.isomorphism_type},
                   {"elements", elems}});
  }
  return out;
}

json cmd_poset(const CommandSpec& s, const json& doc) {
  MatGroup amb = group_from(s, doc, true);
  json nodes = json::array(), edges = json::array();
  std::vector<MatGroup> seen;
  for (const auto& e : subgroup_poset(amb)) {
    for (const auto* g : {&e.sub, &e.super}) {
      if (std::find(seen.begin(), seen.end(), *g) == seen.end()) seen.push_back(*g);
    }
    edges.push_back({{"sub", subgroup_name(e.sub)},
                     {"super", subgroup_name(e.super)},
                     {"index", str(e.index)},
                     {"normal", e.normal}});
  }
  std::sort(seen.begin(), seen.end());
  for (const auto& g : seen) nodes.push_back(subgroup_name(g));
  return {{"group", subgroup_name(amb)}, {"nodes", nodes}, {"edges", edges}};
}

json cmd_norm_form(const CommandSpec& s) {
  std::string kind = flag(s, "field").value_or("gaussian");
  FieldPtr field;
  std::vector<FieldElement> basis;
  std::vector<std::string> basis_text;
  auto power_basis = [&](FieldPtr f, const std::string& gen) {
    field = f;
    FieldElement x = FieldElement::one(f);
    for (std::size_t i = 0; i < f->degree(); ++i) {
      basis.push_back(x);
      basis_text.push_back(x.to_string(gen));
      x = x * FieldElement::generator(f);
    }
  };
  if (kind == "gaussian") {
    power_basis(gaussian_field(), "i");
  } else if (kind == "quadratic") {
    power_basis(quadratic_field(flag_integer(s, "d")), "sqrt(d)");
  } else if (kind == "cubic-t") {
    power_basis(cubic_radical_t_field(), "u");
  } else if (kind == "biquadratic") {
    Integer a = flag_integer(s, "a"), b = flag_integer(s, "b");
    field = biquadratic_field(a, b);
    basis = biquadratic_standard_basis(a, b);
    basis_text = {"1", "sqrt(a)", "sqrt(b)", "sqrt(a)*sqrt(b)"};
  } else {
    throw InputError{"InvalidFlag", "--field must be gaussian, quadratic, cubic-t or biquadratic", {}};
  }
  std::vector<std::string> names = {"x", "y", "z", "w"};
  names.resize(basis.size());
  MPoly form = norm_form(field, basis);
  return {{"field", field->label}, {"basis", basis_text}, {"variables", names}, {"form", form.to_string(names)}};
}

json cmd_norm_member(const CommandSpec& s) {
  Integer d = flag_integer(s, "d");
  auto alpha_text = flag(s, "alpha");
  if (!alpha_text) throw InputError{"MissingFlag", "--alpha is required", {}};
  Rational alpha;
  try {
    alpha = parse_rational(*alpha_text);
  } catch (const std::exception&) {
    throw InputError{"InvalidFlag", "--alpha expects a rational number", {}};
  }
  long bound = flag_long(s, "bound", 50, 1, 10000);
  NormMembership nm = quadratic_norm_membership(d, alpha, bound);
  json witness = nullptr;
  if (nm.witness) witness = json::array({str(nm.witness->first), str(nm.witness->second)});
  return {{"d", str(d)}, {"alpha", str(alpha)}, {"member", nm.member}, {"witness", witness}};
}

json cmd_torus_info(const CommandSpec& s) {
  auto g = flag(s, "group");
  if (!g) throw InputError{"MissingFlag", "--group is required", {}};
  ConjClassId c = class_flag(*g);
  TorusDatum t = torus_from_class(c);
  QuasiTrivialResult q = is_quasi_trivial(t, static_cast<std::size_t>(flag_long(s, "bound", 3, 1, 6)));
  H1Entry h = h1_table_lookup(c);
  json gens = json::array();
  MatGroup image = t.action.image();
  for (const auto& m : image.generators()) gens.push_back(mat(m));
  return {{"class", to_string(c)},
          {"name", t.name},
          {"description", torus_description(c)},
          {"rank", str(t.rank)},
          {"character_action_generators", gens},
          {"quasi_trivial", {{"status", to_string(q.status)}, {"basis", vecs(q.basis)}, {"certificate", q.certificate}}},
          {"h1", h.text()},
          {"auto_trivial", h.auto_trivial ? json(*h.auto_trivial) : json(nullptr)}};
}

json cmd_h1_table() {
  json out = json::array();
  for (auto c : all_class_ids()) {
    H1Entry h = h1_table_lookup(c);
    out.push_back({{"class", to_string(c)},
                   {"h1", h.text()},
                   {"auto_trivial", h.auto_trivial ? json(*h.auto_trivial) : json(nullptr)}});
  }
  return out;
}

json cmd_check_cocycle(const json& doc) {
  Problem pr = build_problem(doc);
  if (!pr.h) throw InputError{"MissingField", "/h is required", {{"MissingField", "/h", "required field is missing"}}};
  CheckReport c1 = check_condition1(pr.divisor, pr.tau, *pr.h);
  CheckReport c2 = check_condition2(*pr.h, pr.tau, pr.divisor);
  return {{"condition1", report_json(c1)}, {"condition2", report_json(c2)}, {"passed", c1.passed() && c2.passed()}};
}

json cmd_evaluate(const json& doc) {
  require(doc, {"m"});
  Problem pr = build_problem(doc);
  IntVector m = to_ivec(doc["m"]);
  if (m.size() != pr.divisor.rank()) throw InputError{"RankMismatch", "/m must have the tail rank", {}};
  WeightedDivisor d = ppdiv_evaluate(pr.divisor, m);
  return {{"m", vec(m)}, {"divisor", divisor_json(d)}, {"text", d.to_string()}};
}

json datum_json(const AHDatum& d) {
  json coeffs = json::object();
  for (const auto& [label, poly] : d.divisor.coefficients()) {
    json verts = json::array();
    for (const auto& v : poly.vertices()) verts.push_back(vec(v));
    coeffs[label] = {{"vertices", verts}};
  }
  json base = {{"kind", d.base.kind() == BaseKind::Point ? "point" : "toric"},
               {"rays", vecs(d.base.rays())},
               {"labels", d.base.labels()}};
  if (d.base.kind() == BaseKind::ToricFan) {
    json maximal = json::array();
    for (const auto& c : d.base.fan().maximal_cones()) maximal.push_back(cone_json(c));
    base["maximal_cones"] = maximal;
  }
  json cocycle = nullptr;
  if (d.cocycle) {
    json rows = json::array();
    for (std::size_t g = 0; g < d.cocycle->images.size(); ++g) {
      json row = json::array();
      for (const auto& mono : d.cocycle->images[g]) row.push_back(vec(mono.exponent));
      rows.push_back({{"element", d.torus_action.group()->label(g)}, {"exponents", row}});
    }
    cocycle = {{"convention", d.cocycle_convention}, {"images", rows}, {"trivial", is_trivial_cocycle(*d.cocycle)}};
  }
  return {{"weight_cone", cone_json(d.weight_cone)},
          {"tail", cone_json(d.divisor.tail())},
          {"base", base},
          {"coefficients", coeffs},
          {"section", mat(d.sequence.section().matrix())},
          {"quotient", mat(d.sequence.p().matrix())},
          {"cocycle", cocycle}};
}

json cmd_downgrade(const json& doc) {
  DowngradeInput inp = build_downgrade(doc);
  return datum_json(downgrade_cone(inp));
}

json cmd_verify_downgrade(const CommandSpec& s, const json& doc) {
  DowngradeInput inp = build_downgrade(doc);
  long box = flag_long(s, "box", 8, 0, 20);
  AHDatum d = downgrade_cone(inp);
  DowngradeReport rep = verify_downgrade(inp, d, box);
  json samples = json::array();
  for (const auto& smp : rep.samples) {
    samples.push_back({{"m", vec(smp.m)},
                       {"fiber_size", str(smp.fiber.size())},
                       {"graded_size", str(smp.graded.size())},
                       {"match", smp.match}});
  }
  return {{"box", str(static_cast<std::size_t>(box))}, {"passed", rep.passed()}, {"samples", samples}};
}

EquivariantSurface surface_from(const CommandSpec& s, const json& doc) {
  MatGroup g = group_from(s, doc, false);
  LatticeAction act = LatticeAction::from_matgroup(g, Convention::AntiHomomorphism);
  if (auto f = flag(s, "fan")) return EquivariantSurface(fan_fixture(*f), act);
  if (doc.contains("fan")) return EquivariantSurface(FanSurface(to_ivecs(doc["fan"]["rays"])), act);
  return choose_compactification(act, s.flags.count("square") > 0);
}

json cmd_mmp(const CommandSpec& s, const json& doc) {
  std::string strategy = flag(s, "strategy").value_or("first");
  MMPStrategy st;
  if (strategy == "first") st = MMPStrategy::FirstOrbit;
  else if (strategy == "exhaustive") st = MMPStrategy::Exhaustive;
  else throw InputError{"InvalidFlag", "--strategy must be first or exhaustive", {}};
  EquivariantSurface es = surface_from(s, doc);
  auto results = run_equivariant_mmp(es, st);
  if (st == MMPStrategy::FirstOrbit) {
    json out = mmp_result_json(results.front());
    out["start_rays"] = vecs(es.surface.rays());
    return out;
  }
  json all = json::array(), outcomes = json::array();
  for (const auto& r : results) all.push_back(mmp_result_json(r));
  for (const auto& [mc, rank] : distinct_outcomes(results))
    outcomes.push_back({{"model_class", to_string(mc)}, {"picard_rank_form", str(rank)}});
  return {{"start_rays", vecs(es.surface.rays())}, {"results", all}, {"outcomes", outcomes}};
}

json cmd_compactify(const CommandSpec& s, const json& doc) {
  MatGroup g = group_from(s, doc, true);
  EquivariantSurface es =
      choose_compactification(LatticeAction::from_matgroup(g, Convention::AntiHomomorphism), s.flags.count("square") > 0);
  json gens = json::array();
  MatGroup image = es.action.image();
  for (const auto& m : image.generators()) gens.push_back(mat(m));
  std::string name = es.surface == FanSurface::hexagon() ? "hexagon" : "square";
  json selfint = json::array();
  for (const auto& x : self_intersections(es.surface)) selfint.push_back(str(x));
  return {{"fan", name},
          {"rays", vecs(es.surface.rays())},
          {"self_intersections", selfint},
          {"action_generators", gens},
          {"class", to_string(conjugacy_class_of(es.action.image()).id)}};
}

json error_json(const std::string& code, const std::string& detail) { return {{"error", code}, {"detail", detail}}; }

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"classify-gl2",   "subgroup-poset", "norm-form",     "norm-member",
                                                 "torus-info",     "h1-table",       "check-cocycle", "evaluate-ppdiv",
                                                 "downgrade",      "verify-downgrade", "mmp",         "compactify"};
  return names;
}

DispatchResult dispatch(const CommandSpec& spec) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), spec.subcommand) == names.end()) {
    return {2, serialize(error_json("UnknownSubcommand", "'" + spec.subcommand + "' is not a subcommand"))};
  }
  logger()->info("running {}", spec.subcommand);
  try {
    const std::string& c = spec.subcommand;
    json doc = load_document(spec);
    logger()->debug("input document: {}", doc.dump());
    json out;
    if (c == "classify-gl2") out = cmd_classify(spec);
    else if (c == "subgroup-poset") out = cmd_poset(spec, doc);
    else if (c == "norm-form") out = cmd_norm_form(spec);
    else if (c == "norm-member") out = cmd_norm_member(spec);
    else if (c == "torus-info") out = cmd_torus_info(spec);
    else if (c == "h1-table") out = cmd_h1_table();
    else if (c == "check-cocycle") out = cmd_check_cocycle(doc);
    else if (c == "evaluate-ppdiv") out = cmd_evaluate(doc);
    else if (c == "downgrade") out = cmd_downgrade(doc);
    else if (c == "verify-downgrade") out = cmd_verify_downgrade(spec, doc);
    else if (c == "mmp") out = cmd_mmp(spec, doc);
    else out = cmd_compactify(spec, doc);
    return {0, serialize(out)};
  } catch (const InputError& e) {
    json j = error_json(e.code, e.detail);
    if (!e.errors.empty()) {
      json errs = json::array();
      for (const auto& v : e.errors) errs.push_back({{"code", v.code}, {"path", v.path}, {"message", v.message}});
      j["errors"] = errs;
    }
    logger()->warn("malformed input: {}", e.detail);
    return {2, serialize(j)};
  } catch (const Error& e) {
    logger()->warn("{} failed: {}", spec.subcommand, e.what());
    return {1, serialize(error_json(e.code(), e.detail()))};
  } catch (const std::exception& e) {
    return {1, serialize(error_json("InternalError", e.what()))};
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Galois descent computations for torus actions"};
  app.allow_extras(false);
  std::string sub;
  std::string input;
  std::map<std::string, std::string> values;
  bool square = false;
  app.add_option("subcommand", sub, "one of the subcommands")->required();
  app.add_option("--input", input, "JSON document, '-' for standard input");
  const std::vector<std::pair<std::string, std::string>> options = {
      {"box", "sup-norm box for verify-downgrade (default 8)"},
      {"bound", "search bound: conjugators, norm witnesses or quasi-trivial bases"},
      {"strategy", "mmp strategy: first or exhaustive"},
      {"fan", "fan fixture: hexagon, square or p2"},
      {"group", "class id G1..G12 or trivial"},
      {"field", "norm-form field: gaussian, quadratic, cubic-t or biquadratic"},
      {"d", "squarefree integer for quadratic fields"},
      {"a", "first biquadratic parameter"},
      {"b", "second biquadratic parameter"},
      {"alpha", "rational to test as a norm"},
      {"example", "built-in input document"}};
  for (const auto& [name, help] : options) app.add_option("--" + name, values[name], help);
  app.add_flag("--square", square, "start from the square fan");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cout << serialize(error_json("InvalidArguments", e.what()));
    return 2;
  }
  CommandSpec spec;
  spec.subcommand = sub;
  if (!input.empty()) spec.input_path = input;
  for (const auto& [k, v] : values) {
    if (app.count("--" + k) > 0) spec.flags[k] = v;
  }
  if (square) spec.flags["square"] = "true";
  DispatchResult r = dispatch(spec);
  std::cout << r.output << std::flush;
  return r.exit_code;
}

}  // namespace galdesc::cli
