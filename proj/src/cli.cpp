#include "efh/cli.hpp"

#include "efh/error.hpp"
#include "efh/inertia.hpp"
#include "efh/resolutions.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace efh::cli {

namespace {

// ---- schema helpers ---------------------------------------------------------------

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + escape_token(key); }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

std::string where(const std::string& pointer) { return pointer.empty() ? "/" : pointer; }

void require_object(const Json& j, const std::string& pointer, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) throw SchemaError(child(pointer, k), "required key is missing");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw SchemaError(child(pointer, k), "unknown key");
  }
}

const Json& array_at(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array");
  return j;
}

std::string string_at(const Json& j, const std::string& pointer) {
  if (!j.is_string()) throw SchemaError(pointer, "expected a string");
  return j.get<std::string>();
}

std::size_t size_at(const Json& j, const std::string& pointer, std::size_t lo = 0, std::size_t hi = 1u << 20) {
  if (!j.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  const long long v = j.get<long long>();
  if (v < static_cast<long long>(lo) || v > static_cast<long long>(hi)) {
    throw SchemaError(pointer, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(v);
}

/// Integers or "p/q" strings; floats are rejected to keep inputs exact.
Rational rational_at(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError(pointer, "not a rational number");
    }
  }
  throw SchemaError(pointer, "expected an integer or a \"p/q\" string");
}

Json rational_json(const Rational& q) { return q.str(); }

Vector vector_at(const Json& j, const std::string& pointer, std::size_t n, const Field& field) {
  array_at(j, pointer);
  if (j.size() != n) throw SchemaError(pointer, "expected " + std::to_string(n) + " entries");
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(field.element(rational_at(j[i], child(pointer, i))));
  return v;
}

Matrix matrix_at(const Json& j, const std::string& pointer, std::size_t rows, std::size_t cols, const Field& field) {
  array_at(j, pointer);
  if (j.size() != rows) throw SchemaError(pointer, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<Rational>> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(vector_at(j[i], child(pointer, i), cols, field));
  if (rows == 0) return Matrix(0, cols, field);
  return Matrix::from_rows(r, field);
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.to_dense_rows()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(rational_json(q));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

Element element_at(const FiniteGroup& g, const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return static_cast<Element>(size_at(j, pointer, 0, g.order() - 1));
  const auto e = g.find(string_at(j, pointer));
  if (!e) throw SchemaError(pointer, "no group element named '" + j.get<std::string>() + "'");
  return *e;
}

Subgroup subgroup_at(const FiniteGroup& g, const Json& j, const std::string& pointer) {
  array_at(j, pointer);
  std::vector<Element> elements;
  for (std::size_t i = 0; i < j.size(); ++i) elements.push_back(element_at(g, j[i], child(pointer, i)));
  return Subgroup(g, elements);
}

Json elements_json(const FiniteGroup& g, const std::vector<Element>& elements) {
  Json out = Json::array();
  for (Element e : elements) out.push_back(g.name(e));
  return out;
}

// ---- modules --------------------------------------------------------------------

/// "regular", "trivial", or {"dim", "action"} with one matrix per basis
/// element of `a`.
RightModule module_at(const Json& j, const std::string& pointer, const Algebra& a) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "regular") return RightModule::regular(a);
    if (s == "trivial") return RightModule::trivial(a);
    throw SchemaError(pointer, "expected \"regular\", \"trivial\" or an explicit module");
  }
  require_object(j, pointer, {"dim", "action"});
  const std::size_t n = size_at(j["dim"], child(pointer, "dim"), 0, 4096);
  const std::string ap = child(pointer, "action");
  array_at(j["action"], ap);
  if (j["action"].size() != a.dim()) throw SchemaError(ap, "expected one matrix per basis element");
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < a.dim(); ++i) action.push_back(matrix_at(j["action"][i], child(ap, i), n, n, a.field()));
  return RightModule(a, n, std::move(action));
}

}  // namespace

// ---- serializers --------------------------------------------------------------------

Json group_to_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (Element a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (Element b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return Json{{"kind", "table"}, {"table", std::move(table)}, {"names", g.names()}};
}

FiniteGroup group_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError(child(pointer, "kind"), "required key is missing");
  const std::string kind = string_at(j["kind"], child(pointer, "kind"));
  if (kind == "cyclic" || kind == "dihedral" || kind == "symmetric") {
    require_object(j, pointer, {"kind", "n"});
    const std::size_t n = size_at(j["n"], child(pointer, "n"), kind == "dihedral" ? 2 : 1, kind == "symmetric" ? 5 : 64);
    if (kind == "cyclic") return FiniteGroup::cyclic(n);
    if (kind == "dihedral") return FiniteGroup::dihedral(n);
    return FiniteGroup::symmetric(n);
  }
  if (kind == "product") {
    require_object(j, pointer, {"kind", "factors"});
    const std::string fp = child(pointer, "factors");
    array_at(j["factors"], fp);
    if (j["factors"].empty()) throw SchemaError(fp, "expected at least one factor");
    FiniteGroup g = group_from_json(j["factors"][0], child(fp, 0));
    for (std::size_t i = 1; i < j["factors"].size(); ++i) {
      g = FiniteGroup::product(g, group_from_json(j["factors"][i], child(fp, i)));
    }
    return g;
  }
  if (kind == "table") {
    require_object(j, pointer, {"kind", "table"}, {"names"});
    const std::string tp = child(pointer, "table");
    array_at(j["table"], tp);
    const std::size_t n = j["table"].size();
    std::vector<std::vector<Element>> table;
    for (std::size_t a = 0; a < n; ++a) {
      const std::string rp = child(tp, a);
      array_at(j["table"][a], rp);
      if (j["table"][a].size() != n) throw SchemaError(rp, "the table must be square");
      std::vector<Element> row;
      for (std::size_t b = 0; b < n; ++b) row.push_back(static_cast<Element>(size_at(j["table"][a][b], child(rp, b), 0, n - 1)));
      table.push_back(std::move(row));
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      const std::string np = child(pointer, "names");
      array_at(j["names"], np);
      for (std::size_t i = 0; i < j["names"].size(); ++i) names.push_back(string_at(j["names"][i], child(np, i)));
    }
    return FiniteGroup(std::move(table), std::move(names));
  }
  throw SchemaError(child(pointer, "kind"), "expected cyclic, dihedral, symmetric, product or table");
}

Json algebra_to_json(const Algebra& a) {
  const std::size_t d = a.dim();
  Json constants = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json plane = Json::array();
    for (std::size_t k = 0; k < d; ++k) {
      Json row = Json::array();
      for (std::size_t l = 0; l < d; ++l) row.push_back(rational_json(a.constant(i, k, l)));
      plane.push_back(std::move(row));
    }
    constants.push_back(std::move(plane));
  }
  Json out{{"kind", "constants"}, {"dim", d}, {"constants", std::move(constants)}, {"unit", vector_json(a.unit())}};
  if (a.augmentation()) out["augmentation"] = vector_json(*a.augmentation());
  return out;
}

Algebra algebra_from_json(const Json& j, const Field& field, const std::string& pointer) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError(child(pointer, "kind"), "required key is missing");
  const std::string kind = string_at(j["kind"], child(pointer, "kind"));
  if (kind == "ground") {
    require_object(j, pointer, {"kind"});
    return Algebra::ground(field);
  }
  if (kind == "group") {
    require_object(j, pointer, {"kind", "group"});
    return Algebra::group_algebra(group_from_json(j["group"], child(pointer, "group")), field);
  }
  if (kind == "truncated_poly" || kind == "matrix" || kind == "upper_triangular") {
    require_object(j, pointer, {"kind", "n"});
    const std::size_t n = size_at(j["n"], child(pointer, "n"), 1, 16);
    if (kind == "truncated_poly") return Algebra::truncated_polynomial(n, field);
    if (kind == "matrix") return Algebra::matrix_algebra(n, field);
    return Algebra::upper_triangular(n, field);
  }
  if (kind == "product") {
    require_object(j, pointer, {"kind", "factors"});
    const std::string fp = child(pointer, "factors");
    array_at(j["factors"], fp);
    if (j["factors"].empty()) throw SchemaError(fp, "expected at least one factor");
    std::vector<Algebra> factors;
    for (std::size_t i = 0; i < j["factors"].size(); ++i) factors.push_back(algebra_from_json(j["factors"][i], field, child(fp, i)));
    return Algebra::product(factors);
  }
  if (kind == "constants") {
    require_object(j, pointer, {"kind", "dim", "constants", "unit"}, {"augmentation"});
    const std::size_t d = size_at(j["dim"], child(pointer, "dim"), 1, 64);
    const std::string cp = child(pointer, "constants");
    array_at(j["constants"], cp);
    if (j["constants"].size() != d) throw SchemaError(cp, "expected dim planes");
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d; ++i) {
      const Matrix plane = matrix_at(j["constants"][i], child(cp, i), d, d, field);
      for (const auto& row : plane.to_dense_rows()) c.insert(c.end(), row.begin(), row.end());
    }
    const Vector unit = vector_at(j["unit"], child(pointer, "unit"), d, field);
    std::optional<Vector> aug;
    if (j.contains("augmentation")) aug = vector_at(j["augmentation"], child(pointer, "augmentation"), d, field);
    return Algebra(field, d, std::move(c), unit, std::move(aug));
  }
  throw SchemaError(child(pointer, "kind"), "expected ground, group, truncated_poly, matrix, upper_triangular, "
                                            "product or constants");
}

Json twist_to_json(const AlgebraTwist& phi) {
  return Json{{"matrix", matrix_json(phi.matrix())},
              {"kind", phi.kind() == TwistKind::kAutomorphism ? "auto" : "anti"}};
}

AlgebraTwist twist_from_json(const Json& j, const Algebra& a, const std::string& pointer) {
  if (j.is_string() && j.get<std::string>() == "identity") return AlgebraTwist::identity(a);
  require_object(j, pointer, {"matrix", "kind"});
  const std::string kind = string_at(j["kind"], child(pointer, "kind"));
  if (kind != "auto" && kind != "anti") throw SchemaError(child(pointer, "kind"), "expected \"auto\" or \"anti\"");
  Matrix m = matrix_at(j["matrix"], child(pointer, "matrix"), a.dim(), a.dim(), a.field());
  return AlgebraTwist(a, std::move(m), kind == "auto" ? TwistKind::kAutomorphism : TwistKind::kAntiAutomorphism);
}

Json orbifold_to_json(const OrbifoldCircle& o) {
  Json out{{"group", group_to_json(o.group())}, {"action", to_string(o.kind())}};
  if (!o.singular_strata().empty()) {
    Json colours = Json::object();
    for (const auto& s : o.singular_strata()) colours[s.name] = s.colour;
    out["colours"] = std::move(colours);
  }
  return out;
}

OrbifoldCircle orbifold_from_json(const Json& j, const std::string& pointer) {
  require_object(j, pointer, {"group", "action"}, {"colours"});
  const FiniteGroup g = group_from_json(j["group"], child(pointer, "group"));
  const std::string ap = child(pointer, "action");
  const std::string action = string_at(j["action"], ap);
  ActionKind kind;
  if (action == "trivial") {
    kind = ActionKind::kTrivial;
  } else if (action == "rotation") {
    kind = ActionKind::kRotation;
  } else if (action == "reflection") {
    kind = ActionKind::kReflection;
  } else {
    throw SchemaError(ap, "expected rotation, reflection or trivial");
  }
  std::vector<Stratum> strata;
  if (kind == ActionKind::kReflection) {
    std::string c0 = kDefaultColour, c1 = kDefaultColour;
    if (j.contains("colours")) {
      const std::string cp = child(pointer, "colours");
      require_object(j["colours"], cp, {}, {"stratum_0", "stratum_1"});
      if (j["colours"].contains("stratum_0")) c0 = string_at(j["colours"]["stratum_0"], child(cp, "stratum_0"));
      if (j["colours"].contains("stratum_1")) c1 = string_at(j["colours"]["stratum_1"], child(cp, "stratum_1"));
    }
    strata = {{"stratum_0", c0}, {"stratum_1", c1}};
  } else if (j.contains("colours") && !j["colours"].empty()) {
    throw SchemaError(child(pointer, "colours"), "only reflection actions have singular strata");
  }
  return OrbifoldCircle(g, kind, std::move(strata));
}

Json gcw_to_json(const GammaCWComplex& x) {
  const FiniteGroup& g = x.group();
  Json cells = Json::array();
  for (const auto& c : x.cells()) {
    Json cell{{"id", c.id}, {"dim", c.dim}, {"isotropy", elements_json(g, c.isotropy.elements())}};
    if (!c.reversed_by.empty()) cell["reversed_by"] = elements_json(g, c.reversed_by);
    cells.push_back(std::move(cell));
  }
  Json boundary = Json::array();
  for (const auto& t : x.boundary()) {
    Json m{{"coset", g.name(t.coset)}, {"coeff", rational_json(t.coeff)}};
    if (!boundary.empty() && boundary.back()["from"] == t.from && boundary.back()["to"] == t.to) {
      boundary.back()["morphisms"].push_back(std::move(m));
    } else {
      boundary.push_back(Json{{"from", t.from}, {"to", t.to}, {"morphisms", Json::array({std::move(m)})}});
    }
  }
  return Json{{"group", group_to_json(g)}, {"cells", std::move(cells)}, {"boundary", std::move(boundary)}};
}

GammaCWComplex gcw_from_json(const Json& j, const std::string& pointer) {
  require_object(j, pointer, {"group", "cells"}, {"boundary"});
  const FiniteGroup g = group_from_json(j["group"], child(pointer, "group"));
  const std::string cp = child(pointer, "cells");
  array_at(j["cells"], cp);
  std::vector<CellOrbit> cells;
  for (std::size_t i = 0; i < j["cells"].size(); ++i) {
    const std::string p = child(cp, i);
    const Json& c = j["cells"][i];
    require_object(c, p, {"id", "dim", "isotropy"}, {"reversed_by"});
    CellOrbit cell{string_at(c["id"], child(p, "id")), static_cast<int>(size_at(c["dim"], child(p, "dim"), 0, 64)),
                   subgroup_at(g, c["isotropy"], child(p, "isotropy")), {}};
    if (c.contains("reversed_by")) {
      const std::string rp = child(p, "reversed_by");
      array_at(c["reversed_by"], rp);
      for (std::size_t k = 0; k < c["reversed_by"].size(); ++k) {
        cell.reversed_by.push_back(element_at(g, c["reversed_by"][k], child(rp, k)));
      }
    }
    cells.push_back(std::move(cell));
  }
  std::vector<BoundaryTerm> boundary;
  if (j.contains("boundary")) {
    const std::string bp = child(pointer, "boundary");
    array_at(j["boundary"], bp);
    for (std::size_t i = 0; i < j["boundary"].size(); ++i) {
      const std::string p = child(bp, i);
      const Json& b = j["boundary"][i];
      require_object(b, p, {"from", "to", "morphisms"});
      const std::string from = string_at(b["from"], child(p, "from"));
      const std::string to = string_at(b["to"], child(p, "to"));
      const std::string mp = child(p, "morphisms");
      array_at(b["morphisms"], mp);
      for (std::size_t k = 0; k < b["morphisms"].size(); ++k) {
        const std::string q = child(mp, k);
        const Json& m = b["morphisms"][k];
        require_object(m, q, {"coset"}, {"coeff"});
        const Rational coeff = m.contains("coeff") ? rational_at(m["coeff"], child(q, "coeff")) : Rational(1);
        boundary.push_back({from, to, element_at(g, m["coset"], child(q, "coset")), coeff});
      }
    }
  }
  return GammaCWComplex(g, std::move(cells), std::move(boundary));
}

// ---- builtins -------------------------------------------------------------------------

namespace {

const std::map<std::string, std::string>& builtin_registry() {
  static const std::map<std::string, std::string> registry = {
      {"rotation-circle-q", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"rotation"},
        "algebra":{"kind":"ground"},"twist":"identity"})"},
      {"rotation-circle-qz2", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"rotation"},
        "algebra":{"kind":"group","group":{"kind":"cyclic","n":2}},"twist":"identity"})"},
      {"rotation-circle-qxq-swap", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"rotation"},
        "algebra":{"kind":"product","factors":[{"kind":"ground"},{"kind":"ground"}]},
        "twist":{"matrix":[[0,1],[1,0]],"kind":"auto"}})"},
      {"rotation-circle-m2-conj", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"rotation"},
        "algebra":{"kind":"matrix","n":2},
        "twist":{"matrix":[[1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,1]],"kind":"auto"}})"},
      {"rotation-circle-dual-numbers", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"rotation"},
        "algebra":{"kind":"truncated_poly","n":2},"twist":"identity"})"},
      {"reflection-circle-m2-transpose", R"({"schema":1,
        "orbifold":{"group":{"kind":"cyclic","n":2},"action":"reflection",
                    "colours":{"stratum_0":"c_star","stratum_1":"c_star"}},
        "algebra":{"kind":"matrix","n":2},
        "twist":{"matrix":[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]],"kind":"anti"},
        "modules":{"c_star":"regular"}})"},
      {"disjoint-rotation-circles-qz2", R"({"schema":1,
        "orbifold":[{"group":{"kind":"cyclic","n":2},"action":"rotation"},
                    {"group":{"kind":"cyclic","n":2},"action":"rotation"}],
        "algebra":{"kind":"group","group":{"kind":"cyclic","n":2}},"twist":"identity"})"},
      {"tor-dual-numbers", R"({"schema":1,
        "algebra":{"kind":"truncated_poly","n":2},"left":"trivial","right":"trivial"})"},
      {"tor-qz2-trivial", R"({"schema":1,
        "algebra":{"kind":"group","group":{"kind":"cyclic","n":2}},"left":"trivial","right":"trivial"})"},
      {"point", R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
        "cells":[{"id":"v","dim":0,"isotropy":["e","g"]}]}})"},
      {"rotation-circle", R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
        "cells":[{"id":"v","dim":0,"isotropy":["e"]},{"id":"e","dim":1,"isotropy":["e"]}],
        "boundary":[{"from":"e","to":"v","morphisms":[{"coset":"g","coeff":1},{"coset":"e","coeff":-1}]}]}})"},
      {"reflection-circle", R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
        "cells":[{"id":"p","dim":0,"isotropy":["e","g"]},{"id":"q","dim":0,"isotropy":["e","g"]},
                 {"id":"e","dim":1,"isotropy":["e"]}],
        "boundary":[{"from":"e","to":"q","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"e","to":"p","morphisms":[{"coset":"e","coeff":-1}]}]}})"},
      {"reflection-circle-subdivided", R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
        "cells":[{"id":"p","dim":0,"isotropy":["e","g"]},{"id":"q","dim":0,"isotropy":["e","g"]},
                 {"id":"m","dim":0,"isotropy":["e"]},{"id":"a","dim":1,"isotropy":["e"]},
                 {"id":"b","dim":1,"isotropy":["e"]}],
        "boundary":[{"from":"a","to":"m","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"a","to":"p","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"b","to":"q","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"b","to":"m","morphisms":[{"coset":"e","coeff":-1}]}]},
        "decomposition":{"plus":["p","m","a"],"minus":["q","m","b"]}})"},
      {"torus-z2-rotation", R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
        "cells":[{"id":"P00","dim":0,"isotropy":["e","g"]},{"id":"P10","dim":0,"isotropy":["e","g"]},
                 {"id":"P01","dim":0,"isotropy":["e","g"]},{"id":"P11","dim":0,"isotropy":["e","g"]},
                 {"id":"h00","dim":1,"isotropy":["e"]},{"id":"h01","dim":1,"isotropy":["e"]},
                 {"id":"v00","dim":1,"isotropy":["e"]},{"id":"v10","dim":1,"isotropy":["e"]},
                 {"id":"s00","dim":2,"isotropy":["e"]},{"id":"s10","dim":2,"isotropy":["e"]}],
        "boundary":[{"from":"h00","to":"P10","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"h00","to":"P00","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"h01","to":"P11","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"h01","to":"P01","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"v00","to":"P01","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"v00","to":"P00","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"v10","to":"P11","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"v10","to":"P10","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"s00","to":"h00","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"s00","to":"v10","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"s00","to":"h01","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"s00","to":"v00","morphisms":[{"coset":"e","coeff":-1}]},
                    {"from":"s10","to":"h00","morphisms":[{"coset":"g","coeff":-1}]},
                    {"from":"s10","to":"v00","morphisms":[{"coset":"e","coeff":1}]},
                    {"from":"s10","to":"h01","morphisms":[{"coset":"g","coeff":1}]},
                    {"from":"s10","to":"v10","morphisms":[{"coset":"e","coeff":-1}]}]}})"},
  };
  return registry;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, doc] : builtin_registry()) out.push_back(name);
  return out;
}

Json builtin_document(const std::string& name) {
  const auto& r = builtin_registry();
  const auto it = r.find(name);
  if (it == r.end()) throw SchemaError("", "unknown builtin '" + name + "'");
  return Json::parse(it->second);
}

std::vector<std::vector<std::string>> corpus_jobs() {
  std::vector<std::vector<std::string>> jobs;
  for (const auto& name : builtin_names()) {
    const Json doc = builtin_document(name);
    const std::string input = "builtin:" + name;
    std::vector<std::string> commands;
    if (doc.contains("gcw")) commands = {"bredon", "chenruan", "axioms"};
    if (doc.contains("left")) commands = {"tor"};
    if (doc.contains("orbifold")) {
      commands = {"facthom"};
      if (doc["orbifold"].is_object() && doc["orbifold"]["action"] == "rotation") {
        commands.insert(commands.end(), {"hochschild", "traces"});
      }
    }
    for (const auto& c : commands) {
      jobs.push_back({c, input, "--cap", "3", "--format", "json", "--oracle"});
      jobs.push_back({c, input, "--cap", "3", "--format", "table"});
    }
  }
  return jobs;
}

// ---- jobs ---------------------------------------------------------------------------------

namespace {

struct Options {
  std::string command;
  std::string input;
  Field field;
  int cap = kDefaultDegreeCap;
  bool normalized = true;
  bool json = false;
  bool oracle = false;
  TraceConvention convention = TraceConvention::kPhiLeft;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Json betti_json(const std::vector<std::size_t>& b) { return Json(b); }

/// Report skeleton in a fixed key order.
Json report(const Options& o, const std::vector<std::size_t>& betti, int trusted_through) {
  Json r;
  r["command"] = o.command;
  r["betti"] = betti_json(betti);
  r["trusted_through"] = trusted_through;
  r["field"] = o.field.name();
  return r;
}

void attach_oracle(Json& r, Json oracle, bool agree, const std::string& what) {
  oracle["agree"] = agree;
  if (!agree) {
    oracle["status"] = "DISAGREE";
    r["warnings"].push_back("DISAGREE: " + what);
  }
  r["oracle"] = std::move(oracle);
}

const std::set<std::string> kTopLevelKeys = {"schema", "orbifold", "algebra", "twist", "modules", "variant",
                                             "left", "right", "gcw", "other", "coefficients", "decomposition"};

void validate_top_level(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  if (!doc.contains("schema")) throw SchemaError("/schema", "required key is missing");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<long long>() != 1) {
    throw SchemaError("/schema", "unsupported schema version (expected 1)");
  }
  for (const auto& [k, v] : doc.items()) {
    if (!kTopLevelKeys.count(k)) throw SchemaError(child("", k), "unknown key");
  }
}

const Json& need(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(child("", key), "required key is missing");
  return doc[key];
}

struct AlgebraDatum {
  Algebra algebra;
  AlgebraTwist twist;
};

AlgebraDatum algebra_datum(const Json& doc, const Field& field) {
  Algebra a = algebra_from_json(need(doc, "algebra"), field, "/algebra");
  AlgebraTwist phi = doc.contains("twist") ? twist_from_json(doc["twist"], a, "/twist") : AlgebraTwist::identity(a);
  return {std::move(a), std::move(phi)};
}

std::vector<std::size_t> trusted(const BettiVector& b) { return b.trusted(); }

int trusted_degree(const BettiVector& b) { return b.trusted_through.value_or(b.max_degree()); }

std::size_t twist_order(const AlgebraTwist& phi) {
  Matrix power = phi.matrix();
  const Matrix id = Matrix::identity(phi.algebra().dim(), phi.algebra().field());
  for (std::size_t k = 1; k <= 64; ++k) {
    if (power == id) return k;
    power = power * phi.matrix();
  }
  throw MathError(ErrorCode::kNotATwist, "phi has no finite order below 65");
}

Json run_hochschild(const Options& o, const Json& doc) {
  const AlgebraDatum d = algebra_datum(doc, o.field);
  const Bimodule m = twisted_diagonal_bimodule(d.algebra, d.twist);
  const BettiVector b = homology(hochschild_complex({d.algebra, m, o.cap, o.normalized}));
  Json r = report(o, trusted(b), trusted_degree(b));
  r["warnings"] = Json::array();
  if (o.oracle) {
    const std::size_t n = std::max<std::size_t>(2, twist_order(d.twist));
    const ExcisionResult e = evaluate(OrbifoldCircle::rotation(n), DiskAlgebra1D::smooth(d.algebra, d.twist), o.cap,
                                      "standard", o.normalized);
    const auto eb = trusted(e.betti);
    attach_oracle(r, Json{{"method", "excision on the rotation circle of order " + std::to_string(n)},
                          {"betti", eb}},
                  eb == trusted(b), "excision differs from the Hochschild complex");
  }
  return r;
}

Json run_traces(const Options& o, const Json& doc) {
  const AlgebraDatum d = algebra_datum(doc, o.field);
  const auto traces = twisted_traces(d.algebra, d.twist, o.convention);
  Json r;
  r["command"] = o.command;
  r["dimension"] = traces.size();
  r["convention"] = o.convention == TraceConvention::kPhiLeft ? "phi-left" : "phi-right";
  Json basis = Json::array();
  for (const auto& t : traces) basis.push_back(vector_json(t));
  r["traces"] = std::move(basis);
  r["field"] = o.field.name();
  r["warnings"] = Json::array();
  if (o.oracle) {
    const Bimodule m = twisted_diagonal_bimodule(d.algebra, d.twist);
    const BettiVector b = homology(hochschild_complex({d.algebra, m, 1, o.normalized}));
    attach_oracle(r, Json{{"method", "HH_0 of the twisted Hochschild complex"}, {"betti0", b.at(0)}},
                  b.at(0) == traces.size(), "trace count differs from HH_0");
  }
  return r;
}

Json run_tor(const Options& o, const Json& doc) {
  const Algebra a = algebra_from_json(need(doc, "algebra"), o.field, "/algebra");
  const RightModule left = module_at(need(doc, "left"), "/left", a);
  const RightModule right = module_at(need(doc, "right"), "/right", opposite(a));
  const BettiVector b = homology(bar_complex({a, left, right, o.cap, o.normalized}));
  Json r = report(o, trusted(b), trusted_degree(b));
  r["warnings"] = Json::array();
  if (o.oracle) {
    const BettiVector u = homology(bar_complex({a, left, right, o.cap, !o.normalized}));
    attach_oracle(r, Json{{"method", o.normalized ? "unnormalized bar complex" : "normalized bar complex"},
                          {"betti", trusted(u)}},
                  trusted(u) == trusted(b), "normalized and unnormalized bar complexes differ");
  }
  return r;
}

DiskAlgebra1D disk_datum(const Json& doc, const Field& field) {
  AlgebraDatum d = algebra_datum(doc, field);
  DiskAlgebra1D disk = DiskAlgebra1D::smooth(d.algebra, d.twist);
  if (doc.contains("modules")) {
    if (!doc["modules"].is_object()) throw SchemaError("/modules", "expected an object keyed by colour");
    for (const auto& [colour, m] : doc["modules"].items()) {
      disk.singular.emplace(std::make_pair(OrbifoldCircle::singular_type(), colour),
                            module_at(m, child("/modules", colour), d.algebra));
    }
  }
  return disk;
}

Json run_facthom(const Options& o, const Json& doc) {
  const DiskAlgebra1D disk = disk_datum(doc, o.field);
  const Json& orb = need(doc, "orbifold");
  std::string variant = "standard";
  if (doc.contains("variant")) variant = string_at(doc["variant"], "/variant");
  if (orb.is_array()) {
    std::vector<OrbifoldCircle> parts;
    for (std::size_t i = 0; i < orb.size(); ++i) parts.push_back(orbifold_from_json(orb[i], child("/orbifold", i)));
    if (parts.empty()) throw SchemaError("/orbifold", "expected at least one component");
    const ExcisionResult e = evaluate_disjoint_union(parts, disk, o.cap, o.normalized);
    Json r = report(o, trusted(e.betti), e.trusted_through);
    r["components"] = parts.size();
    r["warnings"] = Json::array();
    if (o.oracle) {
      BettiVector conv;
      conv.betti = {1};
      for (const auto& p : parts) {
        BettiVector f;
        f.betti = trusted(evaluate(p, disk, o.cap, variant, o.normalized).betti);
        conv = convolve(conv, f);
      }
      conv.betti.resize(std::min(conv.betti.size(), trusted(e.betti).size()));
      attach_oracle(r, Json{{"method", "graded tensor of the components"}, {"betti", conv.betti}},
                    conv.betti == trusted(e.betti), "disjoint union differs from the tensor of its components");
    }
    return r;
  }
  const OrbifoldCircle circle = orbifold_from_json(orb, "/orbifold");
  const ExcisionResult e = evaluate(circle, disk, o.cap, variant, o.normalized);
  Json r = report(o, trusted(e.betti), e.trusted_through);
  r["gluing"] = e.decomposition_used.variant;
  r["action"] = to_string(circle.kind());
  r["warnings"] = Json::array();
  if (o.oracle) {
    if (circle.kind() == ActionKind::kReflection) {
      const std::string other = variant == "standard" ? "swapped" : "standard";
      const auto ob = trusted(evaluate(circle, disk, o.cap, other, o.normalized).betti);
      attach_oracle(r, Json{{"method", "gluing " + other}, {"betti", ob}}, ob == trusted(e.betti),
                    "the two reflection gluings differ");
    } else {
      const OracleReport rep = check_excision_against_oracle(circle, disk, o.cap, o.normalized);
      attach_oracle(r, Json{{"method", "twisted Hochschild complex"}, {"betti", trusted(rep.oracle)}}, rep.agree,
                    "excision differs from the twisted Hochschild complex");
    }
  }
  return r;
}

struct CoefficientChoice {
  std::string name = "constant";
  Variance variance = Variance::kCovariant;
  std::optional<std::vector<Json>> family;
  std::optional<Json> representation;
};

CoefficientChoice coefficient_choice(const Json& doc) {
  CoefficientChoice c;
  if (!doc.contains("coefficients")) return c;
  const Json& j = doc["coefficients"];
  if (j.is_string()) {
    c.name = j.get<std::string>();
    return c;
  }
  require_object(j, "/coefficients", {}, {"system", "variance", "family", "representation"});
  if (j.contains("system")) c.name = string_at(j["system"], "/coefficients/system");
  if (j.contains("variance")) {
    const std::string v = string_at(j["variance"], "/coefficients/variance");
    if (v == "contravariant") {
      c.variance = Variance::kContravariant;
    } else if (v != "covariant") {
      throw SchemaError("/coefficients/variance", "expected covariant or contravariant");
    }
  }
  if (j.contains("family")) {
    array_at(j["family"], "/coefficients/family");
    c.family = std::vector<Json>(j["family"].begin(), j["family"].end());
  }
  if (j.contains("representation")) {
    if (j.contains("system")) throw SchemaError("/coefficients/representation", "give either system or representation");
    c.representation = j["representation"];
    c.name = "representation";
  }
  return c;
}

CoefficientSystem coefficient_system(const Json& doc, const FiniteGroup& g, const Field& field) {
  const CoefficientChoice c = coefficient_choice(doc);
  std::optional<std::vector<Subgroup>> family;
  if (c.family) {
    family.emplace();
    for (std::size_t i = 0; i < c.family->size(); ++i) {
      family->push_back(subgroup_at(g, (*c.family)[i], child("/coefficients/family", i)));
    }
  }
  const OrbitCategory oc(g, family);
  if (c.representation) {
    const std::string p = "/coefficients/representation";
    array_at(*c.representation, p);
    if (c.representation->size() != g.order()) throw SchemaError(p, "expected one matrix per group element");
    std::vector<Matrix> rho;
    const std::size_t d = (*c.representation)[0].is_array() ? (*c.representation)[0].size() : 0;
    for (std::size_t i = 0; i < g.order(); ++i) rho.push_back(matrix_at((*c.representation)[i], child(p, i), d, d, field));
    return representation_system(oc, rho, c.variance, "representation");
  }
  const auto names = builtin_system_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end()) {
    throw SchemaError(doc["coefficients"].is_string() ? "/coefficients" : "/coefficients/system",
                      "unknown coefficient system '" + c.name + "'");
  }
  return builtin_system(c.name, oc, field, c.variance);
}

Json run_bredon(const Options& o, const Json& doc) {
  const GammaCWComplex x = gcw_from_json(need(doc, "gcw"), "/gcw");
  const CoefficientSystem a = coefficient_system(doc, x.group(), o.field);
  const BredonResult res = bredon_homology(x, a);
  Json r = report(o, res.betti.betti, res.betti.max_degree());
  r["coefficients"] = res.coefficient_system_id;
  r["variance"] = a.variance() == Variance::kCovariant ? "covariant" : "contravariant";
  r["warnings"] = Json::array();
  if (o.oracle) {
    const bool averaging = !o.field.is_prime() || x.group().order() % o.field.characteristic() != 0;
    if (res.coefficient_system_id == "constant" && a.dims() == std::vector<std::size_t>(a.dims().size(), 1) &&
        averaging && !x.has_orientation_reversal()) {
      const BettiVector inv = homology(invariants_subcomplex(x.expanded_action(o.field)));
      attach_oracle(r, Json{{"method", "invariant cellular chains"}, {"betti", inv.betti}}, inv.betti == res.betti.betti,
                    "Bredon homology differs from the invariant chains");
    } else {
      r["warnings"].push_back("no independent oracle for this coefficient system");
    }
  }
  return r;
}

/// Orbifold Euler characteristic (1/|G|) sum over commuting pairs of
/// chi(X^<g,h>), counted directly from fixed cells.
Rational orbifold_euler(const GammaCWComplex& x) {
  const FiniteGroup& g = x.group();
  long total = 0;
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      if (g.mul(a, b) != g.mul(b, a)) continue;
      for (int n = 0; n <= x.dimension(); ++n) {
        for (const auto& cell : x.expanded_cells(n)) {
          const Subgroup& iso = x.cells()[cell.orbit].isotropy;
          const Element r = cell.representative;
          const Element ri = g.inv(r);
          if (iso.contains(g.mul(g.mul(ri, a), r)) && iso.contains(g.mul(g.mul(ri, b), r))) total += n % 2 ? -1 : 1;
        }
      }
    }
  }
  return Rational(total, static_cast<long>(g.order()));
}

Json run_chenruan(const Options& o, const Json& doc) {
  const GammaCWComplex x = gcw_from_json(need(doc, "gcw"), "/gcw");
  const auto pieces = inertia_pieces(x, o.field);
  BettiVector total;
  total.betti.assign(static_cast<std::size_t>(std::max(x.dimension(), 0)) + 1, 0);
  Json sectors = Json::array();
  for (const auto& p : pieces) {
    total = total + p.betti;
    sectors.push_back(Json{{"class", elements_json(x.group(), p.conjugacy_class)}, {"betti", p.betti.betti}});
  }
  Json r = report(o, total.betti, total.max_degree());
  r["sectors"] = std::move(sectors);
  r["warnings"] = Json::array();
  if (o.oracle) {
    const Rational chi = orbifold_euler(x);
    attach_oracle(r, Json{{"method", "commuting-pair fixed-cell count"}, {"euler_characteristic", chi.str()}},
                  chi == Rational(total.euler_characteristic()), "Euler characteristic of the sectors differs");
  }
  return r;
}

Json run_axioms(const Options& o, const Json& doc) {
  const GammaCWComplex x = gcw_from_json(need(doc, "gcw"), "/gcw");
  const GammaCWComplex y = doc.contains("other") ? gcw_from_json(doc["other"], "/other") : x;
  const CoefficientSystem a = coefficient_system(doc, x.group(), o.field);
  std::optional<Decomposition> dec;
  if (doc.contains("decomposition")) {
    const Json& d = doc["decomposition"];
    require_object(d, "/decomposition", {"plus", "minus"});
    dec.emplace();
    for (const auto& [key, out] : {std::pair{"plus", &dec->plus}, std::pair{"minus", &dec->minus}}) {
      const std::string p = child("/decomposition", key);
      array_at(d[key], p);
      for (std::size_t i = 0; i < d[key].size(); ++i) out->push_back(string_at(d[key][i], child(p, i)));
    }
  }
  const AxiomReport rep = check_axioms(x, y, a, dec);
  Json r;
  r["command"] = o.command;
  r["ok"] = rep.ok();
  r["additivity"] = rep.additivity;
  r["union_betti"] = rep.union_betti.betti;
  if (rep.mayer_vietoris_euler) r["mayer_vietoris_euler"] = *rep.mayer_vietoris_euler;
  if (rep.mayer_vietoris_bounds) r["mayer_vietoris_bounds"] = *rep.mayer_vietoris_bounds;
  r["failures"] = rep.failures;
  r["field"] = o.field.name();
  r["warnings"] = Json::array();
  if (!rep.ok()) r["warnings"].push_back("DISAGREE: an axiom check failed");
  return r;
}

// ---- rendering ------------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_table(const Json& j, const std::string& prefix, std::ostringstream& out) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      render_table(v, key, out);
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
      out << std::left << std::setw(24) << key;
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << scalar_text(v[i]);
      out << "\n";
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object()) {
          render_table(v[i], key + "[" + std::to_string(i) + "]", out);
        } else {
          out << std::left << std::setw(24) << key + "[" + std::to_string(i) + "]" << v[i].dump() << "\n";
        }
      }
    } else {
      out << std::left << std::setw(24) << key << scalar_text(v) << "\n";
    }
  }
}

Options parse_options(const std::vector<std::string>& args) {
  CLI::App app{"exact homology engine"};
  Options o;
  std::string field = "q", normalized = "true", format = "table", convention = "phi-left";
  app.add_option("command", o.command)
      ->required()
      ->check(CLI::IsMember({"hochschild", "tor", "facthom", "bredon", "chenruan", "traces", "axioms"}));
  app.add_option("input", o.input)->required();
  app.add_option("--field", field);
  app.add_option("--cap", o.cap)->check(CLI::Range(1, 12));
  app.add_option("--normalized", normalized)->check(CLI::IsMember({"true", "false"}));
  app.add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--oracle", o.oracle);
  app.add_option("--trace-convention", convention)->check(CLI::IsMember({"phi-left", "phi-right"}));
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (field == "q") {
    o.field = Field::rationals();
  } else if (field.rfind("fp:", 0) == 0) {
    std::uint32_t p = 0;
    try {
      const unsigned long v = std::stoul(field.substr(3));
      if (v > 0xffffffffUL) throw std::out_of_range("p");
      p = static_cast<std::uint32_t>(v);
      o.field = Field::prime(p);
    } catch (const std::exception&) {
      throw UsageError("--field: expected q or fp:<prime>");
    }
  } else {
    throw UsageError("--field: expected q or fp:<prime>");
  }
  o.normalized = normalized == "true";
  o.json = format == "json";
  o.convention = convention == "phi-left" ? TraceConvention::kPhiLeft : TraceConvention::kPhiRight;
  return o;
}

Json load_document(const std::string& input, const std::string& stdin_text) {
  if (input.rfind("builtin:", 0) == 0) return builtin_document(input.substr(8));
  std::string text;
  if (input == "-") {
    text = stdin_text;
  } else {
    std::ifstream f(input, std::ios::binary);
    if (!f) throw UsageError("cannot read '" + input + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Output run(const std::vector<std::string>& args, const std::string& stdin_text) {
  Output result;
  try {
    const Options o = parse_options(args);
    const Json doc = load_document(o.input, stdin_text);
    validate_top_level(doc);
    Json r;
    if (o.command == "hochschild") {
      r = run_hochschild(o, doc);
    } else if (o.command == "traces") {
      r = run_traces(o, doc);
    } else if (o.command == "tor") {
      r = run_tor(o, doc);
    } else if (o.command == "facthom") {
      r = run_facthom(o, doc);
    } else if (o.command == "bredon") {
      r = run_bredon(o, doc);
    } else if (o.command == "chenruan") {
      r = run_chenruan(o, doc);
    } else {
      r = run_axioms(o, doc);
    }
    if (o.json) {
      result.out = r.dump() + "\n";
    } else {
      std::ostringstream out;
      render_table(r, "", out);
      result.out = out.str();
    }
  } catch (const UsageError& e) {
    result.exit_code = 1;
    result.err = std::string("usage error: ") + e.what() + "\n";
  } catch (const SchemaError& e) {
    result.exit_code = 1;
    result.err = "schema error at " + where(e.pointer()) + ": " + e.what() + "\n";
  } catch (const MathError& e) {
    result.exit_code = 2;
    result.err = std::string("math error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.err = std::string("math error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace efh::cli
