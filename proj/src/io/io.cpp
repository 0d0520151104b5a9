#include "sheafkit/io/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sheafkit/error.hpp"

namespace sheafkit::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_error(const std::string& detail) { throw Error(ErrorCode::ParseError, detail); }

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path q(p);
  return q.is_absolute() ? q : base / q;
}

FinSet finset_from_json(const Json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j) atoms.emplace_back(a.get<std::string>());
  return FinSet(std::move(atoms));
}

// {atom: atom} between two sets; every domain atom must appear.
FinSetMap pairs_map(const FinSet& dom, const FinSet& cod, const Json& j, const std::string& where) {
  std::map<Atom, Atom> pairs;
  for (const auto& [k, v] : j.items()) {
    Atom a(k), b(v.get<std::string>());
    if (!dom.contains(a)) parse_error(where + ": " + k + " is not in the domain");
    if (!cod.contains(b)) parse_error(where + ": " + b.label() + " is not in the codomain");
    pairs.emplace(std::move(a), std::move(b));
  }
  if (pairs.size() != dom.size()) parse_error(where + ": map is not total");
  return FinSetMap::from_pairs(dom, cod, pairs);
}

Mask open_mask(const FinSet& points, const Json& open) {
  Mask u = 0;
  for (const auto& a : open) {
    auto i = points.index_of(Atom(a.get<std::string>()));
    u |= bit(i);
  }
  return u;
}

AlgebraRef algebra_field(const Json& j, const fs::path& base) {
  const auto& a = j.at("algebra");
  if (a.is_string()) return load_algebra(resolve(base, a.get<std::string>()));
  return algebra_from_json(a);
}

CategoryRef category_field(const Json& j, const std::string& key, const fs::path& base) {
  const auto& c = j.at(key);
  if (c.is_string()) return load_category(resolve(base, c.get<std::string>()));
  return std::make_shared<const FiniteCategory>(FiniteCategory::from_raw(raw_category_from_json(c)));
}

}  // namespace

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) parse_error(path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(path.string() + ": at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

FileKind kind_of(const Json& j) {
  if (!j.is_object()) parse_error("top level is not an object");
  if (j.contains("objects")) return FileKind::Category;
  if (j.contains("elements")) return FileKind::Lattice;
  if (j.contains("points")) return FileKind::Space;
  if (j.contains("variance") || j.contains("algebra")) return FileKind::Presheaf;
  if (j.contains("ob_classes")) return FileKind::Relation;
  if (j.contains("category")) return FileKind::Diagram;
  parse_error("unrecognized file");
}

RawCategory raw_category_from_json(const Json& j) {
  RawCategory r;
  for (const auto& o : j.at("objects")) r.objects.push_back(o.get<std::string>());
  for (const auto& m : j.at("morphisms")) {
    r.morphisms.push_back({m.at("id").get<std::string>(), m.at("dom").get<std::string>(), m.at("cod").get<std::string>()});
  }
  if (j.contains("identities")) {
    for (const auto& [k, v] : j.at("identities").items()) r.identities[k] = v.get<std::string>();
  }
  if (j.contains("comp")) {
    for (const auto& c : j.at("comp")) {
      r.comp.push_back({c.at("g").get<std::string>(), c.at("f").get<std::string>(), c.at("gf").get<std::string>()});
    }
  }
  return r;
}

Json category_to_json(const FiniteCategory& c) {
  auto r = c.to_raw();
  Json j;
  j["objects"] = r.objects;
  j["morphisms"] = Json::array();
  for (const auto& m : r.morphisms) j["morphisms"].push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
  j["identities"] = Json::object();
  for (const auto& o : r.objects) j["identities"][o] = r.identities.at(o);
  j["comp"] = Json::array();
  for (const auto& e : r.comp) j["comp"].push_back({{"g", e.g}, {"f", e.f}, {"gf", e.gf}});
  return j;
}

CategoryRef load_category(const fs::path& path) {
  return std::make_shared<const FiniteCategory>(FiniteCategory::from_raw(raw_category_from_json(read_json(path))));
}

TopologyAlgebra lattice_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) names.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> leq;
  for (const auto& p : j.at("leq")) {
    if (p.size() != 2) parse_error("leq entries are pairs");
    leq.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return TopologyAlgebra::from_order(std::move(names), leq);
}

ClassicalSpace space_from_json(const Json& j) {
  auto points = finset_from_json(j.at("points"));
  std::vector<Mask> opens;
  for (const auto& o : j.at("opens")) opens.push_back(open_mask(points, o));
  return ClassicalSpace(points, std::move(opens));
}

Json lattice_to_json(const TopologyAlgebra& x) {
  Json j;
  j["elements"] = x.names();
  j["leq"] = Json::array();
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b = 0; b < x.size(); ++b) {
      if (a != b && x.leq(a, b)) j["leq"].push_back({x.name(a), x.name(b)});
    }
  }
  return j;
}

Json space_to_json(const ClassicalSpace& m) {
  Json j;
  j["points"] = Json::array();
  for (const auto& p : m.points().elements()) j["points"].push_back(p.to_string());
  j["opens"] = Json::array();
  for (Mask u : m.opens()) {
    Json o = Json::array();
    for (auto i : members(u)) o.push_back(m.points()[i].to_string());
    j["opens"].push_back(o);
  }
  return j;
}

AlgebraRef algebra_from_json(const Json& j) {
  switch (kind_of(j)) {
    case FileKind::Lattice: return make_algebra(lattice_from_json(j));
    case FileKind::Space: return make_algebra(from_topology(space_from_json(j)));
    default: parse_error("expected a lattice or space file");
  }
}

AlgebraRef load_algebra(const fs::path& path) { return algebra_from_json(read_json(path)); }

Presheaf presheaf_from_json(const Json& j, const fs::path& base) {
  auto x = algebra_field(j, base);
  std::string v = j.value("variance", "pre");
  if (v != "pre" && v != "co") parse_error("variance must be \"pre\" or \"co\"");
  auto variance = v == "co" ? Variance::Covariant : Variance::Contravariant;
  const auto& sets_j = j.at("sets");
  std::vector<FinSet> sets;
  for (ElemId e = 0; e < x->size(); ++e) {
    if (!sets_j.contains(x->name(e))) parse_error("no set for element " + x->name(e));
    sets.push_back(finset_from_json(sets_j.at(x->name(e))));
  }
  for (const auto& [k, _] : sets_j.items()) {
    if (!x->find(k)) parse_error("unknown element " + k);
  }
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  if (j.contains("maps")) {
    for (const auto& [k, m] : j.at("maps").items()) {
      auto at = k.find("<=");
      if (at == std::string::npos) parse_error("map key " + k + " is not of the form x<=y");
      auto a = x->find(k.substr(0, at)), b = x->find(k.substr(at + 2));
      if (!a || !b) parse_error("map key " + k + " names an unknown element");
      if (!x->leq(*a, *b)) parse_error("map key " + k + " is not an order pair");
      const auto& dom = variance == Variance::Covariant ? sets[*a] : sets[*b];
      const auto& cod = variance == Variance::Covariant ? sets[*b] : sets[*a];
      maps.emplace(std::pair(*a, *b), pairs_map(dom, cod, m, k));
    }
  }
  // Maps out of an empty set are unique, so they may be left out.
  for (ElemId a = 0; a < x->size(); ++a) {
    for (ElemId b : members(x->up_set(a))) {
      const auto& dom = variance == Variance::Covariant ? sets[a] : sets[b];
      const auto& cod = variance == Variance::Covariant ? sets[b] : sets[a];
      if (a != b && dom.empty() && !maps.count({a, b})) maps.emplace(std::pair(a, b), FinSetMap(dom, cod, {}));
    }
  }
  return Presheaf(x, variance, std::move(sets), maps);
}

Json presheaf_to_json(const Presheaf& f, const Json& algebra_ref) {
  const auto& x = f.x();
  Json j;
  j["algebra"] = algebra_ref;
  j["variance"] = f.covariant() ? "co" : "pre";
  j["sets"] = Json::object();
  for (ElemId e = 0; e < x.size(); ++e) j["sets"][x.name(e)] = finset_to_json(f.at(e));
  j["maps"] = Json::object();
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b : members(x.up_set(a))) {
      if (a != b) j["maps"][x.name(a) + "<=" + x.name(b)] = map_to_json(f.map(a, b));
    }
  }
  return j;
}

SetDiagram diagram_from_json(const Json& j, const fs::path& base) {
  SetDiagram d;
  d.shape = category_field(j, "category", base);
  const auto& c = *d.shape;
  for (ObjId o = 0; o < c.object_count(); ++o) d.sets.push_back(finset_from_json(j.at("sets").at(c.object_name(o))));
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    const auto& dom = d.sets[c.dom(m)];
    const auto& cod = d.sets[c.cod(m)];
    const auto& maps = j.contains("maps") ? j.at("maps") : Json::object();
    if (maps.contains(c.morphism_name(m))) {
      d.maps.push_back(pairs_map(dom, cod, maps.at(c.morphism_name(m)), c.morphism_name(m)));
    } else if (c.is_identity(m)) {
      d.maps.push_back(FinSetMap::identity(dom));
    } else {
      parse_error("no map for morphism " + c.morphism_name(m));
    }
  }
  d.validate();
  return d;
}

bool is_abstract_diagram(const Json& j) { return j.contains("target"); }

Functor functor_from_json(const Json& j, const fs::path& base) {
  auto shape = category_field(j, "category", base);
  auto target = category_field(j, "target", base);
  std::vector<ObjId> ob;
  for (ObjId o = 0; o < shape->object_count(); ++o) {
    ob.push_back(target->object(j.at("ob").at(shape->object_name(o)).get<std::string>()));
  }
  std::vector<MorId> mor;
  const auto& mj = j.contains("mor") ? j.at("mor") : Json::object();
  for (MorId m = 0; m < shape->morphism_count(); ++m) {
    if (mj.contains(shape->morphism_name(m))) {
      mor.push_back(target->morphism(mj.at(shape->morphism_name(m)).get<std::string>()));
    } else if (shape->is_identity(m)) {
      mor.push_back(target->id(ob[shape->dom(m)]));
    } else {
      parse_error("no image for morphism " + shape->morphism_name(m));
    }
  }
  return Functor(shape, target, ob, mor);
}

CatRelation relation_from_json(const Json& j, const fs::path& base) {
  auto c = category_field(j, "category", base);
  std::vector<std::vector<ObjId>> ob_classes;
  for (const auto& cls : j.at("ob_classes")) {
    std::vector<ObjId> v;
    for (const auto& o : cls) v.push_back(c->object(o.get<std::string>()));
    ob_classes.push_back(std::move(v));
  }
  if (j.contains("cochain")) {
    std::vector<CochainGroup> groups;
    for (const auto& cls : ob_classes) {
      ObjId rep = cls.front();
      std::map<ObjId, MorId> gens;
      for (const auto& [_, g] : j.at("cochain").items()) {
        ObjId r = c->object(g.at("rep").get<std::string>());
        if (std::find(cls.begin(), cls.end(), r) == cls.end()) continue;
        rep = r;
        for (const auto& [o, m] : g.at("generators").items()) gens[c->object(o)] = c->morphism(m.get<std::string>());
      }
      groups.push_back(span_cochain(*c, cls, rep, gens));
    }
    return relation_from_cochain(c, ob_classes, groups);
  }
  std::vector<std::vector<MorId>> mor_classes;
  for (const auto& cls : j.at("mor_classes")) {
    std::vector<MorId> v;
    for (const auto& m : cls) v.push_back(c->morphism(m.get<std::string>()));
    mor_classes.push_back(std::move(v));
  }
  return CatRelation(c, std::move(ob_classes), std::move(mor_classes));
}

Json finset_to_json(const FinSet& s) {
  Json j = Json::array();
  for (const auto& a : s.elements()) j.push_back(a.to_string());
  return j;
}

Json map_to_json(const FinSetMap& f) {
  Json j = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) j[f.dom()[i].to_string()] = f.cod()[f(i)].to_string();
  return j;
}

Json violations_to_json(const std::vector<Violation>& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back({{"code", std::string(to_string(e.code))}, {"detail", e.detail}});
  return j;
}

Json suite_to_json(const suites::SuiteReport& r) {
  Json j;
  j["suite"] = r.id;
  j["statement"] = r.statement;
  j["ok"] = r.ok();
  j["cases"] = r.cases;
  j["passed"] = r.passed;
  j["counts"] = Json::object();
  for (const auto& [k, v] : r.counts) j["counts"][k] = v;
  j["failures"] = r.failures;
  return j;
}

std::string suite_to_text(const suites::SuiteReport& r) {
  std::ostringstream out;
  out << r.id << ": " << (r.ok() ? "PASS" : "FAIL") << " (" << r.passed << "/" << r.cases << ") " << r.statement
      << "\n";
  for (const auto& [k, v] : r.counts) out << "  " << k << ": " << v << "\n";
  for (const auto& f : r.failures) out << "  failure: " << f << "\n";
  return out.str();
}

}  // namespace sheafkit::io
