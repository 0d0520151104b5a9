#include "sheafkit/fincat/category.hpp"

#include <algorithm>
#include <set>

#include "sheafkit/error.hpp"

namespace sheafkit {

ObjId CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.emplace_back();
  return objects_.size() - 1;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId dom, ObjId cod) {
  morphisms_.push_back({std::move(name), dom, cod});
  return morphisms_.size() - 1;
}

MorId CategoryBuilder::add_identity(ObjId o, std::string name) {
  MorId m = add_morphism(std::move(name), o, o);
  set_identity(o, m);
  return m;
}

void CategoryBuilder::set_identity(ObjId o, MorId m) { identities_.at(o) = m; }

void CategoryBuilder::set_composite(MorId g, MorId f, MorId gf) {
  composites_.push_back({{g, f}, gf});
}

CategoryRef CategoryBuilder::build_ref(bool fill) const {
  return std::make_shared<const FiniteCategory>(build(fill));
}

FiniteCategory CategoryBuilder::build(bool fill) const {
  std::vector<Violation> v;
  FiniteCategory c;
  c.object_names_ = objects_;
  for (ObjId o = 0; o < objects_.size(); ++o) {
    if (!c.object_index_.emplace(objects_[o], o).second) {
      v.push_back({ErrorCode::DuplicateId, "object " + objects_[o]});
    }
  }
  const std::size_t n = objects_.size();
  for (MorId m = 0; m < morphisms_.size(); ++m) {
    const auto& mm = morphisms_[m];
    if (mm.dom >= n || mm.cod >= n) {
      v.push_back({ErrorCode::UnknownObject, "endpoint of morphism " + mm.name});
    }
    if (!c.morphism_index_.emplace(mm.name, m).second) {
      v.push_back({ErrorCode::DuplicateId, "morphism " + mm.name});
    }
    c.morphisms_.push_back({mm.name, mm.dom, mm.cod});
  }
  if (!v.empty()) throw ValidationError(std::move(v));

  const auto& mor = c.morphisms_;
  c.identities_.resize(n);
  bool ids_ok = true;
  for (ObjId o = 0; o < n; ++o) {
    if (!identities_[o] || *identities_[o] >= mor.size()) {
      v.push_back({ErrorCode::MissingIdentity, "no identity for " + objects_[o]});
      ids_ok = false;
      continue;
    }
    MorId i = *identities_[o];
    if (mor[i].dom != o || mor[i].cod != o) {
      v.push_back({ErrorCode::MissingIdentity,
                   "identity " + mor[i].name + " of " + objects_[o] + " is not an endomorphism"});
      ids_ok = false;
    }
    c.identities_[o] = i;
  }

  for (const auto& [gf_pair, gf] : composites_) {
    auto [g, f] = gf_pair;
    if (g >= mor.size() || f >= mor.size() || gf >= mor.size()) {
      v.push_back({ErrorCode::UnknownMorphism, "composite entry refers to an unknown morphism"});
      continue;
    }
    const std::string triple = "(" + mor[g].name + "," + mor[f].name + ")";
    if (mor[f].cod != mor[g].dom) {
      v.push_back({ErrorCode::BadDomCod, triple + " is not composable"});
      continue;
    }
    if (mor[gf].dom != mor[f].dom || mor[gf].cod != mor[g].cod) {
      v.push_back({ErrorCode::BadDomCod, triple + " composes to " + mor[gf].name +
                                             " with wrong domain or codomain"});
      continue;
    }
    auto [it, fresh] = c.comp_.emplace(FiniteCategory::key(g, f), gf);
    if (!fresh && it->second != gf) {
      v.push_back({ErrorCode::DuplicateId, triple + " has two composites"});
    }
  }
  if (fill && ids_ok) {
    for (MorId f = 0; f < mor.size(); ++f) {
      c.comp_.emplace(FiniteCategory::key(f, c.identities_[mor[f].dom]), f);
      c.comp_.emplace(FiniteCategory::key(c.identities_[mor[f].cod], f), f);
    }
  }

  c.homs_.assign(n * n, {});
  for (MorId m = 0; m < mor.size(); ++m) c.homs_[mor[m].dom * n + mor[m].cod].push_back(m);

  // Exhaustive axiom sweep.
  for (MorId f = 0; f < mor.size(); ++f) {
    for (ObjId z = 0; z < n; ++z) {
      for (MorId g : c.homs_[mor[f].cod * n + z]) {
        if (!c.comp_.count(FiniteCategory::key(g, f))) {
          v.push_back({ErrorCode::MissingComposite, "(" + mor[g].name + "," + mor[f].name + ")"});
        }
      }
    }
    if (ids_ok) {
      auto right = c.try_compose(f, c.identities_[mor[f].dom]);
      auto left = c.try_compose(c.identities_[mor[f].cod], f);
      if ((right && *right != f) || (left && *left != f)) {
        v.push_back({ErrorCode::MissingIdentity, "identity law fails at " + mor[f].name});
      }
    }
  }
  for (MorId f = 0; f < mor.size(); ++f) {
    for (ObjId y = 0; y < n; ++y) {
      for (MorId g : c.homs_[mor[f].cod * n + y]) {
        auto gf = c.try_compose(g, f);
        for (ObjId z = 0; z < n; ++z) {
          for (MorId h : c.homs_[y * n + z]) {
            auto hg = c.try_compose(h, g);
            if (!gf || !hg) continue;
            auto left = c.try_compose(*hg, f);
            auto right = c.try_compose(h, *gf);
            if (left && right && *left != *right) {
              v.push_back({ErrorCode::NonAssociative,
                           "(" + mor[h].name + "," + mor[g].name + "," + mor[f].name + ")"});
            }
          }
        }
      }
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  return c;
}

FiniteCategory FiniteCategory::from_raw(const RawCategory& raw, bool fill) {
  std::vector<Violation> v;
  CategoryBuilder b;
  std::map<std::string, ObjId, std::less<>> obj;
  for (const auto& o : raw.objects) {
    ObjId id = b.add_object(o);
    if (!obj.emplace(o, id).second) v.push_back({ErrorCode::DuplicateId, "object " + o});
  }
  std::map<std::string, MorId, std::less<>> mor;
  for (const auto& m : raw.morphisms) {
    auto d = obj.find(m.dom), k = obj.find(m.cod);
    if (d == obj.end() || k == obj.end()) {
      v.push_back({ErrorCode::UnknownObject, "endpoint of morphism " + m.id});
      continue;
    }
    MorId id = b.add_morphism(m.id, d->second, k->second);
    if (!mor.emplace(m.id, id).second) v.push_back({ErrorCode::DuplicateId, "morphism " + m.id});
  }
  for (const auto& [o, m] : raw.identities) {
    auto oi = obj.find(o);
    auto mi = mor.find(m);
    if (oi == obj.end()) {
      v.push_back({ErrorCode::UnknownObject, "identity for " + o});
    } else if (mi == mor.end()) {
      v.push_back({ErrorCode::UnknownMorphism, "identity " + m});
    } else {
      b.set_identity(oi->second, mi->second);
    }
  }
  for (const auto& e : raw.comp) {
    auto g = mor.find(e.g), f = mor.find(e.f), gf = mor.find(e.gf);
    if (g == mor.end() || f == mor.end() || gf == mor.end()) {
      v.push_back({ErrorCode::UnknownMorphism, "composite (" + e.g + "," + e.f + ")=" + e.gf});
      continue;
    }
    b.set_composite(g->second, f->second, gf->second);
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  return b.build(fill);
}

std::optional<ObjId> FiniteCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FiniteCategory::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

ObjId FiniteCategory::object(std::string_view name) const {
  auto o = find_object(name);
  if (!o) throw Error(ErrorCode::UnknownObject, std::string(name));
  return *o;
}

MorId FiniteCategory::morphism(std::string_view name) const {
  auto m = find_morphism(name);
  if (!m) throw Error(ErrorCode::UnknownMorphism, std::string(name));
  return *m;
}

std::optional<MorId> FiniteCategory::try_compose(MorId g, MorId f) const {
  auto it = comp_.find(key(g, f));
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

MorId FiniteCategory::compose(MorId g, MorId f) const {
  if (cod(f) != dom(g)) {
    throw Error(ErrorCode::ShapeMismatch, morphism_name(g) + " after " + morphism_name(f));
  }
  return comp_.at(key(g, f));
}

RawCategory FiniteCategory::to_raw() const {
  RawCategory r;
  r.objects = object_names_;
  for (const auto& m : morphisms_) r.morphisms.push_back({m.name, object_names_[m.dom], object_names_[m.cod]});
  for (ObjId o = 0; o < object_count(); ++o) r.identities[object_names_[o]] = morphisms_[identities_[o]].name;
  for (const auto& e : comp_table(*this)) {
    r.comp.push_back({morphism_name(e.g), morphism_name(e.f), morphism_name(e.gf)});
  }
  return r;
}

CategoryRef single_category(const std::string& object) {
  CategoryBuilder b;
  b.add_identity(b.add_object(object), "id_" + object);
  return b.build_ref();
}

CategoryRef discrete_category(std::span<const std::string> objects) {
  CategoryBuilder b;
  for (const auto& o : objects) b.add_identity(b.add_object(o), "id_" + o);
  return b.build_ref();
}

CategoryRef poset_category(std::span<const std::string> objects,
                           const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = objects.size();
  CategoryBuilder b;
  for (const auto& o : objects) b.add_object(o);
  std::vector<std::vector<std::optional<MorId>>> arrow(n, std::vector<std::optional<MorId>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!leq[a][c]) continue;
      std::string name = a == c ? "id_" + objects[a] : objects[a] + "<=" + objects[c];
      arrow[a][c] = b.add_morphism(name, a, c);
      if (a == c) b.set_identity(a, *arrow[a][c]);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t c = 0; c < n; ++c) {
        if (arrow[a][m] && arrow[m][c] && arrow[a][c]) {
          b.set_composite(*arrow[m][c], *arrow[a][m], *arrow[a][c]);
        }
      }
    }
  }
  return b.build_ref();
}

CategoryRef chain_category(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return poset_category(names, leq);
}

CategoryRef opposite(const FiniteCategory& c) {
  CategoryBuilder b;
  for (ObjId o = 0; o < c.object_count(); ++o) b.add_object(c.object_name(o));
  for (MorId m = 0; m < c.morphism_count(); ++m) b.add_morphism(c.morphism_name(m), c.cod(m), c.dom(m));
  for (ObjId o = 0; o < c.object_count(); ++o) b.set_identity(o, c.id(o));
  for (const auto& e : comp_table(c)) b.set_composite(e.f, e.g, e.gf);
  return b.build_ref(false);
}

CategoryRef subcategory(const FiniteCategory& c, std::span<const MorId> morphisms,
                        std::span<const ObjId> extra_objects) {
  std::set<ObjId> objs(extra_objects.begin(), extra_objects.end());
  std::set<MorId> mors(morphisms.begin(), morphisms.end());
  for (MorId m : morphisms) {
    objs.insert(c.dom(m));
    objs.insert(c.cod(m));
  }
  for (ObjId o : objs) mors.insert(c.id(o));
  CategoryBuilder b;
  std::map<ObjId, ObjId> onew;
  for (ObjId o : objs) onew[o] = b.add_object(c.object_name(o));
  std::map<MorId, MorId> mnew;
  for (MorId m : mors) mnew[m] = b.add_morphism(c.morphism_name(m), onew[c.dom(m)], onew[c.cod(m)]);
  for (ObjId o : objs) b.set_identity(onew[o], mnew[c.id(o)]);
  std::vector<Violation> v;
  for (MorId f : mors) {
    for (MorId g : mors) {
      auto gf = c.try_compose(g, f);
      if (!gf) continue;
      auto it = mnew.find(*gf);
      if (it == mnew.end()) {
        v.push_back({ErrorCode::MissingComposite,
                     "(" + c.morphism_name(g) + "," + c.morphism_name(f) + ") leaves the subcategory"});
        continue;
      }
      b.set_composite(mnew[g], mnew[f], it->second);
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  return b.build_ref(false);
}

CategoryRef full_subcategory(const FiniteCategory& c, std::span<const ObjId> objects) {
  CategoryBuilder b;
  std::vector<std::optional<ObjId>> onew(c.object_count());
  for (ObjId o : objects) onew[o] = b.add_object(c.object_name(o));
  std::vector<std::optional<MorId>> mnew(c.morphism_count());
  for (ObjId a : objects) {
    for (ObjId z : objects) {
      for (MorId m : c.hom(a, z)) mnew[m] = b.add_morphism(c.morphism_name(m), *onew[a], *onew[z]);
    }
  }
  for (ObjId o : objects) b.set_identity(*onew[o], *mnew[c.id(o)]);
  for (const auto& e : comp_table(c)) {
    if (mnew[e.g] && mnew[e.f]) b.set_composite(*mnew[e.g], *mnew[e.f], *mnew[e.gf]);
  }
  return b.build_ref(false);
}

MorphismPredicates morphism_predicates(const FiniteCategory& c, MorId f) {
  if (f >= c.morphism_count()) throw Error(ErrorCode::UnknownMorphism, std::to_string(f));
  MorphismPredicates p;
  p.is_mono = true;
  for (ObjId x = 0; x < c.object_count() && p.is_mono; ++x) {
    auto h = c.hom(x, c.dom(f));
    for (std::size_t i = 0; i < h.size() && p.is_mono; ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        if (c.compose(f, h[i]) == c.compose(f, h[j])) {
          p.is_mono = false;
          break;
        }
      }
    }
  }
  p.is_epi = true;
  for (ObjId x = 0; x < c.object_count() && p.is_epi; ++x) {
    auto h = c.hom(c.cod(f), x);
    for (std::size_t i = 0; i < h.size() && p.is_epi; ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        if (c.compose(h[i], f) == c.compose(h[j], f)) {
          p.is_epi = false;
          break;
        }
      }
    }
  }
  p.is_iso = inverse_of(c, f).has_value();
  return p;
}

std::optional<MorId> inverse_of(const FiniteCategory& c, MorId f) {
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(g, f) == c.id(c.dom(f)) && c.compose(f, g) == c.id(c.cod(f))) return g;
  }
  return std::nullopt;
}

std::optional<MorId> find_iso(const FiniteCategory& c, ObjId a, ObjId b) {
  for (MorId f : c.hom(a, b)) {
    if (inverse_of(c, f)) return f;
  }
  return std::nullopt;
}

InitialTerminal find_initial_terminal(const FiniteCategory& c) {
  InitialTerminal r;
  const std::size_t n = c.object_count();
  for (ObjId o = 0; o < n; ++o) {
    bool initial = true, terminal = true;
    for (ObjId x = 0; x < n; ++x) {
      initial = initial && c.hom(o, x).size() == 1;
      terminal = terminal && c.hom(x, o).size() == 1;
    }
    if (initial) r.initials.push_back(o);
    if (terminal) r.terminals.push_back(o);
  }
  for (ObjId a : r.initials) {
    for (ObjId b : r.initials) r.initials_isomorphic = r.initials_isomorphic && find_iso(c, a, b);
  }
  for (ObjId a : r.terminals) {
    for (ObjId b : r.terminals) r.terminals_isomorphic = r.terminals_isomorphic && find_iso(c, a, b);
  }
  return r;
}

CommutativityReport check_commutative(const FiniteCategory& c, std::span<const MorId> edges) {
  for (MorId e : edges) {
    if (e >= c.morphism_count()) throw Error(ErrorCode::UnknownMorphism, std::to_string(e));
  }
  CommutativityReport rep;
  const std::size_t n = c.object_count();
  // A state is (end object, composite). Paths that reach the same state are
  // interchangeable for every extension, so one witness path per state suffices.
  for (ObjId start = 0; start < n; ++start) {
    std::map<MorId, std::vector<MorId>> seen;  // composite -> witness path
    std::map<ObjId, MorId> first_at_end;
    std::vector<MorId> frontier;
    for (MorId e : edges) {
      if (c.dom(e) != start || seen.count(e)) continue;
      seen[e] = {e};
      frontier.push_back(e);
    }
    while (!frontier.empty()) {
      std::vector<MorId> next;
      for (MorId comp : frontier) {
        for (MorId e : edges) {
          if (c.dom(e) != c.cod(comp)) continue;
          MorId ext = c.compose(e, comp);
          if (seen.count(ext)) continue;
          auto path = seen[comp];
          path.push_back(e);
          seen[ext] = std::move(path);
          next.push_back(ext);
        }
      }
      frontier = std::move(next);
    }
    for (const auto& [comp, path] : seen) {
      auto [it, fresh] = first_at_end.emplace(c.cod(comp), comp);
      if (!fresh && it->second != comp) {
        rep.commutative = false;
        rep.path_a = seen[it->second];
        rep.path_b = path;
        return rep;
      }
    }
  }
  return rep;
}

std::vector<CompEntry> comp_table(const FiniteCategory& c) {
  std::vector<CompEntry> out;
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    for (ObjId a = 0; a < c.object_count(); ++a) {
      for (MorId f : c.hom(a, c.dom(g))) {
        if (auto gf = c.try_compose(g, f)) out.push_back({g, f, *gf});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CompEntry& x, const CompEntry& y) {
    return std::pair(x.g, x.f) < std::pair(y.g, y.f);
  });
  return out;
}

}  // namespace sheafkit
