#include "sheafkit/fincat/set_diagram.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace sheafkit {

std::vector<Violation> set_diagram_violations(const SetDiagram& d) {
  std::vector<Violation> v;
  const auto& c = *d.shape;
  if (d.sets.size() != c.object_count() || d.maps.size() != c.morphism_count()) {
    v.push_back({ErrorCode::NotAFunctor, "set diagram tables do not match the shape"});
    return v;
  }
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    if (!(d.maps[m].dom() == d.sets[c.dom(m)]) || !(d.maps[m].cod() == d.sets[c.cod(m)])) {
      v.push_back({ErrorCode::NotAFunctor, "map at " + c.morphism_name(m) + " has wrong type"});
    }
  }
  if (!v.empty()) return v;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    if (!(d.maps[c.id(a)] == FinSetMap::identity(d.sets[a]))) {
      v.push_back({ErrorCode::NotAFunctor, "identity not preserved at " + c.object_name(a)});
    }
  }
  for (const auto& e : comp_table(c)) {
    if (!(d.maps[e.gf] == compose(d.maps[e.g], d.maps[e.f]))) {
      v.push_back({ErrorCode::NotAFunctor,
                   "composite not preserved at (" + c.morphism_name(e.g) + "," + c.morphism_name(e.f) + ")"});
    }
  }
  return v;
}

void SetDiagram::validate() const {
  auto v = set_diagram_violations(*this);
  if (!v.empty()) throw ValidationError(std::move(v));
}

SetDiagram hom_functor(const CategoryRef& cref, ObjId a, Variance variance) {
  const auto& c = *cref;
  if (a >= c.object_count()) throw Error(ErrorCode::UnknownObject, std::to_string(a));
  SetDiagram d;
  d.shape = variance == Variance::Covariant ? cref : opposite(c);
  auto hom_set = [&](ObjId x) {
    std::vector<Atom> elems;
    auto h = variance == Variance::Covariant ? c.hom(a, x) : c.hom(x, a);
    for (MorId m : h) elems.emplace_back(c.morphism_name(m));
    return FinSet(std::move(elems));
  };
  for (ObjId x = 0; x < c.object_count(); ++x) d.sets.push_back(hom_set(x));
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    std::vector<std::size_t> t;
    if (variance == Variance::Covariant) {
      // u ↦ f ∘ u
      auto target = c.hom(a, c.cod(f));
      for (MorId u : c.hom(a, c.dom(f))) {
        MorId fu = c.compose(f, u);
        t.push_back(std::find(target.begin(), target.end(), fu) - target.begin());
      }
      d.maps.emplace_back(d.sets[c.dom(f)], d.sets[c.cod(f)], std::move(t));
    } else {
      // u ↦ u ∘ f, from Hom(cod f, A) to Hom(dom f, A)
      auto target = c.hom(c.dom(f), a);
      for (MorId u : c.hom(c.cod(f), a)) {
        MorId uf = c.compose(u, f);
        t.push_back(std::find(target.begin(), target.end(), uf) - target.begin());
      }
      d.maps.emplace_back(d.sets[c.cod(f)], d.sets[c.dom(f)], std::move(t));
    }
  }
  d.validate();
  return d;
}

FinSetCategory make_finset_category(const std::vector<FinSet>& sets,
                                    const std::vector<std::string>& names) {
  FinSetCategory out;
  out.sets = sets;
  CategoryBuilder b;
  for (std::size_t i = 0; i < sets.size(); ++i) b.add_object(i < names.size() ? names[i] : "S" + std::to_string(i));
  std::map<std::tuple<ObjId, ObjId, std::vector<std::size_t>>, MorId> index;
  for (ObjId x = 0; x < sets.size(); ++x) {
    for (ObjId y = 0; y < sets.size(); ++y) {
      for (auto& f : all_maps(sets[x], sets[y])) {
        std::string name = "S" + std::to_string(x) + "->S" + std::to_string(y) + ":[";
        for (std::size_t i = 0; i < f.table().size(); ++i) {
          if (i) name += ",";
          name += std::to_string(f.table()[i]);
        }
        name += "]";
        MorId m = b.add_morphism(std::move(name), x, y);
        index[{x, y, std::vector<std::size_t>(f.table().begin(), f.table().end())}] = m;
        if (x == y && f == FinSetMap::identity(sets[x])) b.set_identity(x, m);
        out.maps.push_back(std::move(f));
      }
    }
  }
  std::vector<std::pair<ObjId, ObjId>> ends(out.maps.size());
  for (const auto& [k, m] : index) ends[m] = {std::get<0>(k), std::get<1>(k)};
  for (MorId f = 0; f < out.maps.size(); ++f) {
    for (MorId g = 0; g < out.maps.size(); ++g) {
      if (ends[f].second != ends[g].first) continue;
      auto gf = compose(out.maps[g], out.maps[f]);
      b.set_composite(g, f, index.at({ends[f].first, ends[g].second,
                                       std::vector<std::size_t>(gf.table().begin(), gf.table().end())}));
    }
  }
  out.category = b.build_ref(false);
  return out;
}

MorId FinSetCategory::morphism_of(ObjId dom, ObjId cod, const FinSetMap& f) const {
  for (MorId m : category->hom(dom, cod)) {
    if (maps[m] == f) return m;
  }
  throw Error(ErrorCode::UnknownMorphism, "no morphism realizes " + f.to_string());
}

}  // namespace sheafkit
