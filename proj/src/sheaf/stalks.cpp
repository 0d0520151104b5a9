#include "sheafkit/sheaf/stalks.hpp"

#include "sheafkit/finset/constructions.hpp"
#include "sheafkit/limits/limits.hpp"

namespace sheafkit {

namespace {

constexpr std::size_t max_section_product = 1u << 20;

}  // namespace

Stalk stalk(const Presheaf& f, Mask p) {
  const auto& x = f.x();
  if (!is_particle(x, p)) throw Error(ErrorCode::NotAParticle, "mask " + std::to_string(p) + " is not a particle");
  auto elems = members(p);
  std::vector<ObjId> objs(elems.begin(), elems.end());
  const auto& whole = f.covariant() ? *x.category() : *x.category_op();
  SetDiagram d;
  d.shape = full_subcategory(whole, objs);
  std::vector<ElemId> elem_of(d.shape->object_count());
  std::vector<std::size_t> obj_of(x.size(), 0);
  for (ObjId o = 0; o < d.shape->object_count(); ++o) {
    elem_of[o] = x.element(d.shape->object_name(o));
    obj_of[elem_of[o]] = o;
    d.sets.push_back(f.at(elem_of[o]));
  }
  for (MorId m = 0; m < d.shape->morphism_count(); ++m) {
    ElemId a = elem_of[d.shape->dom(m)], b = elem_of[d.shape->cod(m)];
    d.maps.push_back(f.covariant() ? f.map(a, b) : f.map(b, a));
  }
  Stalk s;
  s.particle = p;
  s.germ.assign(x.size(), FinSetMap());
  if (f.covariant()) {
    auto lim = limit_finset(d);
    s.set = lim.vertex;
    for (auto e : elems) s.germ[e] = lim.legs[obj_of[e]];
  } else {
    auto col = colimit_finset(d);
    s.set = col.vertex;
    for (auto e : elems) s.germ[e] = col.legs[obj_of[e]];
  }
  return s;
}

std::vector<Stalk> stalks(const Presheaf& f, const SetRepresentation& t) {
  std::vector<Stalk> out;
  for (auto p : t.particles) out.push_back(stalk(f, p));
  return out;
}

SectionFiber section_fiber_spaces(const Presheaf& f) { return section_fiber_spaces(f, set_representation(f.x())); }

SectionFiber section_fiber_spaces(const Presheaf& f, const SetRepresentation& t) {
  const auto& x = f.x();
  const std::size_t n = x.size();
  SectionFiber out{t, stalks(f, t), {}, {}, {}};
  std::vector<SetCone> prods(n);
  std::vector<SetCocone> coprods(n);
  for (ElemId e = 0; e < n; ++e) {
    std::vector<FinSet> factors;
    std::size_t size = 1;
    for (auto i : members(t.t[e])) {
      factors.push_back(out.stalks[i].set);
      size = out.stalks[i].set.size() == 0 ? 0 : size * out.stalks[i].set.size();
      if (size > max_section_product) throw Error(ErrorCode::ShapeMismatch, "section space too large at " + x.name(e));
    }
    prods[e] = product(factors);
    coprods[e] = coproduct(factors);
  }
  std::vector<FinSet> sec_sets, fib_sets;
  std::map<std::pair<ElemId, ElemId>, FinSetMap> sec_maps, fib_maps;
  for (ElemId e = 0; e < n; ++e) {
    sec_sets.push_back(prods[e].vertex);
    fib_sets.push_back(coprods[e].vertex);
  }
  for (ElemId a = 0; a < n; ++a) {
    for (ElemId b : members(x.up_set(a))) {
      // T_a ⊆ T_b: locate each factor of a among the factors of b.
      auto pa = members(t.t[a]);
      auto pb = members(t.t[b]);
      std::vector<FinSetMap> proj, inj;
      std::size_t j = 0;
      for (auto i : pa) {
        while (pb[j] != i) ++j;
        proj.push_back(prods[b].legs[j]);
        inj.push_back(coprods[b].legs[j]);
      }
      sec_maps.emplace(std::pair(a, b), tuple_map(prods[b].vertex, prods[a], proj));
      fib_maps.emplace(std::pair(a, b), cotuple_map(coprods[a], coprods[b].vertex, inj));
    }
  }
  out.sec = Presheaf(f.algebra(), Variance::Contravariant, std::move(sec_sets), sec_maps);
  out.fib = Presheaf(f.algebra(), Variance::Covariant, std::move(fib_sets), fib_maps);
  for (ElemId e = 0; e < n; ++e) {
    std::vector<FinSetMap> comps;
    for (auto i : members(t.t[e])) comps.push_back(out.stalks[i].germ[e]);
    if (f.covariant()) {
      out.alpha.push_back(cotuple_map(coprods[e], f.at(e), comps));
    } else {
      out.alpha.push_back(tuple_map(f.at(e), prods[e], comps));
    }
  }
  return out;
}

}  // namespace sheafkit
