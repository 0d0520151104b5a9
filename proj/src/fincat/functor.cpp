#include "sheafkit/fincat/functor.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sheafkit {

std::vector<Violation> functor_violations(const FiniteCategory& src, const FiniteCategory& dst,
                                          const std::vector<ObjId>& ob,
                                          const std::vector<MorId>& mor) {
  std::vector<Violation> v;
  if (ob.size() != src.object_count() || mor.size() != src.morphism_count()) {
    v.push_back({ErrorCode::NotAFunctor, "table sizes do not match the source category"});
    return v;
  }
  for (ObjId o : ob) {
    if (o >= dst.object_count()) {
      v.push_back({ErrorCode::NotAFunctor, "object image out of range"});
      return v;
    }
  }
  for (MorId m : mor) {
    if (m >= dst.morphism_count()) {
      v.push_back({ErrorCode::NotAFunctor, "morphism image out of range"});
      return v;
    }
  }
  for (MorId f = 0; f < src.morphism_count(); ++f) {
    if (dst.dom(mor[f]) != ob[src.dom(f)] || dst.cod(mor[f]) != ob[src.cod(f)]) {
      v.push_back({ErrorCode::NotAFunctor, "dom/cod not preserved at " + src.morphism_name(f)});
    }
  }
  if (!v.empty()) return v;
  for (ObjId a = 0; a < src.object_count(); ++a) {
    if (mor[src.id(a)] != dst.id(ob[a])) {
      v.push_back({ErrorCode::NotAFunctor, "identity not preserved at " + src.object_name(a)});
    }
  }
  for (const auto& e : comp_table(src)) {
    if (mor[e.gf] != dst.compose(mor[e.g], mor[e.f])) {
      v.push_back({ErrorCode::NotAFunctor, "composite not preserved at (" + src.morphism_name(e.g) +
                                               "," + src.morphism_name(e.f) + ")"});
    }
  }
  return v;
}

Functor::Functor(CategoryRef src, CategoryRef dst, std::vector<ObjId> ob, std::vector<MorId> mor)
    : src_(std::move(src)), dst_(std::move(dst)), ob_(std::move(ob)), mor_(std::move(mor)) {
  auto v = functor_violations(*src_, *dst_, ob_, mor_);
  if (!v.empty()) throw ValidationError(std::move(v));
}

Functor Functor::identity(CategoryRef c) {
  std::vector<ObjId> ob(c->object_count());
  std::vector<MorId> mor(c->morphism_count());
  for (std::size_t i = 0; i < ob.size(); ++i) ob[i] = i;
  for (std::size_t i = 0; i < mor.size(); ++i) mor[i] = i;
  return Functor(c, c, std::move(ob), std::move(mor));
}

bool operator==(const Functor& a, const Functor& b) {
  return a.src_ == b.src_ && a.dst_ == b.dst_ && a.ob_ == b.ob_ && a.mor_ == b.mor_;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.dst() != g.src()) throw Error(ErrorCode::ShapeMismatch, "functors are not composable");
  std::vector<ObjId> ob;
  std::vector<MorId> mor;
  for (ObjId o : f.ob_table()) ob.push_back(g.ob(o));
  for (MorId m : f.mor_table()) mor.push_back(g.mor(m));
  return Functor(f.src(), g.dst(), std::move(ob), std::move(mor));
}

FunctorPredicates functor_predicates(const Functor& f) {
  const auto& c = *f.src();
  const auto& d = *f.dst();
  FunctorPredicates p;
  p.faithful = true;
  p.full = true;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (ObjId b = 0; b < c.object_count(); ++b) {
      std::set<MorId> images;
      for (MorId m : c.hom(a, b)) images.insert(f.mor(m));
      if (images.size() != c.hom(a, b).size()) p.faithful = false;
      if (images.size() != d.hom(f.ob(a), f.ob(b)).size()) p.full = false;
    }
  }
  std::set<ObjId> obs(f.ob_table().begin(), f.ob_table().end());
  bool ob_injective = obs.size() == c.object_count();
  bool ob_surjective = obs.size() == d.object_count();
  p.embedding = p.faithful && ob_injective;
  p.surjective = p.full && ob_surjective;
  p.dense = true;
  for (ObjId y = 0; y < d.object_count() && p.dense; ++y) {
    bool hit = false;
    for (ObjId x : obs) {
      if (find_iso(d, x, y)) {
        hit = true;
        break;
      }
    }
    p.dense = hit;
  }
  return p;
}

std::optional<Functor> find_isomorphism(const CategoryRef& a, const CategoryRef& b) {
  const auto& ca = *a;
  const auto& cb = *b;
  const std::size_t n = ca.object_count();
  if (n != cb.object_count() || ca.morphism_count() != cb.morphism_count()) return std::nullopt;
  auto profile = [n](const FiniteCategory& c, ObjId o) {
    std::vector<std::size_t> out, in;
    for (ObjId x = 0; x < n; ++x) {
      out.push_back(c.hom(o, x).size());
      in.push_back(c.hom(x, o).size());
    }
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    out.insert(out.end(), in.begin(), in.end());
    out.push_back(c.hom(o, o).size());
    return out;
  };
  std::vector<std::vector<std::size_t>> pa(n), pb(n);
  for (ObjId o = 0; o < n; ++o) {
    pa[o] = profile(ca, o);
    pb[o] = profile(cb, o);
  }
  std::vector<ObjId> ob(n);
  std::vector<bool> used(n, false);
  std::vector<MorId> mor(ca.morphism_count());
  constexpr MorId unset = static_cast<MorId>(-1);

  // Morphism stage: per hom-class bijections, checked against composition
  // as soon as both factors are assigned.
  std::vector<MorId> order;
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      for (MorId m : ca.hom(x, y)) order.push_back(m);
    }
  }
  auto comps = comp_table(ca);
  std::vector<std::vector<CompEntry>> touching(ca.morphism_count());
  for (const auto& e : comps) {
    touching[e.g].push_back(e);
    touching[e.f].push_back(e);
    touching[e.gf].push_back(e);
  }
  std::vector<bool> mused(cb.morphism_count(), false);

  std::function<bool(std::size_t)> assign_mor = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    MorId m = order[k];
    for (MorId t : cb.hom(ob[ca.dom(m)], ob[ca.cod(m)])) {
      if (mused[t]) continue;
      if (ca.is_identity(m) != cb.is_identity(t)) continue;
      mor[m] = t;
      bool ok = true;
      for (const auto& e : touching[m]) {
        if (mor[e.g] == unset || mor[e.f] == unset || mor[e.gf] == unset) continue;
        if (cb.compose(mor[e.g], mor[e.f]) != mor[e.gf]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        mused[t] = true;
        if (assign_mor(k + 1)) return true;
        mused[t] = false;
      }
      mor[m] = unset;
    }
    return false;
  };

  std::function<bool(ObjId)> assign_ob = [&](ObjId k) -> bool {
    if (k == n) {
      std::fill(mor.begin(), mor.end(), unset);
      std::fill(mused.begin(), mused.end(), false);
      return assign_mor(0);
    }
    for (ObjId t = 0; t < n; ++t) {
      if (used[t] || pa[k] != pb[t]) continue;
      bool ok = true;
      for (ObjId j = 0; j < k && ok; ++j) {
        ok = ca.hom(j, k).size() == cb.hom(ob[j], t).size() &&
             ca.hom(k, j).size() == cb.hom(t, ob[j]).size();
      }
      if (!ok) continue;
      ob[k] = t;
      used[t] = true;
      if (assign_ob(k + 1)) return true;
      used[t] = false;
    }
    return false;
  };

  if (!assign_ob(0)) return std::nullopt;
  return Functor(a, b, ob, mor);
}

NatTrans::NatTrans(Functor from, Functor to, std::vector<MorId> components)
    : from_(std::move(from)), to_(std::move(to)), components_(std::move(components)) {
  if (from_.src() != to_.src() || from_.dst() != to_.dst()) {
    throw Error(ErrorCode::ShapeMismatch, "functors are not parallel");
  }
  const auto& c = *from_.src();
  const auto& d = *from_.dst();
  if (components_.size() != c.object_count()) {
    throw Error(ErrorCode::ShapeMismatch, "component count differs from object count");
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    MorId m = components_[a];
    if (m >= d.morphism_count() || d.dom(m) != from_.ob(a) || d.cod(m) != to_.ob(a)) {
      throw Error(ErrorCode::ShapeMismatch, "component at " + c.object_name(a) + " has wrong type");
    }
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    MorId left = d.compose(to_.mor(f), components_[c.dom(f)]);
    MorId right = d.compose(components_[c.cod(f)], from_.mor(f));
    if (left != right) {
      throw Error(ErrorCode::NaturalityViolation, "square at " + c.morphism_name(f));
    }
  }
}

NatTrans NatTrans::identity(const Functor& f) {
  std::vector<MorId> comps;
  for (ObjId a = 0; a < f.src()->object_count(); ++a) comps.push_back(f.dst()->id(f.ob(a)));
  return NatTrans(f, f, std::move(comps));
}

bool operator==(const NatTrans& a, const NatTrans& b) {
  return a.from_ == b.from_ && a.to_ == b.to_ && a.components_ == b.components_;
}

NatTrans vertical(const NatTrans& beta, const NatTrans& alpha) {
  if (!(alpha.to() == beta.from())) throw Error(ErrorCode::ShapeMismatch, "nats are not composable");
  const auto& d = *alpha.from().dst();
  std::vector<MorId> comps;
  for (ObjId a = 0; a < alpha.components().size(); ++a) comps.push_back(d.compose(beta.at(a), alpha.at(a)));
  return NatTrans(alpha.from(), beta.to(), std::move(comps));
}

NatTrans horizontal(const NatTrans& beta, const NatTrans& alpha) {
  if (alpha.from().dst() != beta.from().src()) {
    throw Error(ErrorCode::ShapeMismatch, "nats are not horizontally composable");
  }
  const auto& e = *beta.from().dst();
  const Functor& f = alpha.from();
  const Functor& g = alpha.to();
  const Functor& h = beta.from();
  const Functor& k = beta.to();
  std::vector<MorId> comps;
  for (ObjId a = 0; a < f.src()->object_count(); ++a) {
    MorId one = e.compose(k.mor(alpha.at(a)), beta.at(f.ob(a)));
    MorId two = e.compose(beta.at(g.ob(a)), h.mor(alpha.at(a)));
    if (one != two) throw Error(ErrorCode::NaturalityViolation, "diagonals disagree");
    comps.push_back(one);
  }
  return NatTrans(compose(h, f), compose(k, g), std::move(comps));
}

std::optional<MorId> MorCategory::find(MorId f, MorId g, MorId phi, MorId psi) const {
  for (MorId m : category->hom(f, g)) {
    if (square[m].phi == phi && square[m].psi == psi) return m;
  }
  return std::nullopt;
}

MorCategory mor_category(const CategoryRef& cref) {
  const auto& c = *cref;
  CategoryBuilder b;
  for (MorId m = 0; m < c.morphism_count(); ++m) b.add_object(c.morphism_name(m));
  std::vector<MorCategory::Square> sq;
  // hom index per (f, g) for composition lookup
  std::map<std::tuple<MorId, MorId, MorId, MorId>, MorId> index;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      for (MorId phi : c.hom(c.dom(f), c.dom(g))) {
        for (MorId psi : c.hom(c.cod(f), c.cod(g))) {
          if (c.compose(psi, f) != c.compose(g, phi)) continue;
          std::string name = "(" + c.morphism_name(phi) + "," + c.morphism_name(psi) + "):" +
                             c.morphism_name(f) + "->" + c.morphism_name(g);
          MorId id = b.add_morphism(std::move(name), f, g);
          sq.push_back({phi, psi});
          index[{f, g, phi, psi}] = id;
          if (f == g && phi == c.id(c.dom(f)) && psi == c.id(c.cod(f))) b.set_identity(f, id);
        }
      }
    }
  }
  std::vector<std::pair<ObjId, ObjId>> ends(sq.size());
  for (const auto& [k, id] : index) ends[id] = {std::get<0>(k), std::get<1>(k)};
  for (MorId u = 0; u < sq.size(); ++u) {
    for (MorId w = 0; w < sq.size(); ++w) {
      if (ends[u].second != ends[w].first) continue;
      MorId phi = c.compose(sq[w].phi, sq[u].phi);
      MorId psi = c.compose(sq[w].psi, sq[u].psi);
      b.set_composite(w, u, index.at({ends[u].first, ends[w].second, phi, psi}));
    }
  }
  return MorCategory{b.build_ref(false), cref, std::move(sq)};
}

CanonicalFunctors canonical_functors(const MorCategory& m) {
  const auto& c = *m.base;
  const auto& mc = *m.category;
  std::vector<ObjId> dob, cob;
  std::vector<MorId> dmor, cmor;
  for (ObjId f = 0; f < mc.object_count(); ++f) {
    dob.push_back(c.dom(f));
    cob.push_back(c.cod(f));
  }
  for (MorId u = 0; u < mc.morphism_count(); ++u) {
    dmor.push_back(m.square[u].phi);
    cmor.push_back(m.square[u].psi);
  }
  std::vector<ObjId> iob;
  std::vector<MorId> imor;
  for (ObjId a = 0; a < c.object_count(); ++a) iob.push_back(c.id(a));
  for (MorId u = 0; u < c.morphism_count(); ++u) {
    imor.push_back(*m.find(c.id(c.dom(u)), c.id(c.cod(u)), u, u));
  }
  return CanonicalFunctors{Functor(m.category, m.base, std::move(dob), std::move(dmor)),
                           Functor(m.category, m.base, std::move(cob), std::move(cmor)),
                           Functor(m.base, m.category, std::move(iob), std::move(imor))};
}

Functor diagonal_plane(const MorCategory& mor, const MorCategory& mor2) {
  if (mor2.base != mor.category) throw Error(ErrorCode::ShapeMismatch, "Mor² is not built over Mor");
  const auto& c = *mor.base;
  const auto& m1 = *mor.category;
  const auto& m2 = *mor2.category;
  std::vector<ObjId> ob;
  for (ObjId s = 0; s < m2.object_count(); ++s) {
    // s is a square f → g in Mor(C); its diagonal is ψ ∘ f = g ∘ φ.
    MorId f = m1.dom(s);
    ob.push_back(mor.object_of(c.compose(mor.square[s].psi, f)));
  }
  std::vector<MorId> mm;
  for (MorId u = 0; u < m2.morphism_count(); ++u) {
    MorId big_phi = mor2.square[u].phi;
    MorId big_psi = mor2.square[u].psi;
    ObjId from = ob[m2.dom(u)], to = ob[m2.cod(u)];
    auto found = mor.find(from, to, mor.square[big_phi].phi, mor.square[big_psi].psi);
    if (!found) throw Error(ErrorCode::NotAFunctor, "diagonal square missing");
    mm.push_back(*found);
  }
  return Functor(mor2.category, mor.category, std::move(ob), std::move(mm));
}

Functor mor_lift(const Functor& f, const MorCategory& src, const MorCategory& dst) {
  if (src.base != f.src() || dst.base != f.dst()) {
    throw Error(ErrorCode::ShapeMismatch, "Mor categories do not match the functor");
  }
  const auto& ms = *src.category;
  std::vector<ObjId> ob;
  for (ObjId o = 0; o < ms.object_count(); ++o) ob.push_back(dst.object_of(f.mor(src.object_morphism(o))));
  std::vector<MorId> mm;
  for (MorId u = 0; u < ms.morphism_count(); ++u) {
    auto found = dst.find(ob[ms.dom(u)], ob[ms.cod(u)], f.mor(src.square[u].phi), f.mor(src.square[u].psi));
    if (!found) throw Error(ErrorCode::NotAFunctor, "lifted square missing");
    mm.push_back(*found);
  }
  return Functor(src.category, dst.category, std::move(ob), std::move(mm));
}

Functor nat_as_functor(const NatTrans& alpha, const MorCategory& mor_dst) {
  if (mor_dst.base != alpha.from().dst()) throw Error(ErrorCode::ShapeMismatch, "wrong Mor category");
  const auto& c = *alpha.from().src();
  std::vector<ObjId> ob;
  for (ObjId a = 0; a < c.object_count(); ++a) ob.push_back(mor_dst.object_of(alpha.at(a)));
  std::vector<MorId> mm;
  for (MorId u = 0; u < c.morphism_count(); ++u) {
    auto found = mor_dst.find(ob[c.dom(u)], ob[c.cod(u)], alpha.from().mor(u), alpha.to().mor(u));
    if (!found) throw Error(ErrorCode::NaturalityViolation, "square at " + c.morphism_name(u));
    mm.push_back(*found);
  }
  return Functor(alpha.from().src(), mor_dst.category, std::move(ob), std::move(mm));
}

Functor horizontal_via_diagonal(const NatTrans& beta, const NatTrans& alpha,
                                const MorCategory& mor_d, const MorCategory& mor_e,
                                const MorCategory& mor2_e) {
  Functor a = nat_as_functor(alpha, mor_d);
  Functor b = nat_as_functor(beta, mor_e);
  Functor lifted = mor_lift(b, mor_d, mor2_e);
  return compose(diagonal_plane(mor_e, mor2_e), compose(lifted, a));
}

}  // namespace sheafkit
