#include "sheafkit/limits/limits.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sheafkit {

namespace {

// Shape morphisms grouped by the later of their two endpoints, so a partial
// leg assignment on objects 0..j can be checked as soon as j is filled.
std::vector<std::vector<MorId>> checks_by_object(const FiniteCategory& j) {
  std::vector<std::vector<MorId>> out(j.object_count());
  for (MorId u = 0; u < j.morphism_count(); ++u) out[std::max(j.dom(u), j.cod(u))].push_back(u);
  return out;
}

bool leg_square(const FiniteCategory& c, const Functor& f, MorId u, const std::vector<MorId>& legs,
                bool co) {
  const auto& j = *f.src();
  if (co) return c.compose(legs[j.cod(u)], f.mor(u)) == legs[j.dom(u)];
  return c.compose(f.mor(u), legs[j.dom(u)]) == legs[j.cod(u)];
}

std::vector<Cone> enumerate_cones(const Functor& f, bool co) {
  const auto& j = *f.src();
  const auto& c = *f.dst();
  const std::size_t n = j.object_count();
  auto checks = checks_by_object(j);
  std::vector<Cone> out;
  std::vector<MorId> legs(n);
  for (ObjId k = 0; k < c.object_count(); ++k) {
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == n) {
        out.push_back({k, legs});
        return;
      }
      auto cand = co ? c.hom(f.ob(i), k) : c.hom(k, f.ob(i));
      for (MorId m : cand) {
        legs[i] = m;
        bool ok = true;
        for (MorId u : checks[i]) {
          if (!leg_square(c, f, u, legs, co)) {
            ok = false;
            break;
          }
        }
        if (ok) go(i + 1);
      }
    };
    go(0);
  }
  return out;
}

bool is_cone_morphism(const FiniteCategory& c, const Cone& from, const Cone& to, MorId h, bool co) {
  for (std::size_t i = 0; i < from.legs.size(); ++i) {
    if (co) {
      if (c.compose(h, from.legs[i]) != to.legs[i]) return false;
    } else if (c.compose(to.legs[i], h) != from.legs[i]) {
      return false;
    }
  }
  return true;
}

ConeCategory build_cone_category(const Functor& f, bool co) {
  const auto& c = *f.dst();
  ConeCategory out;
  out.cones = enumerate_cones(f, co);
  CategoryBuilder b;
  for (std::size_t i = 0; i < out.cones.size(); ++i) {
    b.add_object((co ? "cocone" : "cone") + std::to_string(i) + ":" + c.object_name(out.cones[i].vertex));
  }
  std::map<std::tuple<std::size_t, std::size_t, MorId>, MorId> index;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t a = 0; a < out.cones.size(); ++a) {
    for (std::size_t z = 0; z < out.cones.size(); ++z) {
      for (MorId h : c.hom(out.cones[a].vertex, out.cones[z].vertex)) {
        if (!is_cone_morphism(c, out.cones[a], out.cones[z], h, co)) continue;
        MorId m = b.add_morphism(c.morphism_name(h) + ":" + std::to_string(a) + "->" + std::to_string(z), a, z);
        index[{a, z, h}] = m;
        ends.emplace_back(a, z);
        out.vertex_map.push_back(h);
        if (a == z && h == c.id(out.cones[a].vertex)) b.set_identity(a, m);
      }
    }
  }
  for (MorId u = 0; u < out.vertex_map.size(); ++u) {
    for (MorId w = 0; w < out.vertex_map.size(); ++w) {
      if (ends[u].second != ends[w].first) continue;
      MorId h = c.compose(out.vertex_map[w], out.vertex_map[u]);
      b.set_composite(w, u, index.at({ends[u].first, ends[w].second, h}));
    }
  }
  out.category = b.build_ref(false);
  return out;
}

LimitResult terminal_cone(const Functor& f, bool co) {
  const auto& c = *f.dst();
  ConeCategory cc = build_cone_category(f, co);
  const auto& k = *cc.category;
  LimitResult r;
  r.cone_count = cc.cones.size();
  std::vector<std::size_t> hits;
  for (ObjId t = 0; t < k.object_count(); ++t) {
    bool ok = true;
    for (ObjId x = 0; x < k.object_count() && ok; ++x) {
      ok = co ? k.hom(t, x).size() == 1 : k.hom(x, t).size() == 1;
    }
    if (ok) hits.push_back(t);
  }
  if (hits.empty()) return r;
  std::stable_sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
    return c.object_name(cc.cones[a].vertex) < c.object_name(cc.cones[b].vertex);
  });
  r.limit = cc.cones[hits[0]];
  for (std::size_t i = 1; i < hits.size(); ++i) {
    r.others.push_back(cc.cones[hits[i]]);
    // Both cones are terminal (or initial), so a unique morphism runs each way.
    MorId cert = cc.vertex_map[k.hom(hits[0], hits[i])[0]];
    r.isomorphisms.push_back(cert);
  }
  return r;
}

}  // namespace

ConeCategory cone_category(const Functor& f) { return build_cone_category(f, false); }
ConeCategory cocone_category(const Functor& f) { return build_cone_category(f, true); }

bool is_cone(const Functor& f, const Cone& cone) {
  const auto& c = *f.dst();
  const auto& j = *f.src();
  if (cone.legs.size() != j.object_count()) return false;
  for (ObjId i = 0; i < j.object_count(); ++i) {
    if (c.dom(cone.legs[i]) != cone.vertex || c.cod(cone.legs[i]) != f.ob(i)) return false;
  }
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    if (!leg_square(c, f, u, cone.legs, false)) return false;
  }
  return true;
}

bool is_cocone(const Functor& f, const Cone& cone) {
  const auto& c = *f.dst();
  const auto& j = *f.src();
  if (cone.legs.size() != j.object_count()) return false;
  for (ObjId i = 0; i < j.object_count(); ++i) {
    if (c.cod(cone.legs[i]) != cone.vertex || c.dom(cone.legs[i]) != f.ob(i)) return false;
  }
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    if (!leg_square(c, f, u, cone.legs, true)) return false;
  }
  return true;
}

LimitResult limit_abstract(const Functor& f) { return terminal_cone(f, false); }
LimitResult colimit_abstract(const Functor& f) { return terminal_cone(f, true); }

MorId mediating_morphism(const Functor& f, const Cone& limit, const Cone& cone) {
  const auto& c = *f.dst();
  std::vector<MorId> found;
  for (MorId h : c.hom(cone.vertex, limit.vertex)) {
    if (is_cone_morphism(c, cone, limit, h, false)) found.push_back(h);
  }
  if (found.size() != 1) {
    throw Error(ErrorCode::NoLimit, std::to_string(found.size()) + " mediating morphisms");
  }
  return found[0];
}

Functor opposite_functor(const Functor& f, const CategoryRef& shape_op, const CategoryRef& target_op) {
  return Functor(shape_op, target_op, f.ob_table(), f.mor_table());
}

SecondPicture verify_second_picture(const Functor& f, const Cone& cand) {
  const auto& c = *f.dst();
  SecondPicture r;
  r.is_cone = is_cone(f, cand);
  auto cones = enumerate_cones(f, false);
  r.every_cone_factors = true;
  r.terminal = r.is_cone;
  for (const auto& k : cones) {
    std::size_t n = 0;
    for (MorId h : c.hom(k.vertex, cand.vertex)) n += is_cone_morphism(c, k, cand, h, false);
    if (n == 0) r.every_cone_factors = false;
    if (n != 1) r.terminal = false;
  }
  r.legs_jointly_monic = true;
  for (ObjId x = 0; x < c.object_count() && r.legs_jointly_monic; ++x) {
    auto h = c.hom(x, cand.vertex);
    for (std::size_t a = 0; a < h.size() && r.legs_jointly_monic; ++a) {
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        bool same = true;
        for (MorId leg : cand.legs) same = same && c.compose(leg, h[a]) == c.compose(leg, h[b]);
        if (same) {
          r.legs_jointly_monic = false;
          break;
        }
      }
    }
  }
  return r;
}

SetCone limit_finset(const SetDiagram& d) {
  d.validate();
  const auto& j = *d.shape;
  SetCone p = product(d.sets);
  // Equalizer of the two maps into the product over morphisms, taken componentwise.
  std::vector<bool> mask(p.vertex.size(), true);
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    const auto& to = p.legs[j.cod(u)];
    const auto& from = p.legs[j.dom(u)];
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] && to(i) != d.maps[u](from(i))) mask[i] = false;
    }
  }
  Subobject e = subset(p.vertex, mask);
  SetCone out;
  out.vertex = e.carrier;
  for (const auto& leg : p.legs) out.legs.push_back(compose(leg, e.inclusion));
  return out;
}

SetCocone colimit_finset(const SetDiagram& d) {
  d.validate();
  const auto& j = *d.shape;
  SetCocone s = coproduct(d.sets);
  std::vector<FinSet> sources;
  std::vector<FinSetMap> a_parts, b_parts;
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    sources.push_back(d.sets[j.dom(u)]);
    a_parts.push_back(s.legs[j.dom(u)]);
    b_parts.push_back(compose(s.legs[j.cod(u)], d.maps[u]));
  }
  SetCocone r = coproduct(sources);
  SetQuotient q = coequalizer(cotuple_map(r, s.vertex, a_parts), cotuple_map(r, s.vertex, b_parts));
  SetCocone out;
  out.vertex = q.set;
  for (const auto& leg : s.legs) out.legs.push_back(compose(q.projection, leg));
  return out;
}

SecondPicture verify_second_picture(const SetDiagram& d, const SetCone& cand) {
  d.validate();
  const auto& j = *d.shape;
  SecondPicture r;
  r.is_cone = cand.legs.size() == j.object_count();
  for (std::size_t i = 0; r.is_cone && i < cand.legs.size(); ++i) {
    r.is_cone = cand.legs[i].dom() == cand.vertex && cand.legs[i].cod() == d.sets[i];
  }
  for (MorId u = 0; r.is_cone && u < j.morphism_count(); ++u) {
    r.is_cone = compose(d.maps[u], cand.legs[j.dom(u)]) == cand.legs[j.cod(u)];
  }
  if (!r.is_cone) return r;

  // Compatible families by direct scan of the product.
  SetCone p = product(d.sets);
  std::vector<std::vector<std::size_t>> families;
  for (std::size_t x = 0; x < p.vertex.size(); ++x) {
    std::vector<std::size_t> fam;
    for (const auto& leg : p.legs) fam.push_back(leg(x));
    bool ok = true;
    for (MorId u = 0; u < j.morphism_count() && ok; ++u) ok = d.maps[u](fam[j.dom(u)]) == fam[j.cod(u)];
    if (ok) families.push_back(std::move(fam));
  }
  auto probe = [&](const std::vector<const std::vector<std::size_t>*>& points) {
    std::vector<Atom> names;
    for (std::size_t i = 0; i < points.size(); ++i) names.emplace_back("pt" + std::to_string(i));
    SetCone k{FinSet(std::move(names)), {}};
    for (std::size_t leg = 0; leg < d.sets.size(); ++leg) {
      std::vector<std::size_t> t;
      for (const auto* pt : points) t.push_back((*pt)[leg]);
      k.legs.emplace_back(k.vertex, d.sets[leg], std::move(t));
    }
    return count_cone_mediators(k, cand);
  };
  r.every_cone_factors = true;
  r.terminal = probe({}) == 1;
  for (const auto& a : families) {
    std::size_t n = probe({&a});
    if (n == 0) r.every_cone_factors = false;
    if (n != 1) r.terminal = false;
    for (const auto& b : families) {
      std::size_t m = probe({&a, &b});
      if (m == 0) r.every_cone_factors = false;
      if (m != 1) r.terminal = false;
    }
  }
  r.legs_jointly_monic = true;
  for (std::size_t x = 0; x < cand.vertex.size() && r.legs_jointly_monic; ++x) {
    for (std::size_t y = x + 1; y < cand.vertex.size(); ++y) {
      bool same = true;
      for (const auto& leg : cand.legs) same = same && leg(x) == leg(y);
      if (same) {
        r.legs_jointly_monic = false;
        break;
      }
    }
  }
  return r;
}

SetDiagram hom_diagram(const Functor& f, ObjId k) {
  const auto& c = *f.dst();
  const auto& j = *f.src();
  SetDiagram d;
  d.shape = f.src();
  auto hom_set = [&](ObjId x) {
    std::vector<Atom> elems;
    for (MorId m : c.hom(k, x)) elems.emplace_back(c.morphism_name(m));
    return FinSet(std::move(elems));
  };
  for (ObjId i = 0; i < j.object_count(); ++i) d.sets.push_back(hom_set(f.ob(i)));
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    auto target = c.hom(k, f.ob(j.cod(u)));
    std::vector<std::size_t> t;
    for (MorId g : c.hom(k, f.ob(j.dom(u)))) {
      MorId fg = c.compose(f.mor(u), g);
      t.push_back(std::find(target.begin(), target.end(), fg) - target.begin());
    }
    d.maps.emplace_back(d.sets[j.dom(u)], d.sets[j.cod(u)], std::move(t));
  }
  return d;
}

bool verify_hom_preservation(const Functor& f, const Cone& cand, ObjId k) {
  if (!is_cone(f, cand)) return false;
  const auto& c = *f.dst();
  SetDiagram d = hom_diagram(f, k);
  std::vector<Atom> elems;
  for (MorId g : c.hom(k, cand.vertex)) elems.emplace_back(c.morphism_name(g));
  SetCone pushed{FinSet(std::move(elems)), {}};
  for (ObjId i = 0; i < d.sets.size(); ++i) {
    auto target = c.hom(k, f.ob(i));
    std::vector<std::size_t> t;
    for (MorId g : c.hom(k, cand.vertex)) {
      MorId dg = c.compose(cand.legs[i], g);
      t.push_back(std::find(target.begin(), target.end(), dg) - target.begin());
    }
    pushed.legs.emplace_back(pushed.vertex, d.sets[i], std::move(t));
  }
  return cone_isomorphism(pushed, limit_finset(d)).has_value();
}

bool verify_hom_preservation_all(const Functor& f, const Cone& cand) {
  for (ObjId k = 0; k < f.dst()->object_count(); ++k) {
    if (!verify_hom_preservation(f, cand, k)) return false;
  }
  return true;
}

ConeTransport verify_cone_transport(const Functor& f) {
  auto lim = limit_abstract(f);
  if (!lim.limit) throw Error(ErrorCode::NoLimit, "diagram has no limit");
  const auto& c = *f.dst();
  const Cone& l = *lim.limit;
  ConeCategory cc = cone_category(f);
  MorCategory mor = mor_category(f.dst());
  const auto& mc = *mor.category;

  std::vector<MorId> slice_mors;
  std::vector<ObjId> slice_objs;
  for (ObjId o = 0; o < mc.object_count(); ++o) {
    if (c.cod(mor.object_morphism(o)) == l.vertex) slice_objs.push_back(o);
  }
  for (MorId u = 0; u < mc.morphism_count(); ++u) {
    if (c.cod(mor.object_morphism(mc.dom(u))) == l.vertex &&
        c.cod(mor.object_morphism(mc.cod(u))) == l.vertex && mor.square[u].psi == c.id(l.vertex)) {
      slice_mors.push_back(u);
    }
  }
  ConeTransport out;
  out.slice = subcategory(mc, slice_mors, slice_objs);
  const auto& sl = *out.slice;
  out.cones = cc.cones.size();
  out.slice_objects = sl.object_count();

  auto cone_index = [&](const Cone& k) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < cc.cones.size(); ++i) {
      if (cc.cones[i] == k) return i;
    }
    return std::nullopt;
  };
  // Slice objects carry the names of the Mor(C) objects, i.e. of C morphisms.
  std::vector<MorId> slice_obj_morphism(sl.object_count());
  for (ObjId o = 0; o < sl.object_count(); ++o) slice_obj_morphism[o] = c.morphism(sl.object_name(o));
  std::vector<MorCategory::Square> slice_square(sl.morphism_count());
  for (MorId u = 0; u < sl.morphism_count(); ++u) slice_square[u] = mor.square[mc.morphism(sl.morphism_name(u))];

  try {
    std::vector<ObjId> phi_ob;
    for (const auto& k : cc.cones) {
      MorId m = mediating_morphism(f, l, k);
      auto it = std::find(slice_obj_morphism.begin(), slice_obj_morphism.end(), m);
      phi_ob.push_back(it - slice_obj_morphism.begin());
    }
    std::vector<MorId> phi_mor;
    const auto& ccat = *cc.category;
    for (MorId u = 0; u < ccat.morphism_count(); ++u) {
      ObjId a = phi_ob[ccat.dom(u)], z = phi_ob[ccat.cod(u)];
      std::optional<MorId> hit;
      for (MorId w : sl.hom(a, z)) {
        if (slice_square[w].phi == cc.vertex_map[u]) hit = w;
      }
      if (!hit) return out;
      phi_mor.push_back(*hit);
    }
    std::vector<ObjId> psi_ob;
    for (ObjId o = 0; o < sl.object_count(); ++o) {
      MorId g = slice_obj_morphism[o];
      Cone k{c.dom(g), {}};
      for (MorId leg : l.legs) k.legs.push_back(c.compose(leg, g));
      auto idx = cone_index(k);
      if (!idx) return out;
      psi_ob.push_back(*idx);
    }
    std::vector<MorId> psi_mor;
    for (MorId w = 0; w < sl.morphism_count(); ++w) {
      std::optional<MorId> hit;
      for (MorId u : ccat.hom(psi_ob[sl.dom(w)], psi_ob[sl.cod(w)])) {
        if (cc.vertex_map[u] == slice_square[w].phi) hit = u;
      }
      if (!hit) return out;
      psi_mor.push_back(*hit);
    }
    Functor phi(cc.category, out.slice, phi_ob, phi_mor);
    Functor psi(out.slice, cc.category, psi_ob, psi_mor);
    out.isomorphic = compose(psi, phi) == Functor::identity(cc.category) &&
                     compose(phi, psi) == Functor::identity(out.slice);
  } catch (const Error&) {
    out.isomorphic = false;
  }
  return out;
}

}  // namespace sheafkit
