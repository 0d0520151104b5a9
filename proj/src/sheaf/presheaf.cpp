#include "sheafkit/sheaf/presheaf.hpp"

#include <algorithm>
#include <set>

#include "sheafkit/finset/constructions.hpp"

namespace sheafkit {

namespace {

std::string pair_name(const TopologyAlgebra& x, ElemId a, ElemId b) { return x.name(a) + "<=" + x.name(b); }

}  // namespace

Presheaf::Presheaf(AlgebraRef algebra, Variance variance, std::vector<FinSet> sets,
                   const std::map<std::pair<ElemId, ElemId>, FinSetMap>& maps)
    : algebra_(std::move(algebra)), variance_(variance), sets_(std::move(sets)) {
  const auto& x = *algebra_;
  const std::size_t n = x.size();
  std::vector<Violation> v;
  if (sets_.size() != n) throw ValidationError({{ErrorCode::NotAPresheaf, "one set per element required"}});
  maps_.assign(n * n, FinSetMap());
  std::vector<bool> known(n * n, false);
  const bool co = covariant();
  auto expect_dom = [&](ElemId a, ElemId b) -> const FinSet& { return co ? sets_[a] : sets_[b]; };
  auto expect_cod = [&](ElemId a, ElemId b) -> const FinSet& { return co ? sets_[b] : sets_[a]; };
  for (const auto& [key, m] : maps) {
    auto [a, b] = key;
    if (a >= n || b >= n) {
      v.push_back({ErrorCode::NotAPresheaf, "map between unknown elements"});
      continue;
    }
    if (!x.leq(a, b)) {
      v.push_back({ErrorCode::NotAPresheaf, pair_name(x, a, b) + " is not an order pair"});
      continue;
    }
    if (!(m.dom() == expect_dom(a, b)) || !(m.cod() == expect_cod(a, b))) {
      v.push_back({ErrorCode::NotAPresheaf, "map for " + pair_name(x, a, b) + " has the wrong ends"});
      continue;
    }
    maps_[a * n + b] = m;
    known[a * n + b] = true;
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  for (ElemId a = 0; a < n; ++a) {
    if (!known[a * n + a]) {
      maps_[a * n + a] = FinSetMap::identity(sets_[a]);
      known[a * n + a] = true;
    }
  }
  // Derive the remaining pairs by composing along intermediate elements.
  for (bool changed = true; changed;) {
    changed = false;
    for (ElemId a = 0; a < n; ++a) {
      for (ElemId b : members(x.up_set(a))) {
        if (known[a * n + b]) continue;
        for (ElemId c : members(x.up_set(a) & x.down_set(b))) {
          if (c == a || c == b || !known[a * n + c] || !known[c * n + b]) continue;
          maps_[a * n + b] = co ? compose(maps_[c * n + b], maps_[a * n + c]) : compose(maps_[a * n + c], maps_[c * n + b]);
          known[a * n + b] = true;
          changed = true;
          break;
        }
      }
    }
  }
  for (ElemId a = 0; a < n; ++a) {
    for (ElemId b : members(x.up_set(a))) {
      if (!known[a * n + b]) v.push_back({ErrorCode::NotAPresheaf, "no map for " + pair_name(x, a, b)});
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  for (ElemId a = 0; a < n; ++a) {
    if (!(maps_[a * n + a] == FinSetMap::identity(sets_[a]))) {
      v.push_back({ErrorCode::NotAPresheaf, "F(" + pair_name(x, a, a) + ") is not the identity"});
    }
    for (ElemId c : members(x.up_set(a))) {
      for (ElemId b : members(x.up_set(c))) {
        FinSetMap path = co ? compose(maps_[c * n + b], maps_[a * n + c]) : compose(maps_[a * n + c], maps_[c * n + b]);
        if (!(path == maps_[a * n + b])) {
          v.push_back({ErrorCode::NotAPresheaf, "functoriality fails at " + x.name(a) + "<=" + x.name(c) + "<=" + x.name(b)});
        }
      }
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

Presheaf Presheaf::from_diagram(AlgebraRef algebra, Variance variance, const SetDiagram& d) {
  const auto& c = *algebra->category();
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (MorId m = 0; m < c.morphism_count(); ++m) maps.emplace(std::pair(c.dom(m), c.cod(m)), d.maps[m]);
  return Presheaf(std::move(algebra), variance, d.sets, maps);
}

const FinSetMap& Presheaf::map(ElemId a, ElemId b) const {
  if (!x().leq(a, b)) throw Error(ErrorCode::ShapeMismatch, x().name(a) + " is not below " + x().name(b));
  return maps_[a * x().size() + b];
}

SetDiagram Presheaf::diagram() const {
  SetDiagram d;
  const auto& c = *x().category();
  d.shape = covariant() ? x().category() : x().category_op();
  d.sets = sets_;
  for (MorId m = 0; m < c.morphism_count(); ++m) d.maps.push_back(map(c.dom(m), c.cod(m)));
  return d;
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  return a.x() == b.x() && a.variance_ == b.variance_ && a.sets_ == b.sets_ && a.maps_ == b.maps_;
}

std::vector<Violation> nat_violations(const Presheaf& f, const Presheaf& g, const SheafNat& a) {
  std::vector<Violation> v;
  const auto& x = f.x();
  if (!(f.x() == g.x()) || f.variance() != g.variance()) {
    v.push_back({ErrorCode::ShapeMismatch, "presheaves live on different algebras or variances"});
    return v;
  }
  if (a.size() != x.size()) {
    v.push_back({ErrorCode::ShapeMismatch, "one component per element required"});
    return v;
  }
  for (ElemId e = 0; e < x.size(); ++e) {
    if (!(a[e].dom() == f.at(e)) || !(a[e].cod() == g.at(e))) {
      v.push_back({ErrorCode::ShapeMismatch, "component at " + x.name(e) + " has the wrong ends"});
    }
  }
  if (!v.empty()) return v;
  for (ElemId p = 0; p < x.size(); ++p) {
    for (ElemId q : members(x.up_set(p))) {
      bool ok = f.covariant() ? compose(a[q], f.map(p, q)) == compose(g.map(p, q), a[p])
                              : compose(a[p], f.map(p, q)) == compose(g.map(p, q), a[q]);
      if (!ok) v.push_back({ErrorCode::NaturalityViolation, "square over " + pair_name(x, p, q)});
    }
  }
  return v;
}

SheafNat identity_nat(const Presheaf& f) {
  SheafNat out;
  for (const auto& s : f.sets()) out.push_back(FinSetMap::identity(s));
  return out;
}

SheafNat compose_nat(const SheafNat& b, const SheafNat& a) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "nats of different length");
  SheafNat out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(compose(b[i], a[i]));
  return out;
}

bool componentwise_bijective(const SheafNat& a) {
  return std::all_of(a.begin(), a.end(), [](const FinSetMap& m) { return m.is_bijective(); });
}

std::vector<Mask> coverings_of(const TopologyAlgebra& x, ElemId e, Coverings policy) {
  if (policy == Coverings::All) return x.coverings(e);
  std::vector<Mask> out;
  auto cand = members(x.down_set(e) & ~bit(x.bottom()));
  auto go = [&](auto&& self, std::size_t k, Mask cur) -> void {
    if (k == cand.size()) {
      if (x.join_of(cur) == e) out.push_back(cur);
      return;
    }
    self(self, k + 1, cur);
    ElemId c = cand[k];
    if ((cur & (x.up_set(c) | x.down_set(c))) == 0) self(self, k + 1, cur | bit(c));
  };
  go(go, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// F(x) → compatible families over the covering, checked to be a bijection.
bool glues_pre(const Presheaf& f, ElemId e, Mask s, std::string& why) {
  const auto& x = f.x();
  auto ms = members(s);
  MultiWedge w;
  for (auto m : ms) w.members.push_back(f.at(m));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      ElemId o = x.meet(ms[i], ms[j]);
      w.overlaps.push_back({i, j, f.at(o), f.map(o, ms[i]), f.map(o, ms[j])});
    }
  }
  auto fams = compatible_families(w);
  std::vector<std::vector<std::size_t>> image;
  for (std::size_t a = 0; a < f.at(e).size(); ++a) {
    std::vector<std::size_t> t;
    for (auto m : ms) t.push_back(f.map(m, e)(a));
    image.push_back(std::move(t));
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
    why = "two sections agree on every member";
    return false;
  }
  if (image != fams) {
    why = "a compatible family does not glue";
    return false;
  }
  return true;
}

bool glues_co(const Presheaf& f, ElemId e, Mask s, std::string& why) {
  const auto& x = f.x();
  auto ms = members(s);
  MultiCowedge w;
  for (auto m : ms) w.members.push_back(f.at(m));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      ElemId o = x.meet(ms[i], ms[j]);
      w.overlaps.push_back({i, j, f.at(o), f.map(o, ms[i]), f.map(o, ms[j])});
    }
  }
  auto col = paired_colimit(w);
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> induced(col.vertex.size(), unset);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& ext = f.map(ms[i], e);
    for (std::size_t a = 0; a < f.at(ms[i]).size(); ++a) {
      auto& slot = induced[col.legs[i](a)];
      if (slot != unset && slot != ext(a)) {
        why = "extensions disagree on a glued class";
        return false;
      }
      slot = ext(a);
    }
  }
  std::vector<bool> hit(f.at(e).size(), false);
  for (auto t : induced) {
    if (t == unset || hit[t]) {
      why = "two cosections are identified in F(x) but not in the paired pushout";
      return false;
    }
    hit[t] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    why = "F(x) has an element outside every member";
    return false;
  }
  return true;
}

}  // namespace

GluingCheck check_gluing(const Presheaf& f, Coverings policy) {
  GluingCheck r;
  const auto& x = f.x();
  const std::size_t bottom_size = f.at(x.bottom()).size();
  r.bottom_ok = f.covariant() ? bottom_size == 0 : bottom_size == 1;
  if (!r.bottom_ok) {
    r.ok = false;
    r.element = x.bottom();
    r.detail = f.covariant() ? "F(0) is not empty" : "F(0) is not a singleton";
    return r;
  }
  for (ElemId e = 0; e < x.size(); ++e) {
    for (Mask s : coverings_of(x, e, policy)) {
      ++r.coverings_checked;
      std::string why;
      bool ok = f.covariant() ? glues_co(f, e, s, why) : glues_pre(f, e, s, why);
      if (!ok) {
        r.ok = false;
        r.element = e;
        r.covering = s;
        r.detail = why;
        return r;
      }
    }
  }
  return r;
}

bool is_sheaf(const Presheaf& f, Coverings policy) {
  if (f.covariant()) throw Error(ErrorCode::ShapeMismatch, "is_sheaf needs a presheaf");
  return check_gluing(f, policy).ok;
}

bool is_cosheaf(const Presheaf& f, Coverings policy) {
  if (!f.covariant()) throw Error(ErrorCode::ShapeMismatch, "is_cosheaf needs a copresheaf");
  return check_gluing(f, policy).ok;
}

Presheaf restrict(const Presheaf& f, const SubAlgebra& y) {
  std::vector<FinSet> sets;
  for (auto e : y.embed) sets.push_back(f.at(e));
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId a = 0; a < y.embed.size(); ++a) {
    for (ElemId b = 0; b < y.embed.size(); ++b) {
      if (y.algebra.leq(a, b)) maps.emplace(std::pair(a, b), f.map(y.embed[a], y.embed[b]));
    }
  }
  return Presheaf(make_algebra(y.algebra), f.variance(), std::move(sets), maps);
}

Presheaf restrict(const Presheaf& f, ElemId y) { return restrict(f, subalgebra(f.x(), y)); }

Presheaf precompose(const Presheaf& f, const AlgebraHom& h) {
  if (!(*h.dst() == f.x())) throw Error(ErrorCode::ShapeMismatch, "hom does not land in the presheaf's algebra");
  const auto& y = *h.src();
  std::vector<FinSet> sets;
  for (ElemId e = 0; e < y.size(); ++e) sets.push_back(f.at(h(e)));
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId a = 0; a < y.size(); ++a) {
    for (ElemId b : members(y.up_set(a))) maps.emplace(std::pair(a, b), f.map(h(a), h(b)));
  }
  return Presheaf(h.src(), f.variance(), std::move(sets), maps);
}

Presheaf glue_local_sheaves(const TopologyAlgebra& parent, const std::vector<LocalSheaf>& family) {
  if (family.empty()) throw Error(ErrorCode::Incompatible, "empty family");
  const std::size_t n = parent.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> local(family.size(), std::vector<std::size_t>(n, none));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& m = family[k];
    if (!(m.sheaf.x() == m.where.algebra)) throw Error(ErrorCode::Incompatible, "member " + std::to_string(k) + " lives elsewhere");
    if (m.sheaf.covariant() || !is_sheaf(m.sheaf)) {
      throw Error(ErrorCode::Incompatible, "member " + std::to_string(k) + " is not a sheaf");
    }
    for (std::size_t i = 0; i < m.where.embed.size(); ++i) local[k][m.where.embed[i]] = i;
  }
  auto value = [&](std::size_t k, ElemId e) -> const FinSet& { return family[k].sheaf.at(local[k][e]); };
  auto restriction = [&](std::size_t k, ElemId a, ElemId b) -> const FinSetMap& {
    return family[k].sheaf.map(local[k][a], local[k][b]);
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      Mask shared = family[i].where.carrier & family[j].where.carrier;
      for (ElemId a : members(shared)) {
        std::string where = "members " + std::to_string(i) + "," + std::to_string(j) + " at " + parent.name(a);
        if (!(value(i, a) == value(j, a))) throw Error(ErrorCode::Incompatible, where);
        for (ElemId b : members(parent.up_set(a) & shared)) {
          if (!(restriction(i, a, b) == restriction(j, a, b))) {
            throw Error(ErrorCode::Incompatible, where + "<=" + parent.name(b));
          }
        }
      }
    }
  }
  std::vector<SubAlgebra> ys;
  for (const auto& m : family) ys.push_back(m.where);
  auto z = glued_union(parent, ys);
  const std::size_t kk = family.size();
  // Sections over z are encoded by their family over {z ∧ 1_α}.
  std::vector<std::size_t> home(n, none);
  std::vector<FinSet> sets(n);
  std::vector<std::vector<std::vector<std::size_t>>> fam(n);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> back(n);
  for (ElemId e : z.embed) {
    for (std::size_t k = 0; k < kk; ++k) {
      if (has(family[k].where.carrier, e)) {
        home[e] = k;
        break;
      }
    }
    std::vector<ElemId> parts;
    for (std::size_t k = 0; k < kk; ++k) parts.push_back(parent.meet(e, family[k].where.top_in_parent));
    if (home[e] != none) {
      std::size_t h = home[e];
      sets[e] = value(h, e);
      for (std::size_t a = 0; a < sets[e].size(); ++a) {
        std::vector<std::size_t> t;
        for (std::size_t k = 0; k < kk; ++k) t.push_back(restriction(h, parts[k], e)(a));
        fam[e].push_back(t);
      }
    } else {
      MultiWedge w;
      for (std::size_t k = 0; k < kk; ++k) w.members.push_back(value(k, parts[k]));
      for (std::size_t i = 0; i < kk; ++i) {
        for (std::size_t j = i + 1; j < kk; ++j) {
          ElemId o = parent.meet(parts[i], parts[j]);
          w.overlaps.push_back({i, j, value(i, o), restriction(i, o, parts[i]), restriction(j, o, parts[j])});
        }
      }
      fam[e] = compatible_families(w);
      std::vector<Atom> atoms;
      for (const auto& t : fam[e]) {
        std::vector<Atom> comps;
        for (std::size_t k = 0; k < kk; ++k) comps.push_back(w.members[k][t[k]]);
        atoms.push_back(Atom::tuple(comps));
      }
      sets[e] = FinSet(std::move(atoms));
    }
    for (std::size_t a = 0; a < fam[e].size(); ++a) {
      if (!back[e].emplace(fam[e][a], a).second) {
        throw Error(ErrorCode::Incompatible, "sections at " + parent.name(e) + " are not separated by the family");
      }
    }
  }
  const std::size_t zn = z.embed.size();
  std::vector<FinSet> zsets;
  for (ElemId e : z.embed) zsets.push_back(sets[e]);
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (std::size_t ia = 0; ia < zn; ++ia) {
    for (std::size_t ib = 0; ib < zn; ++ib) {
      ElemId a = z.embed[ia], b = z.embed[ib];
      if (!parent.leq(a, b)) continue;
      std::vector<std::size_t> table;
      for (const auto& t : fam[b]) {
        std::vector<std::size_t> r;
        for (std::size_t k = 0; k < kk; ++k) {
          ElemId top = family[k].where.top_in_parent;
          r.push_back(restriction(k, parent.meet(a, top), parent.meet(b, top))(t[k]));
        }
        auto it = back[a].find(r);
        if (it == back[a].end()) throw Error(ErrorCode::Incompatible, "restriction to " + parent.name(a) + " does not glue");
        table.push_back(it->second);
      }
      maps.emplace(std::pair(ia, ib), FinSetMap(sets[b], sets[a], std::move(table)));
    }
  }
  Presheaf out(make_algebra(z.algebra), Variance::Contravariant, std::move(zsets), maps);
  for (std::size_t k = 0; k < kk; ++k) {
    auto local_y = subalgebra(out.x(), out.x().element(parent.name(family[k].where.top_in_parent)));
    if (!(restrict(out, local_y) == family[k].sheaf)) {
      throw Error(ErrorCode::Incompatible, "glued sheaf does not restrict to member " + std::to_string(k));
    }
  }
  if (!is_sheaf(out)) throw Error(ErrorCode::Incompatible, "glued presheaf fails the gluing axiom");
  return out;
}

ApexReport apex_predicates(const Presheaf& f) {
  const auto& x = f.x();
  ApexReport r;
  const ElemId one = x.top();
  r.preapex = true;
  for (ElemId e = 0; e < x.size(); ++e) {
    const auto& m = f.map(e, one);
    if (f.covariant() ? !m.is_injective() : !m.is_surjective()) r.preapex = false;
  }
  if (!r.preapex) return r;
  // With the maps epic (mono), an iso commuting with them exists exactly when
  // the kernels (images) coincide.
  std::vector<std::vector<std::size_t>> key(x.size());
  for (ElemId e = 0; e < x.size(); ++e) {
    const auto& m = f.map(e, one);
    if (f.covariant()) {
      std::vector<std::size_t> im(m.table().begin(), m.table().end());
      std::sort(im.begin(), im.end());
      key[e] = std::move(im);
    } else {
      std::map<std::size_t, std::size_t> relabel;
      for (std::size_t i = 0; i < m.dom().size(); ++i) {
        key[e].push_back(relabel.emplace(m(i), relabel.size()).first->second);
      }
    }
  }
  r.apex = true;
  for (ElemId a = 0; a < x.size() && r.apex; ++a) {
    for (ElemId b = a + 1; b < x.size(); ++b) {
      if (key[a] == key[b]) {
        r.apex = false;
        r.witness = std::pair(a, b);
        break;
      }
    }
  }
  return r;
}

Presheaf hom_sheaf(const Presheaf& f, const FinSet& a) {
  if (!f.covariant()) throw Error(ErrorCode::ShapeMismatch, "hom_sheaf needs a copresheaf");
  const auto& x = f.x();
  std::vector<FinSet> sets;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(x.size());
  for (ElemId e = 0; e < x.size(); ++e) {
    std::vector<Atom> atoms;
    auto maps = all_maps(f.at(e), a);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      std::string label = "{";
      for (std::size_t j = 0; j < f.at(e).size(); ++j) {
        if (j) label += ",";
        label += f.at(e)[j].to_string() + ":" + a[maps[i](j)].to_string();
      }
      atoms.emplace_back(label + "}");
      index[e].emplace(std::vector<std::size_t>(maps[i].table().begin(), maps[i].table().end()), i);
    }
    sets.push_back(FinSet(std::move(atoms)));
  }
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId p = 0; p < x.size(); ++p) {
    for (ElemId q : members(x.up_set(p))) {
      const auto& ext = f.map(p, q);
      std::vector<std::size_t> table;
      for (const auto& [g, i] : index[q]) {
        (void)i;
        std::vector<std::size_t> pulled;
        for (std::size_t j = 0; j < f.at(p).size(); ++j) pulled.push_back(g[ext(j)]);
        table.push_back(index[p].at(pulled));
      }
      // index[q] iterates in table order; reorder to element order.
      std::vector<std::size_t> ordered(sets[q].size());
      std::size_t k = 0;
      for (const auto& [g, i] : index[q]) ordered[i] = table[k++];
      maps.emplace(std::pair(p, q), FinSetMap(sets[q], sets[p], std::move(ordered)));
    }
  }
  return Presheaf(f.algebra(), Variance::Contravariant, std::move(sets), maps);
}

std::vector<Violation> sheaf_hom_violations(const Presheaf& from, const Presheaf& to, const SheafHom& h) {
  if (!(*h.f.dst() == from.x()) || !(*h.f.src() == to.x())) {
    return {{ErrorCode::ShapeMismatch, "algebra hom does not run from the target's algebra to the source's"}};
  }
  return nat_violations(precompose(from, h.f), to, h.alpha);
}

}  // namespace sheafkit
