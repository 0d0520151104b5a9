#include "sheafkit/quotient/quotient.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sheafkit {

namespace {

template <typename Id>
std::vector<std::size_t> normalize(std::vector<std::vector<Id>>& classes, std::size_t n, const char* what) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  classes.erase(std::remove_if(classes.begin(), classes.end(), [](const auto& c) { return c.empty(); }),
                classes.end());
  std::sort(classes.begin(), classes.end());
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> of(n, unset);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (Id x : classes[k]) {
      if (x >= n) throw Error(ErrorCode::NotAPartition, std::string(what) + " index out of range");
      if (of[x] != unset) throw Error(ErrorCode::NotAPartition, std::string(what) + " listed twice");
      of[x] = k;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (of[x] == unset) throw Error(ErrorCode::NotAPartition, std::string(what) + " not covered");
  }
  return of;
}

template <typename Id>
std::string class_name(const std::vector<Id>& members, const std::function<std::string(Id)>& name) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += name(members[i]);
  }
  return s + "}";
}

}  // namespace

CatRelation::CatRelation(CategoryRef base, std::vector<std::vector<ObjId>> ob_classes,
                         std::vector<std::vector<MorId>> mor_classes)
    : base_(std::move(base)), ob_classes_(std::move(ob_classes)), mor_classes_(std::move(mor_classes)) {
  ob_of_ = normalize(ob_classes_, base_->object_count(), "object");
  mor_of_ = normalize(mor_classes_, base_->morphism_count(), "morphism");
}

CatRelation CatRelation::identity(CategoryRef base) {
  std::vector<std::vector<ObjId>> ob;
  std::vector<std::vector<MorId>> mor;
  for (ObjId a = 0; a < base->object_count(); ++a) ob.push_back({a});
  for (MorId m = 0; m < base->morphism_count(); ++m) mor.push_back({m});
  return CatRelation(std::move(base), std::move(ob), std::move(mor));
}

CatRelation CatRelation::from_functor(const Functor& f) {
  std::map<ObjId, std::vector<ObjId>> ob;
  std::map<MorId, std::vector<MorId>> mor;
  for (ObjId a = 0; a < f.src()->object_count(); ++a) ob[f.ob(a)].push_back(a);
  for (MorId m = 0; m < f.src()->morphism_count(); ++m) mor[f.mor(m)].push_back(m);
  std::vector<std::vector<ObjId>> oc;
  std::vector<std::vector<MorId>> mc;
  for (auto& [k, v] : ob) oc.push_back(std::move(v));
  for (auto& [k, v] : mor) mc.push_back(std::move(v));
  return CatRelation(f.src(), std::move(oc), std::move(mc));
}

RelationReport check_relation(const CatRelation& r) {
  const auto& c = *r.base();
  RelationReport rep;
  rep.dom_cod = true;
  for (const auto& cls : r.mor_classes()) {
    for (MorId f : cls) {
      if (r.ob_class(c.dom(f)) != r.ob_class(c.dom(cls[0])) || r.ob_class(c.cod(f)) != r.ob_class(c.cod(cls[0]))) {
        rep.dom_cod = false;
        rep.violations.push_back({ErrorCode::NotCategorical, "dom/cod not preserved: " + c.morphism_name(cls[0]) +
                                                                 " ~ " + c.morphism_name(f)});
      }
    }
  }
  rep.identities = true;
  for (const auto& cls : r.ob_classes()) {
    for (ObjId a : cls) {
      if (r.mor_class(c.id(a)) != r.mor_class(c.id(cls[0]))) {
        rep.identities = false;
        rep.violations.push_back({ErrorCode::NotCategorical, "identities not preserved: " + c.object_name(cls[0]) +
                                                                 " ~ " + c.object_name(a)});
      }
    }
  }
  // Composition and feasibility over every ordered pair of morphism classes.
  rep.composition = true;
  rep.feasible = rep.dom_cod;
  const auto& mc = r.mor_classes();
  for (std::size_t fi = 0; fi < mc.size(); ++fi) {
    for (std::size_t gi = 0; gi < mc.size(); ++gi) {
      std::set<std::size_t> targets;
      bool linked = r.ob_class(c.cod(mc[fi][0])) == r.ob_class(c.dom(mc[gi][0]));
      for (MorId f : mc[fi]) {
        for (MorId g : mc[gi]) {
          if (c.cod(f) == c.dom(g)) targets.insert(r.mor_class(c.compose(g, f)));
        }
      }
      if (targets.size() > 1) {
        rep.composition = false;
        rep.violations.push_back({ErrorCode::NotCategorical, "composites of " + c.morphism_name(mc[gi][0]) +
                                                                 " after " + c.morphism_name(mc[fi][0]) +
                                                                 " land in several classes"});
      }
      if (linked && targets.empty() && rep.dom_cod) {
        rep.feasible = false;
        rep.violations.push_back({ErrorCode::NotCategorical, "no composable representatives for " +
                                                                 c.morphism_name(mc[gi][0]) + " after " +
                                                                 c.morphism_name(mc[fi][0])});
      }
    }
  }
  return rep;
}

Quotient quotient_category(const CatRelation& r, bool check_identities) {
  auto rep = check_relation(r);
  bool ok = rep.dom_cod && rep.composition && rep.feasible && (rep.identities || !check_identities);
  if (!ok) throw ValidationError(rep.violations);
  const auto& c = *r.base();
  CategoryBuilder b;
  std::function<std::string(ObjId)> oname = [&](ObjId a) { return c.object_name(a); };
  std::function<std::string(MorId)> mname = [&](MorId m) { return c.morphism_name(m); };
  for (const auto& cls : r.ob_classes()) b.add_object(class_name(cls, oname));
  for (const auto& cls : r.mor_classes()) {
    b.add_morphism(class_name(cls, mname), r.ob_class(c.dom(cls[0])), r.ob_class(c.cod(cls[0])));
  }
  for (std::size_t k = 0; k < r.ob_classes().size(); ++k) {
    b.set_identity(k, r.mor_class(c.id(r.ob_classes()[k][0])));
  }
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (const auto& e : comp_table(c)) {
    auto key = std::pair(r.mor_class(e.g), r.mor_class(e.f));
    if (done.insert(key).second) b.set_composite(key.first, key.second, r.mor_class(e.gf));
  }
  Quotient q;
  q.category = b.build_ref(false);
  std::vector<ObjId> ob;
  std::vector<MorId> mor;
  for (ObjId a = 0; a < c.object_count(); ++a) ob.push_back(r.ob_class(a));
  for (MorId m = 0; m < c.morphism_count(); ++m) mor.push_back(r.mor_class(m));
  q.projection = Functor(r.base(), q.category, std::move(ob), std::move(mor));
  return q;
}

Functor factor_through_quotient(const Quotient& q, const Functor& f) {
  if (f.src() != q.projection.src()) throw Error(ErrorCode::ShapeMismatch, "functor leaves another category");
  const auto& qc = *q.category;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<ObjId> ob(qc.object_count(), unset);
  std::vector<MorId> mor(qc.morphism_count(), unset);
  for (ObjId a = 0; a < f.src()->object_count(); ++a) {
    auto& slot = ob[q.projection.ob(a)];
    if (slot != unset && slot != f.ob(a)) throw Error(ErrorCode::NotCategorical, "relation does not imply ~_F");
    slot = f.ob(a);
  }
  for (MorId m = 0; m < f.src()->morphism_count(); ++m) {
    auto& slot = mor[q.projection.mor(m)];
    if (slot != unset && slot != f.mor(m)) throw Error(ErrorCode::NotCategorical, "relation does not imply ~_F");
    slot = f.mor(m);
  }
  return Functor(q.category, f.dst(), std::move(ob), std::move(mor));
}

std::size_t count_factorizations(const Quotient& q, const Functor& f) {
  const auto& qc = *q.category;
  const auto& d = *f.dst();
  const auto& c = *f.src();
  std::vector<ObjId> ob(qc.object_count());
  std::vector<MorId> mor(qc.morphism_count());
  std::size_t count = 0;
  // Objects first: every assignment compatible with F on representatives.
  std::function<void(std::size_t)> go_mor = [&](std::size_t m) {
    if (m == qc.morphism_count()) {
      if (!functor_violations(qc, d, ob, mor).empty()) return;
      for (MorId x = 0; x < c.morphism_count(); ++x) {
        if (mor[q.projection.mor(x)] != f.mor(x)) return;
      }
      ++count;
      return;
    }
    for (MorId t : d.hom(ob[qc.dom(m)], ob[qc.cod(m)])) {
      mor[m] = t;
      go_mor(m + 1);
    }
  };
  std::function<void(std::size_t)> go_ob = [&](std::size_t o) {
    if (o == qc.object_count()) {
      for (ObjId x = 0; x < c.object_count(); ++x) {
        if (ob[q.projection.ob(x)] != f.ob(x)) return;
      }
      go_mor(0);
      return;
    }
    for (ObjId t = 0; t < d.object_count(); ++t) {
      ob[o] = t;
      go_ob(o + 1);
    }
  };
  go_ob(0);
  return count;
}

CochainGroup::CochainGroup(const FiniteCategory& c, std::vector<ObjId> members,
                           std::map<std::pair<ObjId, ObjId>, MorId> isos)
    : members_(std::move(members)), isos_(std::move(isos)) {
  std::vector<Violation> v;
  for (ObjId a : members_) {
    for (ObjId b : members_) {
      auto it = isos_.find({a, b});
      if (it == isos_.end()) {
        v.push_back({ErrorCode::CochainConditionViolated, "missing φ(" + c.object_name(a) + "," + c.object_name(b) + ")"});
        continue;
      }
      if (c.dom(it->second) != a || c.cod(it->second) != b || !inverse_of(c, it->second)) {
        v.push_back({ErrorCode::GeneratorNotIso, c.morphism_name(it->second) + " is not an iso " +
                                                     c.object_name(a) + " -> " + c.object_name(b)});
      }
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  for (ObjId a : members_) {
    if (isos_.at({a, a}) != c.id(a)) {
      v.push_back({ErrorCode::CochainConditionViolated, "φ(A,A) is not the identity at " + c.object_name(a)});
    }
    for (ObjId b : members_) {
      if (c.compose(isos_.at({b, a}), isos_.at({a, b})) != c.id(a)) {
        v.push_back({ErrorCode::CochainConditionViolated,
                     "φ(B,A) ∘ φ(A,B) ≠ id at " + c.object_name(a) + "," + c.object_name(b)});
      }
      for (ObjId d : members_) {
        MorId loop = c.compose(isos_.at({d, a}), c.compose(isos_.at({b, d}), isos_.at({a, b})));
        if (loop != c.id(a)) {
          v.push_back({ErrorCode::CochainConditionViolated, "triangle fails at " + c.object_name(a) + "," +
                                                                c.object_name(b) + "," + c.object_name(d)});
        }
      }
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

CochainGroup span_cochain(const FiniteCategory& c, const std::vector<ObjId>& members, ObjId rep,
                          const std::map<ObjId, MorId>& generators) {
  std::map<ObjId, MorId> gen;
  std::map<ObjId, MorId> inv;
  for (ObjId b : members) {
    MorId g;
    auto it = generators.find(b);
    if (it != generators.end()) {
      g = it->second;
    } else if (b == rep) {
      g = c.id(rep);
    } else {
      throw Error(ErrorCode::GeneratorNotIso, "no generator for " + c.object_name(b));
    }
    if (c.dom(g) != rep || c.cod(g) != b) {
      throw Error(ErrorCode::GeneratorNotIso, c.morphism_name(g) + " does not run from the representative");
    }
    auto gi = inverse_of(c, g);
    if (!gi) throw Error(ErrorCode::GeneratorNotIso, c.morphism_name(g) + " is not an isomorphism");
    gen[b] = g;
    inv[b] = *gi;
  }
  std::map<std::pair<ObjId, ObjId>, MorId> table;
  for (ObjId b : members) {
    for (ObjId d : members) table[{b, d}] = c.compose(gen[d], inv[b]);
  }
  return CochainGroup(c, members, std::move(table));
}

bool strong_isomorphism_condition(const FiniteCategory& c, const std::vector<std::vector<ObjId>>& ob_classes) {
  for (const auto& cls : ob_classes) {
    for (ObjId a : cls) {
      if (!find_iso(c, cls[0], a)) return false;
    }
  }
  return true;
}

CatRelation relation_from_cochain(const CategoryRef& cref, const std::vector<std::vector<ObjId>>& ob_classes,
                                  const std::vector<CochainGroup>& groups) {
  const auto& c = *cref;
  if (!strong_isomorphism_condition(c, ob_classes)) {
    throw Error(ErrorCode::NotStronglyIso, "a class holds non-isomorphic objects");
  }
  if (groups.size() != ob_classes.size()) throw Error(ErrorCode::ShapeMismatch, "one cochain group per class");
  std::vector<std::size_t> group_of(c.object_count());
  for (std::size_t k = 0; k < ob_classes.size(); ++k) {
    std::set<ObjId> a(ob_classes[k].begin(), ob_classes[k].end());
    std::set<ObjId> b(groups[k].members().begin(), groups[k].members().end());
    if (a != b) throw Error(ErrorCode::CochainConditionViolated, "cochain group does not match its class");
    for (ObjId o : ob_classes[k]) group_of[o] = k;
  }
  auto phi = [&](ObjId a, ObjId b) -> std::optional<MorId> {
    if (group_of[a] != group_of[b]) return std::nullopt;
    return groups[group_of[a]].at(a, b);
  };
  std::vector<std::vector<MorId>> mor_classes;
  std::vector<bool> placed(c.morphism_count(), false);
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (placed[f]) continue;
    std::vector<MorId> cls;
    for (MorId g = f; g < c.morphism_count(); ++g) {
      if (placed[g]) continue;
      auto pc = phi(c.cod(f), c.cod(g));
      auto pd = phi(c.dom(g), c.dom(f));
      if (!pc || !pd) continue;
      if (c.compose(*pc, c.compose(f, *pd)) == g) {
        cls.push_back(g);
        placed[g] = true;
      }
    }
    mor_classes.push_back(std::move(cls));
  }
  CatRelation r(cref, ob_classes, std::move(mor_classes));
  auto rep = check_relation(r);
  if (!rep.categorical()) throw ValidationError(rep.violations);
  return r;
}

bool fully_faithful_on_classes(const Quotient& q) {
  const auto& c = *q.projection.src();
  const auto& qc = *q.category;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (ObjId b = 0; b < c.object_count(); ++b) {
      std::set<MorId> images;
      for (MorId m : c.hom(a, b)) images.insert(q.projection.mor(m));
      if (images.size() != c.hom(a, b).size()) return false;
      if (images.size() != qc.hom(q.projection.ob(a), q.projection.ob(b)).size()) return false;
    }
  }
  return true;
}

Sketch sketch(const Quotient& q, const CatRelation& r, const std::vector<ObjId>& reps) {
  const auto& c = *r.base();
  if (!strong_isomorphism_condition(c, r.ob_classes())) {
    throw Error(ErrorCode::NotStronglyIso, "a class holds non-isomorphic objects");
  }
  if (reps.size() != r.ob_classes().size()) throw Error(ErrorCode::ShapeMismatch, "one representative per class");
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (r.ob_class(reps[k]) != k) throw Error(ErrorCode::ShapeMismatch, "representative outside its class");
  }
  Sketch s;
  s.category = full_subcategory(c, reps);
  const auto& sc = *s.category;
  std::vector<ObjId> to_ob;
  std::vector<MorId> to_mor;
  for (ObjId o = 0; o < sc.object_count(); ++o) to_ob.push_back(q.projection.ob(c.object(sc.object_name(o))));
  std::vector<MorId> base_of(sc.morphism_count());
  for (MorId m = 0; m < sc.morphism_count(); ++m) {
    base_of[m] = c.morphism(sc.morphism_name(m));
    to_mor.push_back(q.projection.mor(base_of[m]));
  }
  s.to_quotient = Functor(s.category, q.category, to_ob, to_mor);
  // Inverse: a class goes to its unique member between representatives.
  const auto& qc = *q.category;
  std::vector<ObjId> from_ob(qc.object_count());
  for (ObjId k = 0; k < qc.object_count(); ++k) from_ob[k] = sc.object(c.object_name(reps[k]));
  std::vector<MorId> from_mor(qc.morphism_count());
  for (MorId m = 0; m < qc.morphism_count(); ++m) {
    std::vector<MorId> hits;
    for (MorId u : sc.hom(from_ob[qc.dom(m)], from_ob[qc.cod(m)])) {
      if (q.projection.mor(base_of[u]) == m) hits.push_back(u);
    }
    if (hits.size() != 1) {
      s.round_trips = false;
      return s;
    }
    from_mor[m] = hits[0];
  }
  s.from_quotient = Functor(q.category, s.category, from_ob, from_mor);
  s.round_trips = compose(s.from_quotient, s.to_quotient) == Functor::identity(s.category) &&
                  compose(s.to_quotient, s.from_quotient) == Functor::identity(q.category);
  return s;
}

bool is_skeletal(const FiniteCategory& c) {
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (ObjId b = a + 1; b < c.object_count(); ++b) {
      if (find_iso(c, a, b)) return false;
    }
  }
  return true;
}

std::vector<std::vector<ObjId>> iso_classes(const FiniteCategory& c) {
  std::vector<std::vector<ObjId>> out;
  std::vector<bool> placed(c.object_count(), false);
  for (ObjId a = 0; a < c.object_count(); ++a) {
    if (placed[a]) continue;
    std::vector<ObjId> cls;
    for (ObjId b = a; b < c.object_count(); ++b) {
      if (!placed[b] && find_iso(c, a, b)) {
        cls.push_back(b);
        placed[b] = true;
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace sheafkit
