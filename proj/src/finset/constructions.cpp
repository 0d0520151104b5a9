#include "sheafkit/finset/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sheafkit/error.hpp"

namespace sheafkit {

namespace {

void require_parallel(const FinSetMap& f, const FinSetMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw Error(ErrorCode::NotParallel, "maps do not share domain and codomain");
  }
}

void require_ambient(const FinSet& ambient, const Subobject& s) {
  if (!(s.ambient() == ambient)) {
    throw Error(ErrorCode::AmbientMismatch, "subobject of a different ambient set");
  }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

SetCone product(std::span<const FinSet> sets) {
  std::size_t total = 1;
  for (const auto& s : sets) total *= s.size();
  std::vector<Atom> elems;
  elems.reserve(total);
  std::vector<std::vector<std::size_t>> coords(sets.size());
  if (total > 0) {
    std::vector<std::size_t> idx(sets.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<Atom> parts;
      parts.reserve(sets.size());
      for (std::size_t k = 0; k < sets.size(); ++k) {
        parts.push_back(sets[k][idx[k]]);
        coords[k].push_back(idx[k]);
      }
      elems.push_back(Atom::tuple(std::move(parts)));
      for (std::size_t k = sets.size(); k-- > 0;) {
        if (++idx[k] < sets[k].size()) break;
        idx[k] = 0;
      }
    }
  }
  SetCone out;
  out.vertex = FinSet(std::move(elems));
  for (std::size_t k = 0; k < sets.size(); ++k) {
    out.legs.emplace_back(out.vertex, sets[k], std::move(coords[k]));
  }
  return out;
}

SetCocone coproduct(std::span<const FinSet> sets) {
  std::vector<Atom> elems;
  std::vector<std::vector<std::size_t>> tables(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (std::size_t i = 0; i < sets[k].size(); ++i) {
      tables[k].push_back(elems.size());
      elems.push_back(Atom::tagged(k, sets[k][i]));
    }
  }
  SetCocone out;
  out.vertex = FinSet(std::move(elems));
  for (std::size_t k = 0; k < sets.size(); ++k) {
    out.legs.emplace_back(sets[k], out.vertex, std::move(tables[k]));
  }
  return out;
}

FinSetMap tuple_map(const FinSet& dom, const SetCone& prod, std::span<const FinSetMap> components) {
  if (components.size() != prod.legs.size()) {
    throw Error(ErrorCode::ShapeMismatch, "component count differs from factor count");
  }
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (!(components[k].dom() == dom) || !(components[k].cod() == prod.legs[k].cod())) {
      throw Error(ErrorCode::ShapeMismatch, "component does not match factor");
    }
  }
  // Mixed-radix position of a coordinate tuple in the lexicographic product.
  std::vector<std::size_t> t(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < components.size(); ++k) {
      pos = pos * prod.legs[k].cod().size() + components[k](i);
    }
    t[i] = pos;
  }
  return FinSetMap(dom, prod.vertex, std::move(t));
}

FinSetMap cotuple_map(const SetCocone& coprod, const FinSet& cod,
                      std::span<const FinSetMap> components) {
  if (components.size() != coprod.legs.size()) {
    throw Error(ErrorCode::ShapeMismatch, "component count differs from summand count");
  }
  std::vector<std::size_t> t(coprod.vertex.size());
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (!(components[k].cod() == cod) || !(components[k].dom() == coprod.legs[k].dom())) {
      throw Error(ErrorCode::ShapeMismatch, "component does not match summand");
    }
    for (std::size_t i = 0; i < components[k].dom().size(); ++i) {
      t[coprod.legs[k](i)] = components[k](i);
    }
  }
  return FinSetMap(coprod.vertex, cod, std::move(t));
}

Subobject equalizer(const FinSetMap& f, const FinSetMap& g) {
  require_parallel(f, g);
  std::vector<bool> mask(f.dom().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = f(i) == g(i);
  return subset(f.dom(), mask);
}

SetQuotient quotient_by_pairs(const FinSet& base,
                              std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<std::size_t> parent(base.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : pairs) {
    std::size_t ra = find_root(parent, a);
    std::size_t rb = find_root(parent, b);
    if (ra == rb) continue;
    // Least index stays the root so it becomes the class representative.
    if (ra < rb) parent[rb] = ra; else parent[ra] = rb;
  }
  std::vector<std::size_t> class_of(base.size());
  std::vector<std::size_t> rep_slot(base.size(), static_cast<std::size_t>(-1));
  std::vector<Atom> reps;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::size_t r = find_root(parent, i);
    if (rep_slot[r] == static_cast<std::size_t>(-1)) {
      rep_slot[r] = reps.size();
      reps.push_back(base[r]);
    }
    class_of[i] = rep_slot[r];
  }
  FinSet q(std::move(reps));
  return SetQuotient{q, FinSetMap(base, q, std::move(class_of))};
}

SetQuotient coequalizer(const FinSetMap& f, const FinSetMap& g) {
  require_parallel(f, g);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < f.dom().size(); ++i) pairs.emplace_back(f(i), g(i));
  return quotient_by_pairs(f.cod(), pairs);
}

SetCone pullback(const FinSetMap& f, const FinSetMap& g) {
  if (!(f.cod() == g.cod())) throw Error(ErrorCode::ShapeMismatch, "pullback legs disagree on codomain");
  std::vector<Atom> elems;
  std::vector<std::size_t> left, right;
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    for (std::size_t j = 0; j < g.dom().size(); ++j) {
      if (f(i) == g(j)) {
        elems.push_back(Atom::tuple({f.dom()[i], g.dom()[j]}));
        left.push_back(i);
        right.push_back(j);
      }
    }
  }
  SetCone out;
  out.vertex = FinSet(std::move(elems));
  out.legs.emplace_back(out.vertex, f.dom(), std::move(left));
  out.legs.emplace_back(out.vertex, g.dom(), std::move(right));
  return out;
}

SetCocone pushout(const FinSetMap& f, const FinSetMap& g) {
  if (!(f.dom() == g.dom())) throw Error(ErrorCode::ShapeMismatch, "pushout legs disagree on domain");
  const FinSet parts[] = {f.cod(), g.cod()};
  SetCocone sum = coproduct(parts);
  SetQuotient q = coequalizer(compose(sum.legs[0], f), compose(sum.legs[1], g));
  SetCocone out;
  out.vertex = q.set;
  out.legs.push_back(compose(q.projection, sum.legs[0]));
  out.legs.push_back(compose(q.projection, sum.legs[1]));
  return out;
}

std::vector<std::vector<std::size_t>> compatible_families(const MultiWedge& w) {
  const std::size_t n = w.members.size();
  // overlaps_into[k] lists overlaps (j, k) with j < k.
  std::vector<std::vector<const MultiWedge::Overlap*>> overlaps_into(n);
  for (const auto& o : w.overlaps) {
    if (o.first >= o.second || o.second >= n || !(o.from_first.dom() == w.members[o.first]) ||
        !(o.from_second.dom() == w.members[o.second]) || !(o.from_first.cod() == o.set) ||
        !(o.from_second.cod() == o.set)) {
      throw Error(ErrorCode::ShapeMismatch, "malformed multi-wedge overlap");
    }
    overlaps_into[o.second].push_back(&o);
  }
  std::vector<std::vector<std::size_t>> partial(1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& ovs = overlaps_into[k];
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_key;
    for (std::size_t s = 0; s < w.members[k].size(); ++s) {
      std::vector<std::size_t> key;
      key.reserve(ovs.size());
      for (const auto* o : ovs) key.push_back(o->from_second(s));
      by_key[std::move(key)].push_back(s);
    }
    std::vector<std::vector<std::size_t>> next;
    std::vector<std::size_t> key(ovs.size());
    for (const auto& t : partial) {
      for (std::size_t i = 0; i < ovs.size(); ++i) key[i] = ovs[i]->from_first(t[ovs[i]->first]);
      auto it = by_key.find(key);
      if (it == by_key.end()) continue;
      for (std::size_t s : it->second) {
        auto ext = t;
        ext.push_back(s);
        next.push_back(std::move(ext));
      }
    }
    partial = std::move(next);
    if (partial.empty()) break;
  }
  return partial;
}

SetCone paired_limit(const MultiWedge& w) {
  auto families = compatible_families(w);
  std::vector<Atom> elems;
  elems.reserve(families.size());
  std::vector<std::vector<std::size_t>> legs(w.members.size());
  for (const auto& fam : families) {
    std::vector<Atom> parts;
    for (std::size_t k = 0; k < fam.size(); ++k) {
      parts.push_back(w.members[k][fam[k]]);
      legs[k].push_back(fam[k]);
    }
    elems.push_back(Atom::tuple(std::move(parts)));
  }
  SetCone out;
  out.vertex = FinSet(std::move(elems));
  for (std::size_t k = 0; k < w.members.size(); ++k) {
    out.legs.emplace_back(out.vertex, w.members[k], std::move(legs[k]));
  }
  return out;
}

SetCocone paired_colimit(const MultiCowedge& w) {
  SetCocone sum = coproduct(w.members);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& o : w.overlaps) {
    if (o.first >= o.second || o.second >= w.members.size() ||
        !(o.to_first.cod() == w.members[o.first]) || !(o.to_second.cod() == w.members[o.second]) ||
        !(o.to_first.dom() == o.set) || !(o.to_second.dom() == o.set)) {
      throw Error(ErrorCode::ShapeMismatch, "malformed multi-cowedge overlap");
    }
    for (std::size_t a = 0; a < o.set.size(); ++a) {
      pairs.emplace_back(sum.legs[o.first](o.to_first(a)), sum.legs[o.second](o.to_second(a)));
    }
  }
  SetQuotient q = quotient_by_pairs(sum.vertex, pairs);
  SetCocone out;
  out.vertex = q.set;
  for (const auto& leg : sum.legs) out.legs.push_back(compose(q.projection, leg));
  return out;
}

Subobject sub_union(const FinSet& ambient, std::span<const Subobject> family) {
  std::vector<bool> m(ambient.size(), false);
  for (const auto& s : family) {
    require_ambient(ambient, s);
    auto sm = s.mask();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] || sm[i];
  }
  return subset(ambient, m);
}

Subobject sub_intersection(const FinSet& ambient, std::span<const Subobject> family) {
  std::vector<bool> m(ambient.size(), true);
  for (const auto& s : family) {
    require_ambient(ambient, s);
    auto sm = s.mask();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && sm[i];
  }
  return subset(ambient, m);
}

Subobject sub_difference(const Subobject& a, const Subobject& b) {
  require_ambient(a.ambient(), b);
  auto am = a.mask();
  auto bm = b.mask();
  for (std::size_t i = 0; i < am.size(); ++i) am[i] = am[i] && !bm[i];
  return subset(a.ambient(), am);
}

std::optional<FinSetMap> submorphism(const Subobject& from, const Subobject& to) {
  if (!(from.ambient() == to.ambient())) return std::nullopt;
  std::vector<std::size_t> preimage(to.ambient().size(), static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < to.carrier.size(); ++j) preimage[to.inclusion(j)] = j;
  std::vector<std::size_t> t(from.carrier.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t j = preimage[from.inclusion(i)];
    if (j == static_cast<std::size_t>(-1)) return std::nullopt;
    t[i] = j;
  }
  return FinSetMap(from.carrier, to.carrier, std::move(t));
}

Image image(const FinSetMap& f) {
  std::vector<bool> m(f.cod().size(), false);
  for (std::size_t v : f.table()) m[v] = true;
  Subobject im = subset(f.cod(), m);
  std::vector<std::size_t> slot(f.cod().size(), 0);
  for (std::size_t j = 0; j < im.carrier.size(); ++j) slot[im.inclusion(j)] = j;
  std::vector<std::size_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = slot[f(i)];
  return Image{im, FinSetMap(f.dom(), im.carrier, std::move(t))};
}

std::size_t count_cone_mediators(const SetCone& from, const SetCone& to) {
  if (from.legs.size() != to.legs.size()) throw Error(ErrorCode::ShapeMismatch, "leg count differs");
  for (std::size_t k = 0; k < from.legs.size(); ++k) {
    if (!(from.legs[k].cod() == to.legs[k].cod())) {
      throw Error(ErrorCode::ShapeMismatch, "legs land in different sets");
    }
  }
  std::size_t count = 1;
  for (std::size_t x = 0; x < from.vertex.size(); ++x) {
    std::size_t options = 0;
    for (std::size_t y = 0; y < to.vertex.size(); ++y) {
      bool ok = true;
      for (std::size_t k = 0; k < to.legs.size() && ok; ++k) ok = to.legs[k](y) == from.legs[k](x);
      if (ok) ++options;
    }
    count *= options;
    if (count == 0) return 0;
  }
  return count;
}

std::size_t count_cocone_mediators(const SetCocone& from, const SetCocone& to) {
  if (from.legs.size() != to.legs.size()) throw Error(ErrorCode::ShapeMismatch, "leg count differs");
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> forced(from.vertex.size(), unset);
  for (std::size_t k = 0; k < from.legs.size(); ++k) {
    if (!(from.legs[k].dom() == to.legs[k].dom())) {
      throw Error(ErrorCode::ShapeMismatch, "legs start at different sets");
    }
    for (std::size_t a = 0; a < from.legs[k].dom().size(); ++a) {
      std::size_t& slot = forced[from.legs[k](a)];
      if (slot == unset) slot = to.legs[k](a);
      else if (slot != to.legs[k](a)) return 0;
    }
  }
  std::size_t count = 1;
  for (std::size_t v : forced) {
    if (v == unset) count *= to.vertex.size();
  }
  return count;
}

std::optional<FinSetMap> cone_isomorphism(const SetCone& a, const SetCone& b) {
  if (a.legs.size() != b.legs.size() || a.vertex.size() != b.vertex.size()) return std::nullopt;
  for (std::size_t k = 0; k < a.legs.size(); ++k) {
    if (!(a.legs[k].cod() == b.legs[k].cod())) return std::nullopt;
  }
  auto signature = [](const SetCone& c, std::size_t x) {
    std::vector<std::size_t> sig;
    for (const auto& leg : c.legs) sig.push_back(leg(x));
    return sig;
  };
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> pool;
  for (std::size_t y = 0; y < b.vertex.size(); ++y) pool[signature(b, y)].push_back(y);
  std::map<std::vector<std::size_t>, std::size_t> used;
  std::vector<std::size_t> t(a.vertex.size());
  for (std::size_t x = 0; x < a.vertex.size(); ++x) {
    auto sig = signature(a, x);
    auto it = pool.find(sig);
    if (it == pool.end()) return std::nullopt;
    std::size_t& u = used[sig];
    if (u >= it->second.size()) return std::nullopt;
    t[x] = it->second[u++];
  }
  return FinSetMap(a.vertex, b.vertex, std::move(t));
}

std::optional<FinSetMap> cocone_isomorphism(const SetCocone& a, const SetCocone& b) {
  if (a.legs.size() != b.legs.size() || a.vertex.size() != b.vertex.size()) return std::nullopt;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> t(a.vertex.size(), unset);
  std::vector<bool> hit(b.vertex.size(), false);
  for (std::size_t k = 0; k < a.legs.size(); ++k) {
    if (!(a.legs[k].dom() == b.legs[k].dom())) return std::nullopt;
    for (std::size_t s = 0; s < a.legs[k].dom().size(); ++s) {
      std::size_t& slot = t[a.legs[k](s)];
      if (slot == unset) slot = b.legs[k](s);
      else if (slot != b.legs[k](s)) return std::nullopt;
    }
  }
  for (std::size_t v : t) {
    if (v == unset) continue;
    if (hit[v]) return std::nullopt;
    hit[v] = true;
  }
  std::size_t next_free = 0;
  for (auto& v : t) {
    if (v != unset) continue;
    while (next_free < hit.size() && hit[next_free]) ++next_free;
    if (next_free == hit.size()) return std::nullopt;
    v = next_free;
    hit[next_free] = true;
  }
  FinSetMap m(a.vertex, b.vertex, std::move(t));
  if (!m.is_bijective()) return std::nullopt;
  return m;
}

namespace {

template <typename Visit>
void for_each_subset(const FinSet& ambient, Visit&& visit) {
  const std::size_t n = ambient.size();
  if (n >= 24) throw Error(ErrorCode::ShapeMismatch, "ambient set too large for subset search");
  std::vector<bool> m(n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
    if (!visit(subset(ambient, m))) return;
  }
}

std::size_t count_submorphisms(const Subobject& from, const Subobject& to) {
  return count_cone_mediators(SetCone{from.carrier, {from.inclusion}},
                              SetCone{to.carrier, {to.inclusion}});
}

}  // namespace

bool verify_union(const FinSet& ambient, std::span<const Subobject> family, const Subobject& u) {
  auto above_all = [&](const Subobject& t) {
    for (const auto& s : family) {
      if (count_submorphisms(s, t) != 1) return false;
    }
    return true;
  };
  if (!(u.ambient() == ambient) || !u.inclusion.is_injective() || !above_all(u)) return false;
  bool ok = true;
  for_each_subset(ambient, [&](const Subobject& t) {
    if (above_all(t) && count_submorphisms(u, t) != 1) ok = false;
    return ok;
  });
  return ok;
}

bool verify_intersection(const FinSet& ambient, std::span<const Subobject> family,
                         const Subobject& n) {
  auto below_all = [&](const Subobject& t) {
    for (const auto& s : family) {
      if (count_submorphisms(t, s) != 1) return false;
    }
    return true;
  };
  if (!(n.ambient() == ambient) || !n.inclusion.is_injective() || !below_all(n)) return false;
  bool ok = true;
  for_each_subset(ambient, [&](const Subobject& t) {
    if (below_all(t) && count_submorphisms(t, n) != 1) ok = false;
    return ok;
  });
  return ok;
}

bool verify_difference(const Subobject& a, const Subobject& b, const Subobject& d) {
  const Subobject ab[] = {a, b};
  const auto target = sub_union(a.ambient(), ab).mask();
  auto completes = [&](const Subobject& t) {
    const Subobject tb[] = {t, b};
    return sub_union(a.ambient(), tb).mask() == target;
  };
  if (!(d.ambient() == a.ambient()) || !d.inclusion.is_injective() || !completes(d)) return false;
  bool ok = true;
  for_each_subset(a.ambient(), [&](const Subobject& t) {
    if (completes(t) && count_submorphisms(d, t) != 1) ok = false;
    return ok;
  });
  return ok;
}

bool verify_image(const FinSetMap& f, const Image& im) {
  if (!(im.image.ambient() == f.cod()) || !im.image.inclusion.is_injective()) return false;
  if (!(compose(im.image.inclusion, im.factor) == f)) return false;
  auto factors = [&](const Subobject& t) {
    return count_cone_mediators(SetCone{f.dom(), {f}}, SetCone{t.carrier, {t.inclusion}}) > 0;
  };
  bool ok = true;
  for_each_subset(f.cod(), [&](const Subobject& t) {
    if (factors(t) && count_submorphisms(im.image, t) != 1) ok = false;
    return ok;
  });
  return ok;
}

}  // namespace sheafkit
