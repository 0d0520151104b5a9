#include "sheafkit/space/space.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "sheafkit/sheaf/sheafify.hpp"

namespace sheafkit {

namespace {

FinSet points_of(const ClassicalSpace& m, Mask u) {
  std::vector<Atom> atoms;
  for (auto i : members(u)) atoms.push_back(m.points()[i]);
  return FinSet(std::move(atoms));
}

FinSetMap inclusion(const FinSet& a, const FinSet& b) {
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < a.size(); ++i) table.push_back(b.index_of(a[i]));
  return FinSetMap(a, b, std::move(table));
}

Mask image_mask(const FinSetMap& m) {
  Mask out = 0;
  for (auto v : m.table()) out |= bit(v);
  return out;
}

std::vector<Mask> images_in_top(const Presheaf& f) {
  std::vector<Mask> im;
  for (ElemId e = 0; e < f.x().size(); ++e) im.push_back(image_mask(f.map(e, f.x().top())));
  return im;
}

}  // namespace

SheafSpace::SheafSpace(Presheaf cosheaf) : cosheaf_(std::move(cosheaf)) {
  if (!cosheaf_.covariant()) throw Error(ErrorCode::NotCosheaf, "a space needs a copresheaf");
  auto g = check_gluing(cosheaf_);
  if (!g.ok) {
    std::string where = g.element ? " at " + x().name(*g.element) : "";
    throw Error(ErrorCode::NotCosheaf, g.detail + where);
  }
  auto a = apex_predicates(cosheaf_);
  if (!a.apex) {
    std::string why = a.preapex ? "images of " + x().name(a.witness->first) + " and " + x().name(a.witness->second) + " agree"
                                : "an extension to the top is not injective";
    throw Error(ErrorCode::NotApex, why);
  }
}

Presheaf inclusion_cosheaf(const ClassicalSpace& m) {
  auto x = make_algebra(from_topology(m));
  std::vector<FinSet> sets;
  for (Mask u : m.opens()) sets.push_back(points_of(m, u));
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId a = 0; a < x->size(); ++a) {
    for (ElemId b : members(x->up_set(a))) maps.emplace(std::pair(a, b), inclusion(sets[a], sets[b]));
  }
  return Presheaf(x, Variance::Covariant, std::move(sets), maps);
}

SheafSpace to_sheaf_space(const ClassicalSpace& m) { return SheafSpace(inclusion_cosheaf(m)); }

ClassicalSpace to_classical_space(const SheafSpace& s) {
  const auto& f = s.cosheaf();
  const auto& x = f.x();
  const FinSet& points = f.at(x.top());
  if (points.size() > 64) throw Error(ErrorCode::ShapeMismatch, "more than 64 points");
  auto im = images_in_top(f);
  Mask full = points.size() == 64 ? ~Mask{0} : bit(points.size()) - 1;
  if (im[x.bottom()] != 0 || im[x.top()] != full) throw Error(ErrorCode::NotCosheaf, "images of 0 and 1 are not ∅ and F(1)");
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b = a + 1; b < x.size(); ++b) {
      if ((im[a] | im[b]) != im[x.join(a, b)]) {
        throw Error(ErrorCode::NotCosheaf, "image of " + x.name(x.join(a, b)) + " is not the union");
      }
      if ((im[a] & im[b]) != im[x.meet(a, b)]) {
        throw Error(ErrorCode::NotCosheaf, "image of " + x.name(x.meet(a, b)) + " is not the intersection");
      }
    }
  }
  return ClassicalSpace(points, im);
}

SpaceIso classical_round_trip(const SheafSpace& s) {
  const auto& f = s.cosheaf();
  const auto& x = f.x();
  auto m = to_classical_space(s);
  SpaceIso out{AlgebraHom(), {}, to_sheaf_space(m)};
  const auto& g = out.target.cosheaf();
  auto im = images_in_top(f);
  std::vector<ElemId> table;
  for (ElemId e = 0; e < x.size(); ++e) {
    auto it = std::find(m.opens().begin(), m.opens().end(), im[e]);
    table.push_back(static_cast<ElemId>(it - m.opens().begin()));
  }
  out.algebra = AlgebraHom(f.algebra(), g.algebra(), table);
  for (ElemId e = 0; e < x.size(); ++e) {
    const auto& ext = f.map(e, x.top());
    const FinSet& target = g.at(table[e]);
    std::vector<std::size_t> comp;
    for (std::size_t a = 0; a < f.at(e).size(); ++a) comp.push_back(target.index_of(m.points()[ext(a)]));
    out.components.push_back(FinSetMap(f.at(e), target, std::move(comp)));
  }
  return out;
}

bool verify_space_iso(const SheafSpace& s, const SpaceIso& iso) {
  const auto& f = s.cosheaf();
  const auto& g = iso.target.cosheaf();
  const auto& x = f.x();
  const auto& t = iso.algebra.table();
  if (t.size() != x.size() || g.x().size() != x.size()) return false;
  std::vector<ElemId> sorted(t);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b = 0; b < x.size(); ++b) {
      if (x.leq(a, b) != g.x().leq(t[a], t[b])) return false;
    }
  }
  for (ElemId e = 0; e < x.size(); ++e) {
    if (!iso.components[e].is_bijective()) return false;
  }
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b : members(x.up_set(a))) {
      if (!(compose(iso.components[b], f.map(a, b)) == compose(g.map(t[a], t[b]), iso.components[a]))) return false;
    }
  }
  return true;
}

bool is_continuous(const ClassicalSpace& m, const ClassicalSpace& n, const std::vector<std::size_t>& f) {
  for (Mask v : n.opens()) {
    Mask pre = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (has(v, f[a])) pre |= bit(a);
    }
    if (std::find(m.opens().begin(), m.opens().end(), pre) == m.opens().end()) return false;
  }
  return true;
}

SheafHom map_to_sheaf(const ClassicalSpace& m, const ClassicalSpace& n, const std::vector<std::size_t>& f) {
  if (f.size() != m.points().size()) throw Error(ErrorCode::ShapeMismatch, "one image per point required");
  for (auto v : f) {
    if (v >= n.points().size()) throw Error(ErrorCode::ShapeMismatch, "image outside the target");
  }
  auto xm = make_algebra(from_topology(m));
  auto xn = make_algebra(from_topology(n));
  std::vector<ElemId> table;
  SheafNat alpha;
  for (Mask v : n.opens()) {
    Mask pre = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (has(v, f[a])) pre |= bit(a);
    }
    auto it = std::find(m.opens().begin(), m.opens().end(), pre);
    if (it == m.opens().end()) throw Error(ErrorCode::NotContinuous, "preimage of " + n.open_name(v) + " is not open");
    table.push_back(static_cast<ElemId>(it - m.opens().begin()));
    FinSet from = points_of(m, pre), to = points_of(n, v);
    std::vector<std::size_t> comp;
    for (auto a : members(pre)) comp.push_back(to.index_of(n.points()[f[a]]));
    alpha.push_back(FinSetMap(from, to, std::move(comp)));
  }
  return SheafHom{AlgebraHom(xn, xm, table), std::move(alpha)};
}

std::vector<std::size_t> map_to_classical(const SheafSpace& from, const SheafSpace& to, const SheafHom& h) {
  auto v = sheaf_hom_violations(from.cosheaf(), to.cosheaf(), h);
  if (!v.empty()) throw ValidationError(std::move(v));
  const auto& f = from.cosheaf();
  const auto& g = to.cosheaf();
  const auto& y = g.x();
  const auto& top = h.alpha[y.top()];
  std::vector<std::size_t> out(top.table().begin(), top.table().end());
  auto fim = images_in_top(f);
  for (ElemId e = 0; e < y.size(); ++e) {
    Mask target = image_mask(g.map(e, y.top()));
    Mask pre = 0;
    for (std::size_t a = 0; a < out.size(); ++a) {
      if (has(target, out[a])) pre |= bit(a);
    }
    if (pre != fim[h.f(e)]) throw Error(ErrorCode::NotContinuous, "preimage of the image of " + y.name(e) + " is not open");
  }
  return out;
}

std::string particle_name(const TopologyAlgebra& x, Mask p) {
  std::string out = "[";
  bool first = true;
  for (auto e : members(p)) {
    if (!first) out += ",";
    out += x.name(e);
    first = false;
  }
  return out + "]";
}

Presheaf representation_cosheaf(const TopologyAlgebra& x, const SetRepresentation& t) {
  std::vector<FinSet> sets;
  for (ElemId e = 0; e < x.size(); ++e) {
    std::vector<Atom> atoms;
    for (auto i : members(t.t[e])) atoms.emplace_back(particle_name(x, t.particles[i]));
    sets.push_back(FinSet(std::move(atoms)));
  }
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b : members(x.up_set(a))) maps.emplace(std::pair(a, b), inclusion(sets[a], sets[b]));
  }
  return Presheaf(make_algebra(x), Variance::Covariant, std::move(sets), maps);
}

bool hausdorff(const ClassicalSpace& m) {
  const std::size_t n = m.points().size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool split = false;
      for (Mask u : m.opens()) {
        for (Mask v : m.opens()) split |= has(u, a) && has(v, b) && (u & v) == 0;
      }
      if (!split) return false;
    }
  }
  return true;
}

bool SpacePredicates::cross_checks_hold() const {
  return hausdorff_iff_separatable_sober && hausdorff_iff_separatable_thin && separatable_sober_gives_thin &&
         separatable_thin_gives_sober && separatable_gives_t_thin && hausdorff_iff_discrete;
}

SpacePredicates space_predicates(const SheafSpace& s) {
  const auto& f = s.cosheaf();
  const auto& x = f.x();
  auto t = set_representation(x);
  auto m = to_classical_space(s);
  SpacePredicates r;
  r.separatable = algebra_predicates(x, t).separatable;
  auto im = images_in_top(f);
  std::vector<Mask> of_point;
  for (std::size_t a = 0; a < m.points().size(); ++a) {
    Mask p = 0;
    for (ElemId e = 0; e < x.size(); ++e) {
      if (has(im[e], a)) p |= bit(e);
    }
    of_point.push_back(p);
  }
  std::vector<Mask> sorted = of_point;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Mask> ps = t.particles;
  std::sort(ps.begin(), ps.end());
  r.sober = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted == ps;
  auto tx = representation_cosheaf(x, t);
  r.thin = true;
  r.t_thin = true;
  for (Mask p : t.particles) {
    r.thin = r.thin && stalk(f, p).set.size() == 1;
    r.t_thin = r.t_thin && stalk(tx, p).set.size() == 1;
  }
  r.hausdorff_classical = hausdorff(m);
  r.hausdorff_sheaf = r.separatable && r.thin;
  std::size_t n = m.points().size();
  r.discrete = n < 64 && m.opens().size() == (std::size_t{1} << n);
  r.hausdorff_iff_separatable_sober = r.hausdorff_classical == (r.separatable && r.sober);
  r.hausdorff_iff_separatable_thin = r.hausdorff_classical == (r.separatable && r.thin);
  r.separatable_sober_gives_thin = !(r.separatable && r.sober) || r.thin;
  r.separatable_thin_gives_sober = !(r.separatable && r.thin) || r.sober;
  r.separatable_gives_t_thin = !r.separatable || r.t_thin;
  r.hausdorff_iff_discrete = r.hausdorff_classical == r.discrete;
  return r;
}

SpacePredicates space_predicates(const ClassicalSpace& m) { return space_predicates(to_sheaf_space(m)); }

namespace {

// Images of the costalk maps inside F(x), per particle.
std::vector<std::vector<Mask>> costalk_images(const Presheaf& f, const SetRepresentation& t, std::vector<Stalk>& st) {
  st = stalks(f, t);
  std::vector<std::vector<Mask>> out(f.x().size(), std::vector<Mask>(t.particles.size(), 0));
  for (ElemId e = 0; e < f.x().size(); ++e) {
    for (auto i : members(t.t[e])) out[e][i] = image_mask(st[i].germ[e]);
  }
  return out;
}

std::optional<ElemId> first_partition_failure(const Presheaf& f, const SetRepresentation& t,
                                              const std::vector<std::vector<Mask>>& im) {
  for (ElemId e = 0; e < f.x().size(); ++e) {
    Mask seen = 0;
    for (auto i : members(t.t[e])) {
      if (im[e][i] == 0 || (seen & im[e][i]) != 0) return e;
      seen |= im[e][i];
    }
    Mask full = f.at(e).size() == 64 ? ~Mask{0} : bit(f.at(e).size()) - 1;
    if (seen != full) return e;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ElemId> partition_failure(const SheafSpace& s) {
  auto t = set_representation(s.x());
  std::vector<Stalk> st;
  auto im = costalk_images(s.cosheaf(), t, st);
  return first_partition_failure(s.cosheaf(), t, im);
}

AbsoluteQuotient absolute_quotient_to_t(const SheafSpace& s) {
  const auto& f = s.cosheaf();
  const auto& x = f.x();
  auto t = set_representation(x);
  if (!algebra_predicates(x, t).separatable) throw Error(ErrorCode::NotSeparatable, "the algebra is not separatable");
  std::vector<Stalk> st;
  auto im = costalk_images(f, t, st);
  if (auto bad = first_partition_failure(f, t, im)) {
    throw Error(ErrorCode::NotSeparatable, "costalk images do not partition F(" + x.name(*bad) + ")");
  }
  AbsoluteQuotient out{representation_cosheaf(x, t), {AlgebraHom::identity(f.algebra()), {}}, {}};
  // Representative per particle: the costalk element with the least image in F(1).
  const ElemId one = x.top();
  std::vector<std::size_t> rep(t.particles.size());
  for (std::size_t i = 0; i < t.particles.size(); ++i) {
    const auto& g = st[i].germ[one];
    std::size_t best = 0;
    for (std::size_t c = 1; c < st[i].set.size(); ++c) {
      if (f.at(one)[g(c)] < f.at(one)[g(best)]) best = c;
    }
    rep[i] = best;
  }
  for (ElemId e = 0; e < x.size(); ++e) {
    const FinSet& tx = out.t.at(e);
    std::vector<std::size_t> a(f.at(e).size()), b;
    for (auto i : members(t.t[e])) {
      std::size_t pos = tx.index_of(Atom(particle_name(x, t.particles[i])));
      for (auto v : members(im[e][i])) a[v] = pos;
    }
    for (std::size_t pos = 0; pos < tx.size(); ++pos) {
      std::size_t i = 0;
      while (particle_name(x, t.particles[i]) != tx[pos].to_string()) ++i;
      b.push_back(st[i].germ[e](rep[i]));
    }
    out.alpha.alpha.push_back(FinSetMap(f.at(e), tx, std::move(a)));
    out.beta.push_back(FinSetMap(tx, f.at(e), std::move(b)));
  }
  auto v = sheaf_hom_violations(f, out.t, out.alpha);
  if (!v.empty()) throw ValidationError(std::move(v));
  if (!nat_violations(out.t, f, out.beta).empty() || !(compose_nat(out.alpha.alpha, out.beta) == identity_nat(out.t))) {
    throw Error(ErrorCode::NaturalityViolation, "β is not a natural right inverse of α");
  }
  return out;
}

bool is_absolute_quotient(const Presheaf& from, const Presheaf& to, const SheafHom& h) {
  if (!(from.x() == to.x()) || !(*h.f.src() == to.x()) || !(*h.f.dst() == from.x())) return false;
  for (ElemId e = 0; e < to.x().size(); ++e) {
    if (h.f(e) != e) return false;
  }
  if (!sheaf_hom_violations(from, to, h).empty()) return false;
  auto id = identity_nat(to);
  return find_nat(to, from, [&](const SheafNat& beta) { return compose_nat(h.alpha, beta) == id; }).has_value();
}

bool is_quotient(const Presheaf& from, const Presheaf& to, const SheafHom& h) {
  if (!sheaf_hom_violations(from, to, h).empty()) return false;
  const auto& x = from.x();
  const auto& y = to.x();
  for (ElemId a = 0; a < y.size(); ++a) {
    for (ElemId b = 0; b < y.size(); ++b) {
      if (x.leq(h.f(a), h.f(b)) != y.leq(a, b)) return false;
      if (a != b && h.f(a) == h.f(b)) return false;
    }
  }
  auto tx = set_representation(x);
  auto ty = set_representation(y);
  auto pm = patl_of_hom(h.f, ty, tx);
  for (ElemId e = 0; e < x.size(); ++e) {
    bool in_image = false, preimage = false;
    for (ElemId b = 0; b < y.size(); ++b) {
      in_image = in_image || h.f(b) == e;
      Mask pre = 0;
      for (std::size_t i = 0; i < tx.particles.size(); ++i) {
        if (has(ty.t[b], pm.image[i])) pre |= bit(i);
      }
      preimage = preimage || pre == tx.t[e];
    }
    if (in_image != preimage) return false;
  }
  return true;
}

}  // namespace sheafkit
