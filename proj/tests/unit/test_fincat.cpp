#include "doctest.h"
#include "raw_oracle.hpp"
#include "sheafkit/error.hpp"
#include "sheafkit/fincat/functor.hpp"
#include "sheafkit/fincat/set_diagram.hpp"

using namespace sheafkit;

namespace {

RawCategory arrow_raw() {
  RawCategory r;
  r.objects = {"0", "1"};
  r.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}};
  r.identities = {{"0", "id0"}, {"1", "id1"}};
  return r;
}

// Z2 acting on one object: e ∘ e = id.
CategoryRef z2() {
  CategoryBuilder b;
  ObjId a = b.add_object("A");
  MorId i = b.add_identity(a, "id");
  MorId e = b.add_morphism("e", a, a);
  b.set_composite(e, e, i);
  return b.build_ref();
}

// A ⇉ B with two parallel arrows.
CategoryRef parallel_pair() {
  CategoryBuilder b;
  ObjId a = b.add_object("A"), c = b.add_object("B");
  b.add_identity(a, "id_A");
  b.add_identity(c, "id_B");
  b.add_morphism("f", a, c);
  b.add_morphism("g", a, c);
  return b.build_ref();
}

}  // namespace

TEST_CASE("validate accepts single and arrow categories") {
  auto s = single_category();
  CHECK(s->object_count() == 1);
  CHECK(s->morphism_count() == 1);
  auto c = FiniteCategory::from_raw(arrow_raw());
  CHECK(c.morphism_count() == 3);
  CHECK(c.compose(c.morphism("u"), c.morphism("id0")) == c.morphism("u"));
  CHECK(oracle::count_violations(arrow_raw()) == 0);
}

TEST_CASE("bad composite codomain reports exactly one violation") {
  RawCategory r;
  r.objects = {"0", "1", "2"};
  r.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"id2", "2", "2"},
                 {"a", "0", "1"},   {"b", "1", "2"},   {"c", "0", "2"}};
  r.identities = {{"0", "id0"}, {"1", "id1"}, {"2", "id2"}};
  r.comp = {{"b", "a", "c"}};
  CHECK_NOTHROW(FiniteCategory::from_raw(r));
  r.comp = {{"b", "a", "a"}};
  bool threw = false;
  try {
    FiniteCategory::from_raw(r);
  } catch (const ValidationError& e) {
    threw = true;
    std::size_t bad_domcod = 0;
    for (const auto& v : e.violations()) bad_domcod += v.code == ErrorCode::BadDomCod;
    CHECK(bad_domcod == 1);
  }
  CHECK(threw);
}

TEST_CASE("missing identity and non-associativity are reported") {
  auto r = arrow_raw();
  r.identities.erase("1");
  CHECK_THROWS_AS(FiniteCategory::from_raw(r), ValidationError);
  CHECK(oracle::count_violations(r) > 0);

  // Left-zero monoid {1, a, b}: x ∘ y = x.
  RawCategory m;
  m.objects = {"X"};
  m.morphisms = {{"1", "X", "X"}, {"a", "X", "X"}, {"b", "X", "X"}};
  m.identities = {{"X", "1"}};
  m.comp = {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
  CHECK_NOTHROW(FiniteCategory::from_raw(m));
  CHECK(oracle::count_violations(m) == 0);
  m.comp = {{"a", "a", "a"}, {"a", "b", "b"}, {"b", "a", "b"}, {"b", "b", "b"}};
  // b absorbs: x ∘ y = b unless x = y = a.
  CHECK(oracle::count_violations(m) == 0);
  CHECK_NOTHROW(FiniteCategory::from_raw(m));
  m.comp = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "a"}, {"b", "b", "a"}};
  // (a∘a)∘b = b∘b = a but a∘(a∘b) = a∘a = b
  CHECK(oracle::count_violations(m) > 0);
  bool nonassoc = false;
  try {
    FiniteCategory::from_raw(m);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) nonassoc = nonassoc || v.code == ErrorCode::NonAssociative;
  }
  CHECK(nonassoc);
}

TEST_CASE("morphism predicates") {
  auto chain = chain_category(3);
  for (MorId m = 0; m < chain->morphism_count(); ++m) {
    auto p = morphism_predicates(*chain, m);
    CHECK(p.is_mono);
    CHECK(p.is_epi);
    CHECK(p.is_iso == chain->is_identity(m));
  }
  auto s = single_category();
  auto p = morphism_predicates(*s, 0);
  CHECK((p.is_mono && p.is_epi && p.is_iso));

  auto world = make_finset_category({FinSet{"0", "1"}, FinSet{"0"}});
  MorId k = world.morphism_of(0, 1, FinSetMap(world.sets[0], world.sets[1], {0, 0}));
  auto q = morphism_predicates(*world.category, k);
  CHECK(q.is_epi);
  CHECK_FALSE(q.is_mono);
  CHECK_FALSE(q.is_iso);
  CHECK_THROWS_AS(morphism_predicates(*s, 5), Error);
}

TEST_CASE("initial and terminal objects") {
  auto s = single_category();
  auto r = find_initial_terminal(*s);
  CHECK(r.initials.size() == 1);
  CHECK(r.terminals.size() == 1);
  const std::string names[] = {"A", "B"};
  auto d = discrete_category(names);
  r = find_initial_terminal(*d);
  CHECK(r.initials.empty());
  CHECK(r.terminals.empty());
  auto c = chain_category(3);
  r = find_initial_terminal(*c);
  CHECK(r.initials == std::vector<ObjId>{0});
  CHECK(r.terminals == std::vector<ObjId>{2});
  // Two isomorphic terminal objects in the finset world on {a}, {b}.
  auto w = make_finset_category({FinSet{"a"}, FinSet{"b"}});
  r = find_initial_terminal(*w.category);
  CHECK(r.terminals.size() == 2);
  CHECK(r.terminals_isomorphic);
}

TEST_CASE("Mor category of small categories") {
  auto s = single_category();
  auto ms = mor_category(s);
  CHECK(ms.category->object_count() == 1);
  CHECK(ms.category->morphism_count() == 1);
  CHECK(find_isomorphism(ms.category, s).has_value());

  auto c = chain_category(2);
  auto m = mor_category(c);
  CHECK(m.category->object_count() == 3);
  // Commuting squares in the poset 0 ≤ 1: exactly one between f and g when
  // dom f ≤ dom g and cod f ≤ cod g. Objects (0,0), (0,1), (1,1) in product
  // order give 6 comparable pairs.
  CHECK(m.category->morphism_count() == 6);
  auto cf = canonical_functors(m);
  CHECK(compose(cf.dom, cf.id) == Functor::identity(c));
  CHECK(compose(cf.cod, cf.id) == Functor::identity(c));
  auto p = functor_predicates(cf.id);
  CHECK(p.faithful);
  CHECK(p.embedding);
}

TEST_CASE("diagonal plane on a three-object category") {
  auto c = chain_category(3);
  auto m = mor_category(c);
  auto m2 = mor_category(m.category);
  auto dp = diagonal_plane(m, m2);
  const auto& base = *c;
  for (ObjId s = 0; s < m2.category->object_count(); ++s) {
    MorId f = m.category->dom(s), g = m.category->cod(s);
    MorId via_psi = base.compose(m.square[s].psi, f);
    MorId via_phi = base.compose(g, m.square[s].phi);
    CHECK(via_psi == via_phi);
    CHECK(dp.ob(s) == via_psi);
  }
  auto table = comp_table(base);
  for (MorId f = 0; f < base.morphism_count(); ++f) {
    for (MorId g = 0; g < base.morphism_count(); ++g) {
      bool listed = false;
      for (const auto& e : table) listed = listed || (e.g == g && e.f == f);
      CHECK(listed == (base.cod(f) == base.dom(g)));
    }
  }
}

TEST_CASE("Mor lift of a functor is a functor") {
  auto c = chain_category(3);
  // Collapse 1 and 2 onto 1 in a 2-chain.
  auto d = chain_category(2);
  std::vector<ObjId> ob = {0, 1, 1};
  std::vector<MorId> mor(c->morphism_count());
  for (MorId u = 0; u < c->morphism_count(); ++u) {
    mor[u] = d->hom(ob[c->dom(u)], ob[c->cod(u)])[0];
  }
  Functor f(c, d, ob, mor);
  auto mc = mor_category(c), md = mor_category(d);
  auto lifted = mor_lift(f, mc, md);
  CHECK(lifted.src() == mc.category);
}

TEST_CASE("nat operations") {
  auto c = chain_category(2);
  auto d = chain_category(3);
  auto make = [&](ObjId x, ObjId y) {
    std::vector<ObjId> ob = {x, y};
    std::vector<MorId> mor(c->morphism_count());
    for (MorId u = 0; u < c->morphism_count(); ++u) mor[u] = d->hom(ob[c->dom(u)], ob[c->cod(u)])[0];
    return Functor(c, d, ob, mor);
  };
  Functor f = make(0, 1), g = make(1, 2), h = make(2, 2);
  auto comp_between = [&](const Functor& a, const Functor& b) {
    std::vector<MorId> cs;
    for (ObjId o = 0; o < 2; ++o) cs.push_back(d->hom(a.ob(o), b.ob(o))[0]);
    return NatTrans(a, b, cs);
  };
  auto alpha = comp_between(f, g);
  auto beta = comp_between(g, h);
  CHECK(vertical(NatTrans::identity(g), alpha) == alpha);
  auto ba = vertical(beta, alpha);
  CHECK(ba.from() == f);
  CHECK(ba.to() == h);
  CHECK_THROWS_AS(vertical(alpha, alpha), Error);
  CHECK_THROWS_AS(NatTrans(g, f, {d->hom(1, 0).empty() ? 0 : d->hom(1, 0)[0], 0}), Error);

  // Horizontal composite of identities is the identity of the composite.
  auto e = chain_category(3);
  std::vector<MorId> inc_mor(d->morphism_count());
  for (MorId u = 0; u < d->morphism_count(); ++u) inc_mor[u] = u;
  Functor id_d = Functor::identity(d);
  auto idh = horizontal(NatTrans::identity(id_d), NatTrans::identity(f));
  CHECK(idh == NatTrans::identity(compose(id_d, f)));

  auto md = mor_category(d);
  auto md2 = mor_category(md.category);
  // β * α with β = identity on id_d versus the diagonal formula.
  auto direct = horizontal(NatTrans::identity(id_d), alpha);
  auto via = horizontal_via_diagonal(NatTrans::identity(id_d), alpha, md, md, md2);
  for (ObjId o = 0; o < 2; ++o) CHECK(via.ob(o) == direct.at(o));

  auto as_f = nat_as_functor(alpha, md);
  auto cf = canonical_functors(md);
  CHECK(compose(cf.dom, as_f) == f);
  CHECK(compose(cf.cod, as_f) == g);
}

TEST_CASE("hom functors") {
  auto s = single_category();
  auto h = hom_functor(s, 0, Variance::Covariant);
  CHECK(h.sets[0].size() == 1);
  CHECK(h.maps[0].is_bijective());
  auto c = chain_category(2);
  auto h0 = hom_functor(c, 0, Variance::Covariant);
  CHECK(h0.sets[0].size() == 1);
  CHECK(h0.sets[1].size() == 1);
  auto h1 = hom_functor(c, 1, Variance::Contravariant);
  CHECK(h1.sets[0].size() == 1);
  CHECK(h1.sets[1].size() == 1);
  auto z = z2();
  auto hz = hom_functor(z, 0, Variance::Contravariant);
  const auto& op = *hz.shape;
  for (const auto& e : comp_table(op)) {
    CHECK(hz.maps[e.gf] == compose(hz.maps[e.g], hz.maps[e.f]));
  }
}

TEST_CASE("functor predicates") {
  auto c = chain_category(3);
  auto p = functor_predicates(Functor::identity(c));
  CHECK((p.faithful && p.full && p.embedding && p.dense && p.surjective));

  // Collapsing parallel arrows: Z2 to the single category is full, not faithful.
  auto s = single_category();
  auto z = z2();
  Functor k(z, s, {0}, {0, 0});
  auto q = functor_predicates(k);
  CHECK(q.full);
  CHECK_FALSE(q.faithful);
  // From the parallel pair the empty hom-class Hom(B, A) breaks fullness.
  auto pp = parallel_pair();
  Functor kp(pp, s, {0, 0}, {0, 0, 0, 0});
  CHECK_FALSE(functor_predicates(kp).full);

  const ObjId keep[] = {0, 2};
  auto sub = full_subcategory(*c, keep);
  std::vector<MorId> mor;
  for (MorId u = 0; u < sub->morphism_count(); ++u) mor.push_back(c->morphism(sub->morphism_name(u)));
  Functor inc(sub, c, {0, 2}, mor);
  auto r = functor_predicates(inc);
  CHECK(r.full);
  CHECK(r.faithful);
  CHECK_FALSE(r.dense);
}

TEST_CASE("commutative diagrams") {
  auto c = chain_category(3);
  std::vector<MorId> tri = {c->morphism("0<=1"), c->morphism("1<=2"), c->morphism("0<=2")};
  CHECK(check_commutative(*c, tri).commutative);
  CHECK(check_commutative(*c, {}).commutative);

  auto pp = parallel_pair();
  std::vector<MorId> both = {pp->morphism("f"), pp->morphism("g")};
  auto rep = check_commutative(*pp, both);
  CHECK_FALSE(rep.commutative);
  CHECK(rep.path_a.size() == 1);
  CHECK(rep.path_b.size() == 1);

  // e is a loop with e∘e = id; the diagram {e} has paths e, e∘e, ... and e ≠ id.
  auto z = z2();
  std::vector<MorId> loop = {z->morphism("e")};
  CHECK_FALSE(check_commutative(*z, loop).commutative);
}

TEST_CASE("opposite and subcategories") {
  auto c = chain_category(3);
  auto op = opposite(*c);
  CHECK(op->dom(op->morphism("0<=1")) == op->object("1"));
  auto back = opposite(*op);
  CHECK(find_isomorphism(back, c).has_value());
  const MorId arrows[] = {c->morphism("0<=1")};
  auto sub = subcategory(*c, arrows);
  CHECK(sub->object_count() == 2);
  const MorId open[] = {c->morphism("0<=1"), c->morphism("1<=2")};
  CHECK_THROWS_AS(subcategory(*c, open), ValidationError);
  CHECK(find_isomorphism(c, op).has_value());  // chains are self-dual
}
