#include <map>
#include <set>

#include "doctest.h"
#include "sheafkit/error.hpp"
#include "sheafkit/quotient/quotient.hpp"
#include "sheafkit/suites/generators.hpp"

using namespace sheafkit;

namespace {

std::vector<std::vector<ObjId>> singletons(std::size_t n) {
  std::vector<std::vector<ObjId>> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back({i});
  return v;
}

// Two objects A, B with u : A → B and its inverse v.
CategoryRef swap_groupoid() {
  CategoryBuilder b;
  ObjId a = b.add_object("A"), c = b.add_object("B");
  MorId ia = b.add_identity(a, "id_A"), ib = b.add_identity(c, "id_B");
  MorId u = b.add_morphism("u", a, c), v = b.add_morphism("v", c, a);
  b.set_composite(v, u, ia);
  b.set_composite(u, v, ib);
  return b.build_ref();
}

// Collapse functor from an inflation back to its base: u@i>j ↦ u.
Functor collapse(const gen::Inflation& inf, const CategoryRef& base) {
  const auto& c = *inf.category;
  std::vector<ObjId> ob(c.object_count());
  std::vector<MorId> mor(c.morphism_count());
  for (ObjId a = 0; a < base->object_count(); ++a) {
    for (ObjId x : inf.classes[a]) ob[x] = a;
  }
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    auto name = c.morphism_name(m);
    mor[m] = base->morphism(name.substr(0, name.rfind('@')));
  }
  return Functor(inf.category, base, ob, mor);
}

std::vector<CochainGroup> cochains(const FiniteCategory& c, const std::vector<std::vector<ObjId>>& classes,
                                   bool last_choice) {
  std::vector<CochainGroup> out;
  for (const auto& cls : classes) {
    std::map<ObjId, MorId> gens;
    for (ObjId b : cls) {
      if (b == cls[0]) continue;
      std::vector<MorId> isos;
      for (MorId m : c.hom(cls[0], b)) {
        if (inverse_of(c, m)) isos.push_back(m);
      }
      gens[b] = last_choice ? isos.back() : isos.front();
    }
    out.push_back(span_cochain(c, cls, cls[0], gens));
  }
  return out;
}

}  // namespace

TEST_CASE("identity relation is categorical and its quotient is the base") {
  auto c = gen::inflate(gen::cyclic_group(2), {2}).category;
  auto r = CatRelation::identity(c);
  auto rep = check_relation(r);
  CHECK(rep.categorical());
  CHECK(rep.violations.empty());
  auto q = quotient_category(r);
  auto iso = find_isomorphism(q.category, c);
  CHECK(iso.has_value());
  CHECK(q.category->object_name(0) == "{G#0}");
  CHECK(fully_faithful_on_classes(q));
}

TEST_CASE("partitions must cover every index exactly once") {
  auto c = swap_groupoid();
  CHECK_THROWS_AS(CatRelation(c, {{0}}, {{0}, {1}, {2}, {3}}), Error);
  CHECK_THROWS_AS(CatRelation(c, {{0, 1}, {1}}, {{0}, {1}, {2}, {3}}), Error);
  CHECK_THROWS_AS(CatRelation(c, {{0}, {1}}, {{0, 1, 2, 3, 4}}), Error);
  try {
    CatRelation(c, {{0}}, {{0}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPartition);
  }
}

TEST_CASE("relation induced by a functor is precategorical") {
  gen::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto base = gen::random_shape(rng, 3, 3);
    std::vector<std::size_t> copies(base->object_count(), 2);
    auto inf = gen::inflate(base, copies);
    auto f = collapse(inf, base);
    auto r = CatRelation::from_functor(f);
    auto rep = check_relation(r);
    CHECK(rep.precategorical());
    CHECK(rep.categorical());
    auto q = quotient_category(r);
    CHECK(find_isomorphism(q.category, base).has_value());
    CHECK(count_factorizations(q, f) == 1);
  }
}

TEST_CASE("merging objects without their identities violates id preservation") {
  auto c = swap_groupoid();
  CatRelation r(c, {{0, 1}}, {{0}, {1}, {2}, {3}});
  auto rep = check_relation(r);
  CHECK(rep.dom_cod);
  CHECK_FALSE(rep.identities);
  CHECK_FALSE(rep.categorical());
  bool named = false;
  for (const auto& v : rep.violations) named |= v.detail.find("identities") != std::string::npos;
  CHECK(named);
  CHECK_THROWS_AS(quotient_category(r), ValidationError);
}

TEST_CASE("dom/cod violation is reported") {
  auto c = swap_groupoid();
  CatRelation r(c, {{0}, {1}}, {{0, 2}, {1}, {3}});
  auto rep = check_relation(r);
  CHECK_FALSE(rep.dom_cod);
  CHECK_FALSE(rep.categorical());
}

TEST_CASE("composition violation is reported") {
  // Z3 with r1 ~ r0 but r2 alone: r1∘r1 = r2 and r0∘r1 = r1 land apart.
  auto c = gen::cyclic_group(3);
  CatRelation r(c, {{0}}, {{0, 1}, {2}});
  auto rep = check_relation(r);
  CHECK(rep.dom_cod);
  CHECK_FALSE(rep.composition);
  CHECK_THROWS_AS(quotient_category(r), ValidationError);
}

TEST_CASE("without feasibility identities need not be preserved") {
  std::vector<std::string> names{"A", "B"};
  auto c = discrete_category(names);
  CatRelation r(c, {{0, 1}}, {{0}, {1}});
  auto rep = check_relation(r);
  CHECK(rep.dom_cod);
  CHECK(rep.composition);
  CHECK_FALSE(rep.feasible);
  CHECK_FALSE(rep.identities);
}

TEST_CASE("dom/cod, composition and feasibility force identities") {
  gen::Rng rng(5);
  int categorical = 0;
  for (int t = 0; t < 400; ++t) {
    auto inf = gen::random_inflation(rng);
    const auto& c = *inf.category;
    // Random object partition, then a random partition of each dom/cod block.
    std::uniform_int_distribution<std::size_t> coin(0, 2);
    std::vector<std::size_t> ob_label(c.object_count());
    for (auto& x : ob_label) x = coin(rng);
    std::map<std::size_t, std::vector<ObjId>> obm;
    for (ObjId a = 0; a < c.object_count(); ++a) obm[ob_label[a]].push_back(a);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<MorId>> morm;
    std::uniform_int_distribution<std::size_t> split(0, t % 3 == 0 ? 3 : 0);
    for (MorId m = 0; m < c.morphism_count(); ++m) {
      morm[{ob_label[c.dom(m)], ob_label[c.cod(m)], split(rng)}].push_back(m);
    }
    std::vector<std::vector<ObjId>> oc;
    std::vector<std::vector<MorId>> mc;
    for (auto& [k, v] : obm) oc.push_back(v);
    for (auto& [k, v] : morm) mc.push_back(v);
    CatRelation r(inf.category, oc, mc);
    auto rep = check_relation(r);
    REQUIRE(rep.dom_cod);
    if (rep.composition && rep.feasible) {
      ++categorical;
      CHECK(rep.identities);
      auto q = quotient_category(r, false);
      CHECK(q.category->object_count() == oc.size());
    }
  }
  CHECK(categorical >= 20);
}

TEST_CASE("swap groupoid collapses to the single category") {
  auto c = swap_groupoid();
  auto g = span_cochain(*c, {0, 1}, 0, {{1, c->morphism("u")}});
  CHECK(g.at(1, 0) == c->morphism("v"));
  CHECK(g.at(0, 0) == c->id(0));
  auto r = relation_from_cochain(c, {{0, 1}}, {g});
  auto q = quotient_category(r);
  CHECK(q.category->object_count() == 1);
  CHECK(q.category->morphism_count() == 1);
  CHECK(find_isomorphism(q.category, single_category()).has_value());
  CHECK(fully_faithful_on_classes(q));
}

TEST_CASE("singleton classes with identity cochains give the identity relation") {
  auto c = gen::inflate(gen::cyclic_group(3), {2}).category;
  std::vector<CochainGroup> groups;
  for (ObjId a = 0; a < c->object_count(); ++a) groups.push_back(span_cochain(*c, {a}, a, {}));
  CHECK(groups[0].table().size() == 1);
  auto r = relation_from_cochain(c, singletons(c->object_count()), groups);
  CHECK(r.mor_classes().size() == c->morphism_count());
}

TEST_CASE("cochain validation") {
  auto c = gen::inflate(gen::cyclic_group(2), {2}).category;
  MorId r0 = c->morphism("r0@0>1"), r1 = c->morphism("r1@0>1");
  CHECK_THROWS_AS(span_cochain(*c, {0, 1}, 0, {{1, c->morphism("r0@0>0")}}), Error);
  std::map<std::pair<ObjId, ObjId>, MorId> bad{{{0, 0}, c->id(0)},
                                               {{1, 1}, c->id(1)},
                                               {{0, 1}, r0},
                                               {{1, 0}, c->morphism("r1@1>0")}};
  CHECK_THROWS_AS(CochainGroup(*c, {0, 1}, bad), ValidationError);
  try {
    CochainGroup(*c, {0, 1}, bad);
  } catch (const ValidationError& e) {
    CHECK(e.violations().front().code == ErrorCode::CochainConditionViolated);
  }
  bad[{1, 0}] = c->morphism("r0@1>0");
  CHECK_NOTHROW(CochainGroup(*c, {0, 1}, bad));
  (void)r1;
  std::vector<std::string> names{"A", "B"};
  auto d = discrete_category(names);
  CHECK_FALSE(strong_isomorphism_condition(*d, {{0, 1}}));
  CHECK_THROWS_AS(relation_from_cochain(d, {{0, 1}}, {}), Error);
}

TEST_CASE("three-element class spans a coherent nine-entry table") {
  auto inf = gen::inflate(gen::cyclic_group(3), {3});
  const auto& c = *inf.category;
  auto g = span_cochain(c, {0, 1, 2}, 0, {{1, c.morphism("r1@0>1")}, {2, c.morphism("r2@0>2")}});
  CHECK(g.table().size() == 9);
  for (ObjId a : {0, 1, 2}) {
    for (ObjId b : {0, 1, 2}) {
      for (ObjId d : {0, 1, 2}) CHECK(c.compose(g.at(d, a), c.compose(g.at(b, d), g.at(a, b))) == c.id(a));
    }
  }
  // φ(1,2) = r2@0>2 ∘ (r1@0>1)⁻¹ = r2 ∘ r2 = r1.
  CHECK(c.morphism_name(g.at(1, 2)) == "r1@1>2");
}

TEST_CASE("generator choices give isomorphic quotients and the projection factors uniquely") {
  gen::Rng rng(2024);
  for (int t = 0; t < 30; ++t) {
    auto inf = gen::random_inflation(rng);
    const auto& c = *inf.category;
    auto r1 = relation_from_cochain(inf.category, inf.classes, cochains(c, inf.classes, false));
    auto r2 = relation_from_cochain(inf.category, inf.classes, cochains(c, inf.classes, true));
    auto q1 = quotient_category(r1);
    auto q2 = quotient_category(r2);
    CHECK(find_isomorphism(q1.category, q2.category).has_value());
    CHECK(fully_faithful_on_classes(q1));
    CHECK(fully_faithful_on_classes(q2));
    CHECK(count_factorizations(q1, q1.projection) == 1);
    auto rho = factor_through_quotient(q1, q1.projection);
    CHECK(rho == Functor::identity(q1.category));
  }
}

TEST_CASE("factorization through the quotient") {
  auto base = gen::cyclic_group(2);
  auto inf = gen::inflate(base, {2});
  auto f = collapse(inf, base);
  // Identity cochains reproduce ~_F.
  auto r = relation_from_cochain(inf.category, inf.classes, cochains(*inf.category, inf.classes, false));
  auto q = quotient_category(r);
  auto rho = factor_through_quotient(q, f);
  CHECK(compose(rho, q.projection) == f);
  CHECK(count_factorizations(q, f) == 1);
  // The twisted cochain does not imply ~_F.
  auto tw = relation_from_cochain(inf.category, inf.classes, cochains(*inf.category, inf.classes, true));
  auto qt = quotient_category(tw);
  CHECK_THROWS_AS(factor_through_quotient(qt, f), Error);
  CHECK(count_factorizations(qt, f) == 0);
}

TEST_CASE("sketches") {
  gen::Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    auto inf = gen::random_inflation(rng);
    const auto& c = *inf.category;
    auto r = relation_from_cochain(inf.category, inf.classes, cochains(c, inf.classes, t % 2 == 1));
    auto q = quotient_category(r);
    std::vector<ObjId> first, last;
    for (const auto& cls : r.ob_classes()) {
      first.push_back(cls.front());
      last.push_back(cls.back());
    }
    auto s1 = sketch(q, r, first);
    auto s2 = sketch(q, r, last);
    CHECK(s1.round_trips);
    CHECK(s2.round_trips);
    CHECK(find_isomorphism(s1.category, s2.category).has_value());
  }
}

TEST_CASE("identity partition sketch is the base and iso classes give a skeleton") {
  auto c = gen::inflate(gen::cyclic_group(2), {3}).category;
  auto id = CatRelation::identity(c);
  auto q = quotient_category(id);
  std::vector<ObjId> all{0, 1, 2};
  auto s = sketch(q, id, all);
  CHECK(s.round_trips);
  CHECK(s.category->morphism_count() == c->morphism_count());
  CHECK_FALSE(is_skeletal(*c));

  auto classes = iso_classes(*c);
  CHECK(classes.size() == 1);
  auto r = relation_from_cochain(c, classes, cochains(*c, classes, false));
  auto qq = quotient_category(r);
  auto sk = sketch(qq, r, {classes[0][0]});
  CHECK(sk.round_trips);
  CHECK(is_skeletal(*sk.category));
  CHECK(sk.category->morphism_count() == 2);

  std::vector<std::string> names{"A", "B"};
  auto d = discrete_category(names);
  CHECK_THROWS_AS(sketch(quotient_category(CatRelation::identity(d)), CatRelation(d, {{0, 1}}, {{0}, {1}}), {0}),
                  Error);
}
