#include <set>

#include "doctest.h"
#include "family_oracle.hpp"
#include "sheafkit/limits/limits.hpp"
#include "sheafkit/suites/generators.hpp"

using namespace sheafkit;

namespace {

// Powerset lattice of {a,b} as a poset category: objects 0={}, 1={a}, 2={b}, 3={a,b}.
CategoryRef square_lattice() {
  const std::string names[] = {"0", "a", "b", "ab"};
  std::vector<std::vector<bool>> leq = {
      {true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
  return poset_category(names, leq);
}

CategoryRef empty_category() { return CategoryBuilder().build_ref(); }

Functor empty_diagram(const CategoryRef& target) { return Functor(empty_category(), target, {}, {}); }

// Discrete two-object shape mapped to two objects of a poset.
Functor pair_diagram(const CategoryRef& target, ObjId x, ObjId y) {
  const std::string names[] = {"p", "q"};
  auto shape = discrete_category(names);
  return Functor(shape, target, {x, y}, {target->id(x), target->id(y)});
}

// Brute-force cone count: every leg tuple checked for naturality.
std::size_t cone_count_oracle(const Functor& f) {
  const auto& j = *f.src();
  const auto& c = *f.dst();
  std::size_t count = 0;
  for (ObjId k = 0; k < c.object_count(); ++k) {
    std::size_t total = 1;
    for (ObjId i = 0; i < j.object_count(); ++i) total *= c.hom(k, f.ob(i)).size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<MorId> legs(j.object_count());
      std::size_t r = code;
      for (ObjId i = 0; i < j.object_count(); ++i) {
        auto h = c.hom(k, f.ob(i));
        legs[i] = h[r % h.size()];
        r /= h.size();
      }
      bool ok = true;
      for (MorId u = 0; u < j.morphism_count(); ++u) {
        ok = ok && c.compose(f.mor(u), legs[j.dom(u)]) == legs[j.cod(u)];
      }
      count += ok;
    }
  }
  return count;
}

// A set diagram realized inside the FinSet world on its own sets plus
// fresh candidate vertices of sizes 0..extra.
struct Realized {
  FinSetCategory world;
  Functor functor;
};

Realized realize(const SetDiagram& d, std::size_t extra) {
  std::vector<FinSet> sets = d.sets;
  for (std::size_t k = 0; k <= extra; ++k) sets.push_back(gen::numbered_set(k, "v" + std::to_string(k) + "_"));
  auto world = make_finset_category(sets);
  const auto& j = *d.shape;
  std::vector<ObjId> ob;
  for (ObjId i = 0; i < j.object_count(); ++i) ob.push_back(i);
  std::vector<MorId> mor;
  for (MorId u = 0; u < j.morphism_count(); ++u) mor.push_back(world.morphism_of(j.dom(u), j.cod(u), d.maps[u]));
  Functor f(d.shape, world.category, ob, mor);
  return {world, f};
}

}  // namespace

TEST_CASE("cone category over the empty shape") {
  auto c = square_lattice();
  auto cc = cone_category(empty_diagram(c));
  CHECK(cc.cones.size() == c->object_count());
  CHECK(cc.category->morphism_count() == c->morphism_count());
  auto lim = limit_abstract(empty_diagram(c));
  REQUIRE(lim.limit);
  CHECK(c->object_name(lim.limit->vertex) == "ab");
  auto colim = colimit_abstract(empty_diagram(c));
  REQUIRE(colim.limit);
  CHECK(c->object_name(colim.limit->vertex) == "0");
}

TEST_CASE("one-object shape: cones are morphisms into the image") {
  auto c = square_lattice();
  auto shape = single_category("j");
  Functor f(shape, c, {c->object("a")}, {c->id(c->object("a"))});
  auto cc = cone_category(f);
  CHECK(cc.cones.size() == 2);  // from 0 and from a
  auto lim = limit_abstract(f);
  REQUIRE(lim.limit);
  CHECK(lim.limit->vertex == c->object("a"));
  CHECK(lim.limit->legs[0] == c->id(c->object("a")));
}

TEST_CASE("limits in a lattice are meets") {
  auto c = square_lattice();
  auto lim = limit_abstract(pair_diagram(c, c->object("a"), c->object("b")));
  REQUIRE(lim.limit);
  CHECK(c->object_name(lim.limit->vertex) == "0");
  auto colim = colimit_abstract(pair_diagram(c, c->object("a"), c->object("b")));
  REQUIRE(colim.limit);
  CHECK(c->object_name(colim.limit->vertex) == "ab");
  auto top = limit_abstract(pair_diagram(c, c->object("ab"), c->object("a")));
  CHECK(c->object_name(top.limit->vertex) == "a");
}

TEST_CASE("cone counts match a brute-force count") {
  // Four objects: the lattice, and a non-poset target from the FinSet world.
  auto c = square_lattice();
  CHECK(cone_category(pair_diagram(c, 1, 2)).cones.size() == cone_count_oracle(pair_diagram(c, 1, 2)));
  auto world = make_finset_category({FinSet{"a", "b"}, FinSet{"x"}, FinSet{}, FinSet{"p", "q"}});
  auto shape = chain_category(2);
  MorId u = world.morphism_of(0, 3, FinSetMap(world.sets[0], world.sets[3], {1, 0}));
  Functor f(shape, world.category, {0, 3}, {world.category->id(0), u, world.category->id(3)});
  auto cc = cone_category(f);
  CHECK(cc.cones.size() == cone_count_oracle(f));
  // Cones from S_k are maps into {a,b}: 4 + 2 + 1 + 4 = 11.
  CHECK(cc.cones.size() == 11);
}

TEST_CASE("no limit is a normal result") {
  const std::string names[] = {"A", "B"};
  auto d = discrete_category(names);
  auto lim = limit_abstract(pair_diagram(d, 0, 1));
  CHECK_FALSE(lim.limit.has_value());
  CHECK(lim.cone_count == 0);
  CHECK_THROWS_AS(verify_cone_transport(pair_diagram(d, 0, 1)), Error);
}

TEST_CASE("several terminal cones come with isomorphisms") {
  auto world = make_finset_category({FinSet{"a"}, FinSet{"b"}});
  auto lim = limit_abstract(empty_diagram(world.category));
  REQUIRE(lim.limit);
  CHECK(lim.others.size() == 1);
  CHECK(morphism_predicates(*world.category, lim.isomorphisms[0]).is_iso);
}

TEST_CASE("concrete limits reduce to products and equalizers") {
  const std::string names[] = {"p", "q"};
  SetDiagram d{discrete_category(names), {FinSet{"a", "b"}, FinSet{"x"}}, {}};
  for (ObjId o = 0; o < 2; ++o) d.maps.push_back(FinSetMap::identity(d.sets[o]));
  auto lim = limit_finset(d);
  auto prod = product(d.sets);
  CHECK(cone_isomorphism(lim, prod).has_value());

  CategoryBuilder b;
  ObjId a = b.add_object("A"), c = b.add_object("B");
  b.add_identity(a, "id_A");
  b.add_identity(c, "id_B");
  b.add_morphism("f", a, c);
  b.add_morphism("g", a, c);
  auto pp = b.build_ref();
  FinSet s{"1", "2"}, t{"a", "b"};
  FinSetMap f(s, t, {0, 0}), g(s, t, {0, 1});
  SetDiagram dp{pp, {s, t}, {FinSetMap::identity(s), FinSetMap::identity(t), f, g}};
  auto el = limit_finset(dp);
  auto eq = equalizer(f, g);
  CHECK(el.vertex.size() == 1);
  CHECK(cone_isomorphism(el, SetCone{eq.carrier, {eq.inclusion, compose(f, eq.inclusion)}}).has_value());
}

TEST_CASE("concrete limit equals compatible families and passes the second picture") {
  gen::Rng rng(2024);
  int tested = 0;
  while (tested < 60) {
    auto shape = gen::random_shape(rng, 4, 6);
    auto d = gen::random_set_diagram(rng, shape, 3);
    if (!d) continue;
    ++tested;
    auto lim = limit_finset(*d);
    auto fams = oracle::compatible_families(*d);
    REQUIRE(lim.vertex.size() == fams.size());
    for (std::size_t x = 0; x < lim.vertex.size(); ++x) {
      std::vector<std::size_t> row;
      for (const auto& leg : lim.legs) row.push_back(leg(x));
      CHECK(row == fams[x]);
    }
    auto sp = verify_second_picture(*d, lim);
    CHECK(sp.holds());
    CHECK(sp.terminal);
  }
}

TEST_CASE("second picture rejects non-limits") {
  // Abstract: empty shape in the parallel pair; B receives two arrows from A.
  CategoryBuilder b;
  ObjId a = b.add_object("A"), c = b.add_object("B");
  b.add_identity(a, "id_A");
  b.add_identity(c, "id_B");
  b.add_morphism("f", a, c);
  auto one = b.build_ref();
  auto fine = verify_second_picture(empty_diagram(one), Cone{c, {}});
  CHECK(fine.holds());
  CHECK(fine.terminal);
  b.add_morphism("g", a, c);
  auto two = b.build_ref();
  auto broken = verify_second_picture(empty_diagram(two), Cone{c, {}});
  CHECK(broken.every_cone_factors);
  CHECK_FALSE(broken.legs_jointly_monic);
  CHECK_FALSE(broken.holds());
  CHECK_FALSE(broken.terminal);

  // Concrete: a one-point vertex over a product shape.
  const std::string names[] = {"p", "q"};
  SetDiagram d{discrete_category(names), {FinSet{"a", "b"}, FinSet{"x"}}, {}};
  for (ObjId o = 0; o < 2; ++o) d.maps.push_back(FinSetMap::identity(d.sets[o]));
  FinSet pt{"*"};
  SetCone bad{pt, {FinSetMap(pt, d.sets[0], {0}), FinSetMap(pt, d.sets[1], {0})}};
  auto r = verify_second_picture(d, bad);
  CHECK_FALSE(r.every_cone_factors);
  CHECK_FALSE(r.holds());
  CHECK_FALSE(r.terminal);
}

TEST_CASE("abstract limits agree with the concrete construction") {
  gen::Rng rng(99);
  int tested = 0;
  while (tested < 12) {
    auto shape = gen::random_shape(rng, 3, 3);
    auto d = gen::random_set_diagram(rng, shape, 2);
    if (!d) continue;
    auto lim = limit_finset(*d);
    if (lim.vertex.size() > 3) continue;
    ++tested;
    auto real = realize(*d, 3);
    auto abs = limit_abstract(real.functor);
    REQUIRE(abs.limit);
    const auto& w = real.world;
    SetCone as_sets{w.sets[abs.limit->vertex], {}};
    for (MorId leg : abs.limit->legs) as_sets.legs.push_back(w.maps[leg]);
    CHECK(cone_isomorphism(as_sets, lim).has_value());
    auto sp = verify_second_picture(real.functor, *abs.limit);
    CHECK(sp.holds());
    CHECK(sp.terminal);
    // Every mediating morphism exists and is unique.
    auto cc = cone_category(real.functor);
    for (const auto& k : cc.cones) CHECK_NOTHROW(mediating_morphism(real.functor, *abs.limit, k));
  }
}

TEST_CASE("hom functors preserve limits") {
  auto c = square_lattice();
  auto f = pair_diagram(c, c->object("a"), c->object("b"));
  auto lim = limit_abstract(f);
  REQUIRE(lim.limit);
  CHECK(verify_hom_preservation_all(f, *lim.limit));
  // The top element with its unique legs is not a cone; the bottom cone of a
  // different diagram is not limiting here.
  auto g = pair_diagram(c, c->object("ab"), c->object("ab"));
  Cone low{c->object("a"), {c->hom(c->object("a"), c->object("ab"))[0], c->hom(c->object("a"), c->object("ab"))[0]}};
  bool all = verify_hom_preservation_all(g, low);
  CHECK_FALSE(all);
  auto s = single_category();
  auto ls = limit_abstract(Functor::identity(s));
  CHECK(verify_hom_preservation_all(Functor::identity(s), *ls.limit));
}

TEST_CASE("cone transport") {
  auto s = single_category();
  auto t = verify_cone_transport(Functor::identity(s));
  CHECK(t.isomorphic);
  CHECK(t.cones == 1);
  CHECK(t.slice_objects == 1);

  auto chain = chain_category(3);
  const std::string names[] = {"p", "q"};
  auto shape = discrete_category(names);
  Functor f(shape, chain, {1, 2}, {chain->id(1), chain->id(2)});
  auto tr = verify_cone_transport(f);
  CHECK(tr.isomorphic);
  CHECK(tr.cones == tr.slice_objects);
  CHECK(tr.cones == 2);  // vertices 0 and 1

  gen::Rng rng(5);
  int tested = 0;
  while (tested < 10) {
    auto shape2 = gen::random_shape(rng, 3, 3);
    auto target = gen::random_poset(rng, 4, 6);
    // Random functor by sending objects along a random order-preserving map.
    std::vector<ObjId> ob(shape2->object_count());
    bool ok = false;
    for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
      for (auto& o : ob) o = rng() % target->object_count();
      ok = true;
      for (MorId u = 0; u < shape2->morphism_count() && ok; ++u) {
        ok = !target->hom(ob[shape2->dom(u)], ob[shape2->cod(u)]).empty();
      }
    }
    if (!ok) continue;
    std::vector<MorId> mor;
    for (MorId u = 0; u < shape2->morphism_count(); ++u) mor.push_back(target->hom(ob[shape2->dom(u)], ob[shape2->cod(u)])[0]);
    Functor g(shape2, target, ob, mor);
    if (!limit_abstract(g).limit) continue;
    ++tested;
    CHECK(verify_cone_transport(g).isomorphic);
  }
}

TEST_CASE("colimits are limits in the opposite tables") {
  gen::Rng rng(17);
  for (int i = 0; i < 10; ++i) {
    auto shape = gen::random_shape(rng, 3, 3, gen::ShapeKind::Poset);
    auto target = gen::random_poset(rng, 4, 5);
    std::vector<ObjId> ob(shape->object_count());
    bool ok = false;
    for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
      for (auto& o : ob) o = rng() % target->object_count();
      ok = true;
      for (MorId u = 0; u < shape->morphism_count() && ok; ++u) {
        ok = !target->hom(ob[shape->dom(u)], ob[shape->cod(u)]).empty();
      }
    }
    if (!ok) continue;
    std::vector<MorId> mor;
    for (MorId u = 0; u < shape->morphism_count(); ++u) mor.push_back(target->hom(ob[shape->dom(u)], ob[shape->cod(u)])[0]);
    Functor f(shape, target, ob, mor);
    auto fop = opposite_functor(f, opposite(*shape), opposite(*target));
    auto co = colimit_abstract(f);
    auto viaop = limit_abstract(fop);
    CHECK(co.limit.has_value() == viaop.limit.has_value());
    if (co.limit) CHECK(co.limit->vertex == viaop.limit->vertex);
    CHECK(co.cone_count == viaop.cone_count);
  }
}

TEST_CASE("concrete colimits are coproducts and coequalizers") {
  const std::string names[] = {"p", "q"};
  SetDiagram d{discrete_category(names), {FinSet{"a"}, FinSet{"a"}}, {}};
  for (ObjId o = 0; o < 2; ++o) d.maps.push_back(FinSetMap::identity(d.sets[o]));
  CHECK(colimit_finset(d).vertex.size() == 2);
  gen::Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    auto shape = gen::random_shape(rng, 3, 4);
    auto dd = gen::random_set_diagram(rng, shape, 3);
    if (!dd) continue;
    auto co = colimit_finset(*dd);
    // Image of every element determines its class; a direct flood fill agrees.
    std::vector<std::pair<std::size_t, std::size_t>> elems;
    for (std::size_t o = 0; o < dd->sets.size(); ++o) {
      for (std::size_t x = 0; x < dd->sets[o].size(); ++x) elems.emplace_back(o, x);
    }
    std::vector<std::size_t> cls(elems.size());
    for (std::size_t i2 = 0; i2 < cls.size(); ++i2) cls[i2] = i2;
    auto pos = [&](std::size_t o, std::size_t x) {
      return std::find(elems.begin(), elems.end(), std::pair(o, x)) - elems.begin();
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (MorId u = 0; u < shape->morphism_count(); ++u) {
        for (std::size_t x = 0; x < dd->sets[shape->dom(u)].size(); ++x) {
          auto p = pos(shape->dom(u), x), q = pos(shape->cod(u), dd->maps[u](x));
          std::size_t m = std::min(cls[p], cls[q]);
          if (cls[p] != m || cls[q] != m) {
            std::size_t a = cls[p], b = cls[q];
            for (auto& c : cls) if (c == a || c == b) c = m;
            changed = true;
          }
        }
      }
    }
    std::set<std::size_t> distinct(cls.begin(), cls.end());
    CHECK(co.vertex.size() == distinct.size());
    for (std::size_t p = 0; p < elems.size(); ++p) {
      for (std::size_t q = 0; q < elems.size(); ++q) {
        bool same = co.legs[elems[p].first](elems[p].second) == co.legs[elems[q].first](elems[q].second);
        CHECK(same == (cls[p] == cls[q]));
      }
    }
  }
}
