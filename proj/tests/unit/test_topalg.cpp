#include <algorithm>
#include <map>

#include "doctest.h"
#include "frame_oracle.hpp"
#include "sheafkit/error.hpp"
#include "sheafkit/topalg/algebra.hpp"

using namespace sheafkit;

namespace {

TopologyAlgebra chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i) leq.emplace_back(names[i - 1], names[i]);
  }
  return TopologyAlgebra::from_order(names, leq);
}

ClassicalSpace sierpinski() { return ClassicalSpace(letter_points(2), {0b00, 0b01, 0b11}); }
ClassicalSpace discrete(std::size_t n) {
  std::vector<Mask> opens;
  for (Mask u = 0; u < bit(n); ++u) opens.push_back(u);
  return ClassicalSpace(letter_points(n), opens);
}
ClassicalSpace indiscrete(std::size_t n) { return ClassicalSpace(letter_points(n), {0, bit(n) - 1}); }

bool has_code(const std::vector<Violation>& v, ErrorCode c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == c; });
}

// Preimage hom OP(N) → OP(M) of a point map M → N, if continuous.
std::optional<std::vector<ElemId>> preimage_table(const ClassicalSpace& m, const ClassicalSpace& n,
                                                  const std::vector<std::size_t>& f) {
  std::vector<ElemId> t;
  for (Mask v : n.opens()) {
    Mask pre = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (has(v, f[a])) pre |= bit(a);
    }
    auto it = std::find(m.opens().begin(), m.opens().end(), pre);
    if (it == m.opens().end()) return std::nullopt;
    t.push_back(static_cast<ElemId>(it - m.opens().begin()));
  }
  return t;
}

}  // namespace

TEST_CASE("two-chain is a topology algebra") {
  auto x = chain(2);
  CHECK(x.size() == 2);
  CHECK(x.top() == 1);
  CHECK(x.bottom() == 0);
  for (ElemId a = 0; a < 2; ++a) {
    CHECK(x.meet(x.top(), a) == a);
    CHECK(x.join_of(bit(0) | bit(a)) == a);
  }
  CHECK(axiom_violations(x).empty());
  CHECK(x.category()->morphism_count() == 3);
  CHECK(x.category()->find_morphism("c0<=c1").has_value());
}

TEST_CASE("order input is closed reflexively and transitively") {
  auto x = chain(4);
  CHECK(x.leq(0, 3));
  CHECK_FALSE(x.leq(3, 0));
  CHECK(x.coverings(3).size() == 8);
}

TEST_CASE("non-distributive diamond is rejected") {
  std::vector<std::string> names{"0", "a", "b", "c", "1"};
  std::vector<std::pair<std::string, std::string>> leq{{"0", "a"}, {"0", "b"}, {"0", "c"},
                                                       {"a", "1"}, {"b", "1"}, {"c", "1"}};
  std::map<std::string, std::size_t> at{{"0", 0}, {"a", 1}, {"b", 2}, {"c", 3}, {"1", 4}};
  std::vector<std::vector<bool>> m(5, std::vector<bool>(5, false));
  for (auto& [p, q] : leq) m[at[p]][at[q]] = true;
  auto v = TopologyAlgebra::violations(names, m);
  REQUIRE_FALSE(v.empty());
  CHECK(has_code(v, ErrorCode::AxiomViolation));
  bool distributive = false;
  for (const auto& e : v) distributive |= e.detail.find("distributivity") != std::string::npos;
  CHECK(distributive);
  CHECK_THROWS_AS(TopologyAlgebra::from_order(names, leq), ValidationError);
}

TEST_CASE("pentagon N5 is rejected for distributivity") {
  // 0 < a < b < 1, 0 < c < 1
  std::vector<std::string> names{"0", "a", "b", "c", "1"};
  std::vector<std::pair<std::string, std::string>> leq{{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}};
  try {
    TopologyAlgebra::from_order(names, leq);
    FAIL("accepted N5");
  } catch (const ValidationError& e) {
    CHECK(has_code(e.violations(), ErrorCode::AxiomViolation));
  }
}

TEST_CASE("missing meets, joins and cycles are reported") {
  std::vector<std::string> two{"a", "b"};
  auto v = TopologyAlgebra::violations(two, {{true, false}, {false, true}});
  CHECK(has_code(v, ErrorCode::MissingJoin));
  CHECK(has_code(v, ErrorCode::MissingMeet));
  auto cyc = TopologyAlgebra::violations(two, {{true, true}, {true, true}});
  CHECK(has_code(cyc, ErrorCode::NotAPoset));
  // Two incomparable maximal elements over a bottom: no join of the pair.
  std::vector<std::string> vee{"0", "a", "b"};
  auto w = TopologyAlgebra::violations(vee, {{true, true, true}, {false, true, false}, {false, false, true}});
  CHECK(has_code(w, ErrorCode::MissingJoin));
}

TEST_CASE("derived absorption facts") {
  for (const auto& m : topology_corpus(3)) {
    auto x = from_topology(m);
    for (ElemId a = 0; a < x.size(); ++a) {
      CHECK(x.meet(a, a) == a);
      CHECK(x.join(a, a) == a);
      CHECK(x.join(x.top(), a) == x.top());
      CHECK(x.meet(x.bottom(), a) == x.bottom());
    }
  }
}

TEST_CASE("topologies give algebras") {
  auto s = from_topology(sierpinski());
  CHECK(s.names() == std::vector<std::string>{"{}", "{a}", "{a,b}"});
  CHECK(axiom_violations(s).empty());
  auto d = from_topology(discrete(2));
  CHECK(d.size() == 4);
  CHECK(d.meet(d.element("{a}"), d.element("{b}")) == d.bottom());
  CHECK(from_topology(indiscrete(2)).size() == 2);
  CHECK_THROWS_AS(ClassicalSpace(letter_points(2), {0b00, 0b01, 0b10, 0b11 & 0b01}), ValidationError);
  try {
    ClassicalSpace(letter_points(2), {0b00, 0b01, 0b10});
  } catch (const ValidationError& e) {
    CHECK(e.violations().front().code == ErrorCode::NotATopology);
  }
}

TEST_CASE("topology corpus counts match the preorder oracle") {
  std::vector<std::size_t> expected{1, 1, 4, 29, 355};
  for (std::size_t n = 0; n <= 4; ++n) {
    auto corpus = topology_corpus(n);
    CHECK(corpus.size() == expected[n]);
    CHECK(corpus.size() == oracle::count_preorders(n));
  }
  CHECK_THROWS_AS(topology_corpus(5), Error);
}

TEST_CASE("every three-point topology validates") {
  for (const auto& m : topology_corpus(3)) {
    auto x = from_topology(m);
    CHECK(axiom_violations(x).empty());
    CHECK(x.size() == m.opens().size());
  }
}

TEST_CASE("subalgebras") {
  auto m = sierpinski();
  auto x = from_topology(m);
  CHECK(subalgebra(x, x.top()).algebra == x);
  CHECK(subalgebra(x, x.bottom()).algebra.size() == 1);
  auto a = subalgebra(x, x.element("{a}"));
  CHECK(a.algebra.size() == 2);
  CHECK_THROWS_AS(subalgebra(x, 7), Error);

  auto d = from_topology(discrete(3));
  auto ab = subalgebra(d, d.element("{a,b}"));
  auto bc = subalgebra(d, d.element("{b,c}"));
  auto i = intersect_subalgebras(d, ab, bc);
  CHECK(i.top_in_parent == d.element("{b}"));
  CHECK(i.carrier == (ab.carrier & bc.carrier));
  auto g = glued_union(d, {subalgebra(d, d.element("{a}")), bc});
  CHECK(g.top_in_parent == d.top());
  CHECK(integrally_cofinal(d, subalgebra(d, d.element("{a}")).carrier | bc.carrier, g.carrier));
}

TEST_CASE("glued union is the least cofinal candidate") {
  for (const auto& m : topology_corpus(3)) {
    auto x = from_topology(m);
    for (ElemId y = 0; y < x.size(); ++y) {
      for (ElemId z = 0; z < x.size(); ++z) {
        auto sy = subalgebra(x, y), sz = subalgebra(x, z);
        auto g = glued_union(x, {sy, sz});
        Mask part = sy.carrier | sz.carrier;
        // Candidates w^≤ containing both members with the union cofinal.
        std::vector<ElemId> cands;
        for (ElemId w = 0; w < x.size(); ++w) {
          if ((part & ~x.down_set(w)) == 0 && integrally_cofinal(x, part, x.down_set(w))) cands.push_back(w);
        }
        REQUIRE(std::find(cands.begin(), cands.end(), g.top_in_parent) != cands.end());
        for (ElemId w : cands) CHECK(x.leq(g.top_in_parent, w));
      }
    }
  }
}

TEST_CASE("particles of small algebras") {
  auto one = TopologyAlgebra::from_order({"0"}, std::vector<std::pair<std::string, std::string>>{});
  CHECK(particles(one).empty());
  auto c2 = chain(2);
  auto p = particles(c2);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == bit(1));
  auto d = from_topology(discrete(2));
  auto dp = particles(d);
  CHECK(dp.size() == 2);
  auto m = discrete(2);
  CHECK(std::find(dp.begin(), dp.end(), point_particle(m, 0)) != dp.end());
  CHECK(std::find(dp.begin(), dp.end(), point_particle(m, 1)) != dp.end());
}

TEST_CASE("particle enumeration matches the literal definition") {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& m : topology_corpus(n)) {
      auto x = from_topology(m);
      std::vector<std::set<ElemId>> got;
      for (Mask q : particles(x)) got.push_back(oracle::as_set(q));
      auto want = oracle::literal_particles(x);
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    auto x = chain(n);
    CHECK(particles(x).size() == (n > 1 ? n - 1 : 0));
  }
}

TEST_CASE("point particles and the continuous map p") {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& m : topology_corpus(n)) {
      auto x = from_topology(m);
      auto t = set_representation(x);
      for (std::size_t a = 0; a < n; ++a) {
        Mask pa = point_particle(m, a);
        CHECK(is_particle(x, pa));
        CHECK(oracle::literal_particle(x, oracle::as_set(pa)) == (x.size() <= 16));
      }
      // p⁻¹(T_U) = U for every open U.
      for (ElemId u = 0; u < x.size(); ++u) {
        Mask pre = 0;
        for (std::size_t a = 0; a < n; ++a) {
          if (has(t.t[u], t.index_of(point_particle(m, a)))) pre |= bit(a);
        }
        CHECK(pre == m.opens()[u]);
      }
    }
  }
}

TEST_CASE("set representation identities on the three-point corpus") {
  for (const auto& m : topology_corpus(3)) {
    auto x = from_topology(m);
    auto t = set_representation(x);
    CHECK(t.t[x.bottom()] == 0);
    CHECK(t.t[x.top()] == bit(t.particles.size()) - 1);
    auto r = verify_set_representation(x, t);
    CHECK(r.ok());
    CHECK(r.violations.empty());
  }
}

TEST_CASE("doctored representation is caught") {
  auto x = from_topology(discrete(2));
  auto t = set_representation(x);
  t.t[x.element("{a}")] = 0;
  auto r = verify_set_representation(x, t);
  CHECK_FALSE(r.ok());
}

TEST_CASE("algebra predicates") {
  auto d = algebra_predicates(from_topology(discrete(3)));
  CHECK(d.topological);
  CHECK(d.separatable);
  auto c = algebra_predicates(chain(2));
  CHECK(c.topological);
  CHECK(c.separatable);
  auto i = algebra_predicates(from_topology(indiscrete(2)));
  CHECK(i.topological);
  CHECK(i.separatable);
  auto s = algebra_predicates(from_topology(sierpinski()));
  CHECK(s.topological);
  CHECK_FALSE(s.separatable);
  // Finite frames are spatial, so every chain is topological.
  for (std::size_t n = 1; n <= 6; ++n) CHECK(algebra_predicates(chain(n)).topological);
  CHECK_FALSE(algebra_predicates(chain(4)).separatable);
}

TEST_CASE("homomorphisms and point maps") {
  auto x = make_algebra(from_topology(sierpinski()));
  auto id = AlgebraHom::identity(x);
  auto tx = set_representation(*x);
  auto pm = patl_of_hom(id, tx, tx);
  CHECK(pm.continuous);
  for (std::size_t i = 0; i < pm.image.size(); ++i) CHECK(pm.image[i] == i);
  CHECK_THROWS_AS(AlgebraHom(x, x, {0, 2, 1}), ValidationError);
  CHECK_THROWS_AS(AlgebraHom(x, x, {0, 1}), ValidationError);

  // Collapse onto the two-chain: 0 ↦ 0, everything else ↦ 1.
  auto c3 = make_algebra(chain(3));
  auto c2 = make_algebra(chain(2));
  AlgebraHom f(c3, c2, {0, 1, 1});
  auto t3 = set_representation(*c3), t2 = set_representation(*c2);
  auto q = patl_of_hom(f, t3, t2);
  REQUIRE(q.image.size() == 1);
  CHECK(t3.particles[q.image[0]] == (bit(1) | bit(2)));
  CHECK(q.continuous);
  auto comps = t_hom(f, t3, t2);
  CHECK(comps.size() == 3);
  CHECK(comps[0].empty());
}

TEST_CASE("continuous maps induce restrictions of points") {
  std::size_t checked = 0;
  for (std::size_t n1 = 0; n1 <= 3; ++n1) {
    for (std::size_t n2 = 0; n2 <= 2; ++n2) {
      for (const auto& m : topology_corpus(n1)) {
        for (const auto& n : topology_corpus(n2)) {
          auto am = make_algebra(from_topology(m)), an = make_algebra(from_topology(n));
          auto tm = set_representation(*am), tn = set_representation(*an);
          std::size_t maps = 1;
          for (std::size_t i = 0; i < n1; ++i) maps *= n2;
          for (std::size_t code = 0; code < maps; ++code) {
            std::vector<std::size_t> f(n1);
            std::size_t c = code;
            for (auto& v : f) {
              v = c % n2;
              c /= n2;
            }
            auto table = preimage_table(m, n, f);
            if (!table) continue;
            AlgebraHom h(an, am, *table);
            auto pm = patl_of_hom(h, tn, tm);
            CHECK(pm.continuous);
            for (std::size_t a = 0; a < n1; ++a) {
              CHECK(pm.image[tm.index_of(point_particle(m, a))] == tn.index_of(point_particle(n, f[a])));
            }
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 100);
}
