#include "sheafkit/suites/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sheafkit/error.hpp"
#include "sheafkit/limits/limits.hpp"
#include "sheafkit/quotient/quotient.hpp"
#include "sheafkit/sheaf/sheafify.hpp"
#include "sheafkit/space/space.hpp"
#include "sheafkit/suites/generators.hpp"

namespace sheafkit::suites {

namespace {

constexpr std::size_t kMaxWitnesses = 10;

struct Recorder {
  SuiteReport& r;
  std::map<std::string, std::size_t> index;

  void check(bool ok, const std::string& subject, const std::string& detail = {}) {
    ++r.cases;
    if (ok) {
      ++r.passed;
    } else if (r.failures.size() < kMaxWitnesses) {
      r.failures.push_back(detail.empty() ? subject : subject + ": " + detail);
    }
  }
  void tally(const std::string& name, std::size_t by = 1) {
    auto [it, fresh] = index.emplace(name, r.counts.size());
    if (fresh) r.counts.emplace_back(name, 0);
    r.counts[it->second].second += by;
  }
  // Runs `f`, turning a thrown library error into a failed case.
  void guarded(const std::string& subject, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(false, subject, e.what());
    }
  }
};

std::vector<ClassicalSpace> corpus_upto(std::size_t n) {
  std::vector<ClassicalSpace> out;
  for (std::size_t k = 0; k <= std::min<std::size_t>(n, 4); ++k) {
    for (auto& m : topology_corpus(k)) out.push_back(std::move(m));
  }
  return out;
}

std::string space_name(const ClassicalSpace& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.opens().size(); ++i) {
    if (i) s += ",";
    s += m.open_name(m.opens()[i]);
  }
  return "space " + std::to_string(m.points().size()) + " " + s + "}";
}

// Nonempty corpus spaces with at most `max_elements` opens, as algebras.
std::vector<AlgebraRef> small_algebras(std::size_t max_points, std::size_t max_elements) {
  std::vector<AlgebraRef> out;
  for (const auto& m : corpus_upto(max_points)) {
    if (!m.points().empty() && m.opens().size() <= max_elements) out.push_back(make_algebra(from_topology(m)));
  }
  return out;
}

Presheaf random_presheaf(gen::Rng& rng, const std::vector<AlgebraRef>& algebras, Variance v, std::size_t max_set) {
  while (true) {
    const auto& x = algebras[rng() % algebras.size()];
    if (auto f = gen::random_presheaf(rng, x, v, max_set)) return *f;
  }
}

// Nested-loop enumeration of compatible families.
std::vector<std::vector<std::size_t>> families(const SetDiagram& d) {
  const auto& j = *d.shape;
  std::vector<std::vector<std::size_t>> out;
  std::size_t total = 1;
  for (const auto& s : d.sets) total *= s.size();
  std::vector<std::size_t> x(d.sets.size());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t r = code;
    for (std::size_t k = x.size(); k-- > 0;) {
      x[k] = r % d.sets[k].size();
      r /= d.sets[k].size();
    }
    bool ok = true;
    for (MorId u = 0; u < j.morphism_count() && ok; ++u) ok = d.maps[u](x[j.dom(u)]) == x[j.cod(u)];
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<SetDiagram> random_diagrams(const SuiteOptions& o, std::size_t count) {
  gen::Rng rng(o.seed);
  std::vector<SetDiagram> out;
  while (out.size() < count) {
    auto shape = gen::random_shape(rng, 4, 6);
    if (auto d = gen::random_set_diagram(rng, shape, o.max_set)) out.push_back(std::move(*d));
  }
  return out;
}

void limit_equivalence(Recorder& rec, const SuiteOptions& o) {
  for (const auto& d : random_diagrams(o, 200)) {
    auto lim = limit_finset(d);
    auto fams = families(d);
    std::set<std::vector<std::size_t>> got;
    for (std::size_t x = 0; x < lim.vertex.size(); ++x) {
      std::vector<std::size_t> row;
      for (const auto& leg : lim.legs) row.push_back(leg(x));
      got.insert(row);
    }
    bool same = got.size() == lim.vertex.size() && got == std::set(fams.begin(), fams.end());
    rec.check(same, "diagram on " + std::to_string(d.sets.size()) + " objects",
              std::to_string(lim.vertex.size()) + " limit elements vs " + std::to_string(fams.size()) + " families");
    rec.tally("diagrams");
    rec.tally("limit elements", lim.vertex.size());
  }
}

void second_picture(Recorder& rec, const SuiteOptions& o) {
  for (const auto& d : random_diagrams(o, 200)) {
    auto lim = limit_finset(d);
    auto sp = verify_second_picture(d, lim);
    rec.check(sp.holds() && sp.terminal, "diagram on " + std::to_string(d.sets.size()) + " objects",
              "second picture fails");
    rec.tally("diagrams");
    // Dropping one element of a nonempty limit must break it.
    if (lim.vertex.size() == 0) continue;
    std::vector<Atom> kept(lim.vertex.elements().begin() + 1, lim.vertex.elements().end());
    FinSet smaller(kept);
    SetCone cut{smaller, {}};
    for (const auto& leg : lim.legs) {
      std::vector<std::size_t> t;
      for (std::size_t i = 1; i < lim.vertex.size(); ++i) t.push_back(leg(i));
      cut.legs.emplace_back(smaller, leg.cod(), t);
    }
    rec.check(!verify_second_picture(d, cut).holds(), "truncated limit", "accepted");
    rec.tally("truncated candidates");
  }
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

void quotient_sketch(Recorder& rec, const SuiteOptions& o) {
  gen::Rng rng(o.seed);
  for (int t = 0; t < 50; ++t) {
    auto inf = gen::random_inflation(rng);
    const auto& c = *inf.category;
    std::string subject = "inflation with " + std::to_string(c.object_count()) + " objects";
    rec.tally("categories");
    rec.guarded(subject, [&] {
      auto r1 = relation_from_cochain(inf.category, inf.classes, cochains(c, inf.classes, false));
      auto r2 = relation_from_cochain(inf.category, inf.classes, cochains(c, inf.classes, true));
      auto q1 = quotient_category(r1);
      auto q2 = quotient_category(r2);
      rec.check(fully_faithful_on_classes(q1) && fully_faithful_on_classes(q2), subject, "not fully faithful");
      std::vector<ObjId> first;
      for (const auto& cls : r1.ob_classes()) first.push_back(cls.front());
      auto s = sketch(q1, r1, first);
      rec.check(s.round_trips, subject, "sketch round trip");
      rec.check(find_isomorphism(q1.category, q2.category).has_value(), subject, "cochain choices disagree");
    });
  }
}

void set_representation_suite(Recorder& rec, const SuiteOptions& o) {
  for (const auto& m : corpus_upto(o.max_points)) {
    auto x = from_topology(m);
    auto t = set_representation(x);
    auto r = verify_set_representation(x, t);
    rec.check(r.ok(), space_name(m), r.violations.empty() ? "" : r.violations.front().detail);
    rec.tally("algebras");
    rec.tally("particles", t.particles.size());
  }
}

void section_fiber_suite(Recorder& rec, const SuiteOptions& o) {
  gen::Rng rng(o.seed);
  auto algebras = small_algebras(o.max_points, 8);
  for (int i = 0; i < 120; ++i) {
    auto v = i % 2 ? Variance::Covariant : Variance::Contravariant;
    auto f = random_presheaf(rng, algebras, v, o.max_set);
    auto sf = section_fiber_spaces(f);
    std::string subject = std::string(f.covariant() ? "copresheaf" : "presheaf") + " on " +
                          std::to_string(f.x().size()) + " elements";
    rec.check(is_sheaf(sf.sec), subject, "section space does not glue");
    rec.check(is_cosheaf(sf.fib), subject, "fiber space does not glue");
    rec.tally(f.covariant() ? "copresheaves" : "presheaves");
  }
}

void sheafification_suite(Recorder& rec, const SuiteOptions& o) {
  gen::Rng rng(o.seed);
  auto algebras = small_algebras(o.max_points, 8);
  for (int i = 0; i < 30; ++i) {
    auto g = section_fiber_spaces(random_presheaf(rng, algebras, Variance::Contravariant, 2)).sec;
    rec.check(componentwise_bijective(sheafify(g).theta), "sheaf on " + std::to_string(g.x().size()) + " elements",
              "θ is not bijective");
    rec.tally("sheaf inputs");
  }
  for (int i = 0; i < 60; ++i) {
    auto f = random_presheaf(rng, algebras, Variance::Contravariant, o.max_set);
    auto s = sheafify(f);
    rec.check(is_sheaf(s.sheaf), "presheaf on " + std::to_string(f.x().size()) + " elements", "output does not glue");
    rec.tally("presheaf inputs");
    rec.tally("two-pass inputs", s.passes == 2);
  }
  std::vector<AlgebraRef> tiny;
  for (const auto& x : algebras) {
    if (x->size() <= 5) tiny.push_back(x);
  }
  std::size_t triples = 0;
  while (triples < 24) {
    auto f = random_presheaf(rng, tiny, Variance::Contravariant, std::min<std::size_t>(o.max_set, 3));
    auto g0 = gen::random_presheaf(rng, f.algebra(), Variance::Contravariant, 2);
    if (!g0) continue;
    auto g = sheafify(*g0).sheaf;
    auto s = sheafify(f);
    std::vector<SheafNat> alphas;
    enumerate_nats(f, g, [&](const SheafNat& a) { alphas.push_back(a); }, 2);
    for (const auto& alpha : alphas) {
      std::string subject = "triple " + std::to_string(triples);
      std::size_t matches = 0;
      enumerate_nats(s.sheaf, g, [&](const SheafNat& beta) { matches += compose_nat(beta, s.theta) == alpha; });
      rec.check(matches == 1, subject, std::to_string(matches) + " factorizations");
      rec.tally("triples");
      ++triples;
    }
  }
}

std::vector<std::vector<std::size_t>> point_maps(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0 && m > 0) return out;
  std::vector<std::size_t> f(m, 0);
  while (true) {
    out.push_back(f);
    std::size_t k = 0;
    while (k < m && ++f[k] == n) f[k++] = 0;
    if (k == m) return out;
  }
}

void equivalence_suite(Recorder& rec, const SuiteOptions& o) {
  for (const auto& m : corpus_upto(o.max_points)) {
    rec.guarded(space_name(m), [&] {
      auto s = to_sheaf_space(m);
      rec.check(to_classical_space(s) == m, space_name(m), "classical round trip differs");
      rec.check(verify_space_iso(s, classical_round_trip(s)), space_name(m), "sheaf round trip is not an iso");
    });
    rec.tally("spaces");
  }
  auto spaces = corpus_upto(std::min<std::size_t>(o.max_points, 3));
  std::vector<SheafSpace> sheaves;
  for (const auto& m : spaces) sheaves.push_back(to_sheaf_space(m));
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      for (const auto& f : point_maps(spaces[i].points().size(), spaces[j].points().size())) {
        if (!is_continuous(spaces[i], spaces[j], f)) continue;
        std::string subject = space_name(spaces[i]) + " -> " + space_name(spaces[j]);
        rec.guarded(subject, [&] {
          auto h = map_to_sheaf(spaces[i], spaces[j], f);
          bool ok = sheaf_hom_violations(sheaves[i].cosheaf(), sheaves[j].cosheaf(), h).empty() &&
                    map_to_classical(sheaves[i], sheaves[j], h) == f;
          rec.check(ok, subject, "map round trip differs");
        });
        rec.tally("continuous maps");
      }
    }
  }
}

void absolute_quotient_suite(Recorder& rec, const SuiteOptions& o) {
  for (const auto& m : corpus_upto(o.max_points)) {
    auto s = to_sheaf_space(m);
    rec.tally("spaces");
    if (!space_predicates(s).separatable) continue;
    rec.tally("separatable spaces");
    rec.guarded(space_name(m), [&] {
      auto where = partition_failure(s);
      rec.check(!where, space_name(m), where ? "partition fails at " + s.x().name(*where) : "");
      auto q = absolute_quotient_to_t(s);
      rec.check(is_absolute_quotient(s.cosheaf(), q.t, q.alpha), space_name(m), "not an absolute quotient");
      rec.check(is_quotient(s.cosheaf(), q.t, q.alpha), space_name(m), "not a quotient");
    });
  }
}

void separation_suite(Recorder& rec, const SuiteOptions& o, bool via_thin) {
  for (const auto& m : corpus_upto(o.max_points)) {
    auto p = space_predicates(m);
    bool eq = via_thin ? p.hausdorff_iff_separatable_thin && p.separatable_sober_gives_thin
                       : p.hausdorff_iff_separatable_sober && p.separatable_thin_gives_sober;
    rec.check(eq, space_name(m), "equivalence fails");
    rec.check(p.hausdorff_iff_discrete, space_name(m), "Hausdorff but not discrete, or conversely");
    rec.check(!p.separatable || p.t_thin, space_name(m), "separatable with a non-singleton costalk of T");
    rec.tally("spaces");
    rec.tally("hausdorff", p.hausdorff_classical);
    rec.tally("separatable", p.separatable);
    rec.tally(via_thin ? "separatable and thin" : "separatable and sober",
              p.separatable && (via_thin ? p.thin : p.sober));
  }
}

void hom_sheaf_suite(Recorder& rec, const SuiteOptions& o) {
  for (const auto& m : corpus_upto(o.max_points)) {
    auto in = inclusion_cosheaf(m);
    for (std::size_t k = 0; k <= 3; ++k) {
      auto h = hom_sheaf(in, gen::numbered_set(k, "c"));
      rec.check(is_sheaf(h), space_name(m), "Hom into " + std::to_string(k) + " elements does not glue");
      rec.tally("cosheaves", k == 0);
      rec.tally("checks");
    }
  }
}

struct Entry {
  const char* id;
  const char* statement;
  void (*run)(Recorder&, const SuiteOptions&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"T2.2", "limit_finset agrees with compatible families on random diagrams", limit_equivalence},
      {"T2.3", "concrete limits pass the second picture; truncations fail it", second_picture},
      {"L3.2.1", "cochain quotients are fully faithful on classes and independent of the cochain",
       quotient_sketch},
      {"T5.3.1", "T preserves meets and all joins over the topology corpus", set_representation_suite},
      {"T5.4.1", "section spaces are sheaves and fiber spaces cosheaves", section_fiber_suite},
      {"T5.4.2", "sheafification glues and every nat into a sheaf factors through it once",
       sheafification_suite},
      {"T6.1.1", "classical and sheaf round trips for spaces and continuous maps", equivalence_suite},
      {"T6.1.2", "separatable spaces are absolute quotients onto T", absolute_quotient_suite},
      {"T6.1.3", "Hausdorff iff separatable and sober; Hausdorff iff discrete",
       [](Recorder& r, const SuiteOptions& o) { separation_suite(r, o, false); }},
      {"T6.1.3p", "Hausdorff iff separatable and thin; Hausdorff iff discrete",
       [](Recorder& r, const SuiteOptions& o) { separation_suite(r, o, true); }},
      {"L6.3.1", "Hom(in_M, A) is a sheaf for |A| ≤ 3", hom_sheaf_suite},
  };
  return entries;
}

}  // namespace

std::size_t SuiteReport::count(const std::string& name) const {
  for (const auto& [k, v] : counts) {
    if (k == name) return v;
  }
  return 0;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : registry()) v.emplace_back(e.id);
    return v;
  }();
  return ids;
}

SuiteReport run_suite(const std::string& id, const SuiteOptions& options) {
  for (const auto& e : registry()) {
    if (id != e.id) continue;
    SuiteReport r;
    r.id = e.id;
    r.statement = e.statement;
    Recorder rec{r, {}};
    e.run(rec, options);
    return r;
  }
  throw Error(ErrorCode::UnknownCommand, "unknown suite " + id);
}

}  // namespace sheafkit::suites
