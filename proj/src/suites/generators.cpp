#include "sheafkit/suites/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace sheafkit::gen {

FinSet numbered_set(std::size_t n, const std::string& prefix) {
  std::vector<Atom> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(prefix + std::to_string(i));
  return FinSet(std::move(v));
}

namespace {

std::vector<std::vector<bool>> random_order(Rng& rng, std::size_t n, std::size_t max_arrows) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::bernoulli_distribution keep(0.5);
  for (auto [a, b] : pairs) {
    if (!keep(rng)) continue;
    auto next = leq;
    next[a][b] = true;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (next[i][k] && next[k][j]) next[i][j] = true;
        }
      }
    }
    std::size_t strict = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) strict += i != j && next[i][j];
    }
    if (strict <= max_arrows) leq = std::move(next);
  }
  return leq;
}

std::size_t strict_count(const std::vector<std::vector<bool>>& leq) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < leq.size(); ++i) {
    for (std::size_t j = 0; j < leq.size(); ++j) s += i != j && leq[i][j];
  }
  return s;
}

std::vector<std::string> object_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("j" + std::to_string(i));
  return names;
}

// Poset category with the arrow a ≤ b doubled into two parallel arrows.
CategoryRef double_arrow(const std::vector<std::vector<bool>>& leq, std::size_t a, std::size_t b) {
  const std::size_t n = leq.size();
  auto names = object_names(n);
  CategoryBuilder bld;
  for (const auto& s : names) bld.add_object(s);
  std::vector<std::vector<std::vector<MorId>>> arrows(n, std::vector<std::vector<MorId>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      if (i == j) {
        arrows[i][j].push_back(bld.add_identity(i, "id_" + names[i]));
      } else if (i == a && j == b) {
        arrows[i][j].push_back(bld.add_morphism(names[i] + "=f=>" + names[j], i, j));
        arrows[i][j].push_back(bld.add_morphism(names[i] + "=g=>" + names[j], i, j));
      } else {
        arrows[i][j].push_back(bld.add_morphism(names[i] + "<=" + names[j], i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (arrows[i][k].empty() || arrows[k][j].empty()) continue;
        for (MorId f : arrows[i][k]) {
          for (MorId g : arrows[k][j]) {
            // Composites landing in the doubled hom-class only arise with an
            // identity factor; everything else lands in a singleton class.
            MorId gf = arrows[i][j].size() == 1 ? arrows[i][j][0] : (i == k ? g : f);
            bld.set_composite(g, f, gf);
          }
        }
      }
    }
  }
  return bld.build_ref();
}

// Poset category with an idempotent e on object x: e∘e = e, g∘e = g, e∘h = h.
CategoryRef with_idempotent(const std::vector<std::vector<bool>>& leq, std::size_t x) {
  const std::size_t n = leq.size();
  auto names = object_names(n);
  CategoryBuilder bld;
  for (const auto& s : names) bld.add_object(s);
  std::vector<std::vector<std::optional<MorId>>> arrow(n, std::vector<std::optional<MorId>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      arrow[i][j] = i == j ? bld.add_identity(i, "id_" + names[i]) : bld.add_morphism(names[i] + "<=" + names[j], i, j);
    }
  }
  MorId e = bld.add_morphism("e_" + names[x], x, x);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (arrow[i][k] && arrow[k][j]) bld.set_composite(*arrow[k][j], *arrow[i][k], *arrow[i][j]);
      }
    }
  }
  bld.set_composite(e, e, e);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != x && arrow[x][j]) bld.set_composite(*arrow[x][j], e, *arrow[x][j]);
    if (j != x && arrow[j][x]) bld.set_composite(e, *arrow[j][x], *arrow[j][x]);
  }
  return bld.build_ref();
}

}  // namespace

CategoryRef random_poset(Rng& rng, std::size_t n, std::size_t max_arrows) {
  return poset_category(object_names(n), random_order(rng, n, max_arrows));
}

CategoryRef random_shape(Rng& rng, std::size_t max_objects, std::size_t max_arrows, ShapeKind kind) {
  std::uniform_int_distribution<std::size_t> nd(1, max_objects);
  for (;;) {
    std::size_t n = nd(rng);
    auto leq = random_order(rng, n, kind == ShapeKind::Poset ? max_arrows : max_arrows - 1);
    if (kind == ShapeKind::Poset) return poset_category(object_names(n), leq);
    if (kind == ShapeKind::Idempotent) {
      return with_idempotent(leq, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    }
    // Covering pairs: a < b with nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !leq[a][b]) continue;
        bool cover = true;
        for (std::size_t m = 0; m < n && cover; ++m) cover = m == a || m == b || !(leq[a][m] && leq[m][b]);
        if (cover) covers.emplace_back(a, b);
      }
    }
    if (covers.empty() || strict_count(leq) + 1 > max_arrows) continue;
    auto [a, b] = covers[std::uniform_int_distribution<std::size_t>(0, covers.size() - 1)(rng)];
    return double_arrow(leq, a, b);
  }
}

CategoryRef random_shape(Rng& rng, std::size_t max_objects, std::size_t max_arrows) {
  std::uniform_int_distribution<int> k(0, 2);
  return random_shape(rng, max_objects, max_arrows, static_cast<ShapeKind>(k(rng)));
}

std::optional<SetDiagram> random_set_diagram(Rng& rng, const CategoryRef& shape, std::size_t max_set,
                                             bool allow_empty_sets) {
  const auto& j = *shape;
  std::uniform_int_distribution<std::size_t> sd(allow_empty_sets ? 0 : 1, max_set);
  SetDiagram d;
  d.shape = shape;
  for (ObjId o = 0; o < j.object_count(); ++o) d.sets.push_back(numbered_set(sd(rng), "x" + std::to_string(o) + "_"));
  auto table = comp_table(j);
  std::vector<std::optional<FinSetMap>> maps(j.morphism_count());
  for (ObjId o = 0; o < j.object_count(); ++o) maps[j.id(o)] = FinSetMap::identity(d.sets[o]);
  std::vector<MorId> order;
  for (MorId u = 0; u < j.morphism_count(); ++u) {
    if (!j.is_identity(u)) order.push_back(u);
  }
  std::size_t budget = 20000;
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    if (budget == 0) return false;
    --budget;
    MorId u = order[k];
    auto cands = all_maps(d.sets[j.dom(u)], d.sets[j.cod(u)]);
    std::shuffle(cands.begin(), cands.end(), rng);
    for (auto& c : cands) {
      maps[u] = c;
      bool ok = true;
      for (const auto& e : table) {
        if (!maps[e.g] || !maps[e.f] || !maps[e.gf]) continue;
        if (!(compose(*maps[e.g], *maps[e.f]) == *maps[e.gf])) {
          ok = false;
          break;
        }
      }
      if (ok && go(k + 1)) return true;
      maps[u].reset();
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  for (auto& m : maps) d.maps.push_back(*m);
  d.validate();
  return d;
}

}  // namespace sheafkit::gen

namespace sheafkit::gen {

CategoryRef cyclic_group(std::size_t n) {
  CategoryBuilder b;
  b.add_object("G");
  for (std::size_t k = 0; k < n; ++k) b.add_morphism("r" + std::to_string(k), 0, 0);
  b.set_identity(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b.set_composite(i, j, (i + j) % n);
  }
  return b.build_ref();
}

Inflation inflate(const CategoryRef& base, const std::vector<std::size_t>& copies) {
  const auto& c = *base;
  CategoryBuilder b;
  Inflation out;
  std::vector<std::vector<ObjId>> ids(c.object_count());
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (std::size_t i = 0; i < copies[a]; ++i) {
      ids[a].push_back(b.add_object(c.object_name(a) + "#" + std::to_string(i)));
    }
  }
  out.classes = ids;
  // (u, i, j) -> new morphism id
  std::map<std::tuple<MorId, std::size_t, std::size_t>, MorId> mor;
  for (MorId u = 0; u < c.morphism_count(); ++u) {
    for (std::size_t i = 0; i < copies[c.dom(u)]; ++i) {
      for (std::size_t j = 0; j < copies[c.cod(u)]; ++j) {
        mor[{u, i, j}] = b.add_morphism(c.morphism_name(u) + "@" + std::to_string(i) + ">" + std::to_string(j),
                                        ids[c.dom(u)][i], ids[c.cod(u)][j]);
      }
    }
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (std::size_t i = 0; i < copies[a]; ++i) b.set_identity(ids[a][i], mor[{c.id(a), i, i}]);
  }
  for (const auto& e : comp_table(c)) {
    for (std::size_t i = 0; i < copies[c.dom(e.f)]; ++i) {
      for (std::size_t j = 0; j < copies[c.cod(e.f)]; ++j) {
        for (std::size_t l = 0; l < copies[c.cod(e.g)]; ++l) {
          b.set_composite(mor[{e.g, j, l}], mor[{e.f, i, j}], mor[{e.gf, i, l}]);
        }
      }
    }
  }
  out.category = b.build_ref(false);
  return out;
}

Inflation random_inflation(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  CategoryRef base;
  switch (pick(rng)) {
    case 0: base = random_shape(rng, 3, 3, ShapeKind::Poset); break;
    case 1: base = random_shape(rng, 3, 3, ShapeKind::ParallelPair); break;
    case 2: base = random_shape(rng, 3, 3, ShapeKind::Idempotent); break;
    default: base = cyclic_group(std::uniform_int_distribution<std::size_t>(2, 3)(rng)); break;
  }
  std::uniform_int_distribution<std::size_t> k(1, 3);
  std::vector<std::size_t> copies(base->object_count());
  for (auto& x : copies) x = k(rng);
  if (*std::max_element(copies.begin(), copies.end()) < 2) {
    copies[std::uniform_int_distribution<std::size_t>(0, copies.size() - 1)(rng)] = 2;
  }
  return inflate(base, copies);
}

std::optional<Presheaf> random_presheaf(Rng& rng, const AlgebraRef& x, Variance variance, std::size_t max_set,
                                        bool allow_empty_sets) {
  const auto& shape = variance == Variance::Covariant ? x->category() : x->category_op();
  auto d = random_set_diagram(rng, shape, max_set, allow_empty_sets);
  if (!d) return std::nullopt;
  return Presheaf::from_diagram(x, variance, *d);
}

}  // namespace sheafkit::gen
