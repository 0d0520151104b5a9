#pragma once

// Element-level gluing and stalk checks by direct enumeration.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "sheafkit/sheaf/presheaf.hpp"

namespace oracle {

using sheafkit::ElemId;
using sheafkit::Mask;
using sheafkit::Presheaf;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) c += find(i) == i;
    return c;
  }
};

inline std::vector<ElemId> elems(Mask m) {
  std::vector<ElemId> out;
  for (ElemId i = 0; i < 64; ++i) {
    if ((m >> i) & 1u) out.push_back(i);
  }
  return out;
}

// Every tuple in the product of the given sizes.
inline void each_tuple(const std::vector<std::size_t>& sizes, const std::function<void(const std::vector<std::size_t>&)>& f) {
  for (auto s : sizes) {
    if (s == 0) return;
  }
  std::vector<std::size_t> t(sizes.size(), 0);
  while (true) {
    f(t);
    std::size_t k = 0;
    while (k < t.size() && ++t[k] == sizes[k]) t[k++] = 0;
    if (k == t.size()) return;
  }
}

// Gluing over one covering, checked on elements.
inline bool glues(const Presheaf& f, ElemId x, Mask s) {
  const auto& a = f.x();
  auto ms = elems(s);
  if (!f.covariant()) {
    std::map<std::vector<std::size_t>, std::size_t> hits;
    std::vector<std::size_t> sizes;
    for (auto m : ms) sizes.push_back(f.at(m).size());
    for (std::size_t e = 0; e < f.at(x).size(); ++e) {
      std::vector<std::size_t> t;
      for (auto m : ms) t.push_back(f.map(m, x)(e));
      ++hits[t];
    }
    bool ok = true;
    each_tuple(sizes, [&](const std::vector<std::size_t>& t) {
      bool compatible = true;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = 0; j < ms.size(); ++j) {
          ElemId o = a.meet(ms[i], ms[j]);
          compatible = compatible && f.map(o, ms[i])(t[i]) == f.map(o, ms[j])(t[j]);
        }
      }
      std::size_t h = hits.count(t) ? hits[t] : 0;
      if (compatible ? h != 1 : h != 0) ok = false;
    });
    return ok;
  }
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (auto m : ms) {
    offset.push_back(total);
    total += f.at(m).size();
  }
  UnionFind uf(total);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      ElemId o = a.meet(ms[i], ms[j]);
      for (std::size_t c = 0; c < f.at(o).size(); ++c) {
        uf.unite(offset[i] + f.map(o, ms[i])(c), offset[j] + f.map(o, ms[j])(c));
      }
    }
  }
  std::map<std::size_t, std::size_t> target;
  std::vector<bool> hit(f.at(x).size(), false);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t c = 0; c < f.at(ms[i]).size(); ++c) {
      std::size_t r = uf.find(offset[i] + c), t = f.map(ms[i], x)(c);
      auto [it, fresh] = target.emplace(r, t);
      if (!fresh && it->second != t) return false;
      hit[t] = true;
    }
  }
  std::map<std::size_t, std::size_t> seen;
  for (auto [r, t] : target) {
    if (seen.count(t)) return false;
    seen[t] = r;
  }
  for (bool h : hit) {
    if (!h) return false;
  }
  return true;
}

// Literal gluing axiom over every subset of every down-set.
inline bool literal_gluing(const Presheaf& f) {
  const auto& a = f.x();
  std::size_t bottom = f.at(a.bottom()).size();
  if (f.covariant() ? bottom != 0 : bottom != 1) return false;
  for (ElemId x = 0; x < a.size(); ++x) {
    Mask down = 0;
    for (ElemId y = 0; y < a.size(); ++y) {
      if (a.leq(y, x)) down |= Mask{1} << y;
    }
    for (Mask s = down;; s = (s - 1) & down) {
      if (a.join_of(s) == x && !glues(f, x, s)) return false;
      if (s == 0) break;
    }
  }
  return true;
}

// Size of the stalk at p from the generated equivalence (presheaves) or from
// compatible families (copresheaves).
inline std::size_t stalk_size(const Presheaf& f, Mask p) {
  auto ps = elems(p);
  if (!f.covariant()) {
    std::map<ElemId, std::size_t> offset;
    std::size_t total = 0;
    for (auto x : ps) {
      offset[x] = total;
      total += f.at(x).size();
    }
    UnionFind uf(total);
    for (auto x : ps) {
      for (auto y : ps) {
        if (!f.x().leq(x, y)) continue;
        for (std::size_t a = 0; a < f.at(y).size(); ++a) uf.unite(offset[y] + a, offset[x] + f.map(x, y)(a));
      }
    }
    return uf.classes();
  }
  std::vector<std::size_t> sizes;
  for (auto x : ps) sizes.push_back(f.at(x).size());
  std::size_t count = 0;
  each_tuple(sizes, [&](const std::vector<std::size_t>& t) {
    bool ok = true;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (f.x().leq(ps[i], ps[j])) ok = ok && f.map(ps[i], ps[j])(t[i]) == t[j];
      }
    }
    count += ok;
  });
  return count;
}

}  // namespace oracle
