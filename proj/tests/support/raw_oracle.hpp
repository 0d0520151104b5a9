#pragma once

// String-level re-derivation of the category axioms, kept apart from the
// library's index tables.

#include <map>
#include <set>
#include <string>
#include <utility>

#include "sheafkit/fincat/category.hpp"

namespace oracle {

inline std::size_t count_violations(const sheafkit::RawCategory& raw) {
  std::map<std::string, std::pair<std::string, std::string>> ends;
  for (const auto& m : raw.morphisms) ends[m.id] = {m.dom, m.cod};
  std::map<std::pair<std::string, std::string>, std::string> comp;
  for (const auto& e : raw.comp) comp[{e.g, e.f}] = e.gf;
  auto composite = [&](const std::string& g, const std::string& f) -> std::string {
    auto it = comp.find({g, f});
    if (it != comp.end()) return it->second;
    for (const auto& [o, i] : raw.identities) {
      if (g == i && ends[f].second == o) return f;
      if (f == i && ends[g].first == o) return g;
    }
    return "";
  };
  std::size_t bad = 0;
  for (const auto& o : raw.objects) {
    auto it = raw.identities.find(o);
    if (it == raw.identities.end() || ends[it->second] != std::pair(o, o)) ++bad;
  }
  for (const auto& e : raw.comp) {
    if (ends[e.f].second != ends[e.g].first) ++bad;
    else if (ends[e.gf] != std::pair(ends[e.f].first, ends[e.g].second)) ++bad;
  }
  for (const auto& [f, fe] : ends) {
    for (const auto& [g, ge] : ends) {
      if (fe.second != ge.first) continue;
      std::string gf = composite(g, f);
      if (gf.empty()) {
        ++bad;
        continue;
      }
      for (const auto& [h, he] : ends) {
        if (ge.second != he.first) continue;
        std::string hg = composite(h, g);
        if (hg.empty()) continue;
        std::string l = composite(hg, f), r = composite(h, gf);
        if (!l.empty() && !r.empty() && l != r) ++bad;
      }
    }
  }
  return bad;
}

}  // namespace oracle
