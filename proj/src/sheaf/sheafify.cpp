#include "sheafkit/sheaf/sheafify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "sheafkit/finset/constructions.hpp"

namespace sheafkit {

namespace {

using Germs = std::vector<std::size_t>;  // one germ index per particle of T_x

// Germ tuple of a ∈ F(e) at every particle of T_x, for e ≤ x and p ∈ T_x with e ∈ p.
class SectionSpace {
 public:
  SectionSpace(const Presheaf& f, const SetRepresentation& t) : f_(f), t_(t), stalks_(stalks(f, t)) {}

  const Stalk& at(std::size_t i) const { return stalks_[i]; }

  Germs alpha(ElemId e, std::size_t a) const {
    Germs g;
    for (auto i : members(t_.t[e])) g.push_back(stalks_[i].germ[e](a));
    return g;
  }

  // Positions of T_y inside T_x, for y ≤ x.
  std::vector<std::size_t> positions(ElemId y, ElemId x) const {
    auto px = members(t_.t[x]);
    std::vector<std::size_t> out;
    std::size_t j = 0;
    for (auto i : members(t_.t[y])) {
      while (px[j] != i) ++j;
      out.push_back(j);
    }
    return out;
  }

 private:
  const Presheaf& f_;
  const SetRepresentation& t_;
  std::vector<Stalk> stalks_;
};

MultiWedge wedge_over(const Presheaf& f, const std::vector<ElemId>& ms) {
  const auto& x = f.x();
  MultiWedge w;
  for (auto m : ms) w.members.push_back(f.at(m));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      ElemId o = x.meet(ms[i], ms[j]);
      w.overlaps.push_back({i, j, f.at(o), f.map(o, ms[i]), f.map(o, ms[j])});
    }
  }
  return w;
}

}  // namespace

Sheafification sheafify_once(const Presheaf& f, Coverings policy) {
  if (f.covariant()) throw Error(ErrorCode::ShapeMismatch, "sheafify needs a presheaf");
  const auto& x = f.x();
  const std::size_t n = x.size();
  auto t = set_representation(x);
  SectionSpace space(f, t);
  Sheafification out;
  out.passes = 1;
  std::vector<std::vector<Germs>> carrier(n);
  std::vector<std::map<Germs, std::size_t>> index(n);
  std::vector<FinSet> sets;
  for (ElemId e = 0; e < n; ++e) {
    auto parts = members(t.t[e]);
    std::set<Germs> image;
    for (Mask o : coverings_of(x, e, policy)) {
      auto ms = members(o);
      auto w = wedge_over(f, ms);
      // S_O: a compatible family to its germs; each particle of T_x contains some member.
      for (const auto& fam : compatible_families(w)) {
        Germs g;
        for (auto i : parts) {
          std::size_t k = 0;
          while (!has(t.particles[i], ms[k])) ++k;
          g.push_back(space.at(i).germ[ms[k]](fam[k]));
        }
        image.insert(std::move(g));
      }
      // S_O ∘ R_O against α_sec.
      for (std::size_t a = 0; a < f.at(e).size(); ++a) {
        std::vector<std::size_t> fam;
        for (auto m : ms) fam.push_back(f.map(m, e)(a));
        Germs g;
        for (auto i : parts) {
          std::size_t k = 0;
          while (!has(t.particles[i], ms[k])) ++k;
          g.push_back(space.at(i).germ[ms[k]](fam[k]));
        }
        if (g != space.alpha(e, a)) out.theta_independent = false;
      }
    }
    carrier[e].assign(image.begin(), image.end());
    std::vector<Atom> atoms;
    for (const auto& g : carrier[e]) {
      index[e].emplace(g, atoms.size());
      std::vector<Atom> comps;
      for (std::size_t k = 0; k < parts.size(); ++k) comps.push_back(space.at(parts[k]).set[g[k]]);
      atoms.push_back(Atom::tuple(std::move(comps)));
    }
    sets.push_back(FinSet(std::move(atoms)));
  }
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId a = 0; a < n; ++a) {
    for (ElemId b : members(x.up_set(a))) {
      auto pos = space.positions(a, b);
      std::vector<std::size_t> table;
      for (const auto& g : carrier[b]) {
        Germs r;
        for (auto j : pos) r.push_back(g[j]);
        auto it = index[a].find(r);
        if (it == index[a].end()) throw Error(ErrorCode::NotAPresheaf, "restriction leaves the image at " + x.name(a));
        table.push_back(it->second);
      }
      maps.emplace(std::pair(a, b), FinSetMap(sets[b], sets[a], std::move(table)));
    }
  }
  for (ElemId e = 0; e < n; ++e) {
    std::vector<std::size_t> table;
    for (std::size_t a = 0; a < f.at(e).size(); ++a) table.push_back(index[e].at(space.alpha(e, a)));
    out.theta.push_back(FinSetMap(f.at(e), sets[e], std::move(table)));
  }
  out.sheaf = Presheaf(f.algebra(), Variance::Contravariant, std::move(sets), maps);
  return out;
}

Sheafification sheafify(const Presheaf& f, Coverings policy) {
  auto first = sheafify_once(f, policy);
  if (is_sheaf(first.sheaf)) return first;
  auto second = sheafify_once(first.sheaf, policy);
  second.theta = compose_nat(second.theta, first.theta);
  second.passes = 2;
  second.theta_independent = first.theta_independent && second.theta_independent;
  if (!is_sheaf(second.sheaf)) throw Error(ErrorCode::NotAPresheaf, "sheafification did not converge");
  return second;
}

SheafNat factor_through_sheafification(const Sheafification& s, const Presheaf& g, const SheafNat& alpha) {
  const Presheaf& fb = s.sheaf;
  const auto& x = fb.x();
  const std::size_t n = x.size();
  if (g.covariant() || !is_sheaf(g)) throw Error(ErrorCode::NotAPresheaf, "target is not a sheaf");
  if (alpha.size() != n) throw Error(ErrorCode::NaturalityViolation, "one component per element required");
  // Source of α is the domain of θ.
  for (ElemId e = 0; e < n; ++e) {
    if (!(alpha[e].dom() == s.theta[e].dom()) || !(alpha[e].cod() == g.at(e))) {
      throw Error(ErrorCode::NaturalityViolation, "component at " + x.name(e) + " has the wrong ends");
    }
  }
  std::vector<std::vector<std::vector<std::size_t>>> pre(n);
  for (ElemId e = 0; e < n; ++e) {
    pre[e].assign(fb.at(e).size(), {});
    for (std::size_t a = 0; a < s.theta[e].dom().size(); ++a) pre[e][s.theta[e](a)].push_back(a);
  }
  SheafNat out;
  for (ElemId e = 0; e < n; ++e) {
    std::vector<std::size_t> table;
    for (std::size_t t = 0; t < fb.at(e).size(); ++t) {
      // Elements below e where t is locally in the image of θ.
      std::vector<std::pair<ElemId, std::size_t>> local;
      Mask where = 0;
      for (ElemId y : members(x.down_set(e))) {
        const auto& hits = pre[y][fb.map(y, e)(t)];
        if (!hits.empty()) {
          local.emplace_back(y, hits.front());
          where |= bit(y);
        }
      }
      if (x.join_of(where) != e) {
        throw Error(ErrorCode::NaturalityViolation, "a section at " + x.name(e) + " is not locally in the image of θ");
      }
      std::optional<std::size_t> found;
      for (std::size_t c = 0; c < g.at(e).size() && !found; ++c) {
        bool ok = std::all_of(local.begin(), local.end(),
                              [&](const auto& l) { return g.map(l.first, e)(c) == alpha[l.first](l.second); });
        if (ok) found = c;
      }
      if (!found) throw Error(ErrorCode::NaturalityViolation, "local images do not glue at " + x.name(e));
      table.push_back(*found);
    }
    out.push_back(FinSetMap(fb.at(e), g.at(e), std::move(table)));
  }
  if (!nat_violations(fb, g, out).empty()) throw Error(ErrorCode::NaturalityViolation, "induced map is not natural");
  for (ElemId e = 0; e < n; ++e) {
    if (!(compose(out[e], s.theta[e]) == alpha[e])) {
      throw Error(ErrorCode::NaturalityViolation, "α does not factor through θ at " + x.name(e));
    }
  }
  return out;
}

SheafNat sheafify_nat(const Sheafification& sf, const Sheafification& sg, const SheafNat& alpha) {
  return factor_through_sheafification(sf, sg.sheaf, compose_nat(sg.theta, alpha));
}

namespace {

// Visits nats until `visit` returns false.
std::size_t each_nat(const Presheaf& f, const Presheaf& g, const std::function<bool(const SheafNat&)>& visit) {
  std::size_t limit = static_cast<std::size_t>(-1);
  const auto& x = f.x();
  const std::size_t n = x.size();
  if (!(f.x() == g.x()) || f.variance() != g.variance()) throw Error(ErrorCode::ShapeMismatch, "different shapes");
  // Elements whose maps leave them come first, so every square forces values downstream.
  std::vector<ElemId> order(n);
  for (ElemId e = 0; e < n; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](ElemId a, ElemId b) {
    auto da = std::popcount(x.down_set(a)), db = std::popcount(x.down_set(b));
    return f.covariant() ? da < db : da > db;
  });
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> cur(n);
  std::vector<bool> done(n, false);
  std::size_t count = 0;
  auto emit = [&] {
    SheafNat out;
    for (ElemId e = 0; e < n; ++e) out.push_back(FinSetMap(f.at(e), g.at(e), cur[e]));
    ++count;
    if (!visit(out)) limit = count;
  };
  auto go = [&](auto&& self, std::size_t k) -> void {
    if (count >= limit) return;
    if (k == n) {
      emit();
      return;
    }
    ElemId e = order[k];
    std::vector<std::size_t> forced(f.at(e).size(), unset);
    for (ElemId s = 0; s < n; ++s) {
      if (!done[s] || s == e) continue;
      bool into = f.covariant() ? x.leq(s, e) : x.leq(e, s);
      if (!into) continue;
      const auto& fm = f.covariant() ? f.map(s, e) : f.map(e, s);
      const auto& gm = f.covariant() ? g.map(s, e) : g.map(e, s);
      for (std::size_t i = 0; i < f.at(s).size(); ++i) {
        std::size_t want = gm(cur[s][i]);
        auto& slot = forced[fm(i)];
        if (slot != unset && slot != want) return;
        slot = want;
      }
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < forced.size(); ++i) {
      if (forced[i] == unset) free.push_back(i);
    }
    const std::size_t m = g.at(e).size();
    if (!free.empty() && m == 0) return;
    cur[e] = forced;
    done[e] = true;
    auto fill = [&](auto&& fself, std::size_t j) -> void {
      if (count >= limit) return;
      if (j == free.size()) {
        self(self, k + 1);
        return;
      }
      for (std::size_t v = 0; v < m; ++v) {
        cur[e][free[j]] = v;
        fself(fself, j + 1);
      }
    };
    fill(fill, 0);
    done[e] = false;
  };
  go(go, 0);
  return count;
}

}  // namespace

std::size_t enumerate_nats(const Presheaf& f, const Presheaf& g, const std::function<void(const SheafNat&)>& visit,
                           std::size_t limit) {
  if (limit == 0) return 0;
  return each_nat(f, g, [&](const SheafNat& a) {
    visit(a);
    return --limit > 0;
  });
}

std::optional<SheafNat> find_nat(const Presheaf& f, const Presheaf& g, const std::function<bool(const SheafNat&)>& pred) {
  std::optional<SheafNat> out;
  each_nat(f, g, [&](const SheafNat& a) {
    if (pred(a)) out = a;
    return !out;
  });
  return out;
}

QuotientSheaf quotient_sheaf(const Presheaf& f, const std::vector<std::vector<std::size_t>>& labels) {
  const auto& x = f.x();
  const std::size_t n = x.size();
  if (labels.size() != n) throw Error(ErrorCode::IncompatiblePartition, "one labelling per element required");
  std::vector<std::vector<std::size_t>> cls(n);
  std::vector<FinSet> sets;
  for (ElemId e = 0; e < n; ++e) {
    if (labels[e].size() != f.at(e).size()) {
      throw Error(ErrorCode::IncompatiblePartition, "labels at " + x.name(e) + " do not match F(x)");
    }
    // Classes numbered by least member.
    std::map<std::size_t, std::size_t> relabel;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < labels[e].size(); ++a) {
      auto [it, fresh] = relabel.emplace(labels[e][a], groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(a);
      cls[e].push_back(it->second);
    }
    std::vector<Atom> atoms;
    for (const auto& grp : groups) {
      std::string name = "{";
      for (std::size_t k = 0; k < grp.size(); ++k) name += (k ? "," : "") + f.at(e)[grp[k]].to_string();
      atoms.emplace_back(name + "}");
    }
    sets.push_back(FinSet(std::move(atoms)));
  }
  std::map<std::pair<ElemId, ElemId>, FinSetMap> maps;
  for (ElemId p = 0; p < n; ++p) {
    for (ElemId q : members(x.up_set(p))) {
      const auto& m = f.map(p, q);
      ElemId from = f.covariant() ? p : q, to = f.covariant() ? q : p;
      constexpr std::size_t unset = static_cast<std::size_t>(-1);
      std::vector<std::size_t> table(sets[from].size(), unset);
      for (std::size_t a = 0; a < f.at(from).size(); ++a) {
        auto& slot = table[cls[from][a]];
        std::size_t image = cls[to][m(a)];
        if (slot != unset && slot != image) {
          throw Error(ErrorCode::IncompatiblePartition, "the map for " + x.name(p) + "<=" + x.name(q) +
                                                            " splits the class of " + f.at(from)[a].to_string());
        }
        slot = image;
      }
      maps.emplace(std::pair(p, q), FinSetMap(sets[from], sets[to], std::move(table)));
    }
  }
  QuotientSheaf out{Presheaf(f.algebra(), f.variance(), sets, maps), {}, {}};
  for (ElemId e = 0; e < n; ++e) out.projection.push_back(FinSetMap(f.at(e), sets[e], cls[e]));
  if (!f.covariant()) out.sheafified = sheafify(out.quotient);
  return out;
}

}  // namespace sheafkit
