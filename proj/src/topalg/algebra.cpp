#include "sheafkit/topalg/algebra.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace sheafkit {

std::vector<std::size_t> members(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

namespace {

constexpr std::size_t violation_cap = 32;

void note(std::vector<Violation>& v, ErrorCode code, std::string detail) {
  if (v.size() < violation_cap) v.push_back({code, std::move(detail)});
}

std::string subset_name(const TopologyAlgebra& x, Mask s) {
  std::string out = "{";
  bool first = true;
  for (auto i : members(s)) {
    if (!first) out += ",";
    out += x.name(i);
    first = false;
  }
  return out + "}";
}

int low(Mask s) { return std::countr_zero(s); }

}  // namespace

bool TopologyAlgebra::build(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq_in,
                            TopologyAlgebra& out, std::vector<Violation>& v) {
  const std::size_t n = names.size();
  if (n == 0) {
    note(v, ErrorCode::MissingJoin, "empty carrier has no bottom");
    return false;
  }
  if (n > max_elements) {
    note(v, ErrorCode::ShapeMismatch, "more than 64 elements");
    return false;
  }
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.emplace(names[i], i).second) note(v, ErrorCode::DuplicateId, "element " + names[i]);
  }
  if (!v.empty()) return false;
  auto leq = leq_in;
  leq.resize(n);
  for (auto& row : leq) row.resize(n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k][j]) leq[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq[i][j] && leq[j][i]) note(v, ErrorCode::NotAPoset, names[i] + " and " + names[j] + " below each other");
    }
  }
  if (!v.empty()) return false;

  out.names_ = std::move(names);
  out.up_.assign(n, 0);
  out.down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (leq[i][j]) {
        out.up_[i] |= bit(j);
        out.down_[j] |= bit(i);
      }
    }
  }
  const Mask all = out.all();
  std::optional<ElemId> top, bottom;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.down_[i] == all) top = i;
    if (out.up_[i] == all) bottom = i;
  }
  if (!top) note(v, ErrorCode::MissingMeet, "no top (meet of the empty family)");
  if (!bottom) note(v, ErrorCode::MissingJoin, "no bottom (join of the empty family)");
  out.meet_.assign(n * n, 0);
  out.join_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Mask lower = out.down_[a] & out.down_[b];
      Mask upper = out.up_[a] & out.up_[b];
      std::optional<ElemId> m, j;
      for (auto c : members(lower)) {
        if ((out.down_[c] & lower) == lower) m = c;
      }
      for (auto c : members(upper)) {
        if ((out.up_[c] & upper) == upper) j = c;
      }
      if (!m) note(v, ErrorCode::MissingMeet, out.names_[a] + " ∧ " + out.names_[b]);
      if (!j) note(v, ErrorCode::MissingJoin, "{" + out.names_[a] + "," + out.names_[b] + "}");
      out.meet_[a * n + b] = m.value_or(0);
      out.join_[a * n + b] = j.value_or(0);
    }
  }
  if (!v.empty()) return false;
  out.top_ = *top;
  out.bottom_ = *bottom;
  out.category_ = poset_category(out.names_, leq);
  out.category_op_ = opposite(*out.category_);
  auto ax = axiom_violations(out);
  v.insert(v.end(), ax.begin(), ax.end());
  return v.empty();
}

TopologyAlgebra TopologyAlgebra::from_order(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq) {
  TopologyAlgebra out;
  std::vector<Violation> v;
  if (!build(std::move(names), leq, out, v)) throw ValidationError(std::move(v));
  return out;
}

TopologyAlgebra TopologyAlgebra::from_order(std::vector<std::string> names,
                                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  std::vector<std::vector<bool>> leq(names.size(), std::vector<bool>(names.size(), false));
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw Error(ErrorCode::UnknownObject, "element " + a);
    if (ib == index.end()) throw Error(ErrorCode::UnknownObject, "element " + b);
    leq[ia->second][ib->second] = true;
  }
  return from_order(std::move(names), leq);
}

std::vector<Violation> TopologyAlgebra::violations(const std::vector<std::string>& names,
                                                   const std::vector<std::vector<bool>>& leq) {
  TopologyAlgebra out;
  std::vector<Violation> v;
  build(names, leq, out, v);
  return v;
}

ElemId TopologyAlgebra::element(const std::string& name) const {
  auto f = find(name);
  if (!f) throw Error(ErrorCode::NotAnElement, name);
  return *f;
}

std::optional<ElemId> TopologyAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

ElemId TopologyAlgebra::join_of(Mask s) const {
  ElemId acc = bottom_;
  for (auto i : members(s)) acc = join(acc, i);
  return acc;
}

ElemId TopologyAlgebra::meet_of(Mask s) const {
  ElemId acc = top_;
  for (auto i : members(s)) acc = meet(acc, i);
  return acc;
}

std::vector<Mask> TopologyAlgebra::coverings(ElemId x) const {
  std::vector<Mask> out;
  const Mask d = down_[x];
  // Submasks of d in ascending order.
  for (Mask s = 0;; s = (s - d) & d) {
    if (join_of(s) == x) out.push_back(s);
    if (s == d) break;
  }
  return out;
}

AlgebraRef make_algebra(TopologyAlgebra x) { return std::make_shared<const TopologyAlgebra>(std::move(x)); }

std::vector<Violation> axiom_violations(const TopologyAlgebra& x) {
  std::vector<Violation> v;
  const std::size_t n = x.size();
  const ElemId one = x.top(), zero = x.bottom();
  auto j2 = [&](ElemId a, ElemId b) { return x.join(a, b); };
  auto m2 = [&](ElemId a, ElemId b) { return x.meet(a, b); };
  for (ElemId a = 0; a < n; ++a) {
    if (m2(one, a) != a) note(v, ErrorCode::AxiomViolation, "1 ∧ " + x.name(a) + " ≠ " + x.name(a));
    if (j2(zero, a) != a) note(v, ErrorCode::AxiomViolation, "⋁{0," + x.name(a) + "} ≠ " + x.name(a));
    for (ElemId b = 0; b < n; ++b) {
      bool le = x.leq(a, b);
      if (le != (m2(a, b) == a) || le != (j2(a, b) == b)) {
        note(v, ErrorCode::AxiomViolation, "order and operations disagree at " + x.name(a) + "," + x.name(b));
      }
      if (m2(a, b) != m2(b, a)) note(v, ErrorCode::AxiomViolation, "∧ not commutative at " + x.name(a) + "," + x.name(b));
      if (j2(a, m2(a, b)) != a) {
        note(v, ErrorCode::AxiomViolation, "absorption ⋁{x, x∧y} fails at " + x.name(a) + "," + x.name(b));
      }
      for (ElemId c = 0; c < n; ++c) {
        if (m2(a, m2(b, c)) != m2(m2(a, b), c)) {
          note(v, ErrorCode::AxiomViolation, "∧ not associative at " + x.name(a) + "," + x.name(b) + "," + x.name(c));
        }
        if (j2(a, m2(b, c)) != m2(j2(a, b), j2(a, c))) {
          note(v, ErrorCode::AxiomViolation,
               "distributivity ⋁{x, y∧z} fails at " + x.name(a) + "," + x.name(b) + "," + x.name(c));
        }
        if (m2(a, j2(b, c)) != j2(m2(a, b), m2(a, c))) {
          note(v, ErrorCode::AxiomViolation,
               "distributivity x∧⋁{y,z} fails at " + x.name(a) + "," + x.name(b) + "," + x.name(c));
        }
      }
    }
  }
  if (n > TopologyAlgebra::exhaustive_limit) return v;
  // Subset laws via join tables built one low bit at a time.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<ElemId> join(subsets), rhs(subsets);
  join[0] = zero;
  for (Mask s = 1; s < subsets; ++s) join[s] = j2(join[s & (s - 1)], static_cast<ElemId>(low(s)));
  for (ElemId a = 0; a < n; ++a) {
    rhs[0] = zero;
    for (Mask s = 1; s < subsets; ++s) rhs[s] = j2(rhs[s & (s - 1)], m2(a, static_cast<ElemId>(low(s))));
    for (Mask s = 0; s < subsets; ++s) {
      if (m2(a, join[s]) != rhs[s]) {
        note(v, ErrorCode::AxiomViolation, "distributivity x∧⋁S fails at x=" + x.name(a) + ", S=" + subset_name(x, s));
      }
      if (m2(a, j2(a, join[s])) != a) {
        note(v, ErrorCode::AxiomViolation, "absorption x∧⋁{x,S} fails at x=" + x.name(a) + ", S=" + subset_name(x, s));
      }
    }
  }
  return v;
}

SubAlgebra subalgebra(const TopologyAlgebra& x, ElemId y) {
  if (y >= x.size()) throw Error(ErrorCode::NotAnElement, "index " + std::to_string(y));
  SubAlgebra s;
  s.top_in_parent = y;
  s.carrier = x.down_set(y);
  s.embed = members(s.carrier);
  std::vector<std::string> names;
  for (auto e : s.embed) names.push_back(x.name(e));
  std::vector<std::vector<bool>> leq(names.size(), std::vector<bool>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) leq[i][j] = x.leq(s.embed[i], s.embed[j]);
  }
  s.algebra = TopologyAlgebra::from_order(std::move(names), leq);
  return s;
}

SubAlgebra intersect_subalgebras(const TopologyAlgebra& x, const SubAlgebra& y, const SubAlgebra& z) {
  auto s = subalgebra(x, x.meet(y.top_in_parent, z.top_in_parent));
  if (s.carrier != (y.carrier & z.carrier)) {
    throw Error(ErrorCode::AxiomViolation, "intersection of subalgebras is not (1_Y ∧ 1_Z)^≤");
  }
  return s;
}

bool integrally_cofinal(const TopologyAlgebra& x, Mask part, Mask whole) {
  const Mask nonzero = ~bit(x.bottom());
  for (auto z : members(whole & nonzero)) {
    if ((x.down_set(z) & part & nonzero) == 0) return false;
  }
  return true;
}

SubAlgebra glued_union(const TopologyAlgebra& x, const std::vector<SubAlgebra>& ys) {
  Mask tops = 0, part = 0;
  for (const auto& y : ys) {
    tops |= bit(y.top_in_parent);
    part |= y.carrier;
  }
  auto z = subalgebra(x, x.join_of(tops));
  if ((part & ~z.carrier) != 0) throw Error(ErrorCode::AxiomViolation, "a member escapes the glued union");
  if (!integrally_cofinal(x, part, z.carrier)) {
    throw Error(ErrorCode::AxiomViolation, "union is not integrally cofinal in the glued union");
  }
  return z;
}

AlgebraHom::AlgebraHom(AlgebraRef src, AlgebraRef dst, std::vector<ElemId> map)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
  auto v = violations(*src_, *dst_, map_);
  if (!v.empty()) throw ValidationError(std::move(v));
}

AlgebraHom AlgebraHom::identity(AlgebraRef x) {
  std::vector<ElemId> m(x->size());
  for (ElemId i = 0; i < m.size(); ++i) m[i] = i;
  return AlgebraHom(x, x, std::move(m));
}

std::vector<Violation> AlgebraHom::violations(const TopologyAlgebra& src, const TopologyAlgebra& dst,
                                              const std::vector<ElemId>& map) {
  std::vector<Violation> v;
  if (map.size() != src.size()) {
    note(v, ErrorCode::HomInvalid, "table size differs from the source");
    return v;
  }
  for (ElemId a = 0; a < map.size(); ++a) {
    if (map[a] >= dst.size()) {
      note(v, ErrorCode::HomInvalid, src.name(a) + " leaves the target");
      return v;
    }
  }
  if (map[src.top()] != dst.top()) note(v, ErrorCode::HomInvalid, "f(1) ≠ 1");
  if (map[src.bottom()] != dst.bottom()) note(v, ErrorCode::HomInvalid, "f(0) ≠ 0");
  for (ElemId a = 0; a < src.size(); ++a) {
    for (ElemId b = 0; b < src.size(); ++b) {
      if (map[src.meet(a, b)] != dst.meet(map[a], map[b])) {
        note(v, ErrorCode::HomInvalid, "∧ not preserved at " + src.name(a) + "," + src.name(b));
      }
      if (map[src.join(a, b)] != dst.join(map[a], map[b])) {
        note(v, ErrorCode::HomInvalid, "∨ not preserved at " + src.name(a) + "," + src.name(b));
      }
    }
  }
  if (src.size() > TopologyAlgebra::exhaustive_limit) return v;
  const std::size_t subsets = std::size_t{1} << src.size();
  std::vector<ElemId> lhs(subsets), rhs(subsets);
  lhs[0] = src.bottom();
  rhs[0] = dst.bottom();
  for (Mask s = 1; s < subsets; ++s) {
    auto l = static_cast<ElemId>(low(s));
    lhs[s] = src.join(lhs[s & (s - 1)], l);
    rhs[s] = dst.join(rhs[s & (s - 1)], map[l]);
    if (map[lhs[s]] != rhs[s]) note(v, ErrorCode::HomInvalid, "⋁ not preserved at " + subset_name(src, s));
  }
  return v;
}

Mask AlgebraHom::preimage(Mask s) const {
  Mask out = 0;
  for (ElemId y = 0; y < map_.size(); ++y) {
    if (has(s, map_[y])) out |= bit(y);
  }
  return out;
}

bool is_particle(const TopologyAlgebra& x, Mask p) {
  if ((p & ~x.all()) != 0) return false;
  if (!has(p, x.top()) || has(p, x.bottom())) return false;
  for (auto a : members(p)) {
    if ((x.up_set(a) & ~p) != 0) return false;
    for (auto b : members(p)) {
      if (!has(p, x.meet(a, b))) return false;
    }
  }
  return !has(p, x.join_of(x.all() & ~p));
}

std::vector<Mask> particles(const TopologyAlgebra& x) {
  std::vector<ElemId> order(x.size());
  for (ElemId i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](ElemId a, ElemId b) {
    return std::popcount(x.up_set(a)) < std::popcount(x.up_set(b));
  });
  std::vector<Mask> found;
  // Up-sets: an element may join only once everything above it has.
  auto go = [&](auto&& self, std::size_t k, Mask cur) -> void {
    if (k == order.size()) {
      if (is_particle(x, cur)) found.push_back(cur);
      return;
    }
    ElemId a = order[k];
    self(self, k + 1, cur);
    if ((x.up_set(a) & ~bit(a) & ~cur) == 0) self(self, k + 1, cur | bit(a));
  };
  go(go, 0, 0);
  std::sort(found.begin(), found.end(), [](Mask a, Mask b) { return members(a) < members(b); });
  return found;
}

std::size_t SetRepresentation::index_of(Mask p) const {
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (particles[i] == p) return i;
  }
  throw Error(ErrorCode::NotAParticle, "mask " + std::to_string(p));
}

SetRepresentation set_representation(const TopologyAlgebra& x, std::vector<Mask> ps) {
  SetRepresentation t;
  t.particles = std::move(ps);
  t.t.assign(x.size(), 0);
  for (std::size_t i = 0; i < t.particles.size(); ++i) {
    for (auto a : members(t.particles[i])) t.t[a] |= bit(i);
  }
  return t;
}

SetRepresentation set_representation(const TopologyAlgebra& x) { return set_representation(x, particles(x)); }

RepresentationCheck verify_set_representation(const TopologyAlgebra& x, const SetRepresentation& t) {
  RepresentationCheck r;
  const std::size_t n = x.size();
  for (ElemId a = 0; a < n; ++a) {
    for (ElemId b = 0; b < n; ++b) {
      if (t.t[x.meet(a, b)] != (t.t[a] & t.t[b])) {
        r.meets = false;
        note(r.violations, ErrorCode::AxiomViolation, "T of " + x.name(a) + " ∧ " + x.name(b));
      }
      if (t.t[x.join(a, b)] != (t.t[a] | t.t[b])) {
        r.joins = false;
        note(r.violations, ErrorCode::AxiomViolation, "T of " + x.name(a) + " ∨ " + x.name(b));
      }
    }
  }
  if (t.t[x.bottom()] != 0) {
    r.joins = false;
    note(r.violations, ErrorCode::AxiomViolation, "T of the empty join");
  }
  if (n > TopologyAlgebra::exhaustive_limit) return r;
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<ElemId> join(subsets);
  std::vector<Mask> uni(subsets);
  join[0] = x.bottom();
  uni[0] = 0;
  for (Mask s = 1; s < subsets; ++s) {
    auto l = static_cast<ElemId>(low(s));
    join[s] = x.join(join[s & (s - 1)], l);
    uni[s] = uni[s & (s - 1)] | t.t[l];
    if (t.t[join[s]] != uni[s]) {
      r.joins = false;
      note(r.violations, ErrorCode::AxiomViolation, "T of ⋁" + subset_name(x, s));
    }
  }
  return r;
}

PointMap patl_of_hom(const AlgebraHom& f, const SetRepresentation& src_t, const SetRepresentation& dst_t) {
  const auto& y = *f.src();
  PointMap pm;
  for (Mask p : dst_t.particles) {
    Mask q = f.preimage(p);
    if (!is_particle(y, q)) throw Error(ErrorCode::HomInvalid, "preimage " + subset_name(y, q) + " is not a particle");
    pm.image.push_back(src_t.index_of(q));
  }
  pm.continuous = true;
  for (ElemId e = 0; e < y.size(); ++e) {
    Mask pre = 0;
    for (std::size_t i = 0; i < pm.image.size(); ++i) {
      if (has(src_t.t[e], pm.image[i])) pre |= bit(i);
    }
    if (pre != dst_t.t[f(e)]) pm.continuous = false;
  }
  return pm;
}

std::vector<std::vector<std::size_t>> t_hom(const AlgebraHom& f, const SetRepresentation& src_t,
                                            const SetRepresentation& dst_t) {
  auto pm = patl_of_hom(f, src_t, dst_t);
  std::vector<std::vector<std::size_t>> out;
  for (ElemId e = 0; e < f.src()->size(); ++e) {
    auto target = members(src_t.t[e]);
    std::vector<std::size_t> comp;
    for (auto p : members(dst_t.t[f(e)])) {
      auto it = std::find(target.begin(), target.end(), pm.image[p]);
      if (it == target.end()) throw Error(ErrorCode::HomInvalid, "T^f leaves T_" + f.src()->name(e));
      comp.push_back(static_cast<std::size_t>(it - target.begin()));
    }
    out.push_back(std::move(comp));
  }
  return out;
}

AlgebraPredicates algebra_predicates(const TopologyAlgebra& x, const SetRepresentation& t) {
  AlgebraPredicates r;
  std::vector<Mask> sorted = t.t;
  std::sort(sorted.begin(), sorted.end());
  r.topological = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  r.separatable = true;
  for (std::size_t i = 0; i < t.particles.size() && r.separatable; ++i) {
    for (std::size_t j = i + 1; j < t.particles.size() && r.separatable; ++j) {
      bool split = false;
      for (auto a : members(t.particles[i])) {
        for (auto b : members(t.particles[j])) split |= x.meet(a, b) == x.bottom();
      }
      r.separatable = split;
    }
  }
  return r;
}

AlgebraPredicates algebra_predicates(const TopologyAlgebra& x) { return algebra_predicates(x, set_representation(x)); }

void sort_opens(std::vector<Mask>& opens) {
  std::sort(opens.begin(), opens.end(), [](Mask a, Mask b) {
    auto pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return members(a) < members(b);
  });
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
}

std::vector<Violation> ClassicalSpace::violations(std::size_t points, const std::vector<Mask>& opens) {
  std::vector<Violation> v;
  if (points > 64) {
    note(v, ErrorCode::NotATopology, "more than 64 points");
    return v;
  }
  const Mask full = points == 64 ? ~Mask{0} : bit(points) - 1;
  std::vector<Mask> sorted = opens;
  std::sort(sorted.begin(), sorted.end());
  auto present = [&](Mask u) { return std::binary_search(sorted.begin(), sorted.end(), u); };
  for (Mask u : opens) {
    if ((u & ~full) != 0) note(v, ErrorCode::NotATopology, "open " + std::to_string(u) + " leaves the point set");
  }
  if (!present(0)) note(v, ErrorCode::NotATopology, "∅ is not open");
  if (!present(full)) note(v, ErrorCode::NotATopology, "the whole space is not open");
  for (Mask u : sorted) {
    for (Mask w : sorted) {
      if (!present(u | w)) note(v, ErrorCode::NotATopology, "union of " + std::to_string(u) + " and " + std::to_string(w));
      if (!present(u & w)) note(v, ErrorCode::NotATopology, "intersection of " + std::to_string(u) + " and " + std::to_string(w));
    }
  }
  return v;
}

ClassicalSpace::ClassicalSpace(FinSet points, std::vector<Mask> opens) : points_(std::move(points)) {
  auto v = violations(points_.size(), opens);
  if (!v.empty()) throw ValidationError(std::move(v));
  sort_opens(opens);
  opens_ = std::move(opens);
}

std::string ClassicalSpace::open_name(Mask u) const {
  std::string out = "{";
  bool first = true;
  for (auto i : members(u)) {
    if (!first) out += ",";
    out += points_[i].to_string();
    first = false;
  }
  return out + "}";
}

TopologyAlgebra from_topology(const ClassicalSpace& m) {
  const auto& o = m.opens();
  std::vector<std::string> names;
  for (Mask u : o) names.push_back(m.open_name(u));
  std::vector<std::vector<bool>> leq(o.size(), std::vector<bool>(o.size()));
  for (std::size_t i = 0; i < o.size(); ++i) {
    for (std::size_t j = 0; j < o.size(); ++j) leq[i][j] = (o[i] & ~o[j]) == 0;
  }
  return TopologyAlgebra::from_order(std::move(names), leq);
}

Mask point_particle(const ClassicalSpace& m, std::size_t a) {
  Mask p = 0;
  for (std::size_t i = 0; i < m.opens().size(); ++i) {
    if (has(m.opens()[i], a)) p |= bit(i);
  }
  return p;
}

FinSet letter_points(std::size_t n) {
  std::vector<Atom> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(std::string(1, static_cast<char>('a' + i)));
  return FinSet(std::move(v));
}

std::vector<ClassicalSpace> topology_corpus(std::size_t n) {
  if (n > 4) throw Error(ErrorCode::ShapeMismatch, "corpus is limited to 4 points");
  const Mask full = bit(n) - 1;
  std::vector<Mask> middle;
  for (Mask u = 1; u < full; ++u) middle.push_back(u);
  std::vector<std::vector<Mask>> families;
  const std::size_t k = middle.size();
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << k); ++choice) {
    std::vector<bool> open(full + 1, false);
    open[0] = open[full] = true;
    for (std::size_t i = 0; i < k; ++i) {
      if ((choice >> i) & 1u) open[middle[i]] = true;
    }
    bool closed = true;
    for (Mask u = 0; u <= full && closed; ++u) {
      if (!open[u]) continue;
      for (Mask w = u + 1; w <= full; ++w) {
        if (open[w] && (!open[u | w] || !open[u & w])) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    std::vector<Mask> opens;
    for (Mask u = 0; u <= full; ++u) {
      if (open[u]) opens.push_back(u);
    }
    sort_opens(opens);
    families.push_back(std::move(opens));
  }
  std::sort(families.begin(), families.end());
  std::vector<ClassicalSpace> out;
  auto pts = letter_points(n);
  for (auto& f : families) out.emplace_back(pts, std::move(f));
  return out;
}

}  // namespace sheafkit
