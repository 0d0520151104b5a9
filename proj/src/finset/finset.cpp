#include "sheafkit/finset/finset.hpp"

#include <limits>

#include "sheafkit/error.hpp"

namespace sheafkit {

FinSet::FinSet() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

FinSet::FinSet(std::vector<Atom> elements) {
  auto d = std::make_shared<Data>();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!d->index.emplace(elements[i], i).second) {
      throw Error(ErrorCode::DuplicateId, "repeated set element " + elements[i].to_string());
    }
  }
  d->elements = std::move(elements);
  data_ = std::move(d);
}

std::optional<std::size_t> FinSet::find(const Atom& a) const {
  auto it = data_->index.find(a);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index_of(const Atom& a) const {
  auto i = find(a);
  if (!i) throw Error(ErrorCode::NotAnElement, a.to_string() + " not in " + to_string());
  return *i;
}

std::string FinSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += (*this)[i].to_string();
  }
  return out + "}";
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
}

FinSetMap::FinSetMap(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) {
    throw Error(ErrorCode::NotAMap, "table size differs from domain size");
  }
  for (std::size_t v : table_) {
    if (v >= cod_.size()) throw Error(ErrorCode::NotAMap, "value outside codomain");
  }
}

FinSetMap FinSetMap::identity(const FinSet& s) {
  std::vector<std::size_t> t(s.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return FinSetMap(s, s, std::move(t));
}

FinSetMap FinSetMap::from_pairs(FinSet dom, FinSet cod, const std::map<Atom, Atom>& pairs) {
  std::vector<std::size_t> t(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto it = pairs.find(dom[i]);
    if (it == pairs.end()) {
      throw Error(ErrorCode::NotAMap, "no value for " + dom[i].to_string());
    }
    auto j = cod.find(it->second);
    if (!j) throw Error(ErrorCode::NotAMap, it->second.to_string() + " not in codomain");
    t[i] = *j;
  }
  for (const auto& [k, v] : pairs) {
    if (!dom.contains(k)) throw Error(ErrorCode::NotAMap, k.to_string() + " not in domain");
  }
  return FinSetMap(std::move(dom), std::move(cod), std::move(t));
}

FinSetMap FinSetMap::empty_map(FinSet cod) { return FinSetMap(FinSet(), std::move(cod), {}); }

bool FinSetMap::is_injective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (std::size_t v : table_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool FinSetMap::is_surjective() const {
  std::vector<bool> seen(cod_.size(), false);
  std::size_t hit = 0;
  for (std::size_t v : table_) {
    if (!seen[v]) {
      seen[v] = true;
      ++hit;
    }
  }
  return hit == cod_.size();
}

std::string FinSetMap::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ',';
    out += dom_[i].to_string() + "->" + cod_[table_[i]].to_string();
  }
  return out + "}";
}

bool operator==(const FinSetMap& a, const FinSetMap& b) {
  return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

FinSetMap compose(const FinSetMap& g, const FinSetMap& f) {
  if (!(f.cod() == g.dom())) {
    throw Error(ErrorCode::ShapeMismatch, "composite of non-composable maps");
  }
  std::vector<std::size_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(i));
  return FinSetMap(f.dom(), g.cod(), std::move(t));
}

FinSetMap inverse(const FinSetMap& f) {
  if (!f.is_bijective()) throw Error(ErrorCode::NotAMap, "inverse of a non-bijection");
  std::vector<std::size_t> t(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) t[f(i)] = i;
  return FinSetMap(f.cod(), f.dom(), std::move(t));
}

std::size_t map_count(std::size_t dom_size, std::size_t cod_size) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dom_size; ++i) {
    if (cod_size == 0) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / cod_size) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= cod_size;
  }
  return n;
}

std::vector<FinSetMap> all_maps(const FinSet& dom, const FinSet& cod) {
  std::vector<FinSetMap> out;
  const std::size_t count = map_count(dom.size(), cod.size());
  if (count == 0) return out;
  out.reserve(count);
  std::vector<std::size_t> t(dom.size(), 0);
  while (true) {
    out.emplace_back(dom, cod, t);
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (++t[i] < cod.size()) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (t.empty()) return out;
  }
}

std::vector<bool> Subobject::mask() const {
  std::vector<bool> m(ambient().size(), false);
  for (std::size_t v : inclusion.table()) m[v] = true;
  return m;
}

Subobject subset(const FinSet& ambient, const std::vector<bool>& mask) {
  std::vector<Atom> elems;
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    if (mask[i]) {
      elems.push_back(ambient[i]);
      table.push_back(i);
    }
  }
  FinSet carrier(std::move(elems));
  return Subobject{carrier, FinSetMap(carrier, ambient, std::move(table))};
}

}  // namespace sheafkit
