#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sheafkit/finset/atom.hpp"

namespace sheafkit {

/// Finite set with a fixed element order. Copies share the element table.
class FinSet {
 public:
  FinSet();
  /// Throws DuplicateId when an atom repeats.
  explicit FinSet(std::vector<Atom> elements);
  FinSet(std::initializer_list<Atom> elements) : FinSet(std::vector<Atom>(elements)) {}

  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return data_->elements.empty(); }
  const Atom& operator[](std::size_t i) const { return data_->elements[i]; }
  std::span<const Atom> elements() const noexcept { return data_->elements; }

  std::optional<std::size_t> find(const Atom& a) const;
  /// Throws NotAnElement when absent.
  std::size_t index_of(const Atom& a) const;
  bool contains(const Atom& a) const { return find(a).has_value(); }

  std::string to_string() const;

  /// Ordered equality: same atoms in the same order.
  friend bool operator==(const FinSet& a, const FinSet& b);

 private:
  struct Data {
    std::vector<Atom> elements;
    std::map<Atom, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Total function between finite sets stored as an index table.
class FinSetMap {
 public:
  FinSetMap() = default;
  /// Throws NotAMap when the table is not total on dom or leaves cod.
  FinSetMap(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  static FinSetMap identity(const FinSet& s);
  static FinSetMap from_pairs(FinSet dom, FinSet cod, const std::map<Atom, Atom>& pairs);
  /// Unique map out of the empty set.
  static FinSetMap empty_map(FinSet cod);

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  std::size_t operator()(std::size_t i) const { return table_[i]; }
  const Atom& apply(const Atom& a) const { return cod_[table_[dom_.index_of(a)]]; }
  std::span<const std::size_t> table() const noexcept { return table_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }

  std::string to_string() const;

  friend bool operator==(const FinSetMap& a, const FinSetMap& b);

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

/// g ∘ f. Throws ShapeMismatch unless cod(f) == dom(g).
FinSetMap compose(const FinSetMap& g, const FinSetMap& f);

/// Inverse of a bijection; throws NotAMap otherwise.
FinSetMap inverse(const FinSetMap& f);

/// Every function dom → cod, in lexicographic table order.
std::vector<FinSetMap> all_maps(const FinSet& dom, const FinSet& cod);

/// Number of functions dom → cod, saturating at SIZE_MAX.
std::size_t map_count(std::size_t dom_size, std::size_t cod_size);

/// A subobject of a fixed ambient set: an injective inclusion.
struct Subobject {
  FinSet carrier;
  FinSetMap inclusion;

  const FinSet& ambient() const { return inclusion.cod(); }
  /// Image of the inclusion as an ambient index mask (ambient order).
  std::vector<bool> mask() const;
};

/// Subobject whose carrier is the listed ambient atoms, kept in ambient order.
Subobject subset(const FinSet& ambient, const std::vector<bool>& mask);

}  // namespace sheafkit
