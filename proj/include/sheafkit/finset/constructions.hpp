#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sheafkit/finset/finset.hpp"

namespace sheafkit {

// Limits and colimits in the category of finite sets. Everything here is a
// pure function of its inputs; element orders of the results are canonical.

/// A vertex with legs going out of it.
struct SetCone {
  FinSet vertex;
  std::vector<FinSetMap> legs;
};

/// A vertex with legs coming into it.
struct SetCocone {
  FinSet vertex;
  std::vector<FinSetMap> legs;
};

/// Cartesian product. Elements are coordinate tuples in lexicographic order;
/// the empty product is the one-point set {()}.
SetCone product(std::span<const FinSet> sets);

/// Tagged disjoint union; element (i, a) comes from sets[i]. Empty input gives ∅.
SetCocone coproduct(std::span<const FinSet> sets);

/// ⟨f_i⟩ : dom → Π, for a product cone built by `product`.
FinSetMap tuple_map(const FinSet& dom, const SetCone& prod, std::span<const FinSetMap> components);

/// [f_i] : ∐ → cod, for a coproduct cocone built by `coproduct`.
FinSetMap cotuple_map(const SetCocone& coprod, const FinSet& cod,
                      std::span<const FinSetMap> components);

/// {x : f(x) = g(x)} with its inclusion. Throws NotParallel.
Subobject equalizer(const FinSetMap& f, const FinSetMap& g);

struct SetQuotient {
  FinSet set;
  FinSetMap projection;
};

/// Quotient of `base` by the equivalence generated by `pairs` (index pairs).
/// Each class is represented by its least member in base order.
SetQuotient quotient_by_pairs(const FinSet& base,
                              std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// cod(f) modulo the equivalence generated by f(x) ~ g(x). Throws NotParallel.
SetQuotient coequalizer(const FinSetMap& f, const FinSetMap& g);

/// {(x,y) : f(x) = g(y)} for f: A → C, g: B → C. Throws ShapeMismatch.
SetCone pullback(const FinSetMap& f, const FinSetMap& g);

/// Pushout of f: C → A and g: C → B, built as a coproduct followed by a
/// coequalizer. Throws ShapeMismatch.
SetCocone pushout(const FinSetMap& f, const FinSetMap& g);

/// Multi-wedge: members B_α and, for each pair α < β, an overlap A_αβ with
/// maps B_α → A_αβ ← B_β. The diagonal A_αα = B_α is implicit.
struct MultiWedge {
  struct Overlap {
    std::size_t first = 0;
    std::size_t second = 0;
    FinSet set;
    FinSetMap from_first;
    FinSetMap from_second;
  };
  std::vector<FinSet> members;
  std::vector<Overlap> overlaps;
};

/// Dual shape: overlaps map into the members.
struct MultiCowedge {
  struct Overlap {
    std::size_t first = 0;
    std::size_t second = 0;
    FinSet set;
    FinSetMap to_first;
    FinSetMap to_second;
  };
  std::vector<FinSet> members;
  std::vector<Overlap> overlaps;
};

/// Compatible families (s_α) as member-index tuples, in lexicographic order.
/// Throws ShapeMismatch on malformed overlaps.
std::vector<std::vector<std::size_t>> compatible_families(const MultiWedge& w);

/// Paired-pullback: the limit of a multi-wedge. Elements are tuples of member atoms.
SetCone paired_limit(const MultiWedge& w);

/// Paired-pushout: the colimit of a multi-cowedge.
SetCocone paired_colimit(const MultiCowedge& w);

// Subobject calculus inside a common ambient set. Throws AmbientMismatch.

Subobject sub_union(const FinSet& ambient, std::span<const Subobject> family);
Subobject sub_intersection(const FinSet& ambient, std::span<const Subobject> family);
/// Smallest subobject D with D ∪ b = a ∪ b.
Subobject sub_difference(const Subobject& a, const Subobject& b);

/// The submorphism j with to.inclusion ∘ j = from.inclusion, if one exists.
std::optional<FinSetMap> submorphism(const Subobject& from, const Subobject& to);

struct Image {
  Subobject image;
  FinSetMap factor;  // π : dom f → Im f with f = ρ ∘ π
};

Image image(const FinSetMap& f);

// Exhaustive universal-property checks. They enumerate candidates directly and
// are meant for desk-scale inputs.

/// Number of maps m : from.vertex → to.vertex with to.legs[i] ∘ m = from.legs[i].
std::size_t count_cone_mediators(const SetCone& from, const SetCone& to);
/// Number of maps m : from.vertex → to.vertex with m ∘ from.legs[i] = to.legs[i].
std::size_t count_cocone_mediators(const SetCocone& from, const SetCocone& to);

/// A bijection between vertices commuting with all legs, if any.
std::optional<FinSetMap> cone_isomorphism(const SetCone& a, const SetCone& b);
std::optional<FinSetMap> cocone_isomorphism(const SetCocone& a, const SetCocone& b);

/// Checks against every subset of the ambient set.
bool verify_union(const FinSet& ambient, std::span<const Subobject> family, const Subobject& u);
bool verify_intersection(const FinSet& ambient, std::span<const Subobject> family,
                         const Subobject& n);
bool verify_difference(const Subobject& a, const Subobject& b, const Subobject& d);
bool verify_image(const FinSetMap& f, const Image& im);

}  // namespace sheafkit
