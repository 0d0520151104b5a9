#pragma once

#include <optional>
#include <random>

#include "sheafkit/fincat/set_diagram.hpp"
#include "sheafkit/sheaf/presheaf.hpp"

namespace sheafkit::gen {

using Rng = std::mt19937_64;

enum class ShapeKind { Poset, ParallelPair, Idempotent };

/// Random shape category with at most `max_objects` objects and at most
/// `max_arrows` non-identity morphisms.
CategoryRef random_shape(Rng& rng, std::size_t max_objects, std::size_t max_arrows, ShapeKind kind);
CategoryRef random_shape(Rng& rng, std::size_t max_objects, std::size_t max_arrows);

/// Random poset on n objects (transitive closure of a random DAG), with
/// at most `max_arrows` strict relations.
CategoryRef random_poset(Rng& rng, std::size_t n, std::size_t max_arrows);

/// A random FinSet-valued functor on `shape` with sets of at most `max_set`
/// elements, found by randomized backtracking. Empty when the chosen sizes
/// admit no functor within the search budget.
std::optional<SetDiagram> random_set_diagram(Rng& rng, const CategoryRef& shape, std::size_t max_set,
                                             bool allow_empty_sets = true);

/// The cyclic group Z_n as a one-object category; morphisms "r0".."r<n-1>".
CategoryRef cyclic_group(std::size_t n);

/// `base` with object a replaced by copies[a] isomorphic copies "a#i".
/// Hom((a,i),(b,j)) = Hom(a,b), morphisms named "u@i>j".
struct Inflation {
  CategoryRef category;
  std::vector<std::vector<ObjId>> classes;  // copies of each base object
};
Inflation inflate(const CategoryRef& base, const std::vector<std::size_t>& copies);
/// Random base (poset, parallel pair, idempotent or cyclic group) with 1..3
/// copies per object, at least one class having two or more.
Inflation random_inflation(Rng& rng);

/// Random (co)presheaf on a topology algebra through random_set_diagram.
std::optional<Presheaf> random_presheaf(Rng& rng, const AlgebraRef& x, Variance variance, std::size_t max_set,
                                        bool allow_empty_sets = true);

/// Set of `n` atoms named prefix0, prefix1, ...
FinSet numbered_set(std::size_t n, const std::string& prefix);

}  // namespace sheafkit::gen
