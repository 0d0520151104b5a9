#pragma once

#include <string>
#include <vector>

#include "sheafkit/fincat/functor.hpp"
#include "sheafkit/finset/finset.hpp"

namespace sheafkit {

/// Covariant FinSet-valued functor on a finite shape category.
struct SetDiagram {
  CategoryRef shape;
  std::vector<FinSet> sets;     // per shape object
  std::vector<FinSetMap> maps;  // per shape morphism

  /// Throws ValidationError (NotAFunctor).
  void validate() const;
};

std::vector<Violation> set_diagram_violations(const SetDiagram& d);

enum class Variance { Covariant, Contravariant };

/// Hom_A(−) (covariant, on C) or Hom^A(−) (contravariant, on C^op).
/// Elements of each hom-set are morphism names.
SetDiagram hom_functor(const CategoryRef& c, ObjId a, Variance variance);

/// A full subcategory of FinSet on the given sets: every function is a morphism.
struct FinSetCategory {
  CategoryRef category;
  std::vector<FinSet> sets;     // per object
  std::vector<FinSetMap> maps;  // per morphism

  /// The morphism realizing `f`. Throws UnknownMorphism.
  MorId morphism_of(ObjId dom, ObjId cod, const FinSetMap& f) const;
};

FinSetCategory make_finset_category(const std::vector<FinSet>& sets,
                                    const std::vector<std::string>& names = {});

}  // namespace sheafkit
