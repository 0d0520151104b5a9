#pragma once

#include <optional>
#include <vector>

#include "sheafkit/error.hpp"
#include "sheafkit/fincat/category.hpp"

namespace sheafkit {

/// Functor as a pair of validated index tables.
class Functor {
 public:
  Functor() = default;
  /// Throws ValidationError (NotAFunctor) listing every broken condition.
  Functor(CategoryRef src, CategoryRef dst, std::vector<ObjId> ob, std::vector<MorId> mor);

  static Functor identity(CategoryRef c);

  const CategoryRef& src() const noexcept { return src_; }
  const CategoryRef& dst() const noexcept { return dst_; }
  ObjId ob(ObjId a) const { return ob_.at(a); }
  MorId mor(MorId m) const { return mor_.at(m); }
  const std::vector<ObjId>& ob_table() const noexcept { return ob_; }
  const std::vector<MorId>& mor_table() const noexcept { return mor_; }

  friend bool operator==(const Functor& a, const Functor& b);

 private:
  CategoryRef src_, dst_;
  std::vector<ObjId> ob_;
  std::vector<MorId> mor_;
};

/// Every violated functor condition; empty when the tables form a functor.
std::vector<Violation> functor_violations(const FiniteCategory& src, const FiniteCategory& dst,
                                          const std::vector<ObjId>& ob,
                                          const std::vector<MorId>& mor);

/// G ∘ F. Throws ShapeMismatch.
Functor compose(const Functor& g, const Functor& f);

struct FunctorPredicates {
  bool faithful = false;
  bool full = false;
  bool embedding = false;  // faithful and injective on objects
  bool dense = false;      // every target object isomorphic to an image object
  bool surjective = false; // full and surjective on objects
};

FunctorPredicates functor_predicates(const Functor& f);

/// An isomorphism of categories a → b, if any (backtracking search).
std::optional<Functor> find_isomorphism(const CategoryRef& a, const CategoryRef& b);

/// Natural transformation between parallel functors.
class NatTrans {
 public:
  NatTrans() = default;
  /// Throws ShapeMismatch or NaturalityViolation.
  NatTrans(Functor from, Functor to, std::vector<MorId> components);

  static NatTrans identity(const Functor& f);

  const Functor& from() const noexcept { return from_; }
  const Functor& to() const noexcept { return to_; }
  MorId at(ObjId a) const { return components_.at(a); }
  const std::vector<MorId>& components() const noexcept { return components_; }

  friend bool operator==(const NatTrans& a, const NatTrans& b);

 private:
  Functor from_, to_;
  std::vector<MorId> components_;
};

/// (β ∘ α)(A) = β(A) ∘ α(A).
NatTrans vertical(const NatTrans& beta, const NatTrans& alpha);
/// β * α for α: F → G (C → D) and β: H → K (D → E), componentwise
/// K(α_A) ∘ β_{F A}. Both diagonal readings are compared; throws
/// NaturalityViolation if they differ.
NatTrans horizontal(const NatTrans& beta, const NatTrans& alpha);

/// The category of arrows of a base category.
///
/// Objects are the base morphisms in base order. A morphism f → g is a
/// commuting square (φ, ψ) with ψ ∘ f = g ∘ φ.
struct MorCategory {
  CategoryRef category;
  CategoryRef base;
  struct Square {
    MorId phi, psi;
  };
  std::vector<Square> square;  // per morphism of `category`

  ObjId object_of(MorId m) const { return m; }
  MorId object_morphism(ObjId o) const { return o; }
  /// The morphism (φ, ψ) : f → g, if that square commutes.
  std::optional<MorId> find(MorId f, MorId g, MorId phi, MorId psi) const;
};

MorCategory mor_category(const CategoryRef& c);

struct CanonicalFunctors {
  Functor dom;  // Mor(C) → C
  Functor cod;  // Mor(C) → C
  Functor id;   // C → Mor(C)
};

CanonicalFunctors canonical_functors(const MorCategory& m);

/// DP : Mor(Mor(C)) → Mor(C), a square to its diagonal.
Functor diagonal_plane(const MorCategory& mor, const MorCategory& mor2);

/// Mor(F) : Mor(C) → Mor(D), (φ, ψ) ↦ (F φ, F ψ).
Functor mor_lift(const Functor& f, const MorCategory& src, const MorCategory& dst);

/// A nat α: F → G as a functor C → Mor(D): A ↦ α(A), u ↦ (F u, G u).
Functor nat_as_functor(const NatTrans& alpha, const MorCategory& mor_dst);

/// β * α computed as DP ∘ Mor(β) ∘ α, as a functor C → Mor(E).
Functor horizontal_via_diagonal(const NatTrans& beta, const NatTrans& alpha,
                                const MorCategory& mor_d, const MorCategory& mor_e,
                                const MorCategory& mor2_e);

}  // namespace sheafkit
