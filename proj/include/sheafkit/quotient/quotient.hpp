#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sheafkit/fincat/functor.hpp"

namespace sheafkit {

/// A pair of partitions of the objects and morphisms of a base category.
/// Classes are ordered by their least member; members ascend within a class.
class CatRelation {
 public:
  CatRelation() = default;
  /// Throws NotAPartition unless the classes cover each index exactly once.
  CatRelation(CategoryRef base, std::vector<std::vector<ObjId>> ob_classes,
              std::vector<std::vector<MorId>> mor_classes);

  /// The identity relation (all classes singletons).
  static CatRelation identity(CategoryRef base);
  /// ~_F for a functor F.
  static CatRelation from_functor(const Functor& f);

  const CategoryRef& base() const noexcept { return base_; }
  const std::vector<std::vector<ObjId>>& ob_classes() const noexcept { return ob_classes_; }
  const std::vector<std::vector<MorId>>& mor_classes() const noexcept { return mor_classes_; }
  std::size_t ob_class(ObjId a) const { return ob_of_[a]; }
  std::size_t mor_class(MorId m) const { return mor_of_[m]; }

 private:
  CategoryRef base_;
  std::vector<std::vector<ObjId>> ob_classes_;
  std::vector<std::vector<MorId>> mor_classes_;
  std::vector<std::size_t> ob_of_, mor_of_;
};

struct RelationReport {
  bool dom_cod = false;
  bool identities = false;
  bool composition = false;
  bool feasible = false;
  std::vector<Violation> violations;

  bool precategorical() const { return dom_cod && identities && composition; }
  bool categorical() const { return precategorical() && feasible; }
};

RelationReport check_relation(const CatRelation& r);

struct Quotient {
  CategoryRef category;
  Functor projection;
};

/// C/~ with its projection. With `check_identities` off the id-preservation
/// condition is not consulted; the other three conditions are still required.
/// Throws NotCategorical.
Quotient quotient_category(const CatRelation& r, bool check_identities = true);

/// The unique ρ with ρ ∘ [−] = F when ~ ⇒ ~_F. Throws NotCategorical or
/// ShapeMismatch.
Functor factor_through_quotient(const Quotient& q, const Functor& f);
/// Number of functors ρ : C/~ → D with ρ ∘ [−] = F, by exhaustive search.
std::size_t count_factorizations(const Quotient& q, const Functor& f);

/// A coherent family of isomorphisms inside one object class.
class CochainGroup {
 public:
  CochainGroup() = default;
  /// Throws CochainConditionViolated (or GeneratorNotIso for non-isos).
  CochainGroup(const FiniteCategory& c, std::vector<ObjId> members,
               std::map<std::pair<ObjId, ObjId>, MorId> isos);

  const std::vector<ObjId>& members() const noexcept { return members_; }
  MorId at(ObjId a, ObjId b) const { return isos_.at({a, b}); }
  const std::map<std::pair<ObjId, ObjId>, MorId>& table() const noexcept { return isos_; }

 private:
  std::vector<ObjId> members_;
  std::map<std::pair<ObjId, ObjId>, MorId> isos_;
};

/// φ_BC := gen_C ∘ gen_B⁻¹ from generators rep → member (the generator at
/// the representative may be omitted). Throws GeneratorNotIso.
CochainGroup span_cochain(const FiniteCategory& c, const std::vector<ObjId>& members, ObjId rep,
                          const std::map<ObjId, MorId>& generators);

/// Every class consists of pairwise isomorphic objects.
bool strong_isomorphism_condition(const FiniteCategory& c, const std::vector<std::vector<ObjId>>& ob_classes);

/// f ~ g ⟺ φ(cod f, cod g) ∘ f ∘ φ(dom g, dom f) = g. `groups[k]` belongs to
/// ob_classes[k]. Throws NotStronglyIso or CochainConditionViolated, and
/// NotCategorical if the result is not categorical.
CatRelation relation_from_cochain(const CategoryRef& c, const std::vector<std::vector<ObjId>>& ob_classes,
                                  const std::vector<CochainGroup>& groups);

/// Each restriction Hom(A, B) → Hom([A], [B]) is a bijection.
bool fully_faithful_on_classes(const Quotient& q);

struct Sketch {
  CategoryRef category;     // full subcategory on the representatives
  Functor to_quotient;      // object/morphism ↦ class
  Functor from_quotient;    // class ↦ representative member
  bool round_trips = false; // both composites are identities
};

/// Sketch on representatives χ (one per class, in class order) with its
/// isomorphism to the quotient. Throws NotStronglyIso.
Sketch sketch(const Quotient& q, const CatRelation& r, const std::vector<ObjId>& representatives);

/// No two distinct objects are isomorphic.
bool is_skeletal(const FiniteCategory& c);

/// Isomorphism classes of objects, each ascending, ordered by least member.
std::vector<std::vector<ObjId>> iso_classes(const FiniteCategory& c);

}  // namespace sheafkit
