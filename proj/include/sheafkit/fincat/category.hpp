#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sheafkit {

using ObjId = std::size_t;
using MorId = std::size_t;

/// Category tables as read from a file, before validation.
struct RawCategory {
  struct Morphism {
    std::string id, dom, cod;
  };
  struct Composite {
    std::string g, f, gf;  // gf = g ∘ f
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Composite> comp;
};

class FiniteCategory;
using CategoryRef = std::shared_ptr<const FiniteCategory>;

/// Incremental construction by index. `build` validates everything.
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId dom, ObjId cod);
  /// Adds the identity morphism of `o` under the given name.
  MorId add_identity(ObjId o, std::string name);
  void set_identity(ObjId o, MorId m);
  void set_composite(MorId g, MorId f, MorId gf);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  /// Composites with an identity factor are filled in when absent.
  /// Throws ValidationError listing every violated axiom instance.
  FiniteCategory build(bool fill_identity_composites = true) const;
  CategoryRef build_ref(bool fill_identity_composites = true) const;

 private:
  friend class FiniteCategory;
  struct Mor {
    std::string name;
    ObjId dom, cod;
  };
  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::vector<std::optional<MorId>> identities_;
  std::vector<std::pair<std::pair<MorId, MorId>, MorId>> composites_;
};

/// Finite category with composition stored sparsely by (g, f).
class FiniteCategory {
 public:
  /// Throws ValidationError on bad ids or any broken axiom instance.
  static FiniteCategory from_raw(const RawCategory& raw, bool fill_identity_composites = true);

  std::size_t object_count() const noexcept { return object_names_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  const std::string& object_name(ObjId a) const { return object_names_.at(a); }
  const std::string& morphism_name(MorId m) const { return morphisms_.at(m).name; }
  /// Throw UnknownObject / UnknownMorphism.
  ObjId object(std::string_view name) const;
  MorId morphism(std::string_view name) const;
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  ObjId dom(MorId m) const { return morphisms_.at(m).dom; }
  ObjId cod(MorId m) const { return morphisms_.at(m).cod; }
  MorId id(ObjId a) const { return identities_.at(a); }
  bool is_identity(MorId m) const { return identities_[dom(m)] == m; }

  std::optional<MorId> try_compose(MorId g, MorId f) const;
  /// g ∘ f. Throws ShapeMismatch when cod f ≠ dom g.
  MorId compose(MorId g, MorId f) const;

  std::span<const MorId> hom(ObjId a, ObjId b) const { return homs_[a * object_count() + b]; }

  RawCategory to_raw() const;

 private:
  friend class CategoryBuilder;
  FiniteCategory() = default;
  static std::uint64_t key(MorId g, MorId f) { return (std::uint64_t{g} << 32) | f; }

  struct Mor {
    std::string name;
    ObjId dom, cod;
  };
  std::vector<std::string> object_names_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identities_;
  std::unordered_map<std::uint64_t, MorId> comp_;
  std::vector<std::vector<MorId>> homs_;
  std::map<std::string, ObjId, std::less<>> object_index_;
  std::map<std::string, MorId, std::less<>> morphism_index_;
};

// Small constructions.

/// One object, one identity.
CategoryRef single_category(const std::string& object = "A");
/// Objects only, identities only.
CategoryRef discrete_category(std::span<const std::string> objects);
/// Poset category from a reflexive-transitive relation given as leq[a][b].
/// Morphism names are "a<=b"; identities are "id_a".
CategoryRef poset_category(std::span<const std::string> objects,
                           const std::vector<std::vector<bool>>& leq);
/// Chain 0 ≤ 1 ≤ ... ≤ n-1 with objects named by their index.
CategoryRef chain_category(std::size_t n);
/// Table reversal: same ids, dom/cod swapped, comp^op(f, g) = comp(g, f).
CategoryRef opposite(const FiniteCategory& c);
/// Subcategory on the given morphisms (objects are their endpoints plus
/// `extra_objects`). Throws ValidationError when not closed.
CategoryRef subcategory(const FiniteCategory& c, std::span<const MorId> morphisms,
                        std::span<const ObjId> extra_objects = {});
/// Full subcategory on the given objects, in the given order.
CategoryRef full_subcategory(const FiniteCategory& c, std::span<const ObjId> objects);

// Morphism and object predicates, by exhaustive cancellation tests.

struct MorphismPredicates {
  bool is_mono = false;
  bool is_epi = false;
  bool is_iso = false;
};

MorphismPredicates morphism_predicates(const FiniteCategory& c, MorId f);
/// The two-sided inverse of f, if any.
std::optional<MorId> inverse_of(const FiniteCategory& c, MorId f);
/// An isomorphism a → b, if any.
std::optional<MorId> find_iso(const FiniteCategory& c, ObjId a, ObjId b);

struct InitialTerminal {
  std::vector<ObjId> initials;
  std::vector<ObjId> terminals;
  bool initials_isomorphic = true;
  bool terminals_isomorphic = true;
};

InitialTerminal find_initial_terminal(const FiniteCategory& c);

/// Result of a commutativity check; on failure two parallel paths with
/// different composites.
struct CommutativityReport {
  bool commutative = true;
  std::vector<MorId> path_a;
  std::vector<MorId> path_b;
};

/// Checks every pair of parallel paths of length ≥ 1 built from `edges`.
/// Throws UnknownMorphism.
CommutativityReport check_commutative(const FiniteCategory& c, std::span<const MorId> edges);

/// Composable pairs (g, f) with g ∘ f, in (g, f) order.
struct CompEntry {
  MorId g, f, gf;
};
std::vector<CompEntry> comp_table(const FiniteCategory& c);

}  // namespace sheafkit
