#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sheafkit/fincat/functor.hpp"
#include "sheafkit/fincat/set_diagram.hpp"
#include "sheafkit/finset/constructions.hpp"

namespace sheafkit {

/// Cone (or cocone) over a diagram F : J → C inside a finite category.
struct Cone {
  ObjId vertex = 0;
  std::vector<MorId> legs;  // per shape object
  friend bool operator==(const Cone&, const Cone&) = default;
};

/// con^F (or the cocone category) with its cones indexed like its objects.
struct ConeCategory {
  CategoryRef category;
  std::vector<Cone> cones;         // per object of `category`
  std::vector<MorId> vertex_map;   // per morphism: the underlying morphism of C
};

/// Every cone over F, enumerated over vertices in object order and leg
/// choices in hom order, pruned on naturality.
ConeCategory cone_category(const Functor& f);
/// Cocones: legs F(j) → vertex.
ConeCategory cocone_category(const Functor& f);

bool is_cone(const Functor& f, const Cone& c);
bool is_cocone(const Functor& f, const Cone& c);

struct LimitResult {
  std::optional<Cone> limit;
  /// Other terminal cones and cone isomorphisms from `limit` to each.
  std::vector<Cone> others;
  std::vector<MorId> isomorphisms;
  std::size_t cone_count = 0;
};

/// Terminal object of con^F. The returned cone has the least vertex name.
LimitResult limit_abstract(const Functor& f);
/// Initial object of the cocone category.
LimitResult colimit_abstract(const Functor& f);

/// The unique cone morphism from `cone` to `limit`. Throws NoLimit.
MorId mediating_morphism(const Functor& f, const Cone& limit, const Cone& cone);

/// Diagram reversal: F^op : J^op → C^op with the same tables.
Functor opposite_functor(const Functor& f, const CategoryRef& shape_op, const CategoryRef& target_op);

struct SecondPicture {
  bool is_cone = false;
  bool every_cone_factors = false;  // some cone morphism into the candidate from every cone
  bool legs_jointly_monic = false;
  bool terminal = false;
  bool holds() const { return is_cone && every_cone_factors && legs_jointly_monic; }
};

/// Checks a candidate against the factorization-plus-monic characterization
/// and, independently, against terminality in con^F.
SecondPicture verify_second_picture(const Functor& f, const Cone& candidate);

/// Concrete limit through a product followed by an equalizer.
SetCone limit_finset(const SetDiagram& d);
/// Concrete colimit through a coproduct followed by a coequalizer.
SetCocone colimit_finset(const SetDiagram& d);

/// `candidate` must have one leg per shape object. Cones from one- and
/// two-point vertices are enumerated exhaustively.
SecondPicture verify_second_picture(const SetDiagram& d, const SetCone& candidate);

/// Hom_K(−) ∘ F has limit (Hom(K, L), δ ∘ −) in FinSet.
bool verify_hom_preservation(const Functor& f, const Cone& candidate, ObjId k);
bool verify_hom_preservation_all(const Functor& f, const Cone& candidate);

/// Hom_K(−) ∘ F as a set diagram on the shape of F.
SetDiagram hom_diagram(const Functor& f, ObjId k);

struct ConeTransport {
  bool isomorphic = false;
  std::size_t cones = 0;
  std::size_t slice_objects = 0;
  CategoryRef slice;  // objects: morphisms into L; morphisms: squares (φ, id_L)
};

/// con^F ≅ Cod⁻¹(L, id_L), checked by building functors both ways and
/// comparing both composites with identities. Throws NoLimit.
ConeTransport verify_cone_transport(const Functor& f);

}  // namespace sheafkit
