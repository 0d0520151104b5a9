#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sheafkit/sheaf/stalks.hpp"

namespace sheafkit {

/// An apex cosheaf on a topology algebra.
class SheafSpace {
 public:
  SheafSpace() = default;
  /// Throws NotCosheaf or NotApex.
  explicit SheafSpace(Presheaf cosheaf);

  const Presheaf& cosheaf() const noexcept { return cosheaf_; }
  const TopologyAlgebra& x() const { return cosheaf_.x(); }
  const AlgebraRef& algebra() const noexcept { return cosheaf_.algebra(); }

 private:
  Presheaf cosheaf_;
};

/// The inclusion copresheaf of the opens, on from_topology(m).
Presheaf inclusion_cosheaf(const ClassicalSpace& m);
SheafSpace to_sheaf_space(const ClassicalSpace& m);

/// Points F(1), opens the images of F(x ≤ 1). The union and intersection
/// laws of the images are checked pairwise before building the space.
ClassicalSpace to_classical_space(const SheafSpace& s);

/// Iso of sheaved algebras (X, F) → (OP_{F(1)}, in): x ↦ Im F(x ≤ 1) and
/// each F(x) onto that image.
struct SpaceIso {
  AlgebraHom algebra;   // X → from_topology(to_classical_space(s)), x ↦ Im F(x ≤ 1)
  SheafNat components;  // F(x) → in(Im F(x ≤ 1))
  SheafSpace target;
};
SpaceIso classical_round_trip(const SheafSpace& s);
/// Natural bijective components over an order isomorphism of algebras.
bool verify_space_iso(const SheafSpace& s, const SpaceIso& iso);

/// Point map as a table of point indices. Throws NotContinuous with a witness open.
SheafHom map_to_sheaf(const ClassicalSpace& m, const ClassicalSpace& n, const std::vector<std::size_t>& f);
/// α(1_Y) as a point table, with continuity re-derived from the images.
std::vector<std::size_t> map_to_classical(const SheafSpace& from, const SheafSpace& to, const SheafHom& h);
bool is_continuous(const ClassicalSpace& m, const ClassicalSpace& n, const std::vector<std::size_t>& f);

/// T^X: x ↦ T_x with inclusions. Particles are named by their member lists.
Presheaf representation_cosheaf(const TopologyAlgebra& x, const SetRepresentation& t);
std::string particle_name(const TopologyAlgebra& x, Mask p);

struct SpacePredicates {
  bool separatable = false;
  bool sober = false;
  bool thin = false;     // costalks of the space's cosheaf are singletons
  bool t_thin = false;   // costalks of T^X are singletons
  bool hausdorff_classical = false;
  bool hausdorff_sheaf = false;  // separatable and thin
  bool discrete = false;

  // Cross-checks; each should hold.
  bool hausdorff_iff_separatable_sober = false;
  bool hausdorff_iff_separatable_thin = false;
  bool separatable_sober_gives_thin = false;
  bool separatable_thin_gives_sober = false;
  bool separatable_gives_t_thin = false;
  bool hausdorff_iff_discrete = false;
  bool cross_checks_hold() const;
};
SpacePredicates space_predicates(const SheafSpace& s);
SpacePredicates space_predicates(const ClassicalSpace& m);
bool hausdorff(const ClassicalSpace& m);

/// For each x, whether the images of the costalk maps over T_x partition F(x).
/// Returns the first element where this fails.
std::optional<ElemId> partition_failure(const SheafSpace& s);

struct AbsoluteQuotient {
  Presheaf t;        // T^X
  SheafHom alpha;    // (id_X, α) : (X, F) → (X, T^X)
  SheafNat beta;     // right inverse of α
};
/// Throws NotSeparatable, or NotSeparatable with the element where the
/// partition fails.
AbsoluteQuotient absolute_quotient_to_t(const SheafSpace& s);

/// f = id and α has a natural right inverse.
bool is_absolute_quotient(const Presheaf& from, const Presheaf& to, const SheafHom& h);
/// f is an order embedding, and x ∈ f(Y) iff T_x is the preimage of some T_y under Patl_f.
bool is_quotient(const Presheaf& from, const Presheaf& to, const SheafHom& h);

}  // namespace sheafkit
