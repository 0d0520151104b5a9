#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafkit/fincat/set_diagram.hpp"
#include "sheafkit/topalg/algebra.hpp"

namespace sheafkit {

/// FinSet-valued functor on a topology algebra. Contravariant: a presheaf
/// with restrictions F(y) → F(x) for x ≤ y. Covariant: a copresheaf with
/// extensions F(x) → F(y).
class Presheaf {
 public:
  Presheaf() = default;
  /// `maps` is keyed by (x, y) with x ≤ y. Identities may be omitted, and so
  /// may any pair reachable by composing given maps. Throws ValidationError
  /// (NotAPresheaf).
  Presheaf(AlgebraRef algebra, Variance variance, std::vector<FinSet> sets,
           const std::map<std::pair<ElemId, ElemId>, FinSetMap>& maps);

  static Presheaf from_diagram(AlgebraRef algebra, Variance variance, const SetDiagram& d);

  const AlgebraRef& algebra() const noexcept { return algebra_; }
  const TopologyAlgebra& x() const { return *algebra_; }
  Variance variance() const noexcept { return variance_; }
  bool covariant() const noexcept { return variance_ == Variance::Covariant; }
  const FinSet& at(ElemId x) const { return sets_[x]; }
  const std::vector<FinSet>& sets() const noexcept { return sets_; }
  /// F(x ≤ y). Throws ShapeMismatch unless x ≤ y.
  const FinSetMap& map(ElemId x, ElemId y) const;

  /// Covariant diagram on the algebra's category (or its opposite).
  SetDiagram diagram() const;

  /// Same algebra, variance, sets and maps.
  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  AlgebraRef algebra_;
  Variance variance_ = Variance::Contravariant;
  std::vector<FinSet> sets_;
  std::vector<FinSetMap> maps_;  // index x * n + y
};

/// Components per element. Natural when every square over x ≤ y commutes.
using SheafNat = std::vector<FinSetMap>;
std::vector<Violation> nat_violations(const Presheaf& f, const Presheaf& g, const SheafNat& a);
SheafNat identity_nat(const Presheaf& f);
SheafNat compose_nat(const SheafNat& b, const SheafNat& a);
bool componentwise_bijective(const SheafNat& a);

struct GluingCheck {
  bool ok = true;
  bool bottom_ok = true;      // F(0) terminal (sheaf) or initial (cosheaf)
  std::optional<ElemId> element;
  Mask covering = 0;
  std::string detail;
  std::size_t coverings_checked = 0;
};

enum class Coverings {
  Antichains,  // non-redundant coverings, equivalent for the gluing axiom
  All,         // every subset S with ⋁S = x
};

/// Coverings of x under the chosen policy, ascending by mask.
std::vector<Mask> coverings_of(const TopologyAlgebra& x, ElemId e, Coverings policy);

/// Gluing axiom with paired limits (presheaves) or paired colimits (copresheaves).
GluingCheck check_gluing(const Presheaf& f, Coverings policy = Coverings::Antichains);
/// Throws ShapeMismatch on the wrong variance.
bool is_sheaf(const Presheaf& f, Coverings policy = Coverings::Antichains);
bool is_cosheaf(const Presheaf& f, Coverings policy = Coverings::Antichains);

/// F|_{y^≤} on the subalgebra. Throws NotAnElement.
Presheaf restrict(const Presheaf& f, const SubAlgebra& y);
Presheaf restrict(const Presheaf& f, ElemId y);
/// F ∘ f for a hom f into F's algebra.
Presheaf precompose(const Presheaf& f, const AlgebraHom& h);

/// A local sheaf: a sheaf on a subalgebra of a common parent.
struct LocalSheaf {
  SubAlgebra where;
  Presheaf sheaf;
};
/// The sheaf on ∪°Y_α restricting to each member. Throws Incompatible with a
/// witness element.
Presheaf glue_local_sheaves(const TopologyAlgebra& parent, const std::vector<LocalSheaf>& family);

struct ApexReport {
  bool preapex = false;
  bool apex = false;
  std::optional<std::pair<ElemId, ElemId>> witness;  // elements identified by an iso
};
ApexReport apex_predicates(const Presheaf& f);

/// x ↦ Hom(F(x), A), restricted by precomposition. F must be covariant.
Presheaf hom_sheaf(const Presheaf& f, const FinSet& a);

/// Morphism (f, α) of sheaved algebras (X, F) → (Y, G): f : Y → X and
/// α : F ∘ f → G.
struct SheafHom {
  AlgebraHom f;
  SheafNat alpha;
};
std::vector<Violation> sheaf_hom_violations(const Presheaf& from, const Presheaf& to, const SheafHom& h);

}  // namespace sheafkit
