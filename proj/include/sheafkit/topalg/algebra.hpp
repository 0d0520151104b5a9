#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafkit/error.hpp"
#include "sheafkit/fincat/category.hpp"
#include "sheafkit/finset/finset.hpp"

namespace sheafkit {

using ElemId = std::size_t;
/// Subset of a small index range (elements, particles or points), bit i = index i.
using Mask = std::uint64_t;

inline bool has(Mask m, std::size_t i) { return (m >> i) & 1u; }
inline Mask bit(std::size_t i) { return Mask{1} << i; }
std::vector<std::size_t> members(Mask m);

/// Finite frame. Meets and joins are derived from the order.
class TopologyAlgebra {
 public:
  static constexpr std::size_t max_elements = 64;
  /// Exhaustive subset checks run up to this size; larger carriers use the
  /// binary laws, which are equivalent on finite lattices.
  static constexpr std::size_t exhaustive_limit = 20;

  TopologyAlgebra() = default;

  /// From element names and order pairs (a ≤ b); the reflexive-transitive
  /// closure is taken. Throws ValidationError with NotAPoset, MissingMeet,
  /// MissingJoin or AxiomViolation entries.
  static TopologyAlgebra from_order(std::vector<std::string> names,
                                    const std::vector<std::pair<std::string, std::string>>& leq);
  static TopologyAlgebra from_order(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq);
  /// Violations without throwing.
  static std::vector<Violation> violations(const std::vector<std::string>& names,
                                           const std::vector<std::vector<bool>>& leq);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(ElemId x) const { return names_[x]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Throws NotAnElement.
  ElemId element(const std::string& name) const;
  std::optional<ElemId> find(const std::string& name) const;

  ElemId top() const noexcept { return top_; }
  ElemId bottom() const noexcept { return bottom_; }
  bool leq(ElemId a, ElemId b) const { return has(up_[a], b); }
  ElemId meet(ElemId a, ElemId b) const { return meet_[a * size() + b]; }
  ElemId join(ElemId a, ElemId b) const { return join_[a * size() + b]; }
  ElemId join_of(Mask s) const;
  ElemId meet_of(Mask s) const;
  Mask up_set(ElemId a) const { return up_[a]; }
  Mask down_set(ElemId a) const { return down_[a]; }
  Mask all() const noexcept { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }

  /// Subsets S with ⋁S = x, ascending by mask.
  std::vector<Mask> coverings(ElemId x) const;

  /// Poset category with morphisms "x<=y" and "id_x"; object ids equal element ids.
  const CategoryRef& category() const noexcept { return category_; }
  const CategoryRef& category_op() const noexcept { return category_op_; }

  friend bool operator==(const TopologyAlgebra& a, const TopologyAlgebra& b) {
    return a.names_ == b.names_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Mask> up_, down_;
  std::vector<ElemId> meet_, join_;
  ElemId top_ = 0, bottom_ = 0;
  CategoryRef category_, category_op_;

  static bool build(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq,
                    TopologyAlgebra& out, std::vector<Violation>& v);
};

using AlgebraRef = std::shared_ptr<const TopologyAlgebra>;
AlgebraRef make_algebra(TopologyAlgebra x);

/// Result of checking the equational laws over every element and subset.
std::vector<Violation> axiom_violations(const TopologyAlgebra& x);

/// y^≤ with its embedding into the parent.
struct SubAlgebra {
  TopologyAlgebra algebra;
  ElemId top_in_parent = 0;
  std::vector<ElemId> embed;  // sub element -> parent element
  Mask carrier = 0;           // in the parent
};

/// Throws NotAnElement.
SubAlgebra subalgebra(const TopologyAlgebra& x, ElemId y);
/// (1_Y ∧ 1_Z)^≤, checked against the carrier intersection.
SubAlgebra intersect_subalgebras(const TopologyAlgebra& x, const SubAlgebra& y, const SubAlgebra& z);
/// (⋁ 1_{Y_α})^≤, with the integrally cofinal condition checked.
SubAlgebra glued_union(const TopologyAlgebra& x, const std::vector<SubAlgebra>& ys);
/// ∀ z ∈ Z − {0}, ∃ y ∈ part − {0}, y ≤ z.
bool integrally_cofinal(const TopologyAlgebra& x, Mask part, Mask whole);

/// Frame homomorphism src → dst as an element table.
class AlgebraHom {
 public:
  AlgebraHom() = default;
  /// Throws ValidationError(HomInvalid).
  AlgebraHom(AlgebraRef src, AlgebraRef dst, std::vector<ElemId> map);
  static AlgebraHom identity(AlgebraRef x);
  static std::vector<Violation> violations(const TopologyAlgebra& src, const TopologyAlgebra& dst,
                                           const std::vector<ElemId>& map);

  const AlgebraRef& src() const noexcept { return src_; }
  const AlgebraRef& dst() const noexcept { return dst_; }
  ElemId operator()(ElemId y) const { return map_[y]; }
  const std::vector<ElemId>& table() const noexcept { return map_; }
  /// {y : f(y) ∈ s}.
  Mask preimage(Mask s) const;

 private:
  AlgebraRef src_, dst_;
  std::vector<ElemId> map_;
};

// Particles

/// The three particle conditions plus 0 ∉ p. Strong local cofinality is
/// decided through the complement: it holds iff ⋁(X − p) ∉ p.
bool is_particle(const TopologyAlgebra& x, Mask p);
/// All particles, ascending by member list.
std::vector<Mask> particles(const TopologyAlgebra& x);

/// Particles of an algebra together with T_x as masks over particle indices.
struct SetRepresentation {
  std::vector<Mask> particles;
  std::vector<Mask> t;  // t[x] = {p : x ∈ p}
  std::size_t index_of(Mask p) const;
};
SetRepresentation set_representation(const TopologyAlgebra& x);
SetRepresentation set_representation(const TopologyAlgebra& x, std::vector<Mask> particles);

/// T_{x∧y} = T_x ∩ T_y for all pairs and T_{⋁S} = ⋃ T_s for all subsets.
struct RepresentationCheck {
  bool meets = true;
  bool joins = true;
  std::vector<Violation> violations;
  bool ok() const { return meets && joins; }
};
RepresentationCheck verify_set_representation(const TopologyAlgebra& x, const SetRepresentation& t);

/// Patl_f : Patl_dst → Patl_src, p ↦ f⁻¹(p), as particle indices.
struct PointMap {
  std::vector<std::size_t> image;
  bool continuous = false;  // preimage of T_y is T_{f(y)} for every y
};
/// Throws HomInvalid when a preimage is not a particle.
PointMap patl_of_hom(const AlgebraHom& f, const SetRepresentation& src_t, const SetRepresentation& dst_t);

/// Components of T^f : T^X ∘ f → T^Y. Component y sends the i-th particle of
/// T^X_{f(y)} to the position of its preimage within T^Y_y.
std::vector<std::vector<std::size_t>> t_hom(const AlgebraHom& f, const SetRepresentation& src_t,
                                            const SetRepresentation& dst_t);

struct AlgebraPredicates {
  bool topological = false;
  bool separatable = false;
};
AlgebraPredicates algebra_predicates(const TopologyAlgebra& x, const SetRepresentation& t);
AlgebraPredicates algebra_predicates(const TopologyAlgebra& x);

// Classical finite spaces

/// Points plus opens as point masks. Opens are kept in canonical order:
/// by size, then by member list.
class ClassicalSpace {
 public:
  ClassicalSpace() = default;
  /// Throws ValidationError(NotATopology) with a witness.
  ClassicalSpace(FinSet points, std::vector<Mask> opens);
  static std::vector<Violation> violations(std::size_t points, const std::vector<Mask>& opens);

  const FinSet& points() const noexcept { return points_; }
  const std::vector<Mask>& opens() const noexcept { return opens_; }
  Mask full() const { return points_.size() == 64 ? ~Mask{0} : bit(points_.size()) - 1; }
  std::string open_name(Mask u) const;

  friend bool operator==(const ClassicalSpace& a, const ClassicalSpace& b) {
    return a.points_ == b.points_ && a.opens_ == b.opens_;
  }

 private:
  FinSet points_;
  std::vector<Mask> opens_;
};

void sort_opens(std::vector<Mask>& opens);

/// Lattice of opens under inclusion; element i is opens()[i], named "{a,b}".
TopologyAlgebra from_topology(const ClassicalSpace& m);

/// p_a = {U : a ∈ U} as an element mask of from_topology(m).
Mask point_particle(const ClassicalSpace& m, std::size_t a);

/// Every topology on the points a, b, c, ... (n ≤ 4), in canonical order.
std::vector<ClassicalSpace> topology_corpus(std::size_t n);
FinSet letter_points(std::size_t n);

}  // namespace sheafkit
