#pragma once

#include <vector>

#include "sheafkit/sheaf/presheaf.hpp"

namespace sheafkit {

/// Stalk (presheaf: colimit of F|_p) or costalk (copresheaf: limit of F|_p)
/// with the maps δ_p(x) for x ∈ p. germ[x] is empty when x ∉ p.
struct Stalk {
  Mask particle = 0;
  FinSet set;
  std::vector<FinSetMap> germ;  // F(x) → F_p, or F_p → F(x) for costalks
};

/// Throws NotAParticle.
Stalk stalk(const Presheaf& f, Mask p);
std::vector<Stalk> stalks(const Presheaf& f, const SetRepresentation& t);

/// Section space, fiber space and the canonical nats.
struct SectionFiber {
  SetRepresentation t;
  std::vector<Stalk> stalks;
  Presheaf sec;      // x ↦ Π_{p ∈ T_x} F_p
  Presheaf fib;      // x ↦ ∐_{p ∈ T_x} F_p
  SheafNat alpha;    // F → F_sec for presheaves, F_fib → F for copresheaves
};
SectionFiber section_fiber_spaces(const Presheaf& f);
SectionFiber section_fiber_spaces(const Presheaf& f, const SetRepresentation& t);

}  // namespace sheafkit
