#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sheafkit/sheaf/stalks.hpp"

namespace sheafkit {

struct Sheafification {
  Presheaf sheaf;
  SheafNat theta;         // F → F̄
  std::size_t passes = 0; // 1, or 2 when one pass does not yet glue
  bool theta_independent = true;  // S_O ∘ R_O agreed with α_sec for every covering
};

/// F̄ as a union of images inside the section space, with θ_F. The covering
/// step runs a second time when the first result fails the gluing axiom.
Sheafification sheafify(const Presheaf& f, Coverings policy = Coverings::Antichains);

/// One covering step on its own.
Sheafification sheafify_once(const Presheaf& f, Coverings policy = Coverings::Antichains);

/// The unique ᾱ : F̄ → G with ᾱ ∘ θ_F = α, for a sheaf G. Throws
/// NaturalityViolation when α is not natural or no such ᾱ exists.
SheafNat factor_through_sheafification(const Sheafification& s, const Presheaf& g, const SheafNat& alpha);

/// ᾱ : F̄ → Ḡ for α : F → G.
SheafNat sheafify_nat(const Sheafification& sf, const Sheafification& sg, const SheafNat& alpha);

/// Calls `visit` on every natural transformation F → G, stopping after
/// `limit` of them. Returns the number visited.
std::size_t enumerate_nats(const Presheaf& f, const Presheaf& g, const std::function<void(const SheafNat&)>& visit,
                           std::size_t limit = static_cast<std::size_t>(-1));

/// The first nat F → G satisfying `pred`, in enumeration order.
std::optional<SheafNat> find_nat(const Presheaf& f, const Presheaf& g, const std::function<bool(const SheafNat&)>& pred);

struct QuotientSheaf {
  Presheaf quotient;    // F/~
  SheafNat projection;  // F → F/~
  Sheafification sheafified;
};

/// labels[x][i] is the class of the i-th element of F(x); classes need only
/// be distinguishable. Throws IncompatiblePartition with a witness.
QuotientSheaf quotient_sheaf(const Presheaf& f, const std::vector<std::vector<std::size_t>>& labels);

}  // namespace sheafkit
