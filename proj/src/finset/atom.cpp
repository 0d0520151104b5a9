#include "sheafkit/finset/atom.hpp"

namespace sheafkit {

Atom Atom::tuple(std::vector<Atom> parts) {
  Atom a;
  a.parts_ = std::make_shared<const std::vector<Atom>>(std::move(parts));
  return a;
}

Atom Atom::tagged(std::size_t tag, const Atom& inner) {
  return tuple({Atom(std::to_string(tag)), inner});
}

std::span<const Atom> Atom::parts() const noexcept {
  if (!parts_) return {};
  return {parts_->data(), parts_->size()};
}

std::string Atom::to_string() const {
  if (!parts_) return label_;
  std::string out = "(";
  for (std::size_t i = 0; i < parts_->size(); ++i) {
    if (i) out += ',';
    out += (*parts_)[i].to_string();
  }
  out += ')';
  return out;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.is_tuple() != b.is_tuple()) {
    return a.is_tuple() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (!a.is_tuple()) return a.label_ <=> b.label_;
  if (a.parts_ == b.parts_) return std::strong_ordering::equal;
  const auto& x = *a.parts_;
  const auto& y = *b.parts_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return x.size() <=> y.size();
}

}  // namespace sheafkit
