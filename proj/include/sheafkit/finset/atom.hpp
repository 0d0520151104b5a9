#pragma once

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sheafkit {

/// Element of a finite set: either a labelled leaf or a tuple of atoms.
///
/// Tuples carry the structure produced by products (coordinate tuples) and
/// coproducts (a (tag, atom) pair), so constructed sets stay readable.
class Atom {
 public:
  Atom() = default;
  explicit Atom(std::string label) : label_(std::move(label)) {}
  Atom(const char* label) : label_(label) {}  // NOLINT: implicit for literals

  static Atom tuple(std::vector<Atom> parts);
  static Atom tagged(std::size_t tag, const Atom& inner);

  bool is_tuple() const noexcept { return parts_ != nullptr; }
  const std::string& label() const noexcept { return label_; }
  std::span<const Atom> parts() const noexcept;

  /// Leaves print as their label, tuples as "(a,b,...)".
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

 private:
  std::string label_;
  std::shared_ptr<const std::vector<Atom>> parts_;
};

}  // namespace sheafkit
