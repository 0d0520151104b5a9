#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "sheafkit/limits/limits.hpp"
#include "sheafkit/quotient/quotient.hpp"
#include "sheafkit/sheaf/presheaf.hpp"
#include "sheafkit/suites/suites.hpp"

namespace sheafkit::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError with the path and byte position.
Json read_json(const std::filesystem::path& path);

enum class FileKind { Category, Lattice, Space, Presheaf, Diagram, Relation };
/// Guessed from the top-level keys. Throws ParseError.
FileKind kind_of(const Json& j);

// Category files: {"objects", "morphisms": [{"id","dom","cod"}], "identities", "comp": [{"g","f","gf"}]}.
RawCategory raw_category_from_json(const Json& j);
Json category_to_json(const FiniteCategory& c);
CategoryRef load_category(const std::filesystem::path& path);

// Lattice files {"elements", "leq": [[a,b]...]} and space files {"points", "opens": [[...]...]}.
TopologyAlgebra lattice_from_json(const Json& j);
ClassicalSpace space_from_json(const Json& j);
Json lattice_to_json(const TopologyAlgebra& x);
Json space_to_json(const ClassicalSpace& m);
/// A lattice file, or a space file through from_topology.
AlgebraRef algebra_from_json(const Json& j);
AlgebraRef load_algebra(const std::filesystem::path& path);

/// Presheaf files: {"algebra": path, "sets": {elem: [atoms]}, "maps": {"x<=y": {atom: atom}},
/// "variance": "pre"|"co"}. Maps follow the variance: F(y) → F(x) for "pre".
/// `algebra` is resolved against `base`. An inline algebra object is accepted too.
Presheaf presheaf_from_json(const Json& j, const std::filesystem::path& base);
/// `algebra_ref` is written as the "algebra" field.
Json presheaf_to_json(const Presheaf& f, const Json& algebra_ref);

/// Concrete diagram {"category": path, "sets": {obj: [atoms]}, "maps": {morph: {atom: atom}}}.
SetDiagram diagram_from_json(const Json& j, const std::filesystem::path& base);
/// Abstract diagram {"category": shape path, "target": path, "ob": {obj: obj}, "mor": {morph: morph}}.
Functor functor_from_json(const Json& j, const std::filesystem::path& base);
bool is_abstract_diagram(const Json& j);

/// Relation files: explicit classes, or "ob_classes" with "cochain":
/// {class: {"rep": id, "generators": {obj: morph}}}.
CatRelation relation_from_json(const Json& j, const std::filesystem::path& base);

Json finset_to_json(const FinSet& s);
Json map_to_json(const FinSetMap& f);
Json violations_to_json(const std::vector<Violation>& v);
Json suite_to_json(const suites::SuiteReport& r);
std::string suite_to_text(const suites::SuiteReport& r);

}  // namespace sheafkit::io
