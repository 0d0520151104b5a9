#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sheafkit/error.hpp"
#include "sheafkit/io/io.hpp"
#include "sheafkit/sheaf/sheafify.hpp"
#include "sheafkit/space/space.hpp"
#include "sheafkit/suites/suites.hpp"

using namespace sheafkit;
using io::Json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2;

struct Outcome {
  Json report;
  int status = kOk;
};

struct Options {
  std::vector<std::string> inputs;
  std::string format = "text";
  std::optional<std::size_t> max_size;
};

// Input problems surface as this, so they map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto loading(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string names_of(const TopologyAlgebra& x, Mask s) {
  std::string out = "{";
  bool first = true;
  for (auto e : members(s)) {
    out += (first ? "" : ",") + x.name(e);
    first = false;
  }
  return out + "}";
}

Json algebra_ref(const Json& j) { return j.contains("algebra") ? j.at("algebra") : Json(); }

Json predicates_json(const SpacePredicates& p) {
  Json j;
  j["separatable"] = p.separatable;
  j["sober"] = p.sober;
  j["thin"] = p.thin;
  j["t_thin"] = p.t_thin;
  j["hausdorff_classical"] = p.hausdorff_classical;
  j["hausdorff_sheaf"] = p.hausdorff_sheaf;
  j["discrete"] = p.discrete;
  j["cross_checks"] = {
      {"hausdorff_iff_separatable_sober", p.hausdorff_iff_separatable_sober},
      {"hausdorff_iff_separatable_thin", p.hausdorff_iff_separatable_thin},
      {"separatable_sober_gives_thin", p.separatable_sober_gives_thin},
      {"separatable_thin_gives_sober", p.separatable_thin_gives_sober},
      {"separatable_gives_t_thin", p.separatable_gives_t_thin},
      {"hausdorff_iff_discrete", p.hausdorff_iff_discrete},
  };
  j["cross_checks_hold"] = p.cross_checks_hold();
  return j;
}

Outcome validate_cat(const std::string& path) {
  auto raw = loading(path, [&] { return io::raw_category_from_json(io::read_json(path)); });
  Outcome o;
  try {
    auto c = FiniteCategory::from_raw(raw);
    auto it = find_initial_terminal(c);
    o.report["valid"] = true;
    o.report["objects"] = c.object_count();
    o.report["morphisms"] = c.morphism_count();
    o.report["composites"] = comp_table(c).size();
    o.report["initial"] = Json::array();
    for (auto a : it.initials) o.report["initial"].push_back(c.object_name(a));
    o.report["terminal"] = Json::array();
    for (auto a : it.terminals) o.report["terminal"].push_back(c.object_name(a));
  } catch (const ValidationError& e) {
    o.report["valid"] = false;
    o.report["violations"] = io::violations_to_json(e.violations());
    o.status = kCheckFailed;
  }
  return o;
}

Json set_cone_json(const FinSet& vertex, const std::vector<FinSetMap>& legs, const FiniteCategory& shape) {
  Json j;
  j["vertex"] = io::finset_to_json(vertex);
  j["legs"] = Json::object();
  for (ObjId o = 0; o < shape.object_count(); ++o) j["legs"][shape.object_name(o)] = io::map_to_json(legs[o]);
  return j;
}

Json cone_json(const Functor& f, const std::optional<Cone>& c) {
  if (!c) return Json();
  const auto& t = *f.dst();
  Json j;
  j["vertex"] = t.object_name(c->vertex);
  j["legs"] = Json::object();
  for (ObjId o = 0; o < f.src()->object_count(); ++o) j["legs"][f.src()->object_name(o)] = t.morphism_name(c->legs[o]);
  return j;
}

Outcome limit(const std::string& path) {
  auto j = loading(path, [&] { return io::read_json(path); });
  auto base = fs::path(path).parent_path();
  Outcome o;
  if (io::is_abstract_diagram(j)) {
    auto f = loading(path, [&] { return io::functor_from_json(j, base); });
    auto lim = limit_abstract(f);
    auto col = colimit_abstract(f);
    o.report["kind"] = "abstract";
    o.report["cones"] = lim.cone_count;
    o.report["limit"] = cone_json(f, lim.limit);
    o.report["colimit"] = cone_json(f, col.limit);
    if (lim.limit) {
      auto sp = verify_second_picture(f, *lim.limit);
      o.report["second_picture"] = {{"holds", sp.holds()}, {"terminal", sp.terminal}};
      if (!sp.holds() || !sp.terminal) o.status = kCheckFailed;
    }
    return o;
  }
  auto d = loading(path, [&] { return io::diagram_from_json(j, base); });
  auto lim = limit_finset(d);
  auto col = colimit_finset(d);
  auto sp = verify_second_picture(d, lim);
  o.report["kind"] = "concrete";
  o.report["limit"] = set_cone_json(lim.vertex, lim.legs, *d.shape);
  o.report["colimit"] = {{"vertex", io::finset_to_json(col.vertex)}};
  o.report["second_picture"] = {{"holds", sp.holds()}, {"terminal", sp.terminal}};
  if (!sp.holds() || !sp.terminal) o.status = kCheckFailed;
  return o;
}

Outcome quotient(const std::string& path) {
  auto j = loading(path, [&] { return io::read_json(path); });
  auto r = loading(path, [&] { return io::relation_from_json(j, fs::path(path).parent_path()); });
  auto rep = check_relation(r);
  Outcome o;
  o.report["dom_cod"] = rep.dom_cod;
  o.report["identities"] = rep.identities;
  o.report["composition"] = rep.composition;
  o.report["feasible"] = rep.feasible;
  o.report["categorical"] = rep.categorical();
  o.report["violations"] = io::violations_to_json(rep.violations);
  if (!rep.categorical()) {
    o.status = kCheckFailed;
    return o;
  }
  auto q = quotient_category(r);
  o.report["quotient"] = io::category_to_json(*q.category);
  const auto& c = *r.base();
  if (strong_isomorphism_condition(c, r.ob_classes())) {
    o.report["fully_faithful"] = fully_faithful_on_classes(q);
    std::vector<ObjId> reps;
    for (const auto& cls : r.ob_classes()) reps.push_back(cls.front());
    auto s = sketch(q, r, reps);
    o.report["sketch_round_trips"] = s.round_trips;
    if (!s.round_trips || !fully_faithful_on_classes(q)) o.status = kCheckFailed;
  }
  return o;
}

Outcome particles_cmd(const std::string& path) {
  auto x = loading(path, [&] { return io::load_algebra(path); });
  auto t = set_representation(*x);
  auto check = verify_set_representation(*x, t);
  auto preds = algebra_predicates(*x, t);
  Outcome o;
  o.report["elements"] = x->size();
  o.report["particle_count"] = t.particles.size();
  o.report["particles"] = Json::array();
  for (Mask p : t.particles) o.report["particles"].push_back(names_of(*x, p));
  o.report["representation"] = {{"meets", check.meets}, {"joins", check.joins}};
  o.report["topological"] = preds.topological;
  o.report["separatable"] = preds.separatable;
  if (!check.ok()) o.status = kCheckFailed;
  return o;
}

Presheaf load_presheaf(const std::string& path, Json* raw = nullptr) {
  return loading(path, [&] {
    auto j = io::read_json(path);
    if (raw) *raw = j;
    return io::presheaf_from_json(j, fs::path(path).parent_path());
  });
}

Outcome sheaf_check(const std::string& path) {
  auto f = load_presheaf(path);
  auto g = check_gluing(f);
  auto apex = apex_predicates(f);
  Outcome o;
  o.report["variance"] = f.covariant() ? "co" : "pre";
  o.report[f.covariant() ? "cosheaf" : "sheaf"] = g.ok;
  o.report["bottom_ok"] = g.bottom_ok;
  o.report["coverings_checked"] = g.coverings_checked;
  if (!g.ok) {
    Json w;
    if (g.element) w["element"] = f.x().name(*g.element);
    w["covering"] = names_of(f.x(), g.covering);
    w["detail"] = g.detail;
    o.report["witness"] = w;
    o.status = kCheckFailed;
  }
  o.report["preapex"] = apex.preapex;
  o.report["apex"] = apex.apex;
  return o;
}

Outcome sheafify_cmd(const std::string& path) {
  Json raw;
  auto f = load_presheaf(path, &raw);
  if (f.covariant()) throw InputError(path + ": sheafify needs a presheaf (variance \"pre\")");
  auto s = sheafify(f);
  Outcome o;
  o.report["passes"] = s.passes;
  o.report["is_sheaf"] = is_sheaf(s.sheaf);
  o.report["theta_bijective"] = componentwise_bijective(s.theta);
  o.report["sheaf"] = io::presheaf_to_json(s.sheaf, algebra_ref(raw));
  o.report["theta"] = Json::object();
  for (ElemId e = 0; e < f.x().size(); ++e) o.report["theta"][f.x().name(e)] = io::map_to_json(s.theta[e]);
  if (!is_sheaf(s.sheaf)) o.status = kCheckFailed;
  return o;
}

Outcome stalks_cmd(const std::string& path) {
  auto f = load_presheaf(path);
  auto t = set_representation(f.x());
  Outcome o;
  o.report["variance"] = f.covariant() ? "co" : "pre";
  o.report["stalks"] = Json::array();
  for (const auto& s : stalks(f, t)) {
    Json j;
    j["particle"] = names_of(f.x(), s.particle);
    j["set"] = io::finset_to_json(s.set);
    j["maps"] = Json::object();
    for (auto e : members(s.particle)) j["maps"][f.x().name(e)] = io::map_to_json(s.germ[e]);
    o.report["stalks"].push_back(j);
  }
  return o;
}

// A space file, or a cosheaf file read as a sheaf space.
std::variant<ClassicalSpace, Presheaf> load_space_or_cosheaf(const std::string& path, Json& raw) {
  raw = loading(path, [&] { return io::read_json(path); });
  auto kind = loading(path, [&] { return io::kind_of(raw); });
  if (kind == io::FileKind::Space) return loading(path, [&] { return io::space_from_json(raw); });
  if (kind == io::FileKind::Presheaf) {
    return loading(path, [&] { return io::presheaf_from_json(raw, fs::path(path).parent_path()); });
  }
  throw InputError(path + ": expected a space or cosheaf file");
}

// Builds the sheaf space, reporting a non-space as a failed check.
std::optional<SheafSpace> as_space(const Presheaf& f, Outcome& o) {
  try {
    return SheafSpace(f);
  } catch (const Error& e) {
    o.report["space"] = false;
    o.report["reason"] = e.what();
    o.status = kCheckFailed;
    return std::nullopt;
  }
}

Outcome space_convert(const std::string& path) {
  Json raw;
  auto in = load_space_or_cosheaf(path, raw);
  Outcome o;
  if (auto* m = std::get_if<ClassicalSpace>(&in)) {
    auto s = to_sheaf_space(*m);
    bool round = to_classical_space(s) == *m;
    o.report["from"] = "classical";
    o.report["classical"] = io::space_to_json(*m);
    o.report["cosheaf"] = io::presheaf_to_json(s.cosheaf(), io::lattice_to_json(s.x()));
    o.report["round_trip"] = round;
    o.report["predicates"] = predicates_json(space_predicates(s));
    if (!round) o.status = kCheckFailed;
    return o;
  }
  auto s = as_space(std::get<Presheaf>(in), o);
  if (!s) return o;
  auto m = to_classical_space(*s);
  bool iso = verify_space_iso(*s, classical_round_trip(*s));
  o.report["from"] = "sheaf";
  o.report["classical"] = io::space_to_json(m);
  o.report["cosheaf"] = io::presheaf_to_json(s->cosheaf(), algebra_ref(raw));
  o.report["round_trip"] = iso;
  o.report["predicates"] = predicates_json(space_predicates(*s));
  if (!iso) o.status = kCheckFailed;
  return o;
}

Outcome predicates_cmd(const std::string& path) {
  Json raw;
  auto in = load_space_or_cosheaf(path, raw);
  Outcome o;
  SpacePredicates p;
  if (auto* m = std::get_if<ClassicalSpace>(&in)) {
    p = space_predicates(*m);
  } else {
    auto s = as_space(std::get<Presheaf>(in), o);
    if (!s) return o;
    p = space_predicates(*s);
  }
  o.report = predicates_json(p);
  if (!p.cross_checks_hold()) o.status = kCheckFailed;
  return o;
}

Outcome theorem_suite(const std::string& id, const Options& opt) {
  suites::SuiteOptions so;
  if (opt.max_size) so.max_points = *opt.max_size;
  auto ids = suites::suite_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw InputError("unknown suite " + id);
  auto r = suites::run_suite(id, so);
  return {io::suite_to_json(r), r.ok() ? kOk : kCheckFailed};
}

Outcome gen_topologies(std::size_t n) {
  if (n > 4) throw InputError("gen-topologies supports n ≤ 4");
  auto corpus = topology_corpus(n);
  Outcome o;
  o.report["n"] = n;
  o.report["count"] = corpus.size();
  o.report["spaces"] = Json::array();
  for (const auto& m : corpus) o.report["spaces"].push_back(io::space_to_json(m));
  return o;
}

void render_text(std::ostream& out, const Json& j, int indent) {
  std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render_text(out, v, indent + 1);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render_text(out, v, indent + 1);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const std::string& command, const std::vector<std::pair<std::string, Outcome>>& results,
          const std::string& format) {
  if (format == "json") {
    Json out;
    out["command"] = command;
    out["ok"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.second.status == kOk; });
    out["results"] = Json::array();
    for (const auto& [name, r] : results) {
      Json e;
      e["input"] = name;
      e["status"] = r.status;
      e["report"] = r.report;
      out["results"].push_back(e);
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& [name, r] : results) {
    std::cout << command << " " << name << ": " << (r.status == kOk ? "ok" : "FAILED") << "\n";
    render_text(std::cout, r.report, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite category, sheaf and space checks"};
  app.require_subcommand(1);
  Options opt;
  std::string suite_id;
  std::size_t gen_n = 0;

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", opt.inputs, "Input files");
    if (needs_input) in->required();
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-size", opt.max_size, "Cap on exhaustive searches");
  };
  const std::vector<std::pair<std::string, std::string>> file_commands = {
      {"validate-cat", "Validate category tables"},
      {"limit", "Limit and colimit of a diagram"},
      {"quotient", "Quotient category of a relation"},
      {"particles", "Particles of a lattice or space"},
      {"sheaf-check", "Gluing axiom and apex predicates"},
      {"sheafify", "Sheafification with its unit"},
      {"stalks", "Stalks or costalks at every particle"},
      {"space-convert", "Classical space to cosheaf or back"},
      {"predicates", "Separation predicates of a space"},
  };
  for (const auto& [name, desc] : file_commands) common(app.add_subcommand(name, desc), true);
  auto* suite = app.add_subcommand("theorem-suite", "Run a property suite by id");
  suite->add_option("id", suite_id, "Suite id");
  suite->add_option("--suite", suite_id, "Suite id");
  common(suite, false);
  auto* gen = app.add_subcommand("gen-topologies", "All topologies on n points");
  gen->add_option("n", gen_n, "Number of points")->required();
  common(gen, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::vector<std::pair<std::string, Outcome>> results;
  try {
    if (command == "theorem-suite") {
      if (suite_id.empty()) throw InputError("theorem-suite needs an id");
      results.emplace_back(suite_id, theorem_suite(suite_id, opt));
    } else if (command == "gen-topologies") {
      results.emplace_back(std::to_string(gen_n), gen_topologies(gen_n));
    } else {
      for (const auto& path : opt.inputs) {
        Outcome o;
        if (command == "validate-cat") o = validate_cat(path);
        else if (command == "limit") o = limit(path);
        else if (command == "quotient") o = quotient(path);
        else if (command == "particles") o = particles_cmd(path);
        else if (command == "sheaf-check") o = sheaf_check(path);
        else if (command == "sheafify") o = sheafify_cmd(path);
        else if (command == "stalks") o = stalks_cmd(path);
        else if (command == "space-convert") o = space_convert(path);
        else o = predicates_cmd(path);
        results.emplace_back(path, std::move(o));
      }
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  emit(command, results, opt.format);
  int status = kOk;
  for (const auto& [_, r] : results) status = std::max(status, r.status);
  return status;
}
