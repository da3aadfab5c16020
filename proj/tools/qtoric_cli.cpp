// Command-line front end.  Four subcommands: `polytope` prints a dual
// cyclic polytope with its face data, `enumerate` lists real or integer
// characteristic-matrix classes, `classify` folds the integer classes into
// symmetry orbits and runs the ring battery on the orbit representatives,
// and `reproduce` reruns one stored computation and diffs it against the
// catalog.
//
// Exit codes: 0 success, 1 assertion diff in a recipe, 2 usage error,
// 3 internal invariant violation.  Identical flags produce byte-identical
// output whatever the worker count; all parallel results are assembled in
// a fixed order.

#include "qtoric/catalog.hpp"
#include "qtoric/connectsum.hpp"
#include "qtoric/isomorphism.hpp"
#include "qtoric/recipes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qtoric;

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.output, std::ios::binary);
  if (!os) fail("cannot open output file: " + cfg.output);
  os << text;
}

json mat_rows(const Mat& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols; ++j) row.push_back(M.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string face_str(const FacetSet& f) {
  std::string s = "{";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "}";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// usage-level argument check, distinct from library invariants
bool valid_nm(int n, int m, std::string& why) {
  if (n < 1 || m < n + 1) {
    why = "need n >= 1 and m >= n+1";
    return false;
  }
  if (n == 1 && m != 2) {
    why = "a 1-dimensional polytope is a segment, use m = 2";
    return false;
  }
  if (m > 20) {
    why = "facet count out of range (m <= 20)";
    return false;
  }
  return true;
}

int cmd_polytope(int n, int m, const RunConfig& cfg) {
  auto P = dual_cyclic(n, m);
  auto fd = face_data(P);
  if (cfg.format == "json") {
    json j = json::parse(polytope_to_json(P));
    j["f_vector"] = fd.f_vector;
    j["h_vector"] = fd.h_vector;
    json mf = json::array();
    for (const auto& f : fd.missing_faces) mf.push_back(f);
    j["missing_faces"] = mf;
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "field,value\n";
    os << "label," << csv_quote(P.label) << "\n";
    os << "n," << P.n << "\nm," << P.m << "\n";
    os << "f_vector," << csv_quote(vec_str(fd.f_vector)) << "\n";
    os << "h_vector," << csv_quote(vec_str(fd.h_vector)) << "\n";
    for (const auto& v : P.vertices) os << "vertex," << csv_quote(face_str(v)) << "\n";
    for (const auto& f : fd.missing_faces)
      os << "missing_face," << csv_quote(face_str(f)) << "\n";
    emit(cfg, os.str());
    return 0;
  }
  std::ostringstream os;
  os << P.label << ": dimension " << P.n << ", " << P.m << " facets, " << P.vertices.size()
     << " vertices\n";
  os << "f-vector " << vec_str(fd.f_vector) << "\n";
  os << "h-vector " << vec_str(fd.h_vector) << "\n";
  os << "vertices:\n";
  for (const auto& v : P.vertices) os << "  " << face_str(v) << "\n";
  os << "minimal non-faces:\n";
  for (const auto& f : fd.missing_faces) os << "  " << face_str(f) << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_enumerate(const std::string& kind, int n, int m, const RunConfig& cfg) {
  auto P = dual_cyclic(n, m);
  std::vector<EquivClass> classes;
  if (kind == "real")
    classes = enumerate_real(P);
  else
    classes = enumerate_integer(P, cfg.bound_B);

  if (cfg.format == "json") {
    json j;
    j["polytope"] = P.label;
    j["kind"] = kind;
    if (kind == "int") j["bound"] = cfg.bound_B;
    j["count"] = classes.size();
    json arr = json::array();
    for (const auto& c : classes)
      arr.push_back({{"rep", mat_rows(c.rep.mat)},
                     {"group", c.group_spec},
                     {"orbit_size", c.orbit_size}});
    j["classes"] = arr;
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "index,group,orbit_size,rep\n";
    for (size_t i = 0; i < classes.size(); ++i) {
      const Mat& M = classes[i].rep.mat;
      std::string flat;
      for (int r = 0; r < M.rows; ++r)
        for (int c = 0; c < M.cols; ++c)
          flat += (flat.empty() ? "" : " ") + std::to_string(M.at(r, c));
      os << i + 1 << ',' << csv_quote(classes[i].group_spec) << ','
         << classes[i].orbit_size << ',' << csv_quote(flat) << "\n";
    }
    emit(cfg, os.str());
    return 0;
  }
  std::ostringstream os;
  os << classes.size() << " " << (kind == "real" ? "real" : "integer") << " class"
     << (classes.size() == 1 ? "" : "es") << " over " << P.label;
  if (kind == "int") os << " at bound " << cfg.bound_B;
  os << "\n";
  for (size_t i = 0; i < classes.size(); ++i)
    os << "# class " << i + 1 << "\n" << charmat_to_text(classes[i].rep);
  emit(cfg, os.str());
  return 0;
}

int cmd_classify(int n, int m, bool indecomposable, const RunConfig& cfg) {
  auto P = dual_cyclic(n, m);
  auto classes = enumerate_integer(P, cfg.bound_B);
  if (indecomposable) {
    std::vector<EquivClass> keep;
    for (auto& c : classes)
      if (!is_decomposable(c.rep)) keep.push_back(std::move(c));
    classes = std::move(keep);
  }
  auto aut = automorphism_group(P);
  auto orbits = orbit_partition(classes, aut);

  std::vector<RingPresentation> rings;
  rings.reserve(orbits.size());
  for (const auto& orbit : orbits)
    rings.push_back(build_ring(classes[static_cast<size_t>(orbit.front())].rep));

  IsoBattery bat;
  bat.moduli = cfg.moduli;
  bat.z_bound = cfg.iso_bound;
  bat.jobs = cfg.jobs;
  auto rep = distinguish_all(rings, bat);

  if (cfg.format == "json") {
    json j;
    j["polytope"] = P.label;
    j["bound"] = cfg.bound_B;
    j["indecomposable_only"] = indecomposable;
    j["class_count"] = classes.size();
    j["symmetry_group_order"] = aut.size();
    json jo = json::array();
    for (const auto& orbit : orbits) jo.push_back(orbit);
    j["orbits"] = jo;
    j["rings"] = json::parse(report_to_json(rep));
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "orbit,classes,ring_class\n";
    std::vector<int> ring_of(orbits.size(), -1);
    for (size_t rc = 0; rc < rep.classes.size(); ++rc)
      for (int idx : rep.classes[rc]) ring_of[static_cast<size_t>(idx)] = static_cast<int>(rc);
    for (size_t i = 0; i < orbits.size(); ++i) {
      std::string members;
      for (int idx : orbits[i])
        members += (members.empty() ? "" : " ") + std::to_string(idx + 1);
      os << i + 1 << ',' << csv_quote(members) << ',' << ring_of[i] + 1 << "\n";
    }
    emit(cfg, os.str());
    return 0;
  }
  std::ostringstream os;
  os << classes.size() << (indecomposable ? " indecomposable" : "") << " integer class"
     << (classes.size() == 1 ? "" : "es") << " over " << P.label << " at bound "
     << cfg.bound_B << "\n";
  os << orbits.size() << " orbit" << (orbits.size() == 1 ? "" : "s")
     << " under the symmetry group (order " << aut.size() << "):\n";
  for (size_t i = 0; i < orbits.size(); ++i) {
    os << "  orbit " << i + 1 << " (size " << orbits[i].size() << "): classes";
    for (int idx : orbits[i]) os << " " << idx + 1;
    os << "\n";
  }
  os << "ring distinction on the " << orbits.size() << " orbit representatives: "
     << rep.classes.size() << " ring class" << (rep.classes.size() == 1 ? "" : "es");
  if (!rep.unresolved.empty()) os << ", " << rep.unresolved.size() << " unresolved pair(s)";
  os << "\n";
  for (size_t rc = 0; rc < rep.classes.size(); ++rc) {
    if (rep.classes[rc].size() < 2) continue;
    os << "  ring class " << rc + 1 << " joins orbits";
    for (int idx : rep.classes[rc]) os << " " << idx + 1;
    os << "\n";
  }
  for (const auto& [i, j] : rep.unresolved)
    os << "  unresolved: orbit " << i + 1 << " vs orbit " << j + 1 << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_reproduce(const std::string& recipe, const RunConfig& cfg) {
  RecipeResult r = run_recipe(recipe, cfg);
  emit(cfg, render_result(r, cfg.format));
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "classification computations for quasitoric manifolds and small covers "
      "over dual cyclic polytopes"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global flags after the subcommand

  RunConfig cfg;
  app.add_option("--bound", cfg.bound_B, "entry bound for integer enumeration")
      ->capture_default_str();
  app.add_option("--iso-bound", cfg.iso_bound, "box bound for the integer isomorphism search")
      ->capture_default_str();
  app.add_option("--moduli", cfg.moduli, "modulus ladder for the ring battery")
      ->delimiter(',');
  app.add_option("--jobs", cfg.jobs, "worker threads for parallel sweeps")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "write to this file instead of stdout");

  int n = 0, m = 0;
  std::string kind, recipe;
  bool indecomposable = false;

  auto* cp = app.add_subcommand("polytope", "print a dual cyclic polytope with face data");
  cp->add_option("n", n, "dimension")->required();
  cp->add_option("m", m, "facet count")->required();

  auto* ce = app.add_subcommand("enumerate", "enumerate characteristic-matrix classes");
  ce->add_option("kind", kind, "real or int")
      ->required()
      ->check(CLI::IsMember({"real", "int"}));
  ce->add_option("n", n, "dimension")->required();
  ce->add_option("m", m, "facet count")->required();

  auto* cc = app.add_subcommand("classify",
                                "fold integer classes into symmetry orbits and "
                                "distinguish the orbit rings");
  cc->add_option("n", n, "dimension")->required();
  cc->add_option("m", m, "facet count")->required();
  cc->add_flag("--indecomposable", indecomposable,
               "keep only connected-sum-indecomposable classes");

  auto* cr = app.add_subcommand("reproduce", "rerun a stored computation and diff it");
  std::string names;
  for (const auto& nm : recipe_names()) names += (names.empty() ? "" : ", ") + nm;
  cr->add_option("recipe", recipe, "one of: " + names)
      ->required()
      ->check(CLI::IsMember(recipe_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    validate_config(cfg);
    if (*cp || *ce || *cc) {
      std::string why;
      if (!valid_nm(n, m, why)) fail(why);
    }
  } catch (const qtoric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*cp) return cmd_polytope(n, m, cfg);
    if (*ce) return cmd_enumerate(kind, n, m, cfg);
    if (*cc) return cmd_classify(n, m, indecomposable, cfg);
    if (*cr) return cmd_reproduce(recipe, cfg);
  } catch (const qtoric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
