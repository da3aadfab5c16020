// Recipe pipelines.  Each recipe reruns one published computation end to
// end (vertex enumeration, real and integer classification, orbit folds,
// pairing tables, ring batteries, normal-form decompositions) and diffs
// the outcome against the stored expectations, reporting one named check
// per assertion.  The enumeration bounds that the published counts were
// computed at are pinned inside the recipes; the config supplies the
// modular ladder, the integer search bound and the worker count.

#include "qtoric/recipes.hpp"

#include "qtoric/catalog.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/connectsum.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qtoric {

namespace {

void add(RecipeResult& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back(RecipeCheck{std::move(name), pass, std::move(detail)});
}

std::string num(long long v) { return std::to_string(v); }

// ---------------------------------------------------------------- gale-check

// oracle: can `s` be written as a disjoint union of blocks {j,j+1} and the
// end singletons {1}, {m}?  this is the evenness condition stated directly
// on the facet labels, independent of the vertex generator
bool splits_into_end_blocks(const std::vector<int>& s, size_t pos, int m) {
  if (pos == s.size()) return true;
  int a = s[pos];
  if (pos + 1 < s.size() && s[pos + 1] == a + 1 && splits_into_end_blocks(s, pos + 2, m))
    return true;
  if ((a == 1 || a == m) && splits_into_end_blocks(s, pos + 1, m)) return true;
  return false;
}

std::vector<FacetSet> oracle_vertices(int n, int m) {
  std::vector<FacetSet> out;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i + 1;
  while (true) {
    if (splits_into_end_blocks(pick, 0, m)) out.push_back(pick);
    int i = n - 1;
    while (i >= 0 && pick[i] == m - (n - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

RecipeResult recipe_gale_check(const RunConfig&) {
  RecipeResult r{"gale-check", {}};
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::string> bad;
    int checked = 0;
    for (int m = n + 1; m <= 10; ++m) {
      auto P = dual_cyclic(n, m);
      auto got = P.vertices;
      auto want = oracle_vertices(n, m);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      if (got != want) bad.push_back("m=" + num(m));
      ++checked;
    }
    std::string detail = num(checked) + " values of m";
    if (!bad.empty()) {
      detail = "mismatch at";
      for (auto& s : bad) detail += " " + s;
    }
    add(r, "dimension " + num(n) + " vertices match the interval-union scan", bad.empty(),
        detail);
  }

  const std::vector<FacetSet> faces47 = {
      {1, 2, 3, 4}, {2, 3, 4, 5}, {1, 2, 4, 5}, {1, 3, 4, 7}, {1, 2, 3, 7},
      {1, 2, 5, 6}, {1, 2, 6, 7}, {2, 3, 5, 6}, {2, 3, 6, 7}, {3, 4, 5, 6},
      {3, 4, 6, 7}, {1, 4, 5, 7}, {1, 5, 6, 7}, {4, 5, 6, 7}};
  auto got = dual_cyclic(4, 7).vertices;
  auto want = faces47;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  add(r, "the fourteen maximal faces at (n,m) = (4,7)", got == want,
      num(static_cast<long long>(got.size())) + " faces");

  bool hv = face_data(dual_cyclic(4, 7)).h_vector == Vec{1, 3, 6, 3, 1} &&
            face_data(dual_cyclic(3, 6)).h_vector == Vec{1, 3, 3, 1} &&
            face_data(dual_cyclic(5, 8)).h_vector == Vec{1, 3, 6, 6, 3, 1};
  add(r, "h-vectors of the three reference polytopes", hv,
      "(1,3,6,3,1), (1,3,3,1), (1,3,6,6,3,1)");
  return r;
}

// -------------------------------------------------------------- nonexistence

RecipeResult recipe_nonexistence(const RunConfig&) {
  RecipeResult r{"nonexistence", {}};
  const int pairs[][2] = {{4, 8}, {4, 9}, {4, 10}, {4, 11}, {5, 9},
                          {5, 10}, {6, 9}, {6, 10}, {7, 10}};
  for (auto& pr : pairs) {
    auto P = dual_cyclic(pr[0], pr[1]);
    auto cls = enumerate_real(P);
    add(r, "no real characteristic matrix on " + P.label, cls.empty(),
        cls.empty() ? "empty" : num(static_cast<long long>(cls.size())) + " classes found");
  }
  return r;
}

// ------------------------------------------------------- c47-real, c58-real

RecipeResult real_pair_recipe(const char* name, int n, int m, const CharMatrix& ga,
                              const CharMatrix& gb) {
  RecipeResult r{name, {}};
  auto P = dual_cyclic(n, m);
  auto cls = enumerate_real(P);
  add(r, "exactly two real classes", cls.size() == 2,
      num(static_cast<long long>(cls.size())) + " classes");

  std::set<Mat> got;
  for (const auto& c : cls) got.insert(c.canonical);
  std::set<Mat> want{canonical_form(ga), canonical_form(gb)};
  add(r, "classes match the stored matrices", got == want, "compared by canonical form");

  auto aut = automorphism_group(P);
  auto orb = orbit_partition(cls, aut);
  add(r, "one orbit under the polytope symmetries", orb.size() == 1,
      "group order " + num(static_cast<long long>(aut.size())) + ", " +
          num(static_cast<long long>(orb.size())) + " orbit(s)");
  return r;
}

RecipeResult recipe_c47_real(const RunConfig&) {
  return real_pair_recipe("c47-real", 4, 7, catalog::c47_real('a'), catalog::c47_real('b'));
}

RecipeResult recipe_c58_real(const RunConfig&) {
  return real_pair_recipe("c58-real", 5, 8, catalog::c58_real('a'), catalog::c58_real('b'));
}

// ---------------------------------------------------------------- c47-lifts

RecipeResult recipe_c47_lifts(const RunConfig& cfg) {
  RecipeResult r{"c47-lifts", {}};
  auto P = dual_cyclic(4, 7);
  CharMatrix base = catalog::c47_real('a');
  auto fiber = fiber_over(P, base, cfg.bound_B);
  add(r, "twenty-eight integer classes over the liftable real form", fiber.size() == 28,
      num(static_cast<long long>(fiber.size())) + " classes at bound " + num(cfg.bound_B));

  std::set<Mat> got;
  for (const auto& c : fiber) got.insert(c.canonical);
  std::set<Mat> want;
  for (int k = 1; k <= 28; ++k) want.insert(canonical_form(catalog::c47_lift(k)));
  add(r, "classes are in bijection with the stored lifts", got == want,
      num(static_cast<long long>(want.size())) + " stored canonical forms");

  auto wider = fiber_over(P, base, cfg.bound_B + 2);
  add(r, "count is stable when the bound grows", wider.size() == fiber.size(),
      num(static_cast<long long>(wider.size())) + " classes at bound " +
          num(cfg.bound_B + 2));
  return r;
}

// --------------------------------------------------------------- c47-orbits

RecipeResult recipe_c47_orbits(const RunConfig& cfg) {
  RecipeResult r{"c47-orbits", {}};
  auto P = dual_cyclic(4, 7);
  auto fiber = fiber_over(P, catalog::c47_real('a'), cfg.bound_B);

  std::map<Mat, int> index;
  for (int k = 1; k <= 28; ++k) index[canonical_form(catalog::c47_lift(k))] = k;

  const std::vector<int> rot{2, 3, 4, 5, 6, 7, 1};
  auto aut = automorphism_group(P);
  bool has_rot = std::find(aut.begin(), aut.end(), rot) != aut.end();
  add(r, "the facet rotation is a polytope symmetry", has_rot,
      "group order " + num(static_cast<long long>(aut.size())));

  auto parts = orbit_partition(fiber, {rot});
  bool sizes_ok = parts.size() == 4;
  for (const auto& p : parts) sizes_ok = sizes_ok && p.size() == 7;
  add(r, "four rotation orbits of size seven", sizes_ok,
      num(static_cast<long long>(parts.size())) + " orbits");

  std::set<std::set<int>> got;
  bool indexed = true;
  for (const auto& p : parts) {
    std::set<int> orbit;
    for (int i : p) {
      auto it = index.find(fiber[static_cast<size_t>(i)].canonical);
      if (it == index.end()) {
        indexed = false;
        continue;
      }
      orbit.insert(it->second);
    }
    got.insert(orbit);
  }
  std::set<std::set<int>> want;
  auto golden = catalog::c47_orbits_golden();
  for (const auto& o : golden) want.insert(std::set<int>(o.begin(), o.end()));
  add(r, "orbits match the stored table", indexed && got == want,
      num(static_cast<long long>(want.size())) + " stored orbits");

  const std::set<int> reps{9, 17, 16, 15};
  bool one_each = true;
  for (const auto& o : golden) {
    int hits = 0;
    for (int k : o) hits += reps.count(k) ? 1 : 0;
    one_each = one_each && hits == 1;
  }
  add(r, "one distinguished representative per orbit", one_each,
      "representatives 9, 17, 16, 15");
  return r;
}

// ------------------------------------------------------ c58-lifts, c58-orbits

RecipeResult recipe_c58_lifts(const RunConfig& cfg) {
  RecipeResult r{"c58-lifts", {}};
  auto P = dual_cyclic(5, 8);
  auto fiber = fiber_over(P, catalog::c58_real('a'), cfg.bound_B);
  add(r, "sixty-four integer classes over the liftable real form", fiber.size() == 64,
      num(static_cast<long long>(fiber.size())) + " classes at bound " + num(cfg.bound_B));

  std::set<Mat> got;
  for (const auto& c : fiber) got.insert(c.canonical);
  std::set<Mat> want;
  auto table = catalog::c58_lift_table();
  for (const auto& key : table) want.insert(canonical_form(catalog::c58_lift(key)));
  add(r, "classes are in bijection with the stored table", got == want,
      num(static_cast<long long>(want.size())) + " stored canonical forms");
  return r;
}

RecipeResult recipe_c58_orbits(const RunConfig&) {
  RecipeResult r{"c58-orbits", {}};
  auto P = dual_cyclic(5, 8);
  const std::vector<int> swap18{8, 2, 3, 4, 5, 6, 7, 1};
  auto aut = automorphism_group(P);
  add(r, "the end swap is a polytope symmetry",
      std::find(aut.begin(), aut.end(), swap18) != aut.end(),
      "group order " + num(static_cast<long long>(aut.size())));

  auto table = catalog::c58_lift_table();
  std::vector<EquivClass> classes;
  classes.reserve(table.size());
  for (const auto& key : table) {
    EquivClass ec;
    ec.rep = catalog::c58_lift(key);
    ec.canonical = canonical_form(ec.rep);
    classes.push_back(std::move(ec));
  }
  auto parts = orbit_partition(classes, {swap18});
  add(r, "forty-six orbits under the end swap", parts.size() == 46,
      num(static_cast<long long>(parts.size())) + " orbits of " +
          num(static_cast<long long>(classes.size())) + " classes");

  std::set<std::vector<catalog::C58Key>> got;
  for (const auto& p : parts) {
    std::vector<catalog::C58Key> orbit;
    for (int i : p) orbit.push_back(table[static_cast<size_t>(i)]);
    std::sort(orbit.begin(), orbit.end());
    got.insert(orbit);
  }
  std::set<std::vector<catalog::C58Key>> want;
  for (auto o : catalog::c58_orbits_golden()) {
    std::sort(o.begin(), o.end());
    want.insert(o);
  }
  add(r, "orbits match the stored table", got == want,
      num(static_cast<long long>(want.size())) + " stored orbits");
  return r;
}

// -------------------------------------------------------------------- table1

RecipeResult recipe_table1(const RunConfig&) {
  RecipeResult r{"table1", {}};
  auto rows = catalog::table1();
  add(r, "four stored ring rows", rows.size() == 4,
      num(static_cast<long long>(rows.size())) + " rows");
  int total = 0;
  for (const auto& row : rows) {
    GradedRing G = analyze_ring(build_ring(catalog::c47_lift(row.lift)));
    auto table = pairing_table(G);
    std::map<std::string, i64> got(table.begin(), table.end());
    int okcnt = 0;
    std::string delta;
    for (const auto& [name, val] : row.values) {
      auto it = got.find(name);
      if (it != got.end() && it->second == val)
        ++okcnt;
      else if (delta.empty())
        delta = "first mismatch at " + name;
      ++total;
    }
    bool pass = okcnt == static_cast<int>(row.values.size()) && got.size() == row.values.size();
    add(r, "ring " + row.ring + " pairing values", pass,
        pass ? num(okcnt) + " entries" : delta);
  }
  add(r, "sixty entries in total", total == 60, num(total) + " entries compared");
  return r;
}

// ----------------------------------------------------------------- c47-rings

IsoBattery battery_from(const RunConfig& cfg) {
  IsoBattery bat;
  bat.moduli = cfg.moduli;
  bat.z_bound = cfg.iso_bound;
  bat.jobs = cfg.jobs;
  return bat;
}

RecipeResult recipe_c47_rings(const RunConfig& cfg) {
  RecipeResult r{"c47-rings", {}};
  const char* names = "ABCD";
  const int lifts[4] = {9, 17, 16, 15};
  std::vector<RingPresentation> rings;
  for (int k : lifts) rings.push_back(build_ring(catalog::c47_lift(k)));

  auto rep = distinguish_all(rings, battery_from(cfg));
  bool singles = rep.classes.size() == 4 && rep.unresolved.empty();
  add(r, "four pairwise distinct rings", singles,
      num(static_cast<long long>(rep.classes.size())) + " classes, " +
          num(static_cast<long long>(rep.unresolved.size())) + " unresolved");

  const struct {
    int i, j;
    i64 k;
  } pinned[] = {{0, 1, 4}, {1, 2, 4}, {1, 3, 4}, {0, 3, 3}, {2, 3, 3}, {0, 2, 3}};
  for (const auto& p : pinned) {
    IsoVerdict v = iso_over_Zk(rings[static_cast<size_t>(p.i)],
                               rings[static_cast<size_t>(p.j)], p.k);
    bool ok = v.outcome == IsoVerdict::Outcome::DistinguishedBy;
    add(r,
        std::string("mod-") + num(p.k) + " separates " + names[p.i] + " and " + names[p.j],
        ok, ok ? v.test : "not separated");
  }

  std::string ladder;
  bool all_sep = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      i64 found = 0;
      for (i64 k : cfg.moduli) {
        IsoVerdict v = iso_over_Zk(rings[static_cast<size_t>(i)],
                                   rings[static_cast<size_t>(j)], k);
        if (v.outcome == IsoVerdict::Outcome::DistinguishedBy) {
          found = k;
          break;
        }
      }
      if (!ladder.empty()) ladder += ", ";
      ladder += std::string(1, names[i]) + "-" + names[j] + ":" +
                (found ? num(found) : std::string("none"));
      all_sep = all_sep && found != 0;
    }
  add(r, "smallest separating modulus per pair", all_sep, ladder);
  return r;
}

// ----------------------------------------------------------------- c58-rings

RecipeResult recipe_c58_rings(const RunConfig& cfg) {
  RecipeResult r{"c58-rings", {}};
  auto golden = catalog::c58_orbits_golden();
  std::vector<RingPresentation> rings;
  for (const auto& orbit : golden) {
    auto key = *std::min_element(orbit.begin(), orbit.end());
    rings.push_back(build_ring(catalog::c58_lift(key)));
  }
  add(r, "forty-six orbit representatives", rings.size() == 46,
      num(static_cast<long long>(rings.size())) + " rings");

  auto rep = distinguish_all(rings, battery_from(cfg));
  bool singles = rep.classes.size() == rings.size();
  add(r, "all representatives pairwise distinct", singles,
      num(static_cast<long long>(rep.classes.size())) + " classes");
  add(r, "no unresolved pairs", rep.unresolved.empty(),
      num(static_cast<long long>(rep.unresolved.size())) + " unresolved");

  std::map<std::string, int> hist;
  bool all_sep = true;
  for (const auto& pv : rep.pairs) {
    if (pv.v.outcome == IsoVerdict::Outcome::DistinguishedBy)
      ++hist[pv.v.test + " mod " + num(pv.v.modulus)];
    else
      all_sep = false;
  }
  std::string ladder;
  for (const auto& [k, v] : hist) {
    if (!ladder.empty()) ladder += ", ";
    ladder += k + ": " + num(v);
  }
  add(r, "separating tests recorded", all_sep, ladder);
  return r;
}

// ------------------------------------------------------------------ c36-list

RecipeResult recipe_c36_list(const RunConfig&) {
  RecipeResult r{"c36-list", {}};
  auto P = dual_cyclic(3, 6);
  auto cls = enumerate_integer(P, 8);
  std::vector<EquivClass> indec;
  for (auto& c : cls)
    if (!is_decomposable(c.rep)) indec.push_back(c);
  add(r, "nineteen indecomposable classes at bound 8", indec.size() == 19,
      num(static_cast<long long>(indec.size())) + " of " +
          num(static_cast<long long>(cls.size())) + " classes");

  std::map<Mat, std::string> stored;
  auto named = catalog::c36_named();
  for (const auto& e : named) stored[canonical_form(e.cm)] = e.name;
  for (i64 d = -8; d <= 8; ++d) {
    if (d >= -1 && d <= 2) continue;
    stored[canonical_form(catalog::c36_lambda_d(d))] = "lambda_d(" + num(d) + ")";
  }
  std::string missing;
  std::set<Mat> got;
  for (const auto& c : indec) got.insert(c.canonical);
  for (const auto& [mat, nm] : stored)
    if (!got.count(mat)) missing += (missing.empty() ? "" : ", ") + nm;
  bool match = missing.empty() && got.size() == stored.size();
  add(r, "classes match the stored families", match,
      match ? num(static_cast<long long>(stored.size())) + " stored forms"
            : (missing.empty() ? "extra unmatched classes" : "unmatched: " + missing));

  auto aut = automorphism_group(P);
  CanonicalOptions fold;
  fold.facet_perms = &aut;
  int folds = 0;
  for (i64 d = 3; d <= 8; ++d)
    if (canonical_form(catalog::c36_lambda_d(d), fold) ==
        canonical_form(catalog::c36_lambda_d(1 - d), fold))
      ++folds;
  std::set<Mat> dfam;
  for (i64 d = -8; d <= 8; ++d) {
    if (d >= -1 && d <= 2) continue;
    dfam.insert(canonical_form(catalog::c36_lambda_d(d), fold));
  }
  bool thirteen = folds == 6 && dfam.size() == 7;
  add(r, "the d-parameter classes fold into seven families", thirteen,
      num(folds) + " folds, " + num(static_cast<long long>(dfam.size())) +
          " families; with the six named classes the list has " +
          num(6 + static_cast<long long>(dfam.size())) + " entries");

  auto orbits = orbit_partition(indec, aut);
  add(r, "nine symmetry orbits among the indecomposables", orbits.size() == 9,
      num(static_cast<long long>(orbits.size())) + " orbits");
  return r;
}

// ------------------------------------------------------------------- c36-iso

RecipeResult recipe_c36_iso(const RunConfig&) {
  RecipeResult r{"c36-iso", {}};
  auto named = catalog::c36_named();
  const CharMatrix* a = nullptr;
  const CharMatrix* b = nullptr;
  for (const auto& e : named) {
    if (e.name == "lambda_1p") a = &e.cm;
    if (e.name == "lambda_2ppp") b = &e.cm;
  }
  if (!a || !b) {
    add(r, "named matrices present", false, "lambda_1p or lambda_2ppp missing");
    return r;
  }
  Mat M = catalog::c36_iso_certificate();
  Mat want(3, 3);
  const i64 entries[3][3] = {{1, 1, 0}, {0, -1, 0}, {0, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) want.at(i, j) = entries[i][j];
  add(r, "stored certificate equals the expected matrix", M == want, "3 x 3 certificate");

  RingPresentation R = build_ring(*a);
  RingPresentation Rp = build_ring(*b);
  add(r, "certificate is accepted as a ring map", apply_iso_check(R, Rp, M),
      "relations map into the target ideal");
  add(r, "inverse direction is accepted", apply_iso_check(Rp, R, unimodular_inverse(M)),
      "inverse relations map back");
  add(r, "characteristic classes are preserved", char_class_preserved(M, *a, *b),
      "first Pontryagin and second Stiefel-Whitney classes transported");
  return r;
}

// ------------------------------------------------------------- polygon-counts

RecipeResult recipe_polygon_counts(const RunConfig& cfg) {
  RecipeResult r{"polygon-counts", {}};
  for (int m = 4; m <= 9; ++m) {
    std::set<std::string> want;
    for (int i = m - 2; 2 * i >= m - 2; --i)
      want.insert("CP2#" + num(i) + "+CPbar2#" + num(m - 2 - i));
    if (m % 2 == 0) want.insert("S2xS2#" + num((m - 2) / 2));
    size_t count = (m % 2) ? static_cast<size_t>((m - 1) / 2)
                           : static_cast<size_t>(m / 2 + 1);
    std::string detail;
    bool pass = false;
    try {
      auto got = polygon_quasitoric_forms(m, cfg.bound_B);
      pass = got == want && got.size() == count;
      for (const auto& s : got) detail += (detail.empty() ? "" : ", ") + s;
    } catch (const qtoric_error& e) {
      detail = e.what();
    }
    add(r, num(m) + "-gon quasitoric forms", pass, detail);
  }
  for (int m = 4; m <= 9; ++m) {
    std::set<std::string> want;
    if (m % 2 == 0) want.insert("T2#" + num((m - 2) / 2));
    want.insert("RP2#" + num(m - 2));
    std::string detail;
    bool pass = false;
    try {
      auto got = polygon_small_cover_forms(m);
      pass = got == want;
      for (const auto& s : got) detail += (detail.empty() ? "" : ", ") + s;
    } catch (const qtoric_error& e) {
      detail = e.what();
    }
    add(r, num(m) + "-gon small covers fully decompose", pass, detail);
  }
  return r;
}

// ------------------------------------------------------------ c3-smallcovers

RecipeResult recipe_c3_smallcovers(const RunConfig&) {
  RecipeResult r{"c3-smallcovers", {}};
  for (int m = 4; m <= 9; ++m) {
    std::set<std::string> want;
    for (int b = 0; m - 3 - 2 * b >= 0; ++b)
      want.insert("RP3#" + num(m - 3 - 2 * b) + " + RP1xRP2#" + num(b));
    std::string detail;
    bool pass = false;
    try {
      auto got = c3_small_cover_forms(m);
      pass = got == want;
      for (const auto& s : got) detail += (detail.empty() ? "" : "; ") + s;
    } catch (const qtoric_error& e) {
      detail = e.what();
    }
    add(r, "C^3(" + num(m) + ")* small covers fully decompose", pass, detail);
  }
  return r;
}

// ------------------------------------------------------------- betti-hvector

RecipeResult recipe_betti_hvector(const RunConfig& cfg) {
  RecipeResult r{"betti-hvector", {}};
  std::vector<CombinatorialPolytope> fams;
  for (int n = 1; n <= 5; ++n) fams.push_back(simplex(n));
  for (int m = 4; m <= 8; ++m) fams.push_back(polygon(m));
  fams.push_back(dual_cyclic(3, 6));
  fams.push_back(dual_cyclic(4, 7));
  fams.push_back(dual_cyclic(5, 8));
  for (const auto& P : fams) {
    Vec h = face_data(P).h_vector;
    auto cls = enumerate_integer(P, cfg.bound_B);
    int bad = 0;
    for (const auto& c : cls) {
      GradedRing G = analyze_ring(build_ring(c.rep));
      if (betti(G) != h || !G.torsion_free) ++bad;
    }
    add(r, "betti numbers equal the h-vector over " + P.label, bad == 0 && !cls.empty(),
        num(static_cast<long long>(cls.size())) + " classes" +
            (bad ? ", " + num(bad) + " mismatches" : ""));
  }
  return r;
}

// -------------------------------------------------------------- lift-problem

RecipeResult recipe_lift_problem(const RunConfig& cfg) {
  RecipeResult r{"lift-problem", {}};
  for (int m = 4; m <= 9; ++m) {
    auto P = dual_cyclic(3, m);
    auto reals = enumerate_real(P);
    int lifted = 0;
    for (const auto& rc : reals) {
      CharMatrix lift = lift_tilde(rc.rep);
      if (is_characteristic(lift) && real_equivalent(mod2_reduce(lift), rc.rep)) ++lifted;
    }
    add(r, "every real class over " + P.label + " lifts by sign choice",
        lifted == static_cast<int>(reals.size()),
        num(lifted) + " of " + num(static_cast<long long>(reals.size())));
  }
  for (auto [n, m] : {std::pair{4, 7}, {5, 8}}) {
    auto P = dual_cyclic(n, m);
    auto reals = enumerate_real(P);
    int lifted = 0;
    for (const auto& rc : reals)
      if (!fiber_over(P, rc.rep, cfg.bound_B).empty()) ++lifted;
    add(r, "every real class over " + P.label + " lifts by fiber search",
        lifted == static_cast<int>(reals.size()) && !reals.empty(),
        num(lifted) + " of " + num(static_cast<long long>(reals.size())) + " at bound " +
            num(cfg.bound_B));
  }
  return r;
}

using RecipeFn = RecipeResult (*)(const RunConfig&);

const std::vector<std::pair<std::string, RecipeFn>>& registry() {
  static const std::vector<std::pair<std::string, RecipeFn>> reg = {
      {"gale-check", recipe_gale_check},
      {"nonexistence", recipe_nonexistence},
      {"c47-real", recipe_c47_real},
      {"c58-real", recipe_c58_real},
      {"c47-lifts", recipe_c47_lifts},
      {"c47-orbits", recipe_c47_orbits},
      {"c58-lifts", recipe_c58_lifts},
      {"c58-orbits", recipe_c58_orbits},
      {"table1", recipe_table1},
      {"c47-rings", recipe_c47_rings},
      {"c58-rings", recipe_c58_rings},
      {"c36-list", recipe_c36_list},
      {"c36-iso", recipe_c36_iso},
      {"polygon-counts", recipe_polygon_counts},
      {"c3-smallcovers", recipe_c3_smallcovers},
      {"betti-hvector", recipe_betti_hvector},
      {"lift-problem", recipe_lift_problem},
  };
  return reg;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.bound_B < 1) fail("bound must be positive");
  if (cfg.iso_bound < 1) fail("iso-bound must be positive");
  if (cfg.jobs < 1) fail("jobs must be positive");
  if (cfg.moduli.empty()) fail("modulus ladder must not be empty");
  for (i64 k : cfg.moduli)
    if (k < 2) fail("moduli must be at least 2");
  if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
    fail("unknown format: " + cfg.format);
}

bool RecipeResult::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

RecipeResult run_recipe(const std::string& name, const RunConfig& cfg) {
  validate_config(cfg);
  for (const auto& [nm, fn] : registry())
    if (nm == name) return fn(cfg);
  fail("unknown recipe: " + name);
}

std::string result_to_text(const RecipeResult& r) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
  os << "recipe " << r.recipe << ": " << (r.ok() ? "PASS" : "FAIL") << " (" << passed << "/"
     << r.checks.size() << " checks)\n";
  for (const auto& c : r.checks)
    os << "  [" << (c.pass ? " ok " : "FAIL") << "] " << c.name
       << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

std::string result_to_json(const RecipeResult& r) {
  nlohmann::json j;
  j["recipe"] = r.recipe;
  j["ok"] = r.ok();
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

namespace {
std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}
}  // namespace

std::string result_to_csv(const RecipeResult& r) {
  std::ostringstream os;
  os << "recipe,check,pass,detail\n";
  for (const auto& c : r.checks)
    os << csv_quote(r.recipe) << ',' << csv_quote(c.name) << ','
       << (c.pass ? "true" : "false") << ',' << csv_quote(c.detail) << "\n";
  return os.str();
}

std::string render_result(const RecipeResult& r, const std::string& format) {
  if (format == "text") return result_to_text(r);
  if (format == "json") return result_to_json(r);
  if (format == "csv") return result_to_csv(r);
  fail("unknown format: " + format);
}

}  // namespace qtoric
