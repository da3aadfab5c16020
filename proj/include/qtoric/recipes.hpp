// Scripted reproductions of the classification computations.  Each recipe
// reruns one pipeline (enumeration, orbit fold, ring battery, ...) and
// diffs the outcome against expectations embedded in the catalog, emitting
// one named check per assertion so a failing run points at the exact
// delta.  Recipes pin the bounds the published counts were computed at;
// the config contributes worker count and the modular ladder, plus the
// enumeration bound where varying it keeps the claim meaningful.

#pragma once

#include "qtoric/isomorphism.hpp"

#include <string>
#include <vector>

namespace qtoric {

struct RunConfig {
  int bound_B = 6;     // entry bound for integer enumerations
  int iso_bound = 10;  // box bound for the integer isomorphism search
  std::vector<i64> moduli{2, 3, 4, 5, 8, 9, 16};
  int jobs = 1;
  std::string output;           // file path; empty means stdout
  std::string format = "text";  // text | json | csv
};

// throws qtoric_error unless bounds are positive, moduli are >= 2,
// jobs >= 1 and the format is known
void validate_config(const RunConfig& cfg);

struct RecipeCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // counts on success, human-readable delta on failure
};

struct RecipeResult {
  std::string recipe;
  std::vector<RecipeCheck> checks;
  bool ok() const;
};

// the known recipe names, in report order
const std::vector<std::string>& recipe_names();

// run one recipe; throws qtoric_error for an unknown name
RecipeResult run_recipe(const std::string& name, const RunConfig& cfg);

std::string result_to_text(const RecipeResult& r);
std::string result_to_json(const RecipeResult& r);
std::string result_to_csv(const RecipeResult& r);
// dispatch on cfg-style format name; throws qtoric_error when unknown
std::string render_result(const RecipeResult& r, const std::string& format);

}  // namespace qtoric
