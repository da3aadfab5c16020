// Characteristic matrices over Z and Z/2 on a simple polytope: an n x m
// integer matrix whose columns are indexed by facets, such that the
// columns of every vertex form a basis (determinant +-1 over Z, odd
// determinant over Z/2).  Two matrices describe the same manifold when
// they differ by a left GL(n) factor and, over Z, by column sign flips;
// facet permutations coming from polytope symmetries act on top of that.
//
// Canonical forms scan every (base vertex, allowed permutation, row sign
// pattern) and take the lexicographically least (I|*) candidate, where
// base-column signs are forced to restore the identity block and every
// free column's sign is chosen to make its topmost nonzero entry negative.
// This candidate set is itself an equivalence invariant, so equal
// canonical forms characterise equivalent matrices.
//
// Enumerations fix the base vertex {1..n} and list (I|*) representatives:
// over Z/2 distinct representatives are automatically inequivalent; over
// Z each GL x sign class is collected by sign-normalising the columns and
// deduplicating over the 2^n row sign flips.

#pragma once

#include "qtoric/polytope.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qtoric {

enum class Coeff { Z, Z2 };

struct CharMatrix {
  Coeff coeff = Coeff::Z;
  Mat mat;  // n x m; Z2 entries stored as 0/1
  CombinatorialPolytope polytope;

  int n() const { return mat.rows; }
  int m() const { return mat.cols; }
  bool operator==(const CharMatrix& o) const = default;
};

// validity check; on failure optionally reports the first bad vertex, or
// an empty set when a column is imprimitive / an entry is out of range
bool is_characteristic(const CharMatrix& lam, FacetSet* first_failing = nullptr);

// (lambda_v)^{-1} * lambda: identity block on the columns of v (ascending),
// no column reordering
CharMatrix to_identity_form(const CharMatrix& lam, const FacetSet& v);

struct CanonicalOptions {
  bool column_signs = true;  // ignored over Z/2
  const std::vector<std::vector<int>>* facet_perms = nullptr;  // image tables; null = identity
};
Mat canonical_form(const CharMatrix& lam, const CanonicalOptions& opt = {});

struct EquivClass {
  CharMatrix rep;   // (I|*) representative at base {1..n}
  Mat canonical;    // canonical_form of rep (no facet permutations)
  std::string group_spec;
  long long orbit_size = 1;
};

// all GL(n,Z/2)-classes of real characteristic matrices on P
std::vector<EquivClass> enumerate_real(const CombinatorialPolytope& P);

// all GL(n,Z) x column-sign classes whose (I|*) representative has star
// entries bounded by `bound` in absolute value
std::vector<EquivClass> enumerate_integer(const CombinatorialPolytope& P, int bound);

// the sublist of enumerate_integer(P, bound) whose mod-2 reductions are
// GL(n,Z/2)-equivalent to lambda_bar
std::vector<EquivClass> fiber_over(const CombinatorialPolytope& P,
                                   const CharMatrix& lambda_bar, int bound);

// streaming variant of enumerate_integer for polygons: calls `cb` once per
// GL x sign class with the sign-normal (I|*) representative, never holding
// the class list in memory (the list for a 10-gon runs to ~5*10^5 classes)
void polygon_enumerate_stream(int m, int bound, const std::function<void(const Mat&)>& cb);

CharMatrix mod2_reduce(const CharMatrix& lam);

// read a Z/2 matrix as a 0/1 integer matrix; valid for n <= 3, where the
// result is automatically characteristic over Z
CharMatrix lift_tilde(const CharMatrix& lam);

// partition {0..classes.size()-1} into orbits of the given facet
// permutations, matching images through canonical_form with `opt`;
// images leaving the list simply contribute no edge
std::vector<std::vector<int>> orbit_partition(const std::vector<EquivClass>& classes,
                                              const std::vector<std::vector<int>>& gens,
                                              const CanonicalOptions& opt = {});

// permute the columns by an image table (facet i's column moves to
// position perm[i-1])
CharMatrix permute_facets(const CharMatrix& lam, const std::vector<int>& perm);

// mod-2 equivalence test via identity forms at the base vertex {1..n}
bool real_equivalent(const CharMatrix& a, const CharMatrix& b);

// text form: "charmat n m Z|Z2 <polytope-label>" then n rows of m entries
std::string charmat_to_text(const CharMatrix& lam);

// step predicate for consecutive polygon columns (c,d) after (a,b): any
// det +-1 pair with |a| < |b| has |c| <= |d| unless (|a|,|b|,|c|,|d|) is
// exactly (0,1,1,0); used as a cross-check on the polygon enumeration
bool polygon_step_possible(i64 a, i64 b, i64 c, i64 d);

}  // namespace qtoric
