// Exact integer linear algebra used throughout: overflow-checked 64-bit
// arithmetic, dense matrices, Bareiss determinants, unimodular inverses,
// Smith normal form, unit-pivot echelon forms over Z, and Howell forms
// over Z/k.  Everything here is deterministic; no floating point.
//
// Conventions: matrices are row-major with 0-based indices.  "Unit pivot"
// means a pivot entry of +1 or -1, so reduction stays inside Z without
// denominators.  All routines throw qtoric_error on arithmetic overflow
// rather than wrapping silently.

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtoric {

using i64 = long long;
using Vec = std::vector<i64>;

struct qtoric_error : std::runtime_error {
  explicit qtoric_error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] void fail(const std::string& msg);

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

// gcd(|a|,|b|) >= 0
i64 gcd_nonneg(i64 a, i64 b);

// returns g = gcd(|a|,|b|) and x, y with a*x + b*y = g
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

struct Mat {
  int rows = 0;
  int cols = 0;
  Vec a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  static Mat identity(int n);

  i64& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  i64 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const = default;
  // dimension-major, then entry-lexicographic; used for deterministic sorting
  std::strong_ordering operator<=>(const Mat& o) const;
};

Mat transpose(const Mat& A);

// columns picked by 0-based index, in the order given
Mat submatrix_cols(const Mat& A, const std::vector<int>& cols0);

// exact determinant of a square matrix (fraction-free Bareiss elimination)
i64 det_bareiss(Mat A);

// inverse of a square matrix with det = +-1; throws otherwise
Mat unimodular_inverse(const Mat& A);

// inverse mod k of a square matrix whose determinant is a unit mod k;
// throws otherwise.  Entries of the result are in [0, k).
Mat mod_matrix_inverse(const Mat& A, i64 k);

// Smith normal form elementary divisors: nonnegative, each dividing the
// next, zeros trimmed.  Destroys its argument.
Vec snf_diagonal(Mat A);

// Smith normal form keeping the right transform: returns diagonal d (padded
// with zeros to length A.cols) and unimodular V with U*A*V diagonal.  Row
// space of A equals { x : (x*V)_i divisible by d_i for all i }.
struct SnfResult {
  Vec diag;  // length = A.cols
  Mat V;     // cols x cols, unimodular
};
SnfResult snf_with_transform(Mat A);

// Echelonised generating set for a sublattice of Z^cols in which every
// pivot is +-1.  Rows are mutually reduced, pivot columns strictly
// increasing is NOT required; pivots are chosen greedily by smallest
// column index available, so the non-pivot ("free") columns are the
// lexicographically latest ones that survive.
//
// build_unit_echelon returns false if some nonzero row remains with no
// unit entry even after gcd-echelonisation of the leftovers, i.e. the
// lattice admits no unit-pivot echelon compatible with the greedy scan.
struct UnitEchelon {
  int cols = 0;
  std::vector<Vec> rows;       // reduced rows, one pivot each
  std::vector<int> pivot_col;  // pivot column of rows[i]
  std::vector<int> free_cols;  // ascending list of non-pivot columns

  // subtract pivot-row multiples until all pivot columns vanish;
  // afterwards v is supported on free_cols only
  void reduce(Vec& v) const;
  bool contains(Vec v) const;
};
bool build_unit_echelon(std::vector<Vec> gen, int cols, UnitEchelon& out);

// ----- arithmetic in Z/k (k >= 2, not necessarily prime) -----

i64 mod_norm(i64 x, i64 k);   // representative in [0, k)
bool mod_is_unit(i64 x, i64 k);
i64 mod_inv(i64 x, i64 k);    // throws if not a unit

// Howell form of a row span in (Z/k)^cols.  Canonical for the span:
// two row sets span the same submodule iff their Howell forms agree.
// Membership testing reduces a vector and checks for zero.
struct HowellForm {
  i64 k = 0;
  int cols = 0;
  std::vector<Vec> rows;       // entries in [0, k), leading cols increasing
  std::vector<int> lead_col;

  Vec residue(Vec v) const;    // canonical representative of v mod span
  bool contains(const Vec& v) const;
};
HowellForm howell_form(std::vector<Vec> gen, i64 k, int cols);

}  // namespace qtoric
