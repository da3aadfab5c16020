// Cohomology rings of the manifolds attached to a characteristic matrix:
// the quotient of Z[v_1..v_m] (or Z/k[..]) by the linear relations given by
// the rows of the matrix and by the face ideal of the polytope, one
// generator per facet.  Putting the matrix in identity form at the base
// vertex {1..n} eliminates v_1..v_n, leaving g = m-n generators
// x_j = v_{n+j}; the class of the eliminated v_i is recorded by the
// substitution row i, read verbatim from the identity-form tail (this sign
// convention is fixed by the stored top-degree pairing table).  Every
// relation is kept as a product of linear forms, one factor per facet of a
// minimal non-face, and expanded only when a graded slice is needed.
//
// Generators sit in cohomological degree 2 for quasitoric manifolds and 1
// for small covers; all internal grading is by generator count, so the top
// graded piece is degree n in both cases.  Monomials of a given degree are
// ordered lexicographically descending by exponent tuple; quotient bases
// prefer to eliminate the earliest-listed monomials.
//
// The fundamental class is represented by the product of the substitution
// rows over the distinguished vertex: the lexicographically greatest
// vertex containing facet 1.  Its reduction must be a unit multiple of the
// single top basis monomial; top-degree pairings divide by that unit.

#pragma once

#include "qtoric/charmat.hpp"

#include <string>
#include <vector>

namespace qtoric {

struct Relation {
  std::vector<Vec> factors;  // linear forms in the g generators
};

struct RingPresentation {
  int g = 0;           // surviving generators
  int top = 0;         // n; generator-count degree of the top class
  int gen_degree = 2;  // cohomological degree of one generator
  i64 modulus = 0;     // 0 = integer coefficients, else arithmetic mod k
  Mat substitutions;   // m x g; row i expresses the class of v_i
  std::vector<Relation> relations;  // one per minimal non-face
  FacetSet fc_vertex;
  std::string label;
};

// gen_degree and modulus follow the coefficient tag of the matrix:
// Z -> quasitoric (degree 2, integer), Z2 -> small cover (degree 1, mod 2)
RingPresentation build_ring(const CharMatrix& lam);
RingPresentation reduce_mod(const RingPresentation& R, i64 k);

// exponent tuples of total degree d in g variables, lex descending
std::vector<Vec> monomials(int g, int d);

struct GradedRing {
  RingPresentation pres;
  std::vector<std::vector<Vec>> monos;        // per degree 0..top
  std::vector<std::vector<Vec>> slices;       // ideal slice rows per degree
  std::vector<UnitEchelon> ech;               // reducers, modulus 0
  std::vector<HowellForm> how;                // reducers, modulus > 0
  std::vector<std::vector<int>> basis;        // quotient basis monomials per degree
  std::vector<i64> rank;                      // quotient rank per degree (integer case)
  bool has_basis = false;   // false when a slice admits no unit-pivot echelon
                            // (or a Howell lead entry is not a unit mod k)
  // slice degrees without a unit-pivot echelon fall back to the Smith normal
  // form transform: x lies in the slice iff (x V)_j = 0 mod diag_j, and
  // t V^-1 with t_j reduced mod diag_j is a canonical coset representative
  std::vector<char> ech_ok;
  std::vector<SnfResult> snf;
  std::vector<Mat> vinv;
  int fc_coord = -1;        // transformed top coordinate carrying the free rank
                            // when the top slice has no unit-pivot echelon
  bool torsion_free = false;  // integer case: all slice SNF divisors are 1
  i64 fc_unit = 1;            // fundamental class = fc_unit * top basis monomial

  int g() const { return pres.g; }
  int top() const { return pres.top; }
};

// always computes slices and reducers; basis, torsion flag and fundamental
// class are filled when the coefficients allow it
GradedRing analyze_ring(const RingPresentation& R);

// quotient rank per degree; over Z this never needs a monomial basis, over
// Z/k it requires unit Howell leads (always true for prime k)
std::vector<i64> betti(const GradedRing& G);

// canonical representative of a degree-d class, full monomial coefficient
// vector in and out
Vec normal_form(const GradedRing& G, int d, Vec coeffs);
bool in_ideal(const GradedRing& G, int d, const Vec& coeffs);
Vec poly_mul(const GradedRing& G, int d1, const Vec& a, int d2, const Vec& b);
// product of linear forms, one degree each, not reduced
Vec expand_product(const GradedRing& G, const std::vector<Vec>& factors);

// <monomial, fundamental class> for a top-degree exponent tuple
i64 pairing(const GradedRing& G, const Vec& exponents);
// X/Y/Z names with two-variable monomials written in cyclic order
// (XY, YZ, ZX), matching the stored pairing table
std::string monomial_name(const Vec& exponents);
std::vector<std::pair<std::string, i64>> pairing_table(const GradedRing& G);

// elementary symmetric function e_j of all m substitution rows, reduced;
// the degree-(gen_degree * j) Stiefel-Whitney class.  Requires modulus 2.
Vec stiefel_whitney(const GradedRing& G, int j);
// sum of squares of the substitution rows, reduced (the sign convention
// giving 3 X^2 on the complex projective plane).  Requires modulus 0.
Vec first_pontryagin(const GradedRing& G);

std::string ring_to_json(const RingPresentation& R);

}  // namespace qtoric
