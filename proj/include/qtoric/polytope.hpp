// Simple polytopes given combinatorially by their facet labels and the
// facet sets of their vertices.  The main constructor builds duals of
// cyclic polytopes: an n-subset of {1..m} is a vertex of C^n(m)^* exactly
// when every maximal run of consecutive labels containing neither 1 nor m
// has even length (the dual reading of Gale evenness).  Polygons (n = 2)
// and simplices (m = n + 1) come out of the same rule.
//
// Facet labels are 1-based.  Vertex facet sets are kept ascending and the
// vertex family is sorted lexicographically, so equal polytopes compare
// equal as structs.

#pragma once

#include "qtoric/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qtoric {

using FacetSet = std::vector<int>;  // ascending, 1-based

struct CombinatorialPolytope {
  int n = 0;  // dimension
  int m = 0;  // number of facets
  std::vector<FacetSet> vertices;
  std::string label;

  bool operator==(const CombinatorialPolytope& o) const = default;
};

// C^n(m)^*; labels itself "Delta^n" when m = n+1, "P_m" when n = 2,
// "C^n(m)*" otherwise (numbers substituted)
CombinatorialPolytope dual_cyclic(int n, int m);
CombinatorialPolytope polygon(int m);
CombinatorialPolytope simplex(int n);

// structural invariants: sizes, ordering, every facet used, and the
// pseudomanifold condition (every ridge lies in exactly two vertices)
bool check_polytope(const CombinatorialPolytope& P, std::string* why = nullptr);

// S is a face iff some vertex contains it
bool is_face(const CombinatorialPolytope& P, const FacetSet& S);

struct FaceData {
  std::vector<FacetSet> missing_faces;  // minimal non-faces, sorted by size then lex
  Vec f_vector;                         // f_0 .. f_{n-1}
  Vec h_vector;                         // h_0 .. h_n
};
FaceData face_data(const CombinatorialPolytope& P);

// all label permutations preserving the vertex family, as image tables
// (perm[i-1] = image of facet i); sorted lexicographically, identity first.
// Exhaustive up to m = 12; larger m is refused.
std::vector<std::vector<int>> automorphism_group(const CombinatorialPolytope& P);

// vertex sets as bitmasks (bit i-1 = facet i); order matches P.vertices
std::vector<uint32_t> vertex_masks(const CombinatorialPolytope& P);

// Connected sum glued along vertex v of P and vertex w of Q, where
// tau[i] is the position in w matched to position i of v (both ascending).
// Labels: P keeps 1..m1; shared facets of Q take the matched v label;
// the remaining facets of Q get m1+1, m1+2, ... in ascending original
// order.  The glued vertex family is (P minus v) plus (relabelled Q
// minus w).
struct GluingData {
  FacetSet v, w;
  std::vector<int> q_new_label;  // size m2, 1-based images of Q's facets
};
CombinatorialPolytope connected_sum_polytope(const CombinatorialPolytope& P,
                                             const CombinatorialPolytope& Q,
                                             const FacetSet& v, const FacetSet& w,
                                             const std::vector<int>& tau,
                                             GluingData* gluing = nullptr);

std::string polytope_to_json(const CombinatorialPolytope& P);
CombinatorialPolytope polytope_from_json(const std::string& text);

}  // namespace qtoric
