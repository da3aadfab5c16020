// Connected-sum structure of characteristic pairs.  A size-n non-face
// whose columns form a unit minor and whose removal disconnects the facet
// co-occurrence graph cuts the pair into two characteristic pieces over
// smaller polytopes; gluing reverses a cut by transporting one factor
// with the change of basis matching the distinguished vertices.  Over
// polygons and over C^3(m)* every piece eventually reaches a short list
// of terminal pieces, which yields manifold normal forms.

#pragma once

#include "qtoric/charmat.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

// one piece of a cut; facet i+1 of the piece is original facet cols[i],
// and the shared set has become a vertex of the piece polytope
struct SumPiece {
  CharMatrix cm;
  std::vector<int> cols;
};

// size-n non-faces with a unit column minor that split the remaining
// facets into exactly two co-occurrence components, ascending
std::vector<FacetSet> split_candidates(const CharMatrix& lam);
bool is_decomposable(const CharMatrix& lam);

std::pair<SumPiece, SumPiece> split_charmat(const CharMatrix& lam, const FacetSet& shared);

// connected sum along vertex v of a and vertex w of b; tau matches
// positions of w to positions of v as in connected_sum_polytope
CharMatrix glue_charmat(const CharMatrix& a, const FacetSet& v,
                        const CharMatrix& b, const FacetSet& w,
                        const std::vector<int>& tau);

// manifold normal form of a quasitoric class over a polygon:
// "CP2#i+CPbar2#j" with i >= j, or "S2xS2#g" when no projective piece
// appears
std::string classify_polygon_quasitoric(const CharMatrix& lam);

// small cover over a polygon: "RP2#k" or "T2#k"
std::string classify_polygon_small_cover(const CharMatrix& lam);

// small cover over C^3(m)*: "RP3#a + RP1xRP2#b"
std::string classify_c3_small_cover(const CharMatrix& lam);

// distinct normal forms over every class of the family
std::set<std::string> polygon_quasitoric_forms(int m, int bound);
std::set<std::string> polygon_small_cover_forms(int m);
std::set<std::string> c3_small_cover_forms(int m);

}  // namespace qtoric
