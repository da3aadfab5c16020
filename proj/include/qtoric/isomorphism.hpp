// Deciding and obstructing graded-ring isomorphism between cohomology
// presentations.  A candidate map is a g x g matrix sending generator i to
// the linear form in row i; it is a ring map when every relation of the
// source lands in the ideal of the target.  The rings compared here are
// generated in the bottom degree with no relations there and have graded
// pieces of equal size (free of equal rank over Z, finite of equal order
// over Z/k), so a ring map with unit determinant is automatically an
// isomorphism, and a single direction decides the question.
//
// Over Z/k the search is complete: exhaustive when k^(g^2) is small, and a
// layered lift along powers of the prime otherwise (every solution mod
// p^(t+1) reduces to one mod p^t, and the lifting condition is linear over
// F_p).  Failure over any Z/k soundly proves there is no isomorphism over
// Z.  The bounded integer search can only return a certificate or
// "inconclusive": absence within a box proves nothing.

#pragma once

#include "qtoric/cohomology.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qtoric {

struct IsoVerdict {
  enum class Outcome { Isomorphic, IsomorphicModK, DistinguishedBy, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  Mat cert;             // Isomorphic: integer entries, det +-1;
                        // IsomorphicModK: entries in [0, k)
  i64 modulus = 0;      // IsomorphicModK and DistinguishedBy
  std::string test;     // DistinguishedBy: which test obstructed
  std::string witness;  // DistinguishedBy: short detail
  int bound = 0;        // Inconclusive: the exhausted entry bound
};

// true iff substituting row i of M for generator i maps every relation of R
// into the ideal of Rp.  M must have unit determinant over the common
// coefficient ring.  A nonzero max_degree restricts the check to relations
// of cohomological degree <= max_degree (gen_degree times factor count).
bool apply_iso_check(const RingPresentation& R, const RingPresentation& Rp, const Mat& M,
                     int max_degree = 0);

// complete decision mod k for integer presentations: IsomorphicModK with a
// solution, or DistinguishedBy(k), which proves nonisomorphism over Z.
// Exhausts [0,k)^(g^2) when that is small, otherwise lifts prime by prime.
IsoVerdict iso_over_Zk(const RingPresentation& R, const RingPresentation& Rp, i64 k);
// the layered prime-power search used for large k, exposed so the two
// strategies can be cross-checked on moduli where both apply
IsoVerdict iso_over_Zk_lifted(const RingPresentation& R, const RingPresentation& Rp, i64 k);
// every unit-determinant solution mod k in odometer order, entries in
// [0, k); subject to the same size guard as the exhaustive search
std::vector<Mat> all_isos_mod_k(const RingPresentation& R, const RingPresentation& Rp,
                                i64 k, int max_degree = 0);

// integer certificate search over entries in [-bound, bound]: candidates
// run over matrices congruent to some mod-2 solution, pruned row by row
// through top-degree pairing compatibility, and every returned certificate
// is re-verified in both directions
IsoVerdict iso_over_Z_bounded(const RingPresentation& R, const RingPresentation& Rp,
                              int bound = 10);

// true iff the ring isomorphism M transports the second Stiefel-Whitney
// class and the first Pontryagin class of lam to those of lamp
bool char_class_preserved(const Mat& M, const CharMatrix& lam, const CharMatrix& lamp);

// Isomorphism-invariant record used as a cheap pairwise screen.  The
// pairing multiset is canonicalised under global sign, matching the
// orientation ambiguity of the fundamental class.
struct Fingerprint {
  Vec betti;
  std::vector<i64> moduli;
  // indexed [modulus][degree]: divisors of the degree slice stacked with kI
  std::vector<std::vector<Vec>> slice_divisors;
  std::vector<i64> square_zero;       // per modulus: # degree-2 x, x^2 = 0
  std::vector<i64> power_zero;        // per modulus: # degree-2 x, x^(top/2) = 0
  std::vector<Vec> pairing_multiset;  // per modulus: sorted <x^(top/2), fc> values

  bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const RingPresentation& R, const std::vector<i64>& moduli);

struct IsoBattery {
  std::vector<i64> moduli{2, 3, 4, 5, 8, 9, 16};
  int z_bound = 10;
  bool use_fingerprints = true;
  int jobs = 1;  // worker threads for the pairwise sweep; results stay ordered
};

struct PairVerdict {
  int i = 0, j = 0;
  IsoVerdict v;
};
struct DistinguishReport {
  std::vector<std::vector<int>> classes;        // partition by proven isomorphism
  std::vector<PairVerdict> pairs;               // one entry per pair i < j
  std::vector<std::pair<int, int>> unresolved;  // neither merged nor separated
};
// pairwise screen by fingerprints, then the mod-k ladder, then bounded
// integer search for positive certificates
DistinguishReport distinguish_all(const std::vector<RingPresentation>& rings,
                                  const IsoBattery& battery = {});
std::string report_to_json(const DistinguishReport& rep);

// certificate for two characteristic matrices related by the polytope
// symmetry sigma (an image table): generator images are signed
// substitution rows of the target at the sigma-images of the source
// facets.  Throws when no sign pattern yields a ring map.
Mat derive_orbit_certificate(const CharMatrix& a, const CharMatrix& b,
                             const std::vector<int>& sigma);

}  // namespace qtoric
