// Isomorphism-search oracles.  Ground truth comes from three directions:
// stored certificates that must verify, pairs the modular ladder is known
// to separate at a specific modulus, and rank-two surface rings small
// enough to enumerate exhaustively, against which the layered prime-power
// search is cross-checked.

#include "qtoric/isomorphism.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qtoric/catalog.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/polytope.hpp"

using namespace qtoric;

namespace {

RingPresentation ring_of(const CharMatrix& cm) { return build_ring(cm); }

CharMatrix c36_by_name(const std::string& name) {
  for (const auto& nc : catalog::c36_named())
    if (nc.name == name) return nc.cm;
  fail("no such stored matrix: " + name);
}

Mat negate(const Mat& M) {
  Mat out = M;
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j) out.at(i, j) = -out.at(i, j);
  return out;
}

bool contains_mat(const std::vector<Mat>& v, const Mat& m) {
  return std::find(v.begin(), v.end(), m) != v.end();
}

}  // namespace

TEST_CASE("substitution checks validate the stored certificate") {
  CharMatrix a1 = c36_by_name("lambda_1p");
  CharMatrix a2 = c36_by_name("lambda_2ppp");
  RingPresentation R1 = ring_of(a1), R2 = ring_of(a2);
  Mat cert = catalog::c36_iso_certificate();

  CHECK(apply_iso_check(R1, R2, cert));
  CHECK(apply_iso_check(R2, R1, unimodular_inverse(cert)));
  CHECK(apply_iso_check(R1, R1, Mat::identity(3)));

  // same shape, different ideals
  RingPresentation A = ring_of(catalog::c47_lift(9));
  RingPresentation D = ring_of(catalog::c47_lift(15));
  CHECK_FALSE(apply_iso_check(A, D, Mat::identity(3)));

  Mat doubled = Mat::identity(3);
  for (int i = 0; i < 3; ++i) doubled.at(i, i) = 2;
  CHECK_THROWS_AS((void)apply_iso_check(R1, R1, doubled), qtoric_error);
  CHECK_THROWS_AS((void)apply_iso_check(R1, A, cert), qtoric_error);  // tops differ
}

TEST_CASE("modular searches agree with exhaustive enumeration on surface rings") {
  RingPresentation F0 = ring_of(catalog::p4_hirzebruch(0));
  RingPresentation F1 = ring_of(catalog::p4_hirzebruch(1));
  RingPresentation F2 = ring_of(catalog::p4_hirzebruch(2));

  // the even pair is isomorphic over Z, so congruent at every modulus
  for (i64 k : {8, 9, 16}) {
    IsoVerdict ex = iso_over_Zk(F0, F2, k);  // k^4 is small: exhaustive path
    IsoVerdict li = iso_over_Zk_lifted(F0, F2, k);
    CHECK(ex.outcome == IsoVerdict::Outcome::IsomorphicModK);
    CHECK(li.outcome == IsoVerdict::Outcome::IsomorphicModK);
    auto all = all_isos_mod_k(F0, F2, k);
    CHECK(contains_mat(all, ex.cert));
    CHECK(contains_mat(all, li.cert));
  }

  // the odd/even pair separates exactly at powers of two
  CHECK(iso_over_Zk(F0, F1, 2).outcome == IsoVerdict::Outcome::DistinguishedBy);
  for (i64 k : {8, 16}) {
    CHECK(iso_over_Zk(F0, F1, k).outcome == IsoVerdict::Outcome::DistinguishedBy);
    CHECK(iso_over_Zk_lifted(F0, F1, k).outcome == IsoVerdict::Outcome::DistinguishedBy);
  }
  IsoVerdict ex9 = iso_over_Zk(F0, F1, 9);
  IsoVerdict li9 = iso_over_Zk_lifted(F0, F1, 9);
  CHECK(ex9.outcome == li9.outcome);
  if (ex9.outcome == IsoVerdict::Outcome::IsomorphicModK)
    CHECK(contains_mat(all_isos_mod_k(F0, F1, 9), li9.cert));
}

TEST_CASE("modular ladder separates the quartic lifts at the stated moduli") {
  RingPresentation A = ring_of(catalog::c47_lift(9));
  RingPresentation B = ring_of(catalog::c47_lift(17));
  RingPresentation C = ring_of(catalog::c47_lift(16));
  RingPresentation D = ring_of(catalog::c47_lift(15));

  auto sep = [](const RingPresentation& x, const RingPresentation& y, i64 k) {
    return iso_over_Zk(x, y, k).outcome == IsoVerdict::Outcome::DistinguishedBy;
  };

  CHECK(sep(A, B, 4));
  CHECK(sep(B, C, 4));
  CHECK(sep(B, D, 4));
  CHECK(sep(A, D, 3));
  CHECK(sep(C, D, 3));
  CHECK(sep(A, C, 3));

  // the four lifts reduce to the same real matrix, so mod 2 the four
  // presentations coincide and every pair is congruent there
  CHECK(iso_over_Zk(A, B, 2).outcome == IsoVerdict::Outcome::IsomorphicModK);
  CHECK(iso_over_Zk(A, D, 2).outcome == IsoVerdict::Outcome::IsomorphicModK);
}

TEST_CASE("the named pair on the six-facet polytope is congruent at every battery modulus") {
  RingPresentation R1 = ring_of(c36_by_name("lambda_1p"));
  RingPresentation R2 = ring_of(c36_by_name("lambda_2ppp"));
  for (i64 k : {2, 3, 4, 5, 8, 9, 16}) {
    IsoVerdict v = iso_over_Zk(R1, R2, k);
    CAPTURE(k);
    CHECK(v.outcome == IsoVerdict::Outcome::IsomorphicModK);
    CHECK(v.modulus == k);
  }
}

TEST_CASE("bounded integer search recovers certificates") {
  RingPresentation R1 = ring_of(c36_by_name("lambda_1p"));
  RingPresentation R2 = ring_of(c36_by_name("lambda_2ppp"));

  IsoVerdict v = iso_over_Z_bounded(R1, R2, 2);
  REQUIRE(v.outcome == IsoVerdict::Outcome::Isomorphic);
  i64 d = det_bareiss(v.cert);
  CHECK((d == 1 || d == -1));
  CHECK(apply_iso_check(R1, R2, v.cert));
  CHECK(apply_iso_check(R2, R1, unimodular_inverse(v.cert)));

  IsoVerdict self = iso_over_Z_bounded(R1, R1, 1);
  REQUIRE(self.outcome == IsoVerdict::Outcome::Isomorphic);
  CHECK(self.cert == Mat::identity(3));

  RingPresentation F0 = ring_of(catalog::p4_hirzebruch(0));
  RingPresentation F2 = ring_of(catalog::p4_hirzebruch(2));
  IsoVerdict surf = iso_over_Z_bounded(F0, F2, 2);
  REQUIRE(surf.outcome == IsoVerdict::Outcome::Isomorphic);
  CHECK(apply_iso_check(F0, F2, surf.cert));

  // a negative answer is never claimed
  RingPresentation F1 = ring_of(catalog::p4_hirzebruch(1));
  IsoVerdict inc = iso_over_Z_bounded(F0, F1, 3);
  CHECK(inc.outcome == IsoVerdict::Outcome::Inconclusive);
  CHECK(inc.bound == 3);
}

TEST_CASE("degree-limited substitutions that do not extend") {
  RingPresentation R21 = ring_of(catalog::c58_lift({21, 0, 0}));
  RingPresentation R23 = ring_of(catalog::c58_lift({23, 0, 0}));
  auto phis = catalog::c58_phi();
  REQUIRE(phis.size() == 7);

  Mat id = Mat::identity(3);
  for (const auto& [name, phi] : phis) {
    CAPTURE(name);
    Mat r2(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r2.at(i, j) = mod_norm(phi.at(i, j), 2);
    CHECK(r2 == id);
    // none of the candidates respects the full ideal
    CHECK_FALSE(apply_iso_check(R21, R23, phi));
  }

  // the first two candidates match the ideals through degree six, with either sign
  for (int idx : {0, 1}) {
    const Mat& phi = phis[idx].mat;
    CHECK(apply_iso_check(R21, R23, phi, 6));
    CHECK(apply_iso_check(R21, R23, negate(phi), 6));
  }

  // through degree six, the only mod-2 substitution is the identity
  auto mod2 = all_isos_mod_k(R21, R23, 2, 6);
  REQUIRE(mod2.size() == 1);
  CHECK(mod2.front() == id);
}

TEST_CASE("characteristic classes ride along ring certificates") {
  CharMatrix a1 = c36_by_name("lambda_1p");
  CharMatrix a2 = c36_by_name("lambda_2ppp");
  Mat cert = catalog::c36_iso_certificate();

  CHECK(char_class_preserved(cert, a1, a2));
  CHECK(char_class_preserved(negate(cert), a1, a2));
  CHECK(char_class_preserved(Mat::identity(3), a1, a1));

  // a matrix that is not a ring isomorphism is rejected outright
  CharMatrix A = catalog::c47_lift(9);
  CharMatrix D = catalog::c47_lift(15);
  CHECK_THROWS_AS((void)char_class_preserved(Mat::identity(3), A, D), qtoric_error);
}

TEST_CASE("polytope symmetries yield orbit certificates") {
  // the label swap 1 <-> 8 pairs up lifts on the twenty-vertex polytope
  std::vector<int> sigma{8, 2, 3, 4, 5, 6, 7, 1};
  auto orbits = catalog::c58_orbits_golden();
  const std::vector<catalog::C58Key>* pair = nullptr;
  for (const auto& orbit : orbits)
    if (orbit.size() == 2) {
      pair = &orbit;
      break;
    }
  REQUIRE(pair != nullptr);

  CharMatrix a = catalog::c58_lift((*pair)[0]);
  CharMatrix b = catalog::c58_lift((*pair)[1]);
  Mat cert = derive_orbit_certificate(a, b, sigma);
  RingPresentation Ra = ring_of(a), Rb = ring_of(b);
  CHECK(apply_iso_check(Ra, Rb, cert));
  CHECK(apply_iso_check(Rb, Ra, unimodular_inverse(cert)));
  CHECK(char_class_preserved(cert, a, b));

  // on the six-facet polytope some symmetry carries lambda_1 to lambda_1p
  CharMatrix l1 = c36_by_name("lambda_1");
  CharMatrix l1p = c36_by_name("lambda_1p");
  bool found = false;
  for (const auto& aut : automorphism_group(dual_cyclic(3, 6))) {
    try {
      Mat m = derive_orbit_certificate(l1, l1p, aut);
      CHECK(apply_iso_check(ring_of(l1), ring_of(l1p), m));
      CHECK(char_class_preserved(m, l1, l1p));
      found = true;
      break;
    } catch (const qtoric_error&) {
    }
  }
  CHECK(found);
}

TEST_CASE("fingerprints separate rings that invariants can tell apart") {
  RingPresentation F0 = ring_of(catalog::p4_hirzebruch(0));
  RingPresentation F1 = ring_of(catalog::p4_hirzebruch(1));

  Fingerprint fa = fingerprint(F0, {2});
  Fingerprint fb = fingerprint(F1, {2});
  CHECK(fa == fingerprint(F0, {2}));
  CHECK_FALSE(fa == fb);
  CHECK(fa.square_zero[0] == 4);  // every class squares into the even ideal
  CHECK(fb.square_zero[0] == 2);

  RingPresentation A = ring_of(catalog::c47_lift(9));
  RingPresentation B = ring_of(catalog::c47_lift(17));
  CHECK_FALSE(fingerprint(A, {4}) == fingerprint(B, {4}));
}

TEST_CASE("pairwise reports merge the isomorphic pair and split the quartet") {
  std::vector<RingPresentation> quartet{
      ring_of(catalog::c47_lift(9)), ring_of(catalog::c47_lift(17)),
      ring_of(catalog::c47_lift(16)), ring_of(catalog::c47_lift(15))};
  DistinguishReport rep = distinguish_all(quartet);
  CHECK(rep.classes == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
  CHECK(rep.unresolved.empty());
  CHECK(rep.pairs.size() == 6);
  for (const auto& pv : rep.pairs)
    CHECK(pv.v.outcome == IsoVerdict::Outcome::DistinguishedBy);

  std::vector<RingPresentation> named{ring_of(c36_by_name("lambda_1p")),
                                      ring_of(c36_by_name("lambda_2ppp"))};
  DistinguishReport merged = distinguish_all(named);
  CHECK(merged.classes == std::vector<std::vector<int>>{{0, 1}});
  REQUIRE(merged.pairs.size() == 1);
  CHECK(merged.pairs[0].v.outcome == IsoVerdict::Outcome::Isomorphic);

  auto j = nlohmann::json::parse(report_to_json(merged));
  CHECK(j["classes"] == nlohmann::json::parse("[[0,1]]"));
  CHECK(j["pairs"][0]["outcome"] == "iso");
  CHECK(j["pairs"][0]["witness"].contains("certificate"));

  DistinguishReport folded = distinguish_all(
      {ring_of(catalog::c36_lambda_d(3)), ring_of(catalog::c36_lambda_d(4))});
  CHECK(folded.classes == std::vector<std::vector<int>>{{0}, {1}});
}
