// Tests for the polytope module.  The vertex rule for C^n(m)^* is checked
// against an independent oracle: a subset is a vertex iff it splits into
// disjoint blocks {j, j+1} intersected with {1..m} (so {1} and {m} count
// as blocks).  Face counts, h-vectors, automorphisms and connected sums
// are each checked against either hand-computed data or a brute-force
// rewrite of the definition.

#include <doctest.h>

#include "qtoric/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace qtoric;

namespace {

// oracle: can `s` be written as a disjoint union of blocks {j,j+1} n {1..m}?
bool splits_into_end_blocks(const std::vector<int>& s, size_t pos, int m) {
  if (pos == s.size()) return true;
  int a = s[pos];
  // block {a, a+1}
  if (pos + 1 < s.size() && s[pos + 1] == a + 1 &&
      splits_into_end_blocks(s, pos + 2, m))
    return true;
  // block {0,1} n {1..m} = {1}, block {m,m+1} n {1..m} = {m}
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

std::vector<std::vector<int>> brute_automorphisms(const CombinatorialPolytope& P) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(P.m);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<FacetSet> mapped;
    for (const auto& v : P.vertices) {
      FacetSet w;
      for (int f : v) w.push_back(perm[f - 1]);
      std::sort(w.begin(), w.end());
      mapped.push_back(std::move(w));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped == P.vertices) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// is there any relabelling carrying P's vertex family onto Q's?
bool combinatorially_isomorphic(const CombinatorialPolytope& P,
                                const CombinatorialPolytope& Q) {
  if (P.n != Q.n || P.m != Q.m || P.vertices.size() != Q.vertices.size()) return false;
  std::vector<int> perm(P.m);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<FacetSet> mapped;
    for (const auto& v : P.vertices) {
      FacetSet w;
      for (int f : v) w.push_back(perm[f - 1]);
      std::sort(w.begin(), w.end());
      mapped.push_back(std::move(w));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped == Q.vertices) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("dual cyclic vertices match the block-partition oracle") {
  CHECK(dual_cyclic(1, 2).vertices == oracle_vertices(1, 2));
  for (int n = 2; n <= 6; ++n)
    for (int m = n + 1; m <= 10; ++m) {
      CombinatorialPolytope P = dual_cyclic(n, m);
      CHECK(P.vertices == oracle_vertices(n, m));
    }
}

TEST_CASE("known vertex families") {
  CombinatorialPolytope C47 = dual_cyclic(4, 7);
  std::vector<FacetSet> expect = {
      {1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6}, {4, 5, 6, 7}, {1, 2, 3, 7},
      {1, 5, 6, 7}, {1, 2, 6, 7}, {1, 2, 4, 5}, {1, 2, 5, 6}, {1, 3, 4, 7},
      {1, 4, 5, 7}, {2, 3, 6, 7}, {3, 4, 6, 7}, {2, 3, 5, 6}};
  std::sort(expect.begin(), expect.end());
  CHECK(C47.vertices == expect);
  CHECK(!is_face(C47, {1, 3, 5, 7}));
  CHECK(is_face(C47, {1, 5, 7}));
  CHECK(C47.label == "C^4(7)*");

  CombinatorialPolytope C36 = dual_cyclic(3, 6);
  CHECK(C36.vertices.size() == 8);
  for (int i = 2; i <= 5; ++i) CHECK(is_face(C36, {1, i, i + 1}));
  for (int i = 1; i <= 4; ++i) CHECK(is_face(C36, {i, i + 1, 6}));

  CHECK(dual_cyclic(5, 8).vertices.size() == 20);

  // three-dimensional family: maximal faces are {1,i,i+1} and {i,i+1,m}
  for (int m = 5; m <= 9; ++m) {
    CombinatorialPolytope P = dual_cyclic(3, m);
    std::vector<FacetSet> want;
    for (int i = 2; i <= m - 1; ++i) want.push_back({1, i, i + 1});
    for (int i = 1; i <= m - 2; ++i) {
      FacetSet s{i, i + 1, m};
      std::sort(s.begin(), s.end());
      want.push_back(s);
    }
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    CHECK(P.vertices == want);
  }

  // polygons and simplices come out of the same rule
  CombinatorialPolytope P6 = polygon(6);
  CHECK(P6.label == "P_6");
  CHECK(P6.vertices.size() == 6);
  CHECK(is_face(P6, {1, 6}));
  CHECK(!is_face(P6, {2, 4}));
  CombinatorialPolytope D4 = simplex(4);
  CHECK(D4.label == "Delta^4");
  CHECK(D4.vertices.size() == 5);
}

TEST_CASE("polytope validation catches broken families") {
  CombinatorialPolytope C36 = dual_cyclic(3, 6);
  CHECK(check_polytope(C36));
  CombinatorialPolytope broken = C36;
  broken.vertices.erase(broken.vertices.begin());
  std::string why;
  CHECK(!check_polytope(broken, &why));
  CHECK(!why.empty());
}

TEST_CASE("face data: f-vectors, h-vectors, missing faces") {
  CombinatorialPolytope C36 = dual_cyclic(3, 6);
  FaceData fd = face_data(C36);
  CHECK(fd.f_vector == Vec{6, 12, 8});
  CHECK(fd.h_vector == Vec{1, 3, 3, 1});
  for (FacetSet s : {FacetSet{2, 4}, FacetSet{3, 5}, FacetSet{2, 5}})
    CHECK(std::count(fd.missing_faces.begin(), fd.missing_faces.end(), s) == 1);
  for (FacetSet s : {FacetSet{1, 3, 6}, FacetSet{1, 4, 6}})
    CHECK(std::count(fd.missing_faces.begin(), fd.missing_faces.end(), s) == 1);

  CHECK(face_data(dual_cyclic(4, 7)).h_vector == Vec{1, 3, 6, 3, 1});
  CHECK(face_data(dual_cyclic(5, 8)).h_vector == Vec{1, 3, 6, 6, 3, 1});
  for (int n = 2; n <= 5; ++n) {
    Vec h = face_data(simplex(n)).h_vector;
    CHECK(h == Vec(n + 1, 1));
  }

  // h sums to the vertex count, and satisfies Dehn-Sommerville
  for (int n = 2; n <= 5; ++n)
    for (int m = n + 1; m <= 9; ++m) {
      CombinatorialPolytope P = dual_cyclic(n, m);
      FaceData f = face_data(P);
      CHECK(std::accumulate(f.h_vector.begin(), f.h_vector.end(), i64{0}) ==
            static_cast<i64>(P.vertices.size()));
      for (int i = 0; i <= n; ++i) CHECK(f.h_vector[i] == f.h_vector[n - i]);
      CHECK(f.f_vector[0] == m);
      // alternative binomial formula for h
      auto binom = [](i64 a, i64 b) {
        if (b < 0 || b > a) return i64{0};
        i64 r = 1;
        for (i64 i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
      };
      for (int k = 0; k <= n; ++k) {
        i64 hk = 0;
        for (int i = 0; i <= k; ++i) {
          i64 fi = (i == 0) ? 1 : f.f_vector[i - 1];
          i64 term = binom(n - i, k - i) * fi;
          hk += ((k - i) % 2 == 0) ? term : -term;
        }
        CHECK(f.h_vector[k] == hk);
      }
    }

  // brute re-derivation of minimal non-faces from the definition
  for (auto P : {dual_cyclic(3, 6), dual_cyclic(4, 7), dual_cyclic(2, 5)}) {
    std::set<FacetSet> faces;
    for (const auto& v : P.vertices)
      for (uint32_t b = 1; b < (1u << P.n); ++b) {
        FacetSet s;
        for (int i = 0; i < P.n; ++i)
          if ((b >> i) & 1) s.push_back(v[i]);
        faces.insert(s);
      }
    std::vector<FacetSet> expect;
    std::vector<int> elems(P.m);
    std::iota(elems.begin(), elems.end(), 1);
    for (uint32_t b = 1; b < (1u << P.m); ++b) {
      FacetSet s;
      for (int i = 0; i < P.m; ++i)
        if ((b >> i) & 1) s.push_back(i + 1);
      if (faces.count(s)) continue;
      bool minimal = true;
      for (size_t drop = 0; drop < s.size() && minimal; ++drop) {
        FacetSet t;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != drop) t.push_back(s[i]);
        if (!t.empty() && !faces.count(t)) minimal = false;
      }
      if (minimal) expect.push_back(s);
    }
    std::sort(expect.begin(), expect.end(), [](const FacetSet& a, const FacetSet& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    CHECK(face_data(P).missing_faces == expect);
  }
}

TEST_CASE("automorphism groups") {
  // exhaustive next_permutation oracle on every case small enough for it
  for (auto P : {dual_cyclic(3, 6), dual_cyclic(2, 5), dual_cyclic(2, 6),
                 dual_cyclic(3, 5), simplex(3), dual_cyclic(4, 7)}) {
    auto fast = automorphism_group(P);
    auto slow = brute_automorphisms(P);
    std::sort(slow.begin(), slow.end());
    CHECK(fast == slow);
  }

  // known groups
  auto C36 = automorphism_group(dual_cyclic(3, 6));
  std::vector<std::vector<int>> c36_expect = {
      {1, 2, 3, 4, 5, 6},      // identity
      {1, 5, 4, 3, 2, 6},      // swap 2<->5, 3<->4
      {6, 2, 3, 4, 5, 1},      // swap 1<->6
      {6, 5, 4, 3, 2, 1},      // full reversal
  };
  std::sort(c36_expect.begin(), c36_expect.end());
  CHECK(C36 == c36_expect);

  auto C47 = automorphism_group(dual_cyclic(4, 7));
  CHECK(C47.size() == 14);
  std::vector<int> rot = {2, 3, 4, 5, 6, 7, 1};
  std::vector<int> rev = {7, 6, 5, 4, 3, 2, 1};
  CHECK(std::count(C47.begin(), C47.end(), rot) == 1);
  CHECK(std::count(C47.begin(), C47.end(), rev) == 1);

  auto C58 = automorphism_group(dual_cyclic(5, 8));
  std::vector<std::vector<int>> c58_expect = {
      {1, 2, 3, 4, 5, 6, 7, 8},
      {1, 7, 6, 5, 4, 3, 2, 8},
      {8, 2, 3, 4, 5, 6, 7, 1},
      {8, 7, 6, 5, 4, 3, 2, 1},
  };
  std::sort(c58_expect.begin(), c58_expect.end());
  CHECK(C58 == c58_expect);

  // polygons have dihedral symmetry of order 2m
  CHECK(automorphism_group(polygon(5)).size() == 10);
  CHECK(automorphism_group(polygon(6)).size() == 12);
  // simplices are fully symmetric
  CHECK(automorphism_group(simplex(4)).size() == 120);
}

TEST_CASE("connected sums of polytopes") {
  // gluing a simplex onto a simplex gives the 5-facet prism type
  CombinatorialPolytope D3 = simplex(3);
  CombinatorialPolytope S = connected_sum_polytope(D3, D3, {1, 2, 3}, {1, 2, 3}, {0, 1, 2});
  CHECK(S.m == 5);
  CHECK(S.vertices.size() == 6);
  CHECK(combinatorially_isomorphic(S, dual_cyclic(3, 5)));

  // polygons: P_a # P_b is a (a+b-2)-gon
  for (auto [a, b] : {std::pair{4, 4}, {4, 5}, {5, 5}, {3, 6}}) {
    CombinatorialPolytope Pa = polygon(a), Pb = polygon(b);
    CombinatorialPolytope R =
        connected_sum_polytope(Pa, Pb, Pa.vertices.front(), Pb.vertices.front(), {0, 1});
    CHECK(R.m == a + b - 2);
    CHECK(combinatorially_isomorphic(R, polygon(a + b - 2)));
  }

  // the three-dimensional gluing pattern used by the classifier: glue at
  // {1, m1-1, m1} and {1, 2, m2}; an explicit relabelling turns the result
  // into the next dual cyclic polytope
  for (auto [m1, m2] : {std::pair{4, 4}, {4, 5}, {5, 5}, {4, 6}, {5, 6}}) {
    CombinatorialPolytope A = dual_cyclic(3, m1), B = dual_cyclic(3, m2);
    FacetSet v{1, m1 - 1, m1}, w{1, 2, m2};
    GluingData g;
    CombinatorialPolytope R = connected_sum_polytope(A, B, v, w, {0, 1, 2}, &g);
    int M = m1 + m2 - 3;
    CHECK(R.m == M);
    std::vector<int> pi(R.m + 1);
    for (int i = 1; i <= m1 - 1; ++i) pi[i] = i;
    pi[m1] = M;
    for (int k = 1; k <= m2 - 3; ++k) pi[m1 + k] = m1 + k - 1;
    std::vector<FacetSet> relabeled;
    for (const auto& x : R.vertices) {
      FacetSet y;
      for (int f : x) y.push_back(pi[f]);
      std::sort(y.begin(), y.end());
      relabeled.push_back(std::move(y));
    }
    std::sort(relabeled.begin(), relabeled.end());
    CHECK(relabeled == dual_cyclic(3, M).vertices);
  }

  // bad glue data is rejected
  CHECK_THROWS_AS(connected_sum_polytope(D3, D3, {1, 2, 4}, {1, 2, 3}, {0, 0, 2}),
                  qtoric_error);
}

TEST_CASE("polytope json round trip") {
  for (auto P : {dual_cyclic(4, 7), polygon(6), simplex(2)}) {
    CombinatorialPolytope Q = polytope_from_json(polytope_to_json(P));
    CHECK(P == Q);
  }
  CHECK_THROWS(polytope_from_json("{\"n\":2,\"m\":4,\"label\":\"x\",\"vertices\":[[1,2]]}"));
}
