// Tests for connected-sum cutting, gluing and the manifold classifiers.
// Normal-form strings are pinned exactly, and the classifiers are checked
// to be invariant under basis changes, column sign flips and polytope
// symmetries, which is what makes them class functions.

#include "qtoric/catalog.hpp"
#include "qtoric/connectsum.hpp"
#include "qtoric/polytope.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace qtoric;

namespace {

CharMatrix hexagon_pair() {
  Mat m(2, 6);
  i64 e[2][6] = {{1, 0, 1, 0, 1, 2}, {0, 1, 2, 1, 0, 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 6; ++j) m.at(i, j) = e[i][j];
  return CharMatrix{Coeff::Z, m, polygon(6)};
}

Mat random_gl2(std::mt19937& rng) {
  Mat G = Mat::identity(2);
  std::uniform_int_distribution<int> coin(0, 3), val(-2, 2);
  for (int step = 0; step < 6; ++step) {
    Mat E = Mat::identity(2);
    switch (coin(rng)) {
      case 0: E.at(0, 1) = val(rng); break;
      case 1: E.at(1, 0) = val(rng); break;
      case 2: E.at(0, 0) = -1; break;
      default: std::swap(E.a[0], E.a[1]), std::swap(E.a[2], E.a[3]); break;
    }
    G = G * E;
  }
  return G;
}

}  // namespace

TEST_CASE("cut candidates on a polygon are the unit non-adjacent pairs") {
  CharMatrix lam = hexagon_pair();
  std::vector<FacetSet> expect;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 2; j <= 6; ++j) {
      if (i == 1 && j == 6) continue;
      i64 d = det_bareiss(submatrix_cols(lam.mat, {i - 1, j - 1}));
      if (d == 1 || d == -1) expect.push_back({i, j});
    }
  CHECK(split_candidates(lam) == expect);
  CHECK(is_decomposable(lam));
}

TEST_CASE("splitting and gluing a hexagon pair is the identity") {
  CharMatrix lam = hexagon_pair();
  auto [left, right] = split_charmat(lam, {1, 4});

  CHECK(left.cols == std::vector<int>{1, 2, 3, 4});
  CHECK(right.cols == std::vector<int>{1, 4, 5, 6});
  CHECK(left.cm.polytope.vertices == polygon(4).vertices);
  CHECK(right.cm.polytope.vertices == polygon(4).vertices);

  // the shared facets keep ascending order in both pieces, so the match
  // between the two new vertices is the identity
  CharMatrix glued = glue_charmat(left.cm, {1, 4}, right.cm, {1, 2}, {0, 1});
  CHECK(glued.mat == lam.mat);
  CHECK(glued.polytope.vertices == lam.polytope.vertices);
}

TEST_CASE("gluing two simplex small covers gives a piece of the dual cyclic family") {
  Mat m(3, 4);
  for (int i = 0; i < 3; ++i) {
    m.at(i, i) = 1;
    m.at(i, 3) = 1;
  }
  CharMatrix rp3{Coeff::Z2, m, simplex(3)};
  CharMatrix glued = glue_charmat(rp3, {2, 3, 4}, rp3, {1, 2, 3}, {0, 1, 2});
  CHECK(glued.m() == 5);
  CHECK(face_data(glued.polytope).h_vector == Vec{1, 2, 2, 1});

  auto [a, b] = split_charmat(glued, {2, 3, 4});
  CHECK(a.cm.polytope.vertices == simplex(3).vertices);
  CHECK(b.cm.polytope.vertices == simplex(3).vertices);
  CHECK(canonical_form(a.cm) == canonical_form(rp3));
  CHECK(canonical_form(b.cm) == canonical_form(rp3));
}

TEST_CASE("gluing rejects mismatched input") {
  CharMatrix z = catalog::p4_hirzebruch(0);
  CharMatrix z2 = catalog::p4_real_torus();
  CHECK_THROWS(glue_charmat(z, {1, 2}, z2, {1, 2}, {0, 1}));
}

TEST_CASE("manifold normal forms over small polygons") {
  CHECK(classify_polygon_quasitoric(catalog::p3_cp2(1)) == "CP2#1+CPbar2#0");
  CHECK(classify_polygon_quasitoric(catalog::p3_cp2(-1)) == "CP2#1+CPbar2#0");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(0)) == "S2xS2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(2)) == "S2xS2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(6)) == "S2xS2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(1)) == "CP2#1+CPbar2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(-3)) == "CP2#1+CPbar2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_hirzebruch(5)) == "CP2#1+CPbar2#1");
  CHECK(classify_polygon_quasitoric(catalog::p4_sum_cp2_cp2()) == "CP2#2+CPbar2#0");
  CHECK(classify_polygon_quasitoric(hexagon_pair()) == "S2xS2#2");
}

TEST_CASE("census of quasitoric manifolds over the square") {
  std::map<std::string, int> count;
  for (const auto& cl : enumerate_integer(polygon(4), 6))
    ++count[classify_polygon_quasitoric(cl.rep)];
  CHECK(count == std::map<std::string, int>{
                     {"S2xS2#1", 7}, {"CP2#1+CPbar2#1", 6}, {"CP2#2+CPbar2#0", 2}});
}

TEST_CASE("normal form counts over polygons") {
  // odd-gons carry (m-1)/2 manifolds, even-gons m/2 + 1
  CHECK(polygon_quasitoric_forms(4, 6).size() == 3);
  CHECK(polygon_quasitoric_forms(5, 6).size() == 2);
  CHECK(polygon_quasitoric_forms(6, 6).size() == 4);
  CHECK(polygon_quasitoric_forms(7, 6).size() == 3);
  CHECK(polygon_quasitoric_forms(8, 6).size() == 5);

  CHECK(polygon_quasitoric_forms(5, 6) ==
        std::set<std::string>{"CP2#3+CPbar2#0", "CP2#2+CPbar2#1"});
  CHECK(polygon_quasitoric_forms(6, 6) ==
        std::set<std::string>{"S2xS2#2", "CP2#4+CPbar2#0", "CP2#3+CPbar2#1",
                              "CP2#2+CPbar2#2"});
}

TEST_CASE("the normal form is a class function") {
  std::mt19937 rng(2024);
  auto classes = enumerate_integer(polygon(5), 4);
  REQUIRE(classes.size() > 10);
  auto rot = std::vector<int>{2, 3, 4, 5, 1};
  auto refl = std::vector<int>{1, 5, 4, 3, 2};
  for (const auto& cl : classes) {
    std::string form = classify_polygon_quasitoric(cl.rep);
    CHECK(classify_polygon_quasitoric(permute_facets(cl.rep, rot)) == form);
    CHECK(classify_polygon_quasitoric(permute_facets(cl.rep, refl)) == form);
    for (int trial = 0; trial < 3; ++trial) {
      Mat G = random_gl2(rng);
      Mat moved = G * cl.rep.mat;
      std::uniform_int_distribution<int> coin(0, 1);
      for (int j = 0; j < 5; ++j)
        if (coin(rng))
          for (int i = 0; i < 2; ++i) moved.at(i, j) = -moved.at(i, j);
      CHECK(classify_polygon_quasitoric(CharMatrix{Coeff::Z, moved, cl.rep.polytope}) == form);
    }
  }
}

TEST_CASE("small cover normal forms over polygons") {
  CHECK(classify_polygon_small_cover(catalog::p4_real_torus()) == "T2#1");
  CHECK(classify_polygon_small_cover(catalog::p4_real_klein()) == "RP2#2");

  CHECK(polygon_small_cover_forms(4) == std::set<std::string>{"T2#1", "RP2#2"});
  CHECK(polygon_small_cover_forms(5) == std::set<std::string>{"RP2#3"});
  CHECK(polygon_small_cover_forms(6) == std::set<std::string>{"T2#2", "RP2#4"});
  CHECK(polygon_small_cover_forms(7) == std::set<std::string>{"RP2#5"});
}

TEST_CASE("small cover normal forms over the dual cyclic three-polytopes") {
  CHECK(classify_c3_small_cover(catalog::c3_terminal("rp3")) == "RP3#1 + RP1xRP2#0");
  CHECK(classify_c3_small_cover(catalog::c3_terminal("rp1xrp2_a")) == "RP3#0 + RP1xRP2#1");
  CHECK(classify_c3_small_cover(catalog::c3_terminal("rp1xrp2_b")) == "RP3#0 + RP1xRP2#1");

  CHECK(c3_small_cover_forms(4) == std::set<std::string>{"RP3#1 + RP1xRP2#0"});
  CHECK(c3_small_cover_forms(5) ==
        std::set<std::string>{"RP3#2 + RP1xRP2#0", "RP3#0 + RP1xRP2#1"});
  CHECK(c3_small_cover_forms(6) ==
        std::set<std::string>{"RP3#3 + RP1xRP2#0", "RP3#1 + RP1xRP2#1"});

  // every class decomposes and the piece counts fill the polytope
  for (int m : {7, 8}) {
    CAPTURE(m);
    for (const auto& cl : enumerate_real(dual_cyclic(3, m))) {
      long long a = -1, b = -1;
      std::string form = classify_c3_small_cover(cl.rep);
      REQUIRE(std::sscanf(form.c_str(), "RP3#%lld + RP1xRP2#%lld", &a, &b) == 2);
      CHECK(a + 2 * b == m - 3);
    }
  }
}

TEST_CASE("indecomposability of the named pairs on C^3(6)*") {
  for (const auto& e : catalog::c36_named()) {
    CAPTURE(e.name);
    CHECK(!is_decomposable(e.cm));
  }
  for (i64 d : {-4, 3, 5, 8}) {
    CAPTURE(d);
    CHECK(!is_decomposable(catalog::c36_lambda_d(d)));
  }
}

TEST_CASE("cut candidates agree with the separating minors on C^3(6)*") {
  // the only separating size-3 non-faces of C^3(6)* are {1,3,6} and {1,4,6}
  auto classes = enumerate_integer(dual_cyclic(3, 6), 3);
  int decomposable = 0;
  for (const auto& cl : classes) {
    bool minors = false;
    for (int k : {3, 4}) {
      i64 d = det_bareiss(submatrix_cols(cl.rep.mat, {0, k - 1, 5}));
      if (d == 1 || d == -1) minors = true;
    }
    CHECK(is_decomposable(cl.rep) == minors);
    if (minors) ++decomposable;
  }
  REQUIRE(decomposable > 0);

  // pieces of a decomposable class live over the simplex and C^3(5)*
  for (const auto& cl : classes) {
    if (!is_decomposable(cl.rep)) continue;
    auto cands = split_candidates(cl.rep);
    REQUIRE(!cands.empty());
    auto [a, b] = split_charmat(cl.rep, cands.front());
    std::set<int> sizes{a.cm.m(), b.cm.m()};
    CHECK(sizes == std::set<int>{4, 5});
    CHECK(a.cm.polytope.vertices == dual_cyclic(3, a.cm.m()).vertices);
    CHECK(b.cm.polytope.vertices == dual_cyclic(3, b.cm.m()).vertices);
    break;
  }
}
