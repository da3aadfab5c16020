// Tests for the graded quotient rings attached to characteristic matrices.
// The hard-coded expectations pin down every convention the later stages
// rely on: generator order and monomial order, the unsigned substitution
// rows, the choice of fundamental-class vertex, the monomial naming used
// by the pairing table, and the sign of the first Pontryagin class.

#include "qtoric/catalog.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/polytope.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace qtoric;

namespace {

CharMatrix named(const std::vector<catalog::NamedCharMat>& list, const std::string& name) {
  for (const auto& e : list)
    if (e.name == name) return e.cm;
  FAIL("no entry named ", name);
  return list.front().cm;
}

// coefficient vector of c * (monomial with exponents e) in degree d
Vec unit_mono(const GradedRing& G, int d, const Vec& e, i64 c = 1) {
  Vec out(G.monos[d].size(), 0);
  auto it = std::find(G.monos[d].begin(), G.monos[d].end(), e);
  REQUIRE(it != G.monos[d].end());
  out[static_cast<size_t>(it - G.monos[d].begin())] = c;
  return out;
}

Vec add(Vec a, const Vec& b) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// membership of v in the integer row span of gen
bool span_contains(const std::vector<Vec>& gen, const Vec& v) {
  if (gen.empty()) return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
  int cols = static_cast<int>(gen[0].size());
  Mat A(static_cast<int>(gen.size()), cols);
  for (size_t r = 0; r < gen.size(); ++r)
    for (int c = 0; c < cols; ++c) A.at(static_cast<int>(r), c) = gen[r][c];
  SnfResult snf = snf_with_transform(A);
  for (int j = 0; j < cols; ++j) {
    i64 t = 0;
    for (int i = 0; i < cols; ++i) t += v[i] * snf.V.at(i, j);
    i64 dj = j < static_cast<int>(snf.diag.size()) ? snf.diag[j] : 0;
    if (dj == 0 ? t != 0 : t % dj != 0) return false;
  }
  return true;
}

bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  for (const auto& r : a)
    if (!span_contains(b, r)) return false;
  for (const auto& r : b)
    if (!span_contains(a, r)) return false;
  return true;
}

std::vector<Vec> cubic_relation_rows(const GradedRing& G) {
  std::vector<Vec> out;
  for (const auto& rel : G.pres.relations)
    if (rel.factors.size() == 3) out.push_back(expand_product(G, rel.factors));
  return out;
}

CharMatrix simplex_twist(int n) {
  // the identity block with a final column of ones; the complex projective space
  Mat m(n, n + 1);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1;
    m.at(i, n) = 1;
  }
  return CharMatrix{Coeff::Z, m, simplex(n)};
}

}  // namespace

TEST_CASE("complex projective spaces") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    GradedRing G = analyze_ring(build_ring(simplex_twist(n)));
    REQUIRE(G.has_basis);
    CHECK(G.torsion_free);
    CHECK(betti(G) == std::vector<i64>(n + 1, 1));
    CHECK(pairing(G, Vec{n}) == 1);
  }

  // p_1 = (n+1) x^2 with the sign convention fixed so the value is positive
  GradedRing cp2 = analyze_ring(build_ring(simplex_twist(2)));
  CHECK(first_pontryagin(cp2) == Vec{3});
  GradedRing cp3 = analyze_ring(build_ring(simplex_twist(3)));
  CHECK(first_pontryagin(cp3) == Vec{4});
}

TEST_CASE("bundles over the square and the sum of two projective planes") {
  SUBCASE("trivial bundle") {
    GradedRing G = analyze_ring(build_ring(catalog::p4_hirzebruch(0)));
    CHECK(betti(G) == std::vector<i64>{1, 2, 1});
    CHECK(G.torsion_free);
    CHECK(pairing(G, Vec{1, 1}) == 1);
    CHECK(pairing(G, Vec{2, 0}) == 0);
    CHECK(pairing(G, Vec{0, 2}) == 0);
    CHECK(first_pontryagin(G) == Vec{0, 0, 0});
  }

  SUBCASE("twisted bundles") {
    for (i64 k : {1, 2, 3, 5}) {
      CAPTURE(k);
      GradedRing G = analyze_ring(build_ring(catalog::p4_hirzebruch(k)));
      CHECK(betti(G) == std::vector<i64>{1, 2, 1});
      CHECK(pairing(G, Vec{1, 1}) == 1);
      // the self-pairing of the first generator sees the twisting, up to sign
      i64 p = pairing(G, Vec{2, 0});
      CHECK((p == k || p == -k));
      CHECK(first_pontryagin(G) == Vec{0, 0, 0});
    }
  }

  SUBCASE("connected sum of two projective planes") {
    GradedRing G = analyze_ring(build_ring(catalog::p4_sum_cp2_cp2()));
    CHECK(betti(G) == std::vector<i64>{1, 2, 1});
    CHECK(pairing(G, Vec{2, 0}) == 2);
    CHECK(pairing(G, Vec{1, 1}) == -1);
    CHECK(pairing(G, Vec{0, 2}) == 1);
    // the intersection form is positive definite, so p_1 pairs to 3 * signature = 6
    Vec p1 = first_pontryagin(G);
    i64 total = 0;
    for (size_t i = 0; i < p1.size(); ++i) {
      if (p1[i] == 0) continue;
      total += p1[i] * pairing(G, G.monos[2][i]);
    }
    CHECK(total == 6);
  }
}

TEST_CASE("stored top pairing table on C^4(7)*") {
  auto rows = catalog::table1();
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CAPTURE(row.ring);
    GradedRing G = analyze_ring(build_ring(catalog::c47_lift(row.lift)));
    REQUIRE(G.has_basis);
    CHECK(G.torsion_free);
    auto table = pairing_table(G);
    REQUIRE(table.size() == row.values.size());
    std::map<std::string, i64> got(table.begin(), table.end());
    REQUIRE(got.size() == table.size());  // names are distinct
    for (const auto& [name, want] : row.values) {
      CAPTURE(name);
      REQUIRE(got.count(name) == 1);
      CHECK(got.at(name) == want);
    }
  }
}

TEST_CASE("relation ideals of the rings over C^3(6)*") {
  const Vec X{1, 0, 0}, Y{0, 1, 0}, Z{0, 0, 1};

  SUBCASE("named rings") {
    for (const char* nm : {"lambda_1p", "lambda_2ppp"}) {
      CAPTURE(nm);
      GradedRing G = analyze_ring(build_ring(named(catalog::c36_named(), nm)));
      const Vec f{1, 2, 3};  // the middle substitution row
      std::vector<Vec> quad = {expand_product(G, {X, f}), expand_product(G, {Y, f}),
                               expand_product(G, {Y, Vec{1, 1, 1}})};
      CHECK(spans_equal(G.slices[2], quad));

      Vec v1 = std::string(nm) == "lambda_1p" ? Z : add(Y, Z);
      std::vector<Vec> cubic = {expand_product(G, {v1, Vec{1, 1, 1}, Z}),
                                expand_product(G, {v1, X, Z})};
      CHECK(spans_equal(cubic_relation_rows(G), cubic));
    }
  }

  SUBCASE("one-parameter family") {
    for (i64 d : {-3, 3, 5, 8}) {
      CAPTURE(d);
      GradedRing G = analyze_ring(build_ring(catalog::c36_lambda_d(d)));
      const Vec f{1, 1, d};
      std::vector<Vec> quad = {expand_product(G, {X, f}), expand_product(G, {Y, f}),
                               expand_product(G, {Y, Vec{1, 0, 1}})};
      CHECK(spans_equal(G.slices[2], quad));
      std::vector<Vec> cubic = {expand_product(G, {Z, Vec{1, 0, 1}, Z}),
                                expand_product(G, {Z, X, Z})};
      CHECK(spans_equal(cubic_relation_rows(G), cubic));
    }
  }

  SUBCASE("the family ideal differs from the named ones") {
    GradedRing A1 = analyze_ring(build_ring(named(catalog::c36_named(), "lambda_1p")));
    GradedRing A5 = analyze_ring(build_ring(catalog::c36_lambda_d(5)));
    CHECK(!spans_equal(A1.slices[2], A5.slices[2]));
  }
}

TEST_CASE("ring facts for the C^3(6)* family") {
  SUBCASE("cube relations in the named rings") {
    for (const char* nm : {"lambda_1p", "lambda_2ppp"}) {
      CAPTURE(nm);
      GradedRing G = analyze_ring(build_ring(named(catalog::c36_named(), nm)));
      // Y^3 = -2 Y^2 Z
      Vec rel = add(unit_mono(G, 3, {0, 3, 0}), unit_mono(G, 3, {0, 2, 1}, 2));
      CHECK(in_ideal(G, 3, rel));
    }
  }

  SUBCASE("cube relations along the family") {
    for (i64 d : {-4, 3, 5, 7}) {
      CAPTURE(d);
      GradedRing G = analyze_ring(build_ring(catalog::c36_lambda_d(d)));
      // Y^3 = (1 - d) Y^2 Z
      Vec rel = add(unit_mono(G, 3, {0, 3, 0}), unit_mono(G, 3, {0, 2, 1}, d - 1));
      CHECK(in_ideal(G, 3, rel));
      // and the degree-2 monomial basis is XZ, YZ, Z^2
      CHECK(G.basis[2] == std::vector<int>{2, 4, 5});
    }
  }
}

TEST_CASE("betti numbers match the h-vector on torsion-free quotients") {
  std::vector<CharMatrix> cases;
  cases.push_back(simplex_twist(4));
  cases.push_back(enumerate_integer(polygon(5), 2).front().rep);
  cases.push_back(named(catalog::c36_named(), "lambda_2"));
  cases.push_back(catalog::c47_lift(17));
  cases.push_back(catalog::c58_lift(catalog::c58_lift_table().front()));
  for (const auto& lam : cases) {
    CAPTURE(lam.polytope.label);
    GradedRing G = analyze_ring(build_ring(lam));
    CHECK(G.torsion_free);
    CHECK(betti(G) == face_data(lam.polytope).h_vector);
  }
}

TEST_CASE("quotients without a monomial basis still have canonical forms") {
  // some slices admit no unit-pivot echelon even though the quotient is
  // free; ranks, reduction and the top pairing then go through the Smith
  // transform
  GradedRing G = analyze_ring(build_ring(catalog::c47_lift(1)));
  REQUIRE(!G.has_basis);
  CHECK(G.torsion_free);
  CHECK(betti(G) == face_data(dual_cyclic(4, 7)).h_vector);

  int bad = -1;
  for (int d = 1; d <= G.top(); ++d)
    if (!G.ech_ok[d]) bad = d;
  REQUIRE(bad > 0);

  std::mt19937 rng(5);
  std::uniform_int_distribution<i64> coef(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    Vec x(G.monos[bad].size());
    for (auto& c : x) c = coef(rng);
    Vec shifted = x;
    for (const auto& row : G.slices[bad]) {
      i64 c = coef(rng);
      for (size_t i = 0; i < row.size(); ++i) shifted[i] += c * row[i];
    }
    Vec nf = normal_form(G, bad, x);
    CHECK(nf == normal_form(G, bad, shifted));
    Vec diff = x;
    for (size_t i = 0; i < diff.size(); ++i) diff[i] -= nf[i];
    CHECK(in_ideal(G, bad, diff));
  }

  // the top class is spanned by monomial images, so their pairings have
  // greatest common divisor one
  i64 gcd = 0;
  for (const auto& e : G.monos[G.top()]) gcd = std::gcd(gcd, pairing(G, e));
  CHECK(gcd == 1);
}

TEST_CASE("small cover rings and Stiefel-Whitney classes") {
  SUBCASE("three-dimensional projective space") {
    GradedRing G = analyze_ring(build_ring(catalog::c3_terminal("rp3")));
    REQUIRE(G.pres.modulus == 2);
    REQUIRE(G.pres.gen_degree == 1);
    CHECK(betti(G) == std::vector<i64>{1, 1, 1, 1});
    CHECK(normal_form(G, 3, unit_mono(G, 3, {3})) != Vec{0});
    CHECK(pairing(G, Vec{3}) == 1);
    // the total Stiefel-Whitney class is trivial
    for (int j = 1; j <= 3; ++j) {
      CAPTURE(j);
      Vec w = stiefel_whitney(G, j);
      CHECK(std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; }));
    }
  }

  SUBCASE("the product piece is not orientable in one factor") {
    GradedRing G = analyze_ring(build_ring(catalog::c3_terminal("rp1xrp2_a")));
    CHECK(betti(G) == face_data(dual_cyclic(3, 5)).h_vector);
    Vec w1 = stiefel_whitney(G, 1);
    CHECK(std::any_of(w1.begin(), w1.end(), [](i64 x) { return x != 0; }));
  }

  SUBCASE("torus and Klein bottle") {
    GradedRing torus = analyze_ring(build_ring(catalog::p4_real_torus()));
    CHECK(betti(torus) == std::vector<i64>{1, 2, 1});
    Vec wt = stiefel_whitney(torus, 1);
    CHECK(std::all_of(wt.begin(), wt.end(), [](i64 x) { return x == 0; }));

    GradedRing klein = analyze_ring(build_ring(catalog::p4_real_klein()));
    CHECK(betti(klein) == std::vector<i64>{1, 2, 1});
    Vec wk = stiefel_whitney(klein, 1);
    CHECK(std::any_of(wk.begin(), wk.end(), [](i64 x) { return x != 0; }));
  }

  SUBCASE("real classes over the dual cyclic polytopes") {
    for (char which : {'a', 'b'}) {
      CAPTURE(which);
      GradedRing G = analyze_ring(build_ring(catalog::c47_real(which)));
      CHECK(betti(G) == face_data(dual_cyclic(4, 7)).h_vector);
    }
    GradedRing G = analyze_ring(build_ring(catalog::c58_real('a')));
    CHECK(betti(G) == face_data(dual_cyclic(5, 8)).h_vector);
  }
}

TEST_CASE("mod-2 reductions of quasitoric rings") {
  CharMatrix lam = catalog::c47_lift(9);
  RingPresentation a = reduce_mod(build_ring(lam), 2);
  RingPresentation b = build_ring(mod2_reduce(lam));
  CHECK(a.substitutions == b.substitutions);
  CHECK(a.gen_degree == 2);
  CHECK(b.gen_degree == 1);

  // ranks are unchanged by reduction when the integral quotient is torsion-free
  GradedRing Gz = analyze_ring(build_ring(lam));
  GradedRing G2 = analyze_ring(a);
  REQUIRE(G2.has_basis);
  CHECK(betti(G2) == betti(Gz));

  // Stiefel-Whitney classes on the mod-2 quasitoric ring
  GradedRing cp2 = analyze_ring(reduce_mod(build_ring(catalog::p3_cp2(1)), 2));
  CHECK(stiefel_whitney(cp2, 1) == Vec{1});  // w_2 of the projective plane

  GradedRing s2s2 = analyze_ring(reduce_mod(build_ring(catalog::p4_hirzebruch(0)), 2));
  CHECK(stiefel_whitney(s2s2, 1) == Vec{0, 0});  // spin

  GradedRing h1 = analyze_ring(reduce_mod(build_ring(catalog::p4_hirzebruch(1)), 2));
  CHECK(stiefel_whitney(h1, 1) != Vec{0, 0});  // not spin
}

TEST_CASE("normal forms are canonical modulo the ideal") {
  GradedRing G = analyze_ring(build_ring(named(catalog::c36_named(), "lambda_1p")));
  std::mt19937 rng(77);
  std::uniform_int_distribution<i64> coef(-5, 5);
  for (int d = 2; d <= 3; ++d) {
    CAPTURE(d);
    for (int trial = 0; trial < 50; ++trial) {
      Vec x(G.monos[d].size());
      for (auto& c : x) c = coef(rng);
      Vec shifted = x;
      for (const auto& row : G.slices[d]) {
        i64 c = coef(rng);
        for (size_t i = 0; i < row.size(); ++i) shifted[i] += c * row[i];
      }
      Vec nf = normal_form(G, d, x);
      CHECK(nf == normal_form(G, d, shifted));
      Vec diff = x;
      for (size_t i = 0; i < diff.size(); ++i) diff[i] -= nf[i];
      CHECK(in_ideal(G, d, diff));
    }
  }

  // composite moduli go through the Howell form
  GradedRing G8 = analyze_ring(reduce_mod(G.pres, 8));
  for (int trial = 0; trial < 20; ++trial) {
    Vec x(G8.monos[2].size());
    for (auto& c : x) c = mod_norm(coef(rng), 8);
    Vec nf = normal_form(G8, 2, x);
    CHECK(normal_form(G8, 2, nf) == nf);
  }
}

TEST_CASE("monomial names") {
  CHECK(monomial_name(Vec{4, 0, 0}) == "X4");
  CHECK(monomial_name(Vec{3, 1, 0}) == "X3Y");
  CHECK(monomial_name(Vec{0, 3, 1}) == "Y3Z");
  CHECK(monomial_name(Vec{3, 0, 1}) == "ZX3");
  CHECK(monomial_name(Vec{1, 0, 3}) == "Z3X");
  CHECK(monomial_name(Vec{2, 1, 1}) == "X2YZ");
  CHECK(monomial_name(Vec{0, 0, 0}) == "1");
  CHECK(monomial_name(Vec{2}) == "X2");
  CHECK(monomial_name(Vec{1, 1}) == "XY");
  CHECK(monomial_name(Vec{0, 2, 0, 1}) == "x2^2*x4");

  // the stored table covers exactly the top monomials of the C^4(7)* rings
  GradedRing G = analyze_ring(build_ring(catalog::c47_lift(1)));
  std::vector<std::string> names;
  for (const auto& e : G.monos[4]) names.push_back(monomial_name(e));
  std::sort(names.begin(), names.end());
  auto table_rows = catalog::table1();
  std::vector<std::string> stored;
  for (const auto& [nm, val] : table_rows.front().values) stored.push_back(nm);
  std::sort(stored.begin(), stored.end());
  CHECK(names == stored);
}

TEST_CASE("ring presentations serialise to JSON") {
  CharMatrix lam = named(catalog::c36_named(), "lambda_1");
  RingPresentation R = build_ring(lam);
  nlohmann::json j = nlohmann::json::parse(ring_to_json(R));
  CHECK(j["g"] == 3);
  CHECK(j["top"] == 3);
  CHECK(j["modulus"] == 0);
  CHECK(j["substitutions"].size() == 6);
  CHECK(j["relations"].size() == face_data(lam.polytope).missing_faces.size());
  CHECK(j["fc_vertex"] == nlohmann::json(R.fc_vertex));
}
