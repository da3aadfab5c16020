// Cutting characteristic pairs along connected sums and gluing them back.
// A cut needs a size-n non-face with unit column minor whose removal
// leaves exactly two facet co-occurrence components; the shared set then
// becomes a vertex of each piece.  Pieces keep their original columns, so
// vertex minors are untouched and the pieces are characteristic as found.
//
// Orientation bookkeeping over polygons: the product of the vertex minors
// of a piece is invariant under column sign flips (every facet of a
// polygon lies in two vertices) and under basis changes of positive
// determinant; a triangle with product -1 is the projective plane with
// its standard orientation (calibrated on (e1, e2, e1+e2)).  Reversing
// the ambient orientation flips every triangle label at once, which the
// i >= j normalisation absorbs.

#include "qtoric/connectsum.hpp"

#include "qtoric/catalog.hpp"
#include "qtoric/polytope.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace qtoric {

namespace {

bool unit_minor(const CharMatrix& lam, const FacetSet& S) {
  std::vector<int> cols0;
  for (int f : S) cols0.push_back(f - 1);
  i64 d = det_bareiss(submatrix_cols(lam.mat, cols0));
  return lam.coeff == Coeff::Z ? (d == 1 || d == -1) : mod_norm(d, 2) == 1;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

// facets outside `shared` grouped by co-occurrence in a vertex; empty
// result means the cut does not separate
std::vector<std::vector<int>> cut_components(const CombinatorialPolytope& P,
                                             const FacetSet& shared) {
  std::vector<bool> in_shared(P.m + 1, false);
  for (int f : shared) in_shared[f] = true;
  Dsu dsu(P.m + 1);
  for (const auto& v : P.vertices) {
    int prev = 0;
    for (int f : v) {
      if (in_shared[f]) continue;
      if (prev) dsu.join(prev, f);
      prev = f;
    }
  }
  std::vector<int> root_of(P.m + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int f = 1; f <= P.m; ++f) {
    if (in_shared[f]) continue;
    int r = dsu.find(f);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[root_of[r]].push_back(f);
  }
  return comps;
}

SumPiece make_piece(const CharMatrix& lam, const std::vector<int>& comp,
                    const FacetSet& shared) {
  const auto& P = lam.polytope;
  FacetSet fs = shared;
  fs.insert(fs.end(), comp.begin(), comp.end());
  std::sort(fs.begin(), fs.end());

  std::vector<int> new_label(P.m + 1, 0);
  for (size_t i = 0; i < fs.size(); ++i) new_label[fs[i]] = static_cast<int>(i) + 1;

  auto relabel = [&](const FacetSet& v) {
    FacetSet out;
    for (int f : v) out.push_back(new_label[f]);
    std::sort(out.begin(), out.end());
    return out;
  };

  CombinatorialPolytope Q;
  Q.n = P.n;
  Q.m = static_cast<int>(fs.size());
  for (const auto& v : P.vertices) {
    bool inside = std::all_of(v.begin(), v.end(), [&](int f) { return new_label[f] != 0; });
    if (inside) Q.vertices.push_back(relabel(v));
  }
  Q.vertices.push_back(relabel(shared));
  std::sort(Q.vertices.begin(), Q.vertices.end());

  CombinatorialPolytope named = dual_cyclic(Q.n, Q.m);
  if (named.vertices == Q.vertices) Q = named;
  else Q.label = P.label + " piece";
  std::string why;
  if (!check_polytope(Q, &why)) fail("cut piece is not a polytope: " + why);

  Mat mat(P.n, Q.m);
  for (int j = 0; j < Q.m; ++j)
    for (int i = 0; i < P.n; ++i) mat.at(i, j) = lam.mat.at(i, fs[j] - 1);

  SumPiece piece{CharMatrix{lam.coeff, std::move(mat), std::move(Q)}, fs};
  FacetSet bad;
  if (!is_characteristic(piece.cm, &bad)) fail("cut piece is not characteristic");
  return piece;
}

}  // namespace

std::vector<FacetSet> split_candidates(const CharMatrix& lam) {
  const auto& P = lam.polytope;
  std::vector<FacetSet> out;
  FacetSet S(P.n);
  std::function<void(int, int)> rec = [&](int pos, int next) {
    if (pos == P.n) {
      if (is_face(P, S) || !unit_minor(lam, S)) return;
      if (cut_components(P, S).size() == 2) out.push_back(S);
      return;
    }
    for (int f = next; f <= P.m; ++f) {
      S[pos] = f;
      rec(pos + 1, f + 1);
    }
  };
  rec(0, 1);
  return out;
}

bool is_decomposable(const CharMatrix& lam) { return !split_candidates(lam).empty(); }

std::pair<SumPiece, SumPiece> split_charmat(const CharMatrix& lam, const FacetSet& shared) {
  const auto& P = lam.polytope;
  if (static_cast<int>(shared.size()) != P.n) fail("shared set must have one facet per dimension");
  if (is_face(P, shared)) fail("shared set is a face, not a cut");
  if (!unit_minor(lam, shared)) fail("shared columns do not form a unit minor");
  auto comps = cut_components(P, shared);
  if (comps.size() != 2) fail("cut does not separate the remaining facets into two parts");
  return {make_piece(lam, comps[0], shared), make_piece(lam, comps[1], shared)};
}

CharMatrix glue_charmat(const CharMatrix& a, const FacetSet& v, const CharMatrix& b,
                        const FacetSet& w, const std::vector<int>& tau) {
  if (a.coeff != b.coeff) fail("cannot glue over different coefficients");
  if (a.n() != b.n()) fail("cannot glue across dimensions");
  int n = a.n();

  GluingData gd;
  CombinatorialPolytope Pc = connected_sum_polytope(a.polytope, b.polytope, v, w, tau, &gd);

  std::vector<int> acols, bcols;
  for (int i = 0; i < n; ++i) {
    acols.push_back(v[i] - 1);
    bcols.push_back(w[tau[i]] - 1);
  }
  Mat A = submatrix_cols(a.mat, acols);
  Mat W = submatrix_cols(b.mat, bcols);
  Mat G = a.coeff == Coeff::Z ? A * unimodular_inverse(W) : A * mod_matrix_inverse(W, 2);

  Mat mat(n, Pc.m);
  for (int j = 0; j < a.m(); ++j)
    for (int i = 0; i < n; ++i) mat.at(i, j) = a.mat.at(i, j);
  for (int f = 1; f <= b.m(); ++f) {
    int L = gd.q_new_label[f - 1];
    if (L <= a.m()) continue;  // shared facet, column already in place
    for (int i = 0; i < n; ++i) {
      i64 x = 0;
      for (int t = 0; t < n; ++t) x += G.at(i, t) * b.mat.at(t, f - 1);
      mat.at(i, L - 1) = a.coeff == Coeff::Z ? x : mod_norm(x, 2);
    }
  }

  CharMatrix out{a.coeff, std::move(mat), std::move(Pc)};
  if (!is_characteristic(out)) fail("glued matrix is not characteristic");
  return out;
}

namespace {

using Col = std::array<i64, 2>;

i64 pdet(const Col& a, const Col& b) { return a[0] * b[1] - a[1] * b[0]; }

// recursive cut of a cyclically ordered column list over Z
void cut_over_z(const std::vector<Col>& cols, i64& cp2, i64& cpbar2, i64& s2s2) {
  int k = static_cast<int>(cols.size());
  if (k == 3) {
    i64 prod = pdet(cols[0], cols[1]) * pdet(cols[1], cols[2]) * pdet(cols[2], cols[0]);
    (prod < 0 ? cp2 : cpbar2) += 1;
    return;
  }
  if (k == 4) {
    i64 d13 = std::abs(pdet(cols[0], cols[2]));
    i64 d24 = std::abs(pdet(cols[1], cols[3]));
    if (d13 != 1 && d24 != 1) {
      if (std::min(d13, d24) != 0) fail("quadrilateral piece is not characteristic");
      if (std::max(d13, d24) % 2 == 0) ++s2s2;  // even twisting: a sphere product
      else {                                    // odd twisting: a twisted product
        ++cp2;
        ++cpbar2;
      }
      return;
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;  // cyclically adjacent
      if (std::abs(pdet(cols[i], cols[j])) != 1) continue;
      std::vector<Col> left(cols.begin() + i, cols.begin() + j + 1);
      std::vector<Col> right(cols.begin() + j, cols.end());
      right.insert(right.end(), cols.begin(), cols.begin() + i + 1);
      cut_over_z(left, cp2, cpbar2, s2s2);
      cut_over_z(right, cp2, cpbar2, s2s2);
      return;
    }
  }
  fail("polygon piece admits no cut");
}

void cut_mod_2(const std::vector<Col>& cols, i64& torus, i64& rp2) {
  int k = static_cast<int>(cols.size());
  if (k == 3) {
    ++rp2;
    return;
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (mod_norm(pdet(cols[i], cols[j]), 2) != 1) continue;
      std::vector<Col> left(cols.begin() + i, cols.begin() + j + 1);
      std::vector<Col> right(cols.begin() + j, cols.end());
      right.insert(right.end(), cols.begin(), cols.begin() + i + 1);
      cut_mod_2(left, torus, rp2);
      cut_mod_2(right, torus, rp2);
      return;
    }
  }
  if (k == 4) {
    ++torus;  // both diagonals even: the product piece
    return;
  }
  fail("polygon piece admits no cut");
}

std::vector<Col> polygon_columns(const Mat& mat) {
  std::vector<Col> cols(mat.cols);
  for (int j = 0; j < mat.cols; ++j) cols[j] = {mat.at(0, j), mat.at(1, j)};
  return cols;
}

std::string z_form(i64 cp2, i64 cpbar2, i64 s2s2) {
  if (cp2 + cpbar2 > 0) {
    i64 i = cp2 + s2s2, j = cpbar2 + s2s2;  // each sphere product absorbs a pair
    if (i < j) std::swap(i, j);
    return "CP2#" + std::to_string(i) + "+CPbar2#" + std::to_string(j);
  }
  return "S2xS2#" + std::to_string(s2s2);
}

std::string mod2_form(i64 torus, i64 rp2) {
  if (rp2 > 0) return "RP2#" + std::to_string(2 * torus + rp2);
  return "T2#" + std::to_string(torus);
}

void require_polygon(const CharMatrix& lam) {
  if (lam.n() != 2 || lam.polytope.vertices != polygon(lam.m()).vertices)
    fail("not a characteristic pair over a polygon");
}

}  // namespace

std::string classify_polygon_quasitoric(const CharMatrix& lam) {
  require_polygon(lam);
  if (lam.coeff != Coeff::Z) fail("quasitoric classification needs integer coefficients");
  i64 cp2 = 0, cpbar2 = 0, s2s2 = 0;
  cut_over_z(polygon_columns(lam.mat), cp2, cpbar2, s2s2);
  return z_form(cp2, cpbar2, s2s2);
}

std::string classify_polygon_small_cover(const CharMatrix& lam) {
  require_polygon(lam);
  if (lam.coeff != Coeff::Z2) fail("small cover classification needs mod-2 coefficients");
  i64 torus = 0, rp2 = 0;
  cut_mod_2(polygon_columns(lam.mat), torus, rp2);
  return mod2_form(torus, rp2);
}

namespace {

void cut_c3(const CharMatrix& cm, i64& rp3, i64& rp1xrp2) {
  // terminal pieces are matched up to polytope symmetry: C^3(5)* has twelve
  // label automorphisms and they move the stored representatives around
  static const auto perms4 = automorphism_group(dual_cyclic(3, 4));
  static const auto perms5 = automorphism_group(dual_cyclic(3, 5));
  static const CanonicalOptions opt4{true, &perms4};
  static const CanonicalOptions opt5{true, &perms5};
  static const Mat canon_rp3 = canonical_form(catalog::c3_terminal("rp3"), opt4);
  static const Mat canon_a = canonical_form(catalog::c3_terminal("rp1xrp2_a"), opt5);
  static const Mat canon_b = canonical_form(catalog::c3_terminal("rp1xrp2_b"), opt5);

  int m = cm.m();
  if (cm.polytope.vertices != dual_cyclic(3, m).vertices)
    fail("piece left the dual cyclic family");
  for (int k = 3; k <= m - 2; ++k) {
    FacetSet S{1, k, m};
    if (!unit_minor(cm, S)) continue;
    auto [left, right] = split_charmat(cm, S);
    cut_c3(left.cm, rp3, rp1xrp2);
    cut_c3(right.cm, rp3, rp1xrp2);
    return;
  }
  if (m == 4) {
    if (canonical_form(cm, opt4) != canon_rp3)
      fail("terminal piece over the simplex is unexpected");
    ++rp3;
    return;
  }
  if (m == 5) {
    Mat c = canonical_form(cm, opt5);
    if (c != canon_a && c != canon_b) fail("terminal piece over C^3(5)* is unexpected");
    ++rp1xrp2;
    return;
  }
  fail("small cover over " + cm.polytope.label + " admits no cut");
}

}  // namespace

std::string classify_c3_small_cover(const CharMatrix& lam) {
  if (lam.coeff != Coeff::Z2) fail("small cover classification needs mod-2 coefficients");
  if (lam.n() != 3) fail("the cut classifier works over three-dimensional dual cyclic polytopes");
  i64 rp3 = 0, rp1xrp2 = 0;
  cut_c3(lam, rp3, rp1xrp2);
  return "RP3#" + std::to_string(rp3) + " + RP1xRP2#" + std::to_string(rp1xrp2);
}

std::set<std::string> polygon_quasitoric_forms(int m, int bound) {
  std::set<std::string> out;
  polygon_enumerate_stream(m, bound, [&](const Mat& rep) {
    i64 cp2 = 0, cpbar2 = 0, s2s2 = 0;
    cut_over_z(polygon_columns(rep), cp2, cpbar2, s2s2);
    out.insert(z_form(cp2, cpbar2, s2s2));
  });
  return out;
}

std::set<std::string> polygon_small_cover_forms(int m) {
  std::set<std::string> out;
  for (const auto& cl : enumerate_real(polygon(m)))
    out.insert(classify_polygon_small_cover(cl.rep));
  return out;
}

std::set<std::string> c3_small_cover_forms(int m) {
  std::set<std::string> out;
  for (const auto& cl : enumerate_real(dual_cyclic(3, m)))
    out.insert(classify_c3_small_cover(cl.rep));
  return out;
}

}  // namespace qtoric
