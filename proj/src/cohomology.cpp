// Graded ring computations.  A degree-d ideal slice is assembled by
// expanding each relation once and shifting it by every monomial of the
// complementary degree; quotient bases and canonical representatives come
// from the unit-pivot echelon (integer case) or the Howell form (modular
// case) of those rows.  Integer slices are additionally run through the
// Smith normal form to certify the quotient torsion-free.

#include "qtoric/cohomology.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qtoric {

namespace {

void mono_rec(int g, int d, int pos, Vec& cur, std::vector<Vec>& out) {
  if (pos == g - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (i64 e = d; e >= 0; --e) {
    cur[pos] = e;
    mono_rec(g, d - static_cast<int>(e), pos + 1, cur, out);
  }
}

std::map<Vec, int> index_of(const std::vector<Vec>& monos) {
  std::map<Vec, int> idx;
  for (size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = static_cast<int>(i);
  return idx;
}

i64 norm_entry(i64 x, i64 modulus) { return modulus ? mod_norm(x, modulus) : x; }

// multiply a degree-d coefficient vector by one linear form
Vec mul_linear(const std::vector<Vec>& monos_d, const std::map<Vec, int>& idx_d1,
               const Vec& coeffs, const Vec& form, i64 modulus) {
  Vec out(idx_d1.size(), 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (size_t v = 0; v < form.size(); ++v) {
      if (form[v] == 0) continue;
      Vec e = monos_d[i];
      ++e[v];
      i64& slot = out[idx_d1.at(e)];
      slot = norm_entry(slot + coeffs[i] * form[v], modulus);
    }
  }
  return out;
}

}  // namespace

std::vector<Vec> monomials(int g, int d) {
  if (g <= 0) fail("monomials need at least one variable");
  std::vector<Vec> out;
  Vec cur(g, 0);
  mono_rec(g, d, 0, cur, out);
  return out;
}

RingPresentation build_ring(const CharMatrix& lam) {
  const auto& P = lam.polytope;
  FacetSet base(P.n);
  std::iota(base.begin(), base.end(), 1);
  CharMatrix idf = to_identity_form(lam, base);

  RingPresentation R;
  R.g = P.m - P.n;
  R.top = P.n;
  R.gen_degree = lam.coeff == Coeff::Z ? 2 : 1;
  R.modulus = lam.coeff == Coeff::Z ? 0 : 2;
  R.label = P.label;
  R.substitutions = Mat(P.m, R.g);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < R.g; ++j)
      R.substitutions.at(i, j) = norm_entry(idf.mat.at(i, P.n + j), R.modulus);
  for (int j = 0; j < R.g; ++j) R.substitutions.at(P.n + j, j) = 1;

  for (const auto& F : face_data(P).missing_faces) {
    Relation rel;
    for (int f : F) {
      Vec form(R.g);
      for (int j = 0; j < R.g; ++j) form[j] = R.substitutions.at(f - 1, j);
      rel.factors.push_back(std::move(form));
    }
    R.relations.push_back(std::move(rel));
  }

  for (const auto& v : P.vertices)
    if (v.front() == 1) R.fc_vertex = v;  // vertices are sorted, keep the greatest
  if (R.fc_vertex.empty()) fail("no vertex contains facet 1");
  return R;
}

RingPresentation reduce_mod(const RingPresentation& R, i64 k) {
  if (k < 2) fail("modulus must be at least 2");
  if (R.modulus != 0 && R.modulus % k != 0)
    fail("cannot reduce modulo a non-divisor of the current modulus");
  RingPresentation out = R;
  out.modulus = k;
  for (auto& x : out.substitutions.a) x = mod_norm(x, k);
  for (auto& rel : out.relations)
    for (auto& f : rel.factors)
      for (auto& x : f) x = mod_norm(x, k);
  return out;
}

GradedRing analyze_ring(const RingPresentation& R) {
  GradedRing G;
  G.pres = R;
  int top = R.top, g = R.g;
  i64 k = R.modulus;

  G.monos.resize(top + 1);
  std::vector<std::map<Vec, int>> idx(top + 1);
  for (int d = 0; d <= top; ++d) {
    G.monos[d] = monomials(g, d);
    idx[d] = index_of(G.monos[d]);
  }

  // expand every relation once
  std::vector<std::pair<int, Vec>> expanded;  // degree, coefficients
  for (const auto& rel : R.relations) {
    int s = static_cast<int>(rel.factors.size());
    if (s > top) continue;  // cannot contribute below the top degree either
    Vec poly(1, 1);
    for (int t = 0; t < s; ++t) poly = mul_linear(G.monos[t], idx[t + 1], poly, rel.factors[t], k);
    expanded.emplace_back(s, std::move(poly));
  }

  G.slices.resize(top + 1);
  for (int d = 1; d <= top; ++d) {
    for (const auto& [s, poly] : expanded) {
      if (s > d) continue;
      for (const auto& shift : G.monos[d - s]) {
        Vec row(G.monos[d].size(), 0);
        for (size_t i = 0; i < poly.size(); ++i) {
          if (poly[i] == 0) continue;
          Vec e = G.monos[s][i];
          for (int v = 0; v < g; ++v) e[v] += shift[v];
          row[idx[d].at(e)] = poly[i];
        }
        G.slices[d].push_back(std::move(row));
      }
    }
  }

  G.basis.resize(top + 1);
  G.basis[0] = {0};
  G.rank.assign(top + 1, 0);
  G.rank[0] = 1;
  G.has_basis = true;
  if (k == 0) {
    G.ech.resize(top + 1);
    G.ech_ok.assign(top + 1, 1);
    G.snf.resize(top + 1);
    G.vinv.resize(top + 1);
    G.torsion_free = true;
    for (int d = 1; d <= top; ++d) {
      int cols = static_cast<int>(G.monos[d].size());
      if (build_unit_echelon(G.slices[d], cols, G.ech[d])) {
        // unit pivots in distinct columns certify an all-ones Smith form
        G.basis[d] = G.ech[d].free_cols;
        G.rank[d] = static_cast<i64>(G.basis[d].size());
        continue;
      }
      G.ech_ok[d] = 0;
      G.has_basis = false;
      Mat S(static_cast<int>(G.slices[d].size()), cols);
      for (size_t r = 0; r < G.slices[d].size(); ++r)
        for (int c = 0; c < cols; ++c) S.at(static_cast<int>(r), c) = G.slices[d][r][c];
      G.snf[d] = snf_with_transform(S);
      G.vinv[d] = unimodular_inverse(G.snf[d].V);
      i64 nonzero = 0;
      for (i64 div : G.snf[d].diag) {
        if (div != 0) ++nonzero;
        if (div != 0 && div != 1 && div != -1) G.torsion_free = false;
      }
      G.rank[d] = cols - nonzero;
    }
  } else {
    G.how.resize(top + 1);
    for (int d = 1; d <= top; ++d) {
      int cols = static_cast<int>(G.monos[d].size());
      G.how[d] = howell_form(G.slices[d], k, cols);
      std::vector<bool> lead(cols, false);
      bool units = true;
      for (size_t r = 0; r < G.how[d].rows.size(); ++r) {
        int lc = G.how[d].lead_col[r];
        lead[lc] = true;
        if (!mod_is_unit(G.how[d].rows[r][lc], k)) units = false;
      }
      if (!units) G.has_basis = false;
      else {
        for (int c = 0; c < cols; ++c)
          if (!lead[c]) G.basis[d].push_back(c);
        G.rank[d] = static_cast<i64>(G.basis[d].size());
      }
    }
  }

  bool top_ok = k == 0 ? true : G.has_basis;
  if (top_ok) {
    std::vector<Vec> rows;
    for (int f : R.fc_vertex) {
      Vec form(g);
      for (int j = 0; j < g; ++j) form[j] = R.substitutions.at(f - 1, j);
      rows.push_back(std::move(form));
    }
    Vec fc = expand_product(G, rows);
    if (k == 0 && !G.ech_ok[top]) {
      // locate the one free coordinate of the transformed top degree
      if (G.rank[top] != 1) fail("top graded piece of " + R.label + " does not have rank one");
      for (size_t j = 0; j < G.snf[top].diag.size(); ++j) {
        i64 dj = G.snf[top].diag[j];
        if (dj == 0) G.fc_coord = static_cast<int>(j);
        else if (dj != 1 && dj != -1)
          fail("top graded piece of " + R.label + " has torsion");
      }
      i64 u = 0;
      for (size_t i = 0; i < fc.size(); ++i) u += fc[i] * G.snf[top].V.at(static_cast<int>(i), G.fc_coord);
      if (u != 1 && u != -1) fail("fundamental class of " + R.label + " is not a unit");
      G.fc_unit = u;
      return G;
    }
    if (G.basis[top].size() != 1)
      fail("top graded piece of " + R.label + " does not have rank one");
    fc = normal_form(G, top, std::move(fc));
    i64 c = fc[G.basis[top][0]];
    bool unit = k == 0 ? (c == 1 || c == -1) : mod_is_unit(c, k);
    if (!unit) fail("fundamental class of " + R.label + " is not a unit");
    for (size_t i = 0; i < fc.size(); ++i)
      if (static_cast<int>(i) != G.basis[top][0] && fc[i] != 0)
        fail("fundamental class of " + R.label + " is not a basis monomial");
    G.fc_unit = c;
  }
  return G;
}

std::vector<i64> betti(const GradedRing& G) {
  if (G.pres.modulus != 0 && !G.has_basis)
    fail("quotient of " + G.pres.label + " has no monomial basis");
  return G.rank;
}

Vec normal_form(const GradedRing& G, int d, Vec coeffs) {
  if (d == 0) return coeffs;
  if (d > G.top()) fail("degree exceeds the top class");
  if (coeffs.size() != G.monos[d].size()) fail("coefficient vector has wrong length");
  if (G.pres.modulus == 0) {
    if (G.ech_ok[d]) {
      G.ech[d].reduce(coeffs);
      return coeffs;
    }
    int cols = static_cast<int>(coeffs.size());
    Vec t(cols, 0);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < cols; ++i) t[j] += coeffs[i] * G.snf[d].V.at(i, j);
    for (int j = 0; j < cols; ++j) {
      i64 dj = j < static_cast<int>(G.snf[d].diag.size()) ? G.snf[d].diag[j] : 0;
      if (dj < 0) dj = -dj;
      if (dj == 1) t[j] = 0;
      else if (dj > 1) t[j] = mod_norm(t[j], dj);
    }
    Vec out(cols, 0);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < cols; ++i) out[j] += t[i] * G.vinv[d].at(i, j);
    return out;
  }
  return G.how[d].residue(coeffs);
}

bool in_ideal(const GradedRing& G, int d, const Vec& coeffs) {
  if (d == 0) return std::all_of(coeffs.begin(), coeffs.end(), [](i64 x) { return x == 0; });
  if (G.pres.modulus == 0) {
    if (G.ech_ok[d]) return G.ech[d].contains(coeffs);
    int cols = static_cast<int>(coeffs.size());
    for (int j = 0; j < cols; ++j) {
      i64 t = 0;
      for (int i = 0; i < cols; ++i) t += coeffs[i] * G.snf[d].V.at(i, j);
      i64 dj = j < static_cast<int>(G.snf[d].diag.size()) ? G.snf[d].diag[j] : 0;
      if (dj == 0 ? t != 0 : t % dj != 0) return false;
    }
    return true;
  }
  return G.how[d].contains(coeffs);
}

Vec poly_mul(const GradedRing& G, int d1, const Vec& a, int d2, const Vec& b) {
  int d = d1 + d2;
  if (d > G.top()) fail("product degree exceeds the top class");
  std::map<Vec, int> idx = index_of(G.monos[d]);
  Vec out(G.monos[d].size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      Vec e = G.monos[d1][i];
      for (int v = 0; v < G.g(); ++v) e[v] += G.monos[d2][j][v];
      i64& slot = out[idx.at(e)];
      slot = norm_entry(slot + a[i] * b[j], G.pres.modulus);
    }
  }
  return out;
}

Vec expand_product(const GradedRing& G, const std::vector<Vec>& factors) {
  Vec poly(1, 1);
  for (size_t t = 0; t < factors.size(); ++t) {
    std::map<Vec, int> idx = index_of(G.monos[t + 1]);
    poly = mul_linear(G.monos[t], idx, poly, factors[t], G.pres.modulus);
  }
  return poly;
}

i64 pairing(const GradedRing& G, const Vec& exponents) {
  int top = G.top();
  Vec coeffs(G.monos[top].size(), 0);
  auto it = std::find(G.monos[top].begin(), G.monos[top].end(), exponents);
  if (it == G.monos[top].end()) fail("pairing of a non-top monomial");
  coeffs[it - G.monos[top].begin()] = 1;
  if (G.pres.modulus == 0 && !G.ech_ok[top]) {
    if (G.fc_coord < 0) fail("pairing needs a rank-one top degree");
    i64 t = 0;
    for (size_t i = 0; i < coeffs.size(); ++i)
      t += coeffs[i] * G.snf[top].V.at(static_cast<int>(i), G.fc_coord);
    return t * G.fc_unit;
  }
  if (!G.has_basis && G.pres.modulus != 0) fail("pairing needs a monomial basis");
  coeffs = normal_form(G, top, std::move(coeffs));
  i64 c = coeffs[G.basis[top][0]];
  if (G.pres.modulus == 0) return c * G.fc_unit;  // fc_unit is +-1
  return mod_norm(c * mod_inv(G.fc_unit, G.pres.modulus), G.pres.modulus);
}

std::string monomial_name(const Vec& e) {
  int g = static_cast<int>(e.size());
  static const char* letters = "XYZ";
  auto piece = [&](int v, i64 exp) {
    std::string s(1, letters[v]);
    if (exp > 1) s += std::to_string(exp);
    return s;
  };
  if (g <= 3) {
    std::vector<int> supp;
    for (int v = 0; v < g; ++v)
      if (e[v] > 0) supp.push_back(v);
    if (supp.empty()) return std::string("1");
    if (supp.size() == 1) return piece(supp[0], e[supp[0]]);
    if (supp.size() == 2) {
      int a = supp[0], b = supp[1];
      // cyclic pair order: XY, YZ, ZX
      if (a == 0 && b == 2) std::swap(a, b);
      return piece(a, e[a]) + piece(b, e[b]);
    }
    return piece(0, e[0]) + piece(1, e[1]) + piece(2, e[2]);
  }
  std::string s;
  for (int v = 0; v < g; ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(v + 1);
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s.empty() ? "1" : s;
}

std::vector<std::pair<std::string, i64>> pairing_table(const GradedRing& G) {
  std::vector<std::pair<std::string, i64>> out;
  for (const auto& e : G.monos[G.top()]) out.emplace_back(monomial_name(e), pairing(G, e));
  return out;
}

Vec stiefel_whitney(const GradedRing& G, int j) {
  if (G.pres.modulus != 2) fail("Stiefel-Whitney classes live in the mod-2 ring");
  if (j < 0 || j > G.top()) fail("Stiefel-Whitney degree out of range");
  // elementary symmetric functions of all substitution rows, degree by degree
  std::vector<Vec> comp(G.top() + 1);
  comp[0] = Vec(1, 1);
  for (int d = 1; d <= G.top(); ++d) comp[d] = Vec(G.monos[d].size(), 0);
  for (int i = 0; i < G.pres.substitutions.rows; ++i) {
    Vec row(G.g());
    for (int v = 0; v < G.g(); ++v) row[v] = G.pres.substitutions.at(i, v);
    for (int d = G.top(); d >= 1; --d) {
      std::map<Vec, int> idx = index_of(G.monos[d]);
      Vec shifted = mul_linear(G.monos[d - 1], idx, comp[d - 1], row, 2);
      for (size_t t = 0; t < comp[d].size(); ++t)
        comp[d][t] = mod_norm(comp[d][t] + shifted[t], 2);
    }
  }
  return normal_form(G, j, std::move(comp[j]));
}

Vec first_pontryagin(const GradedRing& G) {
  if (G.pres.modulus != 0) fail("the Pontryagin class is computed integrally");
  if (G.top() < 2) fail("degree-4 classes need top degree at least 2");
  Vec acc(G.monos[2].size(), 0);
  for (int i = 0; i < G.pres.substitutions.rows; ++i) {
    Vec row(G.g());
    for (int v = 0; v < G.g(); ++v) row[v] = G.pres.substitutions.at(i, v);
    Vec sq = poly_mul(G, 1, row, 1, row);
    for (size_t t = 0; t < acc.size(); ++t) acc[t] += sq[t];
  }
  return normal_form(G, 2, std::move(acc));
}

std::string ring_to_json(const RingPresentation& R) {
  nlohmann::json j;
  j["g"] = R.g;
  j["top"] = R.top;
  j["gen_degree"] = R.gen_degree;
  j["modulus"] = R.modulus;
  j["label"] = R.label;
  j["fc_vertex"] = R.fc_vertex;
  std::vector<std::vector<i64>> sub;
  for (int i = 0; i < R.substitutions.rows; ++i) {
    std::vector<i64> row;
    for (int c = 0; c < R.substitutions.cols; ++c) row.push_back(R.substitutions.at(i, c));
    sub.push_back(std::move(row));
  }
  j["substitutions"] = sub;
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& rel : R.relations) {
    nlohmann::json jr;
    jr["factors"] = rel.factors;
    rels.push_back(std::move(jr));
  }
  j["relations"] = std::move(rels);
  return j.dump(2);
}

}  // namespace qtoric
