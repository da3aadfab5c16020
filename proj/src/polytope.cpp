// Polytope construction and combinatorial checks.  Faces are tested by
// containment in a vertex, so everything runs on bitmasks of facet labels.
// The automorphism search assigns images facet by facet and prunes on
// vertex-degree and pair-cooccurrence profiles, which collapses the S_m
// search immediately for the polytopes that appear here; it is still an
// exhaustive scan of the compatible assignments.

#include "qtoric/polytope.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace qtoric {

namespace {

bool evenness_vertex(const std::vector<int>& subset, int m) {
  // maximal runs of consecutive labels; interior runs must have even length
  size_t i = 0;
  while (i < subset.size()) {
    size_t j = i;
    while (j + 1 < subset.size() && subset[j + 1] == subset[j] + 1) ++j;
    bool touches_end = subset[i] == 1 || subset[j] == m;
    if (!touches_end && ((j - i + 1) % 2 != 0)) return false;
    i = j + 1;
  }
  return true;
}

}  // namespace

CombinatorialPolytope dual_cyclic(int n, int m) {
  if (n < 1 || m < n + 1) fail("dual_cyclic needs n >= 1 and m >= n+1");
  if (n == 1 && m != 2) fail("a 1-dimensional polytope is a segment, use m = 2");
  if (m > 20) fail("dual_cyclic facet count out of range");
  CombinatorialPolytope P;
  P.n = n;
  P.m = m;
  std::vector<int> pick(n);
  // enumerate n-subsets in lexicographic order
  for (int i = 0; i < n; ++i) pick[i] = i + 1;
  while (true) {
    if (evenness_vertex(pick, m)) P.vertices.push_back(pick);
    int i = n - 1;
    while (i >= 0 && pick[i] == m - (n - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (m == n + 1)
    P.label = "Delta^" + std::to_string(n);
  else if (n == 2)
    P.label = "P_" + std::to_string(m);
  else
    P.label = "C^" + std::to_string(n) + "(" + std::to_string(m) + ")*";
  std::string why;
  if (!check_polytope(P, &why)) fail("dual_cyclic produced invalid polytope: " + why);
  return P;
}

CombinatorialPolytope polygon(int m) { return dual_cyclic(2, m); }

CombinatorialPolytope simplex(int n) { return dual_cyclic(n, n + 1); }

bool check_polytope(const CombinatorialPolytope& P, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (P.n < 1 || P.m < P.n) return bad("bad dimensions");
  if (P.m > 31) return bad("facet count out of range");
  if (P.vertices.empty()) return bad("no vertices");
  for (const auto& v : P.vertices) {
    if (static_cast<int>(v.size()) != P.n) return bad("vertex of wrong size");
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 1 || v[i] > P.m) return bad("facet label out of range");
      if (i > 0 && v[i] <= v[i - 1]) return bad("vertex labels not ascending");
    }
  }
  if (!std::is_sorted(P.vertices.begin(), P.vertices.end()))
    return bad("vertex family not sorted");
  if (std::adjacent_find(P.vertices.begin(), P.vertices.end()) != P.vertices.end())
    return bad("duplicate vertex");
  std::vector<int> used(P.m + 1, 0);
  for (const auto& v : P.vertices)
    for (int f : v) used[f] = 1;
  for (int f = 1; f <= P.m; ++f)
    if (!used[f]) return bad("facet " + std::to_string(f) + " lies in no vertex");
  // pseudomanifold: each ridge of each vertex lies in exactly two vertices
  std::map<FacetSet, int> ridge_count;
  for (const auto& v : P.vertices)
    for (int drop = 0; drop < P.n; ++drop) {
      FacetSet r;
      for (int i = 0; i < P.n; ++i)
        if (i != drop) r.push_back(v[i]);
      ++ridge_count[r];
    }
  for (const auto& [r, c] : ridge_count)
    if (c != 2) return bad("ridge contained in " + std::to_string(c) + " vertices");
  return true;
}

std::vector<uint32_t> vertex_masks(const CombinatorialPolytope& P) {
  std::vector<uint32_t> out;
  out.reserve(P.vertices.size());
  for (const auto& v : P.vertices) {
    uint32_t b = 0;
    for (int f : v) b |= uint32_t{1} << (f - 1);
    out.push_back(b);
  }
  return out;
}

bool is_face(const CombinatorialPolytope& P, const FacetSet& S) {
  uint32_t b = 0;
  for (int f : S) {
    if (f < 1 || f > P.m) return false;
    b |= uint32_t{1} << (f - 1);
  }
  for (uint32_t vm : vertex_masks(P))
    if ((b & vm) == b) return true;
  return false;
}

FaceData face_data(const CombinatorialPolytope& P) {
  if (P.m > 16) fail("face_data subset scan limited to m <= 16");
  auto masks = vertex_masks(P);
  auto face_mask = [&](uint32_t b) {
    for (uint32_t vm : masks)
      if ((b & vm) == b) return true;
    return false;
  };
  FaceData out;
  out.f_vector.assign(P.n, 0);
  std::vector<std::vector<FacetSet>> missing_by_size(P.n + 2);
  for (uint32_t b = 1; b < (uint32_t{1} << P.m); ++b) {
    int sz = __builtin_popcount(b);
    if (sz > P.n + 1) continue;
    if (face_mask(b)) {
      ++out.f_vector[sz - 1];
      continue;
    }
    if (sz > P.n + 1) continue;
    bool minimal = true;
    for (int f = 0; f < P.m && minimal; ++f)
      if ((b >> f) & 1)
        if (!face_mask(b & ~(uint32_t{1} << f))) minimal = false;
    if (minimal) {
      FacetSet S;
      for (int f = 0; f < P.m; ++f)
        if ((b >> f) & 1) S.push_back(f + 1);
      missing_by_size[sz].push_back(std::move(S));
    }
  }
  for (auto& bucket : missing_by_size) {
    std::sort(bucket.begin(), bucket.end());
    for (auto& S : bucket) out.missing_faces.push_back(std::move(S));
  }
  // h-polynomial: sum_i h_i t^{n-i} = (t-1)^n + sum_i f_i (t-1)^{n-1-i}
  auto poly_pow = [&](int e) {
    Vec p{1};  // coefficients, p[i] = coeff of t^i
    for (int it = 0; it < e; ++it) {
      Vec q(p.size() + 1, 0);
      for (size_t i = 0; i < p.size(); ++i) {
        q[i + 1] = checked_add(q[i + 1], p[i]);
        q[i] = checked_add(q[i], -p[i]);
      }
      p = std::move(q);
    }
    return p;
  };
  Vec hp = poly_pow(P.n);
  for (int i = 0; i < P.n; ++i) {
    Vec term = poly_pow(P.n - 1 - i);
    for (size_t j = 0; j < term.size(); ++j)
      hp[j] = checked_add(hp[j], checked_mul(out.f_vector[i], term[j]));
  }
  out.h_vector.assign(P.n + 1, 0);
  for (int i = 0; i <= P.n; ++i) out.h_vector[i] = hp[P.n - i];
  return out;
}

std::vector<std::vector<int>> automorphism_group(const CombinatorialPolytope& P) {
  if (P.m > 12) fail("automorphism_group limited to m <= 12");
  std::set<FacetSet> family(P.vertices.begin(), P.vertices.end());
  // facet profiles used for pruning: vertex degree and pair cooccurrence
  std::vector<int> degree(P.m + 1, 0);
  std::vector<std::vector<int>> pair_count(P.m + 1, std::vector<int>(P.m + 1, 0));
  for (const auto& v : P.vertices)
    for (size_t i = 0; i < v.size(); ++i) {
      ++degree[v[i]];
      for (size_t j = i + 1; j < v.size(); ++j) {
        ++pair_count[v[i]][v[j]];
        ++pair_count[v[j]][v[i]];
      }
    }
  std::vector<std::vector<int>> result;
  std::vector<int> img(P.m + 1, 0);
  std::vector<char> taken(P.m + 1, 0);
  auto full_check = [&] {
    std::vector<FacetSet> mapped;
    mapped.reserve(P.vertices.size());
    for (const auto& v : P.vertices) {
      FacetSet w;
      w.reserve(v.size());
      for (int f : v) w.push_back(img[f]);
      std::sort(w.begin(), w.end());
      mapped.push_back(std::move(w));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == P.vertices;
  };
  auto rec = [&](auto&& self, int f) -> void {
    if (f > P.m) {
      if (full_check()) {
        std::vector<int> perm(P.m);
        for (int i = 1; i <= P.m; ++i) perm[i - 1] = img[i];
        result.push_back(std::move(perm));
      }
      return;
    }
    for (int c = 1; c <= P.m; ++c) {
      if (taken[c] || degree[c] != degree[f]) continue;
      bool ok = true;
      for (int g = 1; g < f && ok; ++g)
        if (pair_count[f][g] != pair_count[c][img[g]]) ok = false;
      if (!ok) continue;
      img[f] = c;
      taken[c] = 1;
      self(self, f + 1);
      taken[c] = 0;
      img[f] = 0;
    }
  };
  rec(rec, 1);
  std::sort(result.begin(), result.end());
  return result;
}

CombinatorialPolytope connected_sum_polytope(const CombinatorialPolytope& P,
                                             const CombinatorialPolytope& Q,
                                             const FacetSet& v, const FacetSet& w,
                                             const std::vector<int>& tau,
                                             GluingData* gluing) {
  if (P.n != Q.n) fail("connected sum needs equal dimensions");
  int n = P.n;
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n ||
      static_cast<int>(tau.size()) != n)
    fail("connected sum vertex data has wrong size");
  if (!std::binary_search(P.vertices.begin(), P.vertices.end(), v) ||
      !std::binary_search(Q.vertices.begin(), Q.vertices.end(), w))
    fail("connected sum glue points must be vertices");
  {
    std::vector<char> seen(n, 0);
    for (int t : tau) {
      if (t < 0 || t >= n || seen[t]) fail("tau is not a bijection");
      seen[t] = 1;
    }
  }
  std::vector<int> relabel(Q.m + 1, 0);
  for (int i = 0; i < n; ++i) relabel[w[tau[i]]] = v[i];
  int next = P.m;
  for (int f = 1; f <= Q.m; ++f)
    if (relabel[f] == 0) relabel[f] = ++next;
  CombinatorialPolytope R;
  R.n = n;
  R.m = P.m + Q.m - n;
  R.label = P.label + "#" + Q.label;
  for (const auto& x : P.vertices)
    if (x != v) R.vertices.push_back(x);
  for (const auto& y : Q.vertices) {
    if (y == w) continue;
    FacetSet z;
    z.reserve(y.size());
    for (int f : y) z.push_back(relabel[f]);
    std::sort(z.begin(), z.end());
    R.vertices.push_back(std::move(z));
  }
  std::sort(R.vertices.begin(), R.vertices.end());
  std::string why;
  if (!check_polytope(R, &why)) fail("connected sum is not a polytope: " + why);
  if (gluing) {
    gluing->v = v;
    gluing->w = w;
    gluing->q_new_label.assign(relabel.begin() + 1, relabel.end());
  }
  return R;
}

std::string polytope_to_json(const CombinatorialPolytope& P) {
  nlohmann::json j;
  j["n"] = P.n;
  j["m"] = P.m;
  j["label"] = P.label;
  j["vertices"] = P.vertices;
  return j.dump(2) + "\n";
}

CombinatorialPolytope polytope_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CombinatorialPolytope P;
  P.n = j.at("n").get<int>();
  P.m = j.at("m").get<int>();
  P.label = j.at("label").get<std::string>();
  P.vertices = j.at("vertices").get<std::vector<FacetSet>>();
  std::string why;
  if (!check_polytope(P, &why)) fail("polytope json fails validation: " + why);
  return P;
}

}  // namespace qtoric
