// Graded-ring isomorphism testing.  Candidates are g x g matrices acting on
// generators; a candidate is accepted when every relation of the source
// maps into the ideal of the target, membership being tested per degree
// slice (Howell form mod k, unit echelon or Smith transform over Z).
//
// The mod-k searches are complete.  Exhaustive enumeration covers small
// k^(g^2); for larger prime powers p^e the search runs in layers: solutions
// mod p are enumerated outright, and a solution mod p^t extends to p^(t+1)
// through a linear system over F_p, because the relation-image coordinates
// are integer polynomials in the matrix entries (so f(M + p^t E) = f(M) +
// p^t Df(E) mod p^(t+1) once t >= 1).  Every solution mod p^e reduces level
// by level to an enumerated base solution, which makes the layered search
// complete as well.  Ideal membership mod k rides on the Smith transform of
// the degree slice stacked with k*I: the slice plus k*Z^N is exactly
// { w : (w V)_j = 0 mod d_j }, and those coordinates are linear in w.
//
// The integer search is a bounded box walk: entries congruent to some
// mod-2 solution, rows pruned by top pairing values (an isomorphism scales
// every top pairing by one global sign), certificates re-verified in both
// directions.  It never claims nonexistence.

#include "qtoric/isomorphism.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qtoric {

namespace {

constexpr i64 kExhaustiveLimit = 4'500'000;
constexpr long long kLiftNodeLimit = 2'000'000;
constexpr i64 kFingerprintLimit = 1'048'576;

// ---- monomial bookkeeping shared by every search ----

struct Chain {
  int g = 0;
  std::vector<std::vector<Vec>> monos;               // exponent tuples per degree
  std::vector<std::vector<std::vector<int>>> step;   // [d][mono at d-1][gen] -> index at d
};

Chain build_chain(int g, int maxd) {
  Chain c;
  c.g = g;
  c.monos.resize(maxd + 1);
  c.step.resize(maxd + 1);
  for (int d = 0; d <= maxd; ++d) c.monos[d] = monomials(g, d);
  for (int d = 1; d <= maxd; ++d) {
    std::map<Vec, int> index;
    for (size_t i = 0; i < c.monos[d].size(); ++i) index[c.monos[d][i]] = static_cast<int>(i);
    c.step[d].assign(c.monos[d - 1].size(), std::vector<int>(g, 0));
    for (size_t m = 0; m < c.monos[d - 1].size(); ++m)
      for (int t = 0; t < g; ++t) {
        Vec e = c.monos[d - 1][m];
        ++e[t];
        c.step[d][m][t] = index.at(e);
      }
  }
  return c;
}

// product of linear forms, unreduced integer coefficients
Vec expand_chain(const Chain& c, const std::vector<Vec>& factors) {
  Vec cur{1};
  for (size_t s = 0; s < factors.size(); ++s) {
    Vec next(c.monos[s + 1].size(), 0);
    for (size_t m = 0; m < cur.size(); ++m) {
      if (!cur[m]) continue;
      for (int t = 0; t < c.g; ++t)
        if (factors[s][t]) next[c.step[s + 1][m][t]] += cur[m] * factors[s][t];
    }
    cur = std::move(next);
  }
  return cur;
}

struct SearchCtx {
  int g = 0, top = 0, gen_degree = 2;
  std::vector<std::vector<Vec>> rel_factors;
  std::vector<int> rel_cnt;
  Chain chain;
  GradedRing H;  // analyzed target
};

SearchCtx make_ctx(const RingPresentation& R, const RingPresentation& Rp) {
  if (R.g != Rp.g || R.top != Rp.top || R.gen_degree != Rp.gen_degree)
    fail("ring shapes differ");
  if (R.modulus != 0 || Rp.modulus != 0)
    fail("isomorphism searches expect integer presentations");
  SearchCtx ctx;
  ctx.g = R.g;
  ctx.top = R.top;
  ctx.gen_degree = R.gen_degree;
  int maxd = R.top;
  for (const auto& rel : R.relations) {
    ctx.rel_factors.push_back(rel.factors);
    ctx.rel_cnt.push_back(static_cast<int>(rel.factors.size()));
  }
  ctx.chain = build_chain(ctx.g, maxd);
  ctx.H = analyze_ring(Rp);
  return ctx;
}

i64 flat_det(const Vec& M, int g) {
  if (g == 1) return M[0];
  if (g == 2) return M[0] * M[3] - M[1] * M[2];
  if (g == 3)
    return M[0] * (M[4] * M[8] - M[5] * M[7]) - M[1] * (M[3] * M[8] - M[5] * M[6]) +
           M[2] * (M[3] * M[7] - M[4] * M[6]);
  Mat A(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) A.at(i, j) = M[i * g + j];
  return det_bareiss(A);
}

Mat flat_to_mat(const Vec& M, int g) {
  Mat out(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) out.at(i, j) = M[i * g + j];
  return out;
}

// image of one relation under the flat candidate, coefficients unreduced
Vec rel_image(const SearchCtx& ctx, size_t r, const Vec& M) {
  int cnt = ctx.rel_cnt[r];
  std::vector<Vec> tf(cnt, Vec(ctx.g, 0));
  for (int s = 0; s < cnt; ++s)
    for (int j = 0; j < ctx.g; ++j) {
      i64 x = 0;
      for (int i = 0; i < ctx.g; ++i) x += ctx.rel_factors[r][s][i] * M[i * ctx.g + j];
      tf[s][j] = x;
    }
  return expand_chain(ctx.chain, tf);
}

// relations above the top degree are zero in both quotients, so only
// degrees <= top (and <= max_degree when set) constrain a candidate
bool rel_active(const SearchCtx& ctx, size_t r, int max_degree) {
  if (ctx.rel_cnt[r] > ctx.top) return false;
  return !max_degree || ctx.gen_degree * ctx.rel_cnt[r] <= max_degree;
}

std::map<int, HowellForm> howell_membs(const SearchCtx& ctx, i64 k, int max_degree) {
  std::map<int, HowellForm> out;
  for (size_t r = 0; r < ctx.rel_cnt.size(); ++r) {
    int cnt = ctx.rel_cnt[r];
    if (!rel_active(ctx, r, max_degree) || out.count(cnt)) continue;
    std::vector<Vec> rows = ctx.H.slices[cnt];
    for (auto& row : rows)
      for (auto& e : row) e = mod_norm(e, k);
    out.emplace(cnt, howell_form(std::move(rows), k, static_cast<int>(ctx.chain.monos[cnt].size())));
  }
  return out;
}

bool relations_ok_mod(const SearchCtx& ctx, const std::map<int, HowellForm>& membs, const Vec& M,
                      i64 k, int max_degree) {
  for (size_t r = 0; r < ctx.rel_factors.size(); ++r) {
    if (!rel_active(ctx, r, max_degree)) continue;
    Vec w = rel_image(ctx, r, M);
    for (auto& e : w) e = mod_norm(e, k);
    if (!membs.at(ctx.rel_cnt[r]).contains(w)) return false;
  }
  return true;
}

std::vector<Mat> exhaustive_isos(const SearchCtx& ctx, i64 k, int max_degree, bool first_only) {
  i64 space = 1;
  for (int i = 0; i < ctx.g * ctx.g; ++i) {
    space = checked_mul(space, k);
    if (space > kExhaustiveLimit)
      fail("modulus too large for the exhaustive search; use the lifted variant");
  }
  auto membs = howell_membs(ctx, k, max_degree);
  std::vector<Mat> out;
  int len = ctx.g * ctx.g;
  Vec M(len, 0);
  while (true) {
    if (mod_is_unit(mod_norm(flat_det(M, ctx.g), k), k) &&
        relations_ok_mod(ctx, membs, M, k, max_degree)) {
      out.push_back(flat_to_mat(M, ctx.g));
      if (first_only) return out;
    }
    int pos = len - 1;
    while (pos >= 0 && M[pos] == k - 1) M[pos--] = 0;
    if (pos < 0) break;
    ++M[pos];
  }
  return out;
}

// ---- layered search along prime powers ----

struct LiftMembership {
  Mat V;
  Vec div;  // (w in slice + k Z^N) iff (w V)_j = 0 mod div_j for all j
};

LiftMembership lift_membership(const std::vector<Vec>& slice, int cols, i64 k) {
  Mat S(static_cast<int>(slice.size()) + cols, cols);
  for (size_t r = 0; r < slice.size(); ++r)
    for (int c = 0; c < cols; ++c) S.at(static_cast<int>(r), c) = slice[r][c];
  for (int c = 0; c < cols; ++c) S.at(static_cast<int>(slice.size()) + c, c) = k;
  SnfResult snf = snf_with_transform(std::move(S));
  return {snf.V, snf.diag};
}

i64 project(const Vec& w, const Mat& V, int j) {
  i64 s = 0;
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i]) s = checked_add(s, checked_mul(w[i], V.at(static_cast<int>(i), j)));
  return s;
}

struct LinSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

bool solve_mod_p(std::vector<Vec> A, Vec b, i64 p, int unknowns, LinSolution& out) {
  int rows = static_cast<int>(A.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < unknowns && rank < rows; ++col) {
    int sel = -1;
    for (int r = rank; r < rows && sel < 0; ++r)
      if (A[r][col] != 0) sel = r;
    if (sel < 0) continue;
    std::swap(A[rank], A[sel]);
    std::swap(b[rank], b[sel]);
    i64 inv = mod_inv(A[rank][col], p);
    for (int c = col; c < unknowns; ++c) A[rank][c] = mod_norm(A[rank][c] * inv, p);
    b[rank] = mod_norm(b[rank] * inv, p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      i64 f = A[r][col];
      for (int c = col; c < unknowns; ++c) A[r][c] = mod_norm(A[r][c] - f * A[rank][c], p);
      b[r] = mod_norm(b[r] - f * b[rank], p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (b[r] != 0) return false;
  out.particular.assign(unknowns, 0);
  for (int i = 0; i < rank; ++i) out.particular[pivot_col[i]] = b[i];
  std::vector<char> is_pivot(unknowns, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  out.kernel.clear();
  for (int c = 0; c < unknowns; ++c) {
    if (is_pivot[c]) continue;
    Vec v(unknowns, 0);
    v[c] = 1;
    for (int i = 0; i < rank; ++i) v[pivot_col[i]] = mod_norm(-A[i][c], p);
    out.kernel.push_back(std::move(v));
  }
  return true;
}

struct LiftSearch {
  const SearchCtx* ctx = nullptr;
  std::map<int, LiftMembership> memb;
  i64 p = 0, k = 0;
  int e = 0;
  long long nodes = 0;
  Vec found;
};

bool lift_dfs(LiftSearch& L, const Vec& M, int t, i64 pt) {
  if (++L.nodes > kLiftNodeLimit) fail("lifted search exceeded its node budget");
  const SearchCtx& ctx = *L.ctx;
  int len = ctx.g * ctx.g;
  if (t == L.e) {
    for (size_t r = 0; r < ctx.rel_factors.size(); ++r) {
      if (!rel_active(ctx, r, 0)) continue;
      const auto& mb = L.memb.at(ctx.rel_cnt[r]);
      Vec w = rel_image(ctx, r, M);
      for (size_t j = 0; j < mb.div.size(); ++j)
        if (mb.div[j] > 1 && mod_norm(project(w, mb.V, static_cast<int>(j)), mb.div[j]) != 0)
          return false;
    }
    L.found = M;
    return true;
  }

  std::vector<Vec> rows;
  Vec rhs;
  for (size_t r = 0; r < ctx.rel_factors.size(); ++r) {
    if (!rel_active(ctx, r, 0)) continue;
    const auto& mb = L.memb.at(ctx.rel_cnt[r]);
    Vec w0 = rel_image(ctx, r, M);
    std::vector<Vec> w1(len);
    for (int ab = 0; ab < len; ++ab) {
      Vec Mp = M;
      Mp[ab] += pt;
      w1[ab] = rel_image(ctx, r, Mp);
    }
    for (size_t j = 0; j < mb.div.size(); ++j) {
      if (mb.div[j] < pt * L.p) continue;  // constraint already final below p^(t+1)
      i64 base = project(w0, mb.V, static_cast<int>(j));
      if (base % pt != 0) fail("lift invariant broken");
      Vec row(len, 0);
      for (int ab = 0; ab < len; ++ab)
        row[ab] = mod_norm((project(w1[ab], mb.V, static_cast<int>(j)) - base) / pt, L.p);
      rows.push_back(std::move(row));
      rhs.push_back(mod_norm(-(base / pt), L.p));
    }
  }

  LinSolution sol;
  if (!solve_mod_p(std::move(rows), std::move(rhs), L.p, len, sol)) return false;
  int dim = static_cast<int>(sol.kernel.size());
  Vec combo(dim, 0);
  while (true) {
    Vec x = sol.particular;
    for (int i = 0; i < dim; ++i)
      if (combo[i])
        for (int u = 0; u < len; ++u) x[u] = mod_norm(x[u] + combo[i] * sol.kernel[i][u], L.p);
    Vec M2 = M;
    for (int u = 0; u < len; ++u) M2[u] += pt * x[u];
    if (lift_dfs(L, M2, t + 1, pt * L.p)) return true;
    int pos = dim - 1;
    while (pos >= 0 && combo[pos] == L.p - 1) combo[pos--] = 0;
    if (pos < 0) break;
    ++combo[pos];
  }
  return false;
}

IsoVerdict verdict_mod_found(const Mat& M, i64 k) {
  IsoVerdict v;
  v.outcome = IsoVerdict::Outcome::IsomorphicModK;
  v.cert = M;
  v.modulus = k;
  return v;
}

IsoVerdict verdict_distinguished(i64 k, const std::string& test) {
  IsoVerdict v;
  v.outcome = IsoVerdict::Outcome::DistinguishedBy;
  v.modulus = k;
  v.test = test;
  v.witness = "no unit-determinant substitution maps the relation ideal into the target ideal";
  return v;
}

bool relations_ok_Z(const SearchCtx& ctx, const GradedRing& H,
                    const std::vector<Relation>& rels, const Mat& M) {
  for (const auto& rel : rels) {
    int cnt = static_cast<int>(rel.factors.size());
    if (cnt > H.top()) continue;
    std::vector<Vec> tf(cnt, Vec(ctx.g, 0));
    for (int s = 0; s < cnt; ++s)
      for (int j = 0; j < ctx.g; ++j) {
        i64 x = 0;
        for (int i = 0; i < ctx.g; ++i) x += rel.factors[s][i] * M.at(i, j);
        tf[s][j] = x;
      }
    Vec w = expand_chain(ctx.chain, tf);
    if (!in_ideal(H, cnt, w)) return false;
  }
  return true;
}

}  // namespace

bool apply_iso_check(const RingPresentation& R, const RingPresentation& Rp, const Mat& M,
                     int max_degree) {
  if (R.g != Rp.g || R.top != Rp.top || R.gen_degree != Rp.gen_degree ||
      R.modulus != Rp.modulus)
    fail("presentations are not comparable");
  if (M.rows != R.g || M.cols != R.g) fail("substitution matrix has the wrong shape");
  i64 d = det_bareiss(M);
  bool unit = R.modulus == 0 ? (d == 1 || d == -1) : mod_is_unit(mod_norm(d, R.modulus), R.modulus);
  if (!unit) fail("substitution matrix does not have unit determinant");

  GradedRing H = analyze_ring(Rp);
  Chain chain = build_chain(R.g, R.top);
  for (const auto& rel : R.relations) {
    int cnt = static_cast<int>(rel.factors.size());
    if (cnt > R.top) continue;
    if (max_degree && R.gen_degree * cnt > max_degree) continue;
    std::vector<Vec> tf(cnt, Vec(R.g, 0));
    for (int s = 0; s < cnt; ++s)
      for (int j = 0; j < R.g; ++j) {
        i64 x = 0;
        for (int i = 0; i < R.g; ++i) x += rel.factors[s][i] * M.at(i, j);
        tf[s][j] = R.modulus ? mod_norm(x, R.modulus) : x;
      }
    Vec w = expand_chain(chain, tf);
    if (R.modulus)
      for (auto& e : w) e = mod_norm(e, R.modulus);
    if (!in_ideal(H, cnt, w)) return false;
  }
  return true;
}

IsoVerdict iso_over_Zk(const RingPresentation& R, const RingPresentation& Rp, i64 k) {
  if (k < 2) fail("modulus must be at least 2");
  SearchCtx ctx = make_ctx(R, Rp);
  i64 space = 1;
  bool small = true;
  for (int i = 0; i < ctx.g * ctx.g && small; ++i) {
    space *= k;
    if (space > kExhaustiveLimit) small = false;
  }
  if (small) {
    auto found = exhaustive_isos(ctx, k, 0, true);
    if (!found.empty()) return verdict_mod_found(found.front(), k);
    return verdict_distinguished(k, "mod-k exhaustive");
  }
  return iso_over_Zk_lifted(R, Rp, k);
}

IsoVerdict iso_over_Zk_lifted(const RingPresentation& R, const RingPresentation& Rp, i64 k) {
  if (k < 2) fail("modulus must be at least 2");
  i64 p = 2;
  while (k % p != 0) ++p;
  i64 q = k;
  int e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) fail("the lifted search needs a prime-power modulus");

  SearchCtx ctx = make_ctx(R, Rp);
  LiftSearch L;
  L.ctx = &ctx;
  L.p = p;
  L.k = k;
  L.e = e;
  for (size_t r = 0; r < ctx.rel_cnt.size(); ++r) {
    int cnt = ctx.rel_cnt[r];
    if (!rel_active(ctx, r, 0) || L.memb.count(cnt)) continue;
    L.memb.emplace(cnt, lift_membership(ctx.H.slices[cnt],
                                        static_cast<int>(ctx.chain.monos[cnt].size()), k));
  }

  int len = ctx.g * ctx.g;
  Vec M(len, 0);
  while (true) {
    bool ok = mod_is_unit(mod_norm(flat_det(M, ctx.g), p), p);
    if (ok) {
      for (size_t r = 0; ok && r < ctx.rel_factors.size(); ++r) {
        if (!rel_active(ctx, r, 0)) continue;
        const auto& mb = L.memb.at(ctx.rel_cnt[r]);
        Vec w = rel_image(ctx, r, M);
        for (size_t j = 0; ok && j < mb.div.size(); ++j)
          if (mb.div[j] > 1 && mod_norm(project(w, mb.V, static_cast<int>(j)), p) != 0) ok = false;
      }
      if (ok && lift_dfs(L, M, 1, p)) return verdict_mod_found(flat_to_mat(L.found, ctx.g), k);
    }
    int pos = len - 1;
    while (pos >= 0 && M[pos] == p - 1) M[pos--] = 0;
    if (pos < 0) break;
    ++M[pos];
  }
  return verdict_distinguished(k, "mod-k lifted search");
}

std::vector<Mat> all_isos_mod_k(const RingPresentation& R, const RingPresentation& Rp, i64 k,
                                int max_degree) {
  if (k < 2) fail("modulus must be at least 2");
  SearchCtx ctx = make_ctx(R, Rp);
  return exhaustive_isos(ctx, k, max_degree, false);
}

IsoVerdict iso_over_Z_bounded(const RingPresentation& R, const RingPresentation& Rp, int bound) {
  if (bound < 1) fail("bound must be positive");
  SearchCtx ctx = make_ctx(R, Rp);
  GradedRing G = analyze_ring(R);
  int g = ctx.g, top = ctx.top;

  const auto& topm = ctx.chain.monos[top];
  Vec PG(topm.size()), PH(topm.size());
  for (size_t i = 0; i < topm.size(); ++i) {
    PG[i] = pairing(G, topm[i]);
    PH[i] = pairing(ctx.H, topm[i]);
  }

  auto S2 = all_isos_mod_k(R, Rp, 2);
  Mat id = Mat::identity(g);
  std::stable_partition(S2.begin(), S2.end(), [&](const Mat& m) { return m == id; });

  // top monomials whose support closes at row r
  std::vector<std::vector<int>> newmons(g);
  for (size_t i = 0; i < topm.size(); ++i) {
    int last = 0;
    for (int t = 0; t < g; ++t)
      if (topm[i][t] > 0) last = t;
    newmons[last].push_back(static_cast<int>(i));
  }

  // candidate entries per parity, nearest to zero first
  std::vector<Vec> by_parity(2);
  for (i64 a = 0; a <= bound; ++a) {
    by_parity[mod_norm(a, 2)].push_back(a);
    if (a) by_parity[mod_norm(a, 2)].push_back(-a);
  }

  std::vector<Vec> rows(g, Vec(g, 0));
  IsoVerdict result;
  result.outcome = IsoVerdict::Outcome::Inconclusive;
  result.bound = bound;

  for (i64 eps : {i64{1}, i64{-1}}) {
    for (const Mat& M2 : S2) {
      std::function<bool(int)> place = [&](int r) -> bool {
        std::vector<const Vec*> vals(g);
        for (int t = 0; t < g; ++t) vals[t] = &by_parity[mod_norm(M2.at(r, t), 2)];
        std::vector<size_t> pick(g, 0);
        while (true) {
          for (int t = 0; t < g; ++t) rows[r][t] = (*vals[t])[pick[t]];
          bool ok = true;
          for (int mi : newmons[r]) {
            std::vector<Vec> fac;
            for (int i = 0; i <= r; ++i)
              for (i64 c = 0; c < topm[mi][i]; ++c) fac.push_back(rows[i]);
            Vec w = expand_chain(ctx.chain, fac);
            i64 val = 0;
            for (size_t u = 0; u < w.size(); ++u) val += w[u] * PH[u];
            if (val != eps * PG[mi]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            if (r + 1 < g) {
              if (place(r + 1)) return true;
            } else {
              Mat M(g, g);
              for (int i = 0; i < g; ++i)
                for (int j = 0; j < g; ++j) M.at(i, j) = rows[i][j];
              i64 d = det_bareiss(M);
              if ((d == 1 || d == -1) && relations_ok_Z(ctx, ctx.H, R.relations, M) &&
                  relations_ok_Z(ctx, G, Rp.relations, unimodular_inverse(M))) {
                result.outcome = IsoVerdict::Outcome::Isomorphic;
                result.cert = M;
                return true;
              }
            }
          }
          int pos = g - 1;
          while (pos >= 0 && pick[pos] + 1 == vals[pos]->size()) pick[pos--] = 0;
          if (pos < 0) break;
          ++pick[pos];
        }
        return false;
      };
      if (place(0)) return result;
    }
  }
  return result;
}

bool char_class_preserved(const Mat& M, const CharMatrix& lam, const CharMatrix& lamp) {
  if (lam.coeff != Coeff::Z || lamp.coeff != Coeff::Z)
    fail("characteristic class transport expects integer characteristic matrices");
  RingPresentation R = build_ring(lam), Rp = build_ring(lamp);
  if (!apply_iso_check(R, Rp, M)) fail("the matrix is not a ring isomorphism");

  GradedRing G = analyze_ring(R), H = analyze_ring(Rp);
  int g = R.g;
  Chain chain = build_chain(g, 2);

  Vec pG = first_pontryagin(G), pH = first_pontryagin(H);
  const auto& m2 = chain.monos[2];
  Vec img(m2.size(), 0);
  for (size_t a = 0; a < m2.size(); ++a) {
    if (!pG[a]) continue;
    std::vector<Vec> fac;
    for (int i = 0; i < g; ++i)
      for (i64 c = 0; c < m2[a][i]; ++c) {
        Vec row(g);
        for (int t = 0; t < g; ++t) row[t] = M.at(i, t);
        fac.push_back(std::move(row));
      }
    Vec w = expand_chain(chain, fac);
    for (size_t u = 0; u < w.size(); ++u) img[u] += pG[a] * w[u];
  }
  bool p1_ok = normal_form(H, 2, img) == normal_form(H, 2, pH);

  GradedRing G2 = analyze_ring(reduce_mod(R, 2)), H2 = analyze_ring(reduce_mod(Rp, 2));
  Vec wG = stiefel_whitney(G2, 1), wH = stiefel_whitney(H2, 1);
  Vec wimg(g, 0);
  for (int j = 0; j < g; ++j) {
    i64 x = 0;
    for (int i = 0; i < g; ++i) x += wG[i] * M.at(i, j);
    wimg[j] = mod_norm(x, 2);
  }
  bool w2_ok = normal_form(H2, 1, wimg) == normal_form(H2, 1, wH);
  return p1_ok && w2_ok;
}

Fingerprint fingerprint(const RingPresentation& R, const std::vector<i64>& moduli) {
  if (R.modulus != 0) fail("fingerprints are computed from integer presentations");
  if (R.top < 2) fail("fingerprints need top degree at least two");
  GradedRing G = analyze_ring(R);
  int g = R.g, top = R.top;

  Fingerprint fp;
  fp.moduli = moduli;
  fp.betti = betti(G);

  Chain chain = build_chain(g, top);
  const auto& topm = chain.monos[top];
  Vec P(topm.size());
  for (size_t i = 0; i < topm.size(); ++i) P[i] = pairing(G, topm[i]);

  for (i64 k : moduli) {
    i64 count = 1;
    for (int i = 0; i < g; ++i) {
      count = checked_mul(count, k);
      if (count > kFingerprintLimit) fail("fingerprint count space too large");
    }

    std::vector<Vec> divs;
    for (int d = 1; d <= top; ++d)
      divs.push_back(
          lift_membership(G.slices[d], static_cast<int>(chain.monos[d].size()), k).div);
    fp.slice_divisors.push_back(std::move(divs));

    auto memb = [&](int d) {
      std::vector<Vec> rows = G.slices[d];
      for (auto& row : rows)
        for (auto& e : row) e = mod_norm(e, k);
      return howell_form(std::move(rows), k, static_cast<int>(chain.monos[d].size()));
    };
    HowellForm memb2 = memb(2), membt = memb(top);

    i64 sq = 0, pw = 0;
    Vec vals;
    vals.reserve(static_cast<size_t>(count));
    Vec c(g, 0);
    while (true) {
      Vec w2 = expand_chain(chain, {c, c});
      for (auto& e : w2) e = mod_norm(e, k);
      if (memb2.contains(w2)) ++sq;

      Vec wt = expand_chain(chain, std::vector<Vec>(top, c));
      i64 pv = 0;
      for (size_t u = 0; u < wt.size(); ++u) pv += wt[u] * P[u];
      vals.push_back(mod_norm(pv, k));
      for (auto& e : wt) e = mod_norm(e, k);
      if (membt.contains(wt)) ++pw;

      int pos = g - 1;
      while (pos >= 0 && c[pos] == k - 1) c[pos--] = 0;
      if (pos < 0) break;
      ++c[pos];
    }
    std::sort(vals.begin(), vals.end());
    Vec neg(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) neg[i] = mod_norm(k - vals[i], k);
    std::sort(neg.begin(), neg.end());
    fp.pairing_multiset.push_back(std::min(vals, neg));
    fp.square_zero.push_back(sq);
    fp.power_zero.push_back(pw);
  }
  return fp;
}

namespace {

std::pair<std::string, i64> first_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.betti != b.betti) return {"integral ranks", 0};
  for (size_t m = 0; m < a.moduli.size(); ++m) {
    if (a.slice_divisors[m] != b.slice_divisors[m]) return {"slice divisor structure", a.moduli[m]};
    if (a.square_zero[m] != b.square_zero[m]) return {"square-zero count", a.moduli[m]};
    if (a.power_zero[m] != b.power_zero[m]) return {"top-power-zero count", a.moduli[m]};
    if (a.pairing_multiset[m] != b.pairing_multiset[m])
      return {"top pairing multiset", a.moduli[m]};
  }
  return {"", 0};
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

// run body(0..count-1) on up to `jobs` threads; the first exception wins
// and is rethrown on the caller after all workers drain
void run_tasks(size_t count, int jobs, const std::function<void(size_t)>& body) {
  size_t width = std::min<size_t>(std::max(jobs, 1), count);
  if (width <= 1) {
    for (size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (size_t t = next.fetch_add(1); t < count; t = next.fetch_add(1)) {
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (size_t w = 0; w < width; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

DistinguishReport distinguish_all(const std::vector<RingPresentation>& rings,
                                  const IsoBattery& battery) {
  int n = static_cast<int>(rings.size());
  DistinguishReport rep;
  std::vector<Fingerprint> fps;
  if (battery.use_fingerprints) {
    fps.resize(n);
    run_tasks(static_cast<size_t>(n), battery.jobs,
              [&](size_t i) { fps[i] = fingerprint(rings[i], battery.moduli); });
  }

  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) order.emplace_back(i, j);

  std::vector<PairVerdict> verdicts(order.size());
  run_tasks(order.size(), battery.jobs, [&](size_t t) {
    auto [i, j] = order[t];
    PairVerdict pv;
    pv.i = i;
    pv.j = j;
    if (battery.use_fingerprints && !(fps[i] == fps[j])) {
      auto [detail, modulus] = first_difference(fps[i], fps[j]);
      pv.v.outcome = IsoVerdict::Outcome::DistinguishedBy;
      pv.v.test = "fingerprint";
      pv.v.modulus = modulus;
      pv.v.witness = detail;
    } else {
      bool separated = false;
      for (i64 k : battery.moduli) {
        IsoVerdict v = iso_over_Zk(rings[i], rings[j], k);
        if (v.outcome == IsoVerdict::Outcome::DistinguishedBy) {
          pv.v = v;
          separated = true;
          break;
        }
      }
      if (!separated) pv.v = iso_over_Z_bounded(rings[i], rings[j], battery.z_bound);
    }
    verdicts[t] = std::move(pv);
  });

  Dsu dsu(n);
  for (auto& pv : verdicts) {
    switch (pv.v.outcome) {
      case IsoVerdict::Outcome::Isomorphic:
        dsu.join(pv.i, pv.j);
        break;
      case IsoVerdict::Outcome::Inconclusive:
        rep.unresolved.emplace_back(pv.i, pv.j);
        break;
      default:
        break;
    }
    rep.pairs.push_back(std::move(pv));
  }

  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < n; ++i) by_root[dsu.find(i)].push_back(i);
  for (auto& [root, members] : by_root) rep.classes.push_back(std::move(members));
  std::sort(rep.classes.begin(), rep.classes.end());
  return rep;
}

std::string report_to_json(const DistinguishReport& rep) {
  nlohmann::json j;
  j["classes"] = rep.classes;
  auto pairs = nlohmann::json::array();
  for (const auto& pv : rep.pairs) {
    nlohmann::json e;
    e["i"] = pv.i;
    e["j"] = pv.j;
    switch (pv.v.outcome) {
      case IsoVerdict::Outcome::Isomorphic: {
        e["outcome"] = "iso";
        std::vector<std::vector<i64>> cert(pv.v.cert.rows, std::vector<i64>(pv.v.cert.cols));
        for (int r = 0; r < pv.v.cert.rows; ++r)
          for (int c = 0; c < pv.v.cert.cols; ++c) cert[r][c] = pv.v.cert.at(r, c);
        e["witness"] = {{"certificate", cert}};
        break;
      }
      case IsoVerdict::Outcome::DistinguishedBy:
        e["outcome"] = "distinct";
        e["witness"] = {{"test", pv.v.test}, {"modulus", pv.v.modulus}, {"detail", pv.v.witness}};
        break;
      default:
        e["outcome"] = "unresolved";
        e["witness"] = {{"bound", pv.v.bound}};
    }
    pairs.push_back(std::move(e));
  }
  j["pairs"] = pairs;
  return j.dump(2);
}

Mat derive_orbit_certificate(const CharMatrix& a, const CharMatrix& b,
                             const std::vector<int>& sigma) {
  if (a.coeff != b.coeff) fail("cannot certify across coefficient rings");
  if (static_cast<int>(sigma.size()) != a.m()) fail("symmetry table has the wrong length");
  RingPresentation Ra = build_ring(a), Rb = build_ring(b);
  if (Ra.g != Rb.g || Ra.top != Rb.top) fail("ring shapes differ");
  int n = a.n(), g = Ra.g;

  int sign_patterns = Ra.modulus == 2 ? 1 : (1 << g);
  for (int mask = 0; mask < sign_patterns; ++mask) {
    Mat M(g, g);
    for (int j = 0; j < g; ++j) {
      int image = sigma[n + j];  // generator j sits on facet n+j+1
      i64 s = (mask >> j & 1) ? -1 : 1;
      for (int t = 0; t < g; ++t) {
        i64 e = s * Rb.substitutions.at(image - 1, t);
        M.at(j, t) = Ra.modulus ? mod_norm(e, Ra.modulus) : e;
      }
    }
    i64 d = det_bareiss(M);
    bool unit = Ra.modulus == 0 ? (d == 1 || d == -1) : mod_is_unit(mod_norm(d, Ra.modulus), Ra.modulus);
    if (!unit) continue;
    if (apply_iso_check(Ra, Rb, M)) return M;
  }
  fail("the symmetry does not induce a signed substitution certificate");
}

}  // namespace qtoric
