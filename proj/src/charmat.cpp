// Characteristic matrix operations.  The enumerators fix the base vertex
// {1..n}, walk the tail columns left to right, and at each column solve
// the vertex minor conditions that become complete there: every such
// minor is linear in the unknown column, so candidate entries are filled
// row by row with interval pruning against the remaining coefficients.
// The walk is exhaustive within the entry bound; no heuristic pruning.
//
// Over Z, distinct (I|*) representatives can still differ by row sign
// flips (compensated by column flips), so leaves are deduplicated by a
// sign-normal form: the lexicographic minimum over all row flip patterns
// after renormalising every column to lead with a positive entry.

#include "qtoric/charmat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace qtoric {

namespace {

Mat mat2_mul(const Mat& A, const Mat& B) {
  Mat R = A * B;
  for (auto& x : R.a) x = mod_norm(x, 2);
  return R;
}

Mat mat2_inverse(const Mat& A) {
  if (A.rows != A.cols) fail("mod-2 inverse of non-square matrix");
  int n = A.rows;
  Mat W = A, Inv = Mat::identity(n);
  for (auto& x : W.a) x = mod_norm(x, 2);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (W.at(i, c) == 1) { p = i; break; }
    if (p < 0) fail("matrix is singular mod 2");
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(W.at(c, j), W.at(p, j));
        std::swap(Inv.at(c, j), Inv.at(p, j));
      }
    for (int i = 0; i < n; ++i) {
      if (i == c || W.at(i, c) == 0) continue;
      for (int j = 0; j < n; ++j) {
        W.at(i, j) = mod_norm(W.at(i, j) + W.at(c, j), 2);
        Inv.at(i, j) = mod_norm(Inv.at(i, j) + Inv.at(c, j), 2);
      }
    }
  }
  return Inv;
}

std::vector<int> vertex_cols0(const FacetSet& v) {
  std::vector<int> c;
  c.reserve(v.size());
  for (int f : v) c.push_back(f - 1);
  return c;
}

// lex-min over row sign flips, every column renormalised to a positive
// leading entry; identifies exactly the GL-stabiliser sign orbit of an
// (I|*) representative
Mat sign_normal_form(const Mat& A) {
  int n = A.rows, m = A.cols;
  Mat best;
  bool have = false;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    Mat c = A;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1)
        for (int j = 0; j < m; ++j) c.at(i, j) = -c.at(i, j);
    for (int j = 0; j < m; ++j) {
      int lead = -1;
      for (int i = 0; i < n; ++i)
        if (c.at(i, j) != 0) { lead = i; break; }
      if (lead >= 0 && c.at(lead, j) < 0)
        for (int i = 0; i < n; ++i) c.at(i, j) = -c.at(i, j);
    }
    if (!have || c < best) { best = std::move(c); have = true; }
  }
  return best;
}

std::string mat_key(const Mat& A) {
  std::string s;
  s.reserve(A.a.size() + 2);
  s.push_back(static_cast<char>(A.rows));
  s.push_back(static_cast<char>(A.cols));
  for (i64 x : A.a) {
    if (x < -100 || x > 100) fail("matrix entry out of key range");
    s.push_back(static_cast<char>(x + 101));
  }
  return s;
}

// one vertex minor that completes at the current column: the determinant
// is linear in the unknown column with these cofactor coefficients
struct MinorForm {
  Vec coef;
  Vec suffix;  // suffix[i] = bound * sum_{j >= i} |coef[j]|
};

struct ColumnWalk {
  const CombinatorialPolytope& P;
  bool mod2 = false;
  i64 bound = 1;
  Mat work;
  std::vector<std::vector<const FacetSet*>> verts_by_max;
  const std::function<void(const Mat&)>* emit = nullptr;

  ColumnWalk(const CombinatorialPolytope& P_, bool mod2_, i64 bound_)
      : P(P_), mod2(mod2_), bound(bound_) {
    int n = P.n, m = P.m;
    FacetSet base(n);
    std::iota(base.begin(), base.end(), 1);
    if (!std::binary_search(P.vertices.begin(), P.vertices.end(), base))
      fail("enumeration needs {1..n} to be a vertex");
    work = Mat(n, m);
    for (int i = 0; i < n; ++i) work.at(i, i) = 1;
    verts_by_max.assign(m + 1, {});
    for (const auto& v : P.vertices)
      if (v.back() > n) verts_by_max[v.back()].push_back(&v);
  }

  void run(const std::function<void(const Mat&)>& cb) {
    emit = &cb;
    column(P.n);
  }

  void column(int t0) {
    // t0 is the 0-based index of the column being filled
    if (t0 == P.m) {
      (*emit)(work);
      return;
    }
    std::vector<MinorForm> forms;
    for (const FacetSet* v : verts_by_max[t0 + 1]) {
      std::vector<int> others;
      for (int f : *v)
        if (f - 1 != t0) others.push_back(f - 1);
      MinorForm mf;
      mf.coef.assign(P.n, 0);
      for (int i = 0; i < P.n; ++i) {
        Mat sub(P.n - 1, P.n - 1);
        int rr = 0;
        for (int r = 0; r < P.n; ++r) {
          if (r == i) continue;
          for (size_t c = 0; c < others.size(); ++c) sub.at(rr, static_cast<int>(c)) = work.at(r, others[c]);
          ++rr;
        }
        i64 minor = det_bareiss(sub);
        mf.coef[i] = (i % 2 == 0) ? minor : -minor;
      }
      mf.suffix.assign(P.n + 1, 0);
      for (int i = P.n - 1; i >= 0; --i)
        mf.suffix[i] = mf.suffix[i + 1] + std::abs(mf.coef[i]) * bound;
      forms.push_back(std::move(mf));
    }
    Vec partial(forms.size(), 0);
    fill(t0, forms, partial, 0, true);
  }

  void fill(int t0, const std::vector<MinorForm>& forms, Vec& partial, int row, bool all_zero) {
    int n = P.n;
    if (row == n) {
      if (all_zero) return;  // a zero column can never sit inside a vertex minor
      for (size_t f = 0; f < forms.size(); ++f) {
        i64 v = mod2 ? mod_norm(partial[f], 2) : partial[f];
        if (mod2 ? (v != 1) : (v != 1 && v != -1)) return;
      }
      if (!mod2) {
        i64 g = 0;
        for (int i = 0; i < n; ++i) g = std::gcd(g, std::abs(work.at(i, t0)));
        if (g != 1) return;  // columns of a characteristic matrix are primitive
      }
      column(t0 + 1);
      return;
    }
    // over Z/2 entries are 0/1; over Z the leading entry is kept positive,
    // enumerating sign-normal columns only
    i64 lo = (mod2 || all_zero) ? 0 : -bound;
    for (i64 x = lo; x <= bound; ++x) {
      bool ok = true;
      for (size_t f = 0; f < forms.size(); ++f) {
        partial[f] += forms[f].coef[row] * x;
        if (!mod2 && std::abs(partial[f]) > 1 + forms[f].suffix[row + 1]) ok = false;
      }
      if (ok) {
        work.at(row, t0) = x;
        fill(t0, forms, partial, row + 1, all_zero && x == 0);
      }
      for (size_t f = 0; f < forms.size(); ++f) partial[f] -= forms[f].coef[row] * x;
      work.at(row, t0) = 0;
    }
  }
};

std::string group_spec_z(int n) {
  return "GL(" + std::to_string(n) + ",Z) x signs";
}
std::string group_spec_z2(int n) { return "GL(" + std::to_string(n) + ",Z/2)"; }

}  // namespace

bool is_characteristic(const CharMatrix& lam, FacetSet* first_failing) {
  const auto& P = lam.polytope;
  if (lam.mat.rows != P.n || lam.mat.cols != P.m) {
    if (first_failing) first_failing->clear();
    return false;
  }
  if (lam.coeff == Coeff::Z2) {
    for (i64 x : lam.mat.a)
      if (x != 0 && x != 1) {
        if (first_failing) first_failing->clear();
        return false;
      }
  } else {
    for (int j = 0; j < P.m; ++j) {
      i64 g = 0;
      for (int i = 0; i < P.n; ++i) g = std::gcd(g, std::abs(lam.mat.at(i, j)));
      if (g != 1) {
        if (first_failing) first_failing->clear();
        return false;
      }
    }
  }
  for (const auto& v : P.vertices) {
    i64 d = det_bareiss(submatrix_cols(lam.mat, vertex_cols0(v)));
    bool ok = lam.coeff == Coeff::Z2 ? (mod_norm(d, 2) == 1) : (d == 1 || d == -1);
    if (!ok) {
      if (first_failing) *first_failing = v;
      return false;
    }
  }
  return true;
}

CharMatrix to_identity_form(const CharMatrix& lam, const FacetSet& v) {
  if (!std::binary_search(lam.polytope.vertices.begin(), lam.polytope.vertices.end(), v))
    fail("identity form base must be a vertex");
  Mat block = submatrix_cols(lam.mat, vertex_cols0(v));
  CharMatrix out = lam;
  if (lam.coeff == Coeff::Z2) {
    out.mat = mat2_mul(mat2_inverse(block), lam.mat);
  } else {
    out.mat = unimodular_inverse(block) * lam.mat;
  }
  return out;
}

CharMatrix permute_facets(const CharMatrix& lam, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != lam.m()) fail("permutation size mismatch");
  CharMatrix out = lam;
  for (int j = 0; j < lam.m(); ++j)
    for (int i = 0; i < lam.n(); ++i) out.mat.at(i, perm[j] - 1) = lam.mat.at(i, j);
  return out;
}

Mat canonical_form(const CharMatrix& lam, const CanonicalOptions& opt) {
  if (lam.m() > 14) fail("canonical_form limited to m <= 14");
  static const std::vector<std::vector<int>> kIdOnly = {};
  std::vector<int> id(lam.m());
  std::iota(id.begin(), id.end(), 1);
  std::vector<std::vector<int>> idperm{id};
  const auto& perms = opt.facet_perms ? *opt.facet_perms : idperm;
  int n = lam.n(), m = lam.m();
  Mat best;
  bool have = false;
  auto consider = [&](const Mat& c) {
    if (!have || c < best) { best = c; have = true; }
  };
  for (const auto& h : perms) {
    CharMatrix lamh = permute_facets(lam, h);
    for (const auto& v : lam.polytope.vertices) {
      Mat mu = to_identity_form(lamh, v).mat;
      if (lam.coeff == Coeff::Z2) {
        consider(mu);
        continue;
      }
      std::vector<int> pivot_row(m, -1);  // base column -> its identity row
      for (size_t i = 0; i < v.size(); ++i) pivot_row[v[i] - 1] = static_cast<int>(i);
      uint32_t top = opt.column_signs ? (uint32_t{1} << n) : 1;
      for (uint32_t mask = 0; mask < top; ++mask) {
        Mat c = mu;
        for (int i = 0; i < n; ++i)
          if ((mask >> i) & 1)
            for (int j = 0; j < m; ++j) c.at(i, j) = -c.at(i, j);
        if (opt.column_signs) {
          for (int j = 0; j < m; ++j) {
            if (pivot_row[j] >= 0) {
              // restore the identity block
              if (c.at(pivot_row[j], j) < 0)
                for (int i = 0; i < n; ++i) c.at(i, j) = -c.at(i, j);
            } else {
              int lead = -1;
              for (int i = 0; i < n; ++i)
                if (c.at(i, j) != 0) { lead = i; break; }
              if (lead >= 0 && c.at(lead, j) > 0)
                for (int i = 0; i < n; ++i) c.at(i, j) = -c.at(i, j);
            }
          }
        }
        consider(c);
      }
    }
  }
  if (!have) fail("canonical_form saw no vertices");
  return best;
}

std::vector<EquivClass> enumerate_real(const CombinatorialPolytope& P) {
  if (P.m > 12) fail("enumerate_real limited to m <= 12");
  ColumnWalk walk(P, true, 1);
  std::vector<EquivClass> out;
  walk.run([&](const Mat& A) {
    EquivClass c;
    c.rep = CharMatrix{Coeff::Z2, A, P};
    c.canonical = canonical_form(c.rep);
    c.group_spec = group_spec_z2(P.n);
    out.push_back(std::move(c));
  });
  std::sort(out.begin(), out.end(),
            [](const EquivClass& a, const EquivClass& b) { return a.rep.mat < b.rep.mat; });
  return out;
}

std::vector<EquivClass> enumerate_integer(const CombinatorialPolytope& P, int bound) {
  if (P.m > 10) fail("enumerate_integer limited to m <= 10");
  if (bound < 1) fail("enumerate_integer needs a positive bound");
  ColumnWalk walk(P, false, bound);
  std::unordered_set<std::string> seen;
  std::vector<EquivClass> out;
  walk.run([&](const Mat& A) {
    Mat nf = sign_normal_form(A);
    if (!seen.insert(mat_key(nf)).second) return;
    EquivClass c;
    c.rep = CharMatrix{Coeff::Z, nf, P};
    c.canonical = canonical_form(c.rep);
    c.group_spec = group_spec_z(P.n);
    out.push_back(std::move(c));
  });
  std::sort(out.begin(), out.end(),
            [](const EquivClass& a, const EquivClass& b) { return a.rep.mat < b.rep.mat; });
  return out;
}

void polygon_enumerate_stream(int m, int bound, const std::function<void(const Mat&)>& cb) {
  CombinatorialPolytope P = polygon(m);
  ColumnWalk walk(P, false, bound);
  std::unordered_set<std::string> seen;
  walk.run([&](const Mat& A) {
    Mat nf = sign_normal_form(A);
    if (seen.insert(mat_key(nf)).second) cb(nf);
  });
}

CharMatrix mod2_reduce(const CharMatrix& lam) {
  CharMatrix out = lam;
  out.coeff = Coeff::Z2;
  for (auto& x : out.mat.a) x = mod_norm(x, 2);
  return out;
}

CharMatrix lift_tilde(const CharMatrix& lam) {
  if (lam.coeff != Coeff::Z2) fail("lift_tilde expects a Z/2 matrix");
  if (lam.n() > 3) fail("lift_tilde is only valid in dimension <= 3");
  CharMatrix out = lam;
  out.coeff = Coeff::Z;
  if (!is_characteristic(out)) fail("0/1 lift is not characteristic");
  return out;
}

bool real_equivalent(const CharMatrix& a, const CharMatrix& b) {
  if (a.coeff != Coeff::Z2 || b.coeff != Coeff::Z2) fail("real_equivalent expects Z/2 matrices");
  if (a.polytope.vertices != b.polytope.vertices) return false;
  FacetSet base(a.n());
  std::iota(base.begin(), base.end(), 1);
  return to_identity_form(a, base).mat == to_identity_form(b, base).mat;
}

std::vector<EquivClass> fiber_over(const CombinatorialPolytope& P,
                                   const CharMatrix& lambda_bar, int bound) {
  std::vector<EquivClass> all = enumerate_integer(P, bound);
  std::vector<EquivClass> out;
  for (auto& c : all)
    if (real_equivalent(mod2_reduce(c.rep), lambda_bar)) out.push_back(std::move(c));
  return out;
}

std::vector<std::vector<int>> orbit_partition(const std::vector<EquivClass>& classes,
                                              const std::vector<std::vector<int>>& gens,
                                              const CanonicalOptions& opt) {
  size_t N = classes.size();
  std::map<std::string, int> index;
  for (size_t i = 0; i < N; ++i) {
    Mat can = canonical_form(classes[i].rep, opt);
    index[mat_key(can)] = static_cast<int>(i);
  }
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < N; ++i)
    for (const auto& g : gens) {
      Mat can = canonical_form(permute_facets(classes[i].rep, g), opt);
      auto it = index.find(mat_key(can));
      if (it == index.end()) continue;  // image falls outside the list
      int a = find(static_cast<int>(i)), b = find(it->second);
      if (a != b) parent[a] = b;
    }
  std::map<int, std::vector<int>> buckets;
  for (size_t i = 0; i < N; ++i) buckets[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : buckets) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::string charmat_to_text(const CharMatrix& lam) {
  std::ostringstream os;
  os << "charmat " << lam.n() << ' ' << lam.m() << ' '
     << (lam.coeff == Coeff::Z ? "Z" : "Z2") << ' ' << lam.polytope.label << '\n';
  for (int i = 0; i < lam.n(); ++i) {
    for (int j = 0; j < lam.m(); ++j) os << (j ? " " : "") << lam.mat.at(i, j);
    os << '\n';
  }
  return os.str();
}

bool polygon_step_possible(i64 a, i64 b, i64 c, i64 d) {
  i64 aa = std::abs(a), ab = std::abs(b), ac = std::abs(c), ad = std::abs(d);
  if (aa >= ab) return true;
  if (aa == 0 && ab == 1 && ac == 1 && ad == 0) return true;  // the one exceptional shape
  return ac <= ad;
}

}  // namespace qtoric
