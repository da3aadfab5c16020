// Implementation of the exact integer kernel.  Determinants use Bareiss
// fraction-free elimination, inverses of unimodular matrices use integer
// row reduction (every row operation used is itself unimodular), Smith
// forms use the classical pivot-and-fold routine, and Howell forms follow
// the usual three-step recipe (triangularise, normalise leading entries,
// append annihilator rows).

#include "qtoric/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace qtoric {

void fail(const std::string& msg) { throw qtoric_error(msg); }

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail("integer overflow in add");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail("integer overflow in mul");
  return r;
}

i64 gcd_nonneg(i64 a, i64 b) { return std::gcd(a, b); }

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  // iterative extended Euclid on |a|, |b|, signs restored at the end
  i64 old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
  i64 old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  x = a < 0 ? -old_s : old_s;
  y = b < 0 ? -old_t : old_t;
  return old_r;
}

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) fail("matrix product shape mismatch");
  Mat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      i64 v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, o.at(k, j)));
    }
  return r;
}

std::strong_ordering Mat::operator<=>(const Mat& o) const {
  if (auto c = rows <=> o.rows; c != 0) return c;
  if (auto c = cols <=> o.cols; c != 0) return c;
  return a <=> o.a;
}

Mat transpose(const Mat& A) {
  Mat r(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) r.at(j, i) = A.at(i, j);
  return r;
}

Mat submatrix_cols(const Mat& A, const std::vector<int>& cols0) {
  Mat r(A.rows, static_cast<int>(cols0.size()));
  for (int i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < cols0.size(); ++j) r.at(i, static_cast<int>(j)) = A.at(i, cols0[j]);
  return r;
}

i64 det_bareiss(Mat A) {
  if (A.rows != A.cols) fail("determinant of non-square matrix");
  int n = A.rows;
  if (n == 0) return 1;
  i64 sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (A.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = k; j < n; ++j) std::swap(A.at(k, j), A.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        i64 num = checked_add(checked_mul(A.at(i, j), A.at(k, k)),
                              -checked_mul(A.at(i, k), A.at(k, j)));
        A.at(i, j) = num / prev;  // exact division by Bareiss invariant
      }
    prev = A.at(k, k);
  }
  return sign * A.at(n - 1, n - 1);
}

Mat unimodular_inverse(const Mat& A) {
  if (A.rows != A.cols) fail("inverse of non-square matrix");
  int n = A.rows;
  Mat W = A, Inv = Mat::identity(n);
  auto rowop = [&](Mat& M, int dst, int src, i64 c) {
    for (int j = 0; j < n; ++j)
      M.at(dst, j) = checked_add(M.at(dst, j), checked_mul(c, M.at(src, j)));
  };
  // unimodular row reduction to upper triangular with +-1 diagonal
  for (int c = 0; c < n; ++c) {
    for (int i = c + 1; i < n; ++i) {
      while (W.at(i, c) != 0) {
        if (W.at(c, c) != 0 && std::abs(W.at(c, c)) <= std::abs(W.at(i, c))) {
          i64 q = W.at(i, c) / W.at(c, c);
          rowop(W, i, c, -q);
          rowop(Inv, i, c, -q);
        }
        if (W.at(i, c) != 0) {
          for (int j = 0; j < n; ++j) {
            std::swap(W.at(c, j), W.at(i, j));
            std::swap(Inv.at(c, j), Inv.at(i, j));
          }
        }
      }
    }
    if (W.at(c, c) == 0) fail("matrix is singular, no unimodular inverse");
  }
  i64 prod = 1;
  for (int c = 0; c < n; ++c) prod = checked_mul(prod, W.at(c, c));
  if (prod != 1 && prod != -1) fail("matrix determinant is not a unit");
  for (int c = n - 1; c >= 0; --c) {
    if (W.at(c, c) == -1) {
      for (int j = 0; j < n; ++j) { W.at(c, j) = -W.at(c, j); Inv.at(c, j) = -Inv.at(c, j); }
    }
    for (int i = 0; i < c; ++i) {
      i64 q = W.at(i, c);
      if (q != 0) { rowop(W, i, c, -q); rowop(Inv, i, c, -q); }
    }
  }
  return Inv;
}

Mat mod_matrix_inverse(const Mat& A, i64 k) {
  if (A.rows != A.cols) fail("inverse of non-square matrix");
  int n = A.rows;
  i64 dinv = mod_inv(mod_norm(det_bareiss(A), k), k);
  // adjugate route; matrices here are small
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      i64 cof = 1;
      if (n > 1) {
        Mat minor(n - 1, n - 1);
        for (int r = 0, rr = 0; r < n; ++r) {
          if (r == j) continue;
          for (int c = 0, cc = 0; c < n; ++c) {
            if (c == i) continue;
            minor.at(rr, cc++) = A.at(r, c);
          }
          ++rr;
        }
        cof = det_bareiss(std::move(minor));
      }
      if ((i + j) % 2 == 1) cof = -cof;
      out.at(i, j) = mod_norm(checked_mul(dinv, mod_norm(cof, k)), k);
    }
  return out;
}

namespace {

// shared core for both Smith form entry points; V is optional
void snf_core(Mat& A, Mat* V) {
  int n = A.rows, m = A.cols;
  int t = 0;  // current corner
  while (t < n && t < m) {
    // locate a nonzero entry of minimal absolute value in the remaining block
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        i64 v = std::abs(A.at(i, j));
        if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
      }
    if (pi < 0) break;
    // move it to the corner
    if (pi != t)
      for (int j = 0; j < m; ++j) std::swap(A.at(t, j), A.at(pi, j));
    if (pj != t) {
      for (int i = 0; i < n; ++i) std::swap(A.at(i, t), A.at(i, pj));
      if (V) for (int i = 0; i < V->rows; ++i) std::swap(V->at(i, t), V->at(i, pj));
    }
    // clear the rest of row t and column t
    bool dirty = false;
    for (int i = t + 1; i < n; ++i) {
      i64 q = A.at(i, t) / A.at(t, t);
      if (q != 0)
        for (int j = t; j < m; ++j)
          A.at(i, j) = checked_add(A.at(i, j), -checked_mul(q, A.at(t, j)));
      if (A.at(i, t) != 0) dirty = true;
    }
    for (int j = t + 1; j < m; ++j) {
      i64 q = A.at(t, j) / A.at(t, t);
      if (q != 0) {
        for (int i = t; i < n; ++i)
          A.at(i, j) = checked_add(A.at(i, j), -checked_mul(q, A.at(i, t)));
        if (V)
          for (int i = 0; i < V->rows; ++i)
            V->at(i, j) = checked_add(V->at(i, j), -checked_mul(q, V->at(i, t)));
      }
      if (A.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // remainders survive, re-pick a smaller pivot
    // enforce divisibility: fold any non-multiple into the pivot's column
    bool fold = false;
    for (int i = t + 1; i < n && !fold; ++i)
      for (int j = t + 1; j < m && !fold; ++j)
        if (A.at(i, j) % A.at(t, t) != 0) {
          for (int jj = t; jj < m; ++jj)
            A.at(t, jj) = checked_add(A.at(t, jj), A.at(i, jj));
          fold = true;
        }
    if (fold) continue;
    if (A.at(t, t) < 0) {
      for (int i = t; i < n; ++i) A.at(i, t) = -A.at(i, t);
      if (V) for (int i = 0; i < V->rows; ++i) V->at(i, t) = -V->at(i, t);
    }
    ++t;
  }
}

}  // namespace

Vec snf_diagonal(Mat A) {
  snf_core(A, nullptr);
  Vec d;
  int n = std::min(A.rows, A.cols);
  for (int i = 0; i < n; ++i)
    if (A.at(i, i) != 0) d.push_back(A.at(i, i));
  return d;
}

SnfResult snf_with_transform(Mat A) {
  SnfResult r;
  r.V = Mat::identity(A.cols);
  int m = A.cols;
  snf_core(A, &r.V);
  r.diag.assign(m, 0);
  int n = std::min(A.rows, A.cols);
  for (int i = 0; i < n; ++i) r.diag[i] = A.at(i, i);
  return r;
}

void UnitEchelon::reduce(Vec& v) const {
  for (size_t r = 0; r < rows.size(); ++r) {
    i64 c = v[pivot_col[r]];
    if (c == 0) continue;
    i64 p = rows[r][pivot_col[r]];  // +1 by construction
    i64 q = c / p;
    for (int j = 0; j < cols; ++j)
      v[j] = checked_add(v[j], -checked_mul(q, rows[r][j]));
  }
}

bool UnitEchelon::contains(Vec v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

bool build_unit_echelon(std::vector<Vec> gen, int cols, UnitEchelon& out) {
  out = UnitEchelon{};
  out.cols = cols;
  std::vector<Vec> work;
  for (auto& g : gen) {
    if (static_cast<int>(g.size()) != cols) fail("echelon row width mismatch");
    if (std::any_of(g.begin(), g.end(), [](i64 x) { return x != 0; })) work.push_back(std::move(g));
  }
  std::vector<char> is_pivot(cols, 0);

  auto adopt = [&](size_t wi, int c) {
    Vec row = std::move(work[wi]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(wi));
    if (row[c] == -1)
      for (auto& x : row) x = -x;
    // clear column c from previously adopted rows and from the work list
    for (auto& ex : out.rows) {
      i64 q = ex[c];
      if (q != 0)
        for (int j = 0; j < cols; ++j) ex[j] = checked_add(ex[j], -checked_mul(q, row[j]));
    }
    for (auto& w : work) {
      i64 q = w[c];
      if (q != 0)
        for (int j = 0; j < cols; ++j) w[j] = checked_add(w[j], -checked_mul(q, row[j]));
    }
    out.rows.push_back(std::move(row));
    out.pivot_col.push_back(c);
    is_pivot[c] = 1;
  };

  auto drop_zero_rows = [&] {
    std::erase_if(work, [](const Vec& w) {
      return std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; });
    });
  };

  auto scan_units = [&] {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        for (size_t wi = 0; wi < work.size(); ++wi)
          if (work[wi][c] == 1 || work[wi][c] == -1) {
            adopt(wi, c);
            progress = true;
            break;
          }
      }
      drop_zero_rows();
    }
  };

  scan_units();
  while (!work.empty()) {
    // gcd-echelonise leftovers over the free columns; any unit that appears
    // restarts the scan, otherwise the lattice has no unit-pivot echelon
    bool created_unit = false;
    for (int c = 0; c < cols && !created_unit; ++c) {
      if (is_pivot[c]) continue;
      // combine all rows with nonzero entry at c down to one
      size_t base = work.size();
      for (size_t wi = 0; wi < work.size(); ++wi)
        if (work[wi][c] != 0) { base = wi; break; }
      if (base == work.size()) continue;
      for (size_t wi = base + 1; wi < work.size(); ++wi) {
        if (work[wi][c] == 0) continue;
        i64 x, y;
        i64 g = ext_gcd(work[base][c], work[wi][c], x, y);
        i64 a = work[base][c] / g, b = work[wi][c] / g;
        for (int j = 0; j < cols; ++j) {
          i64 nb = checked_add(checked_mul(x, work[base][j]), checked_mul(y, work[wi][j]));
          i64 nw = checked_add(checked_mul(-b, work[base][j]), checked_mul(a, work[wi][j]));
          work[base][j] = nb;
          work[wi][j] = nw;
        }
      }
      if (work[base][c] == 1 || work[base][c] == -1) created_unit = true;
    }
    drop_zero_rows();
    if (created_unit) {
      scan_units();
      continue;
    }
    if (!work.empty()) return false;
  }
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) out.free_cols.push_back(c);
  return true;
}

i64 mod_norm(i64 x, i64 k) {
  i64 r = x % k;
  return r < 0 ? r + k : r;
}

bool mod_is_unit(i64 x, i64 k) { return std::gcd(mod_norm(x, k), k) == 1; }

i64 mod_inv(i64 x, i64 k) {
  i64 s, t;
  i64 g = ext_gcd(mod_norm(x, k), k, s, t);
  if (g != 1) fail("element is not a unit mod k");
  return mod_norm(s, k);
}

namespace {

// unit u mod k with u * g == gcd(g, k) mod k; k is small in every caller
i64 normalizing_unit(i64 g, i64 k) {
  i64 d = std::gcd(mod_norm(g, k), k);
  for (i64 u = 1; u < k; ++u)
    if (std::gcd(u, k) == 1 && mod_norm(u * g, k) == d) return u;
  fail("no normalising unit found");
}

}  // namespace

Vec HowellForm::residue(Vec v) const {
  for (auto& x : v) x = mod_norm(x, k);
  for (size_t r = 0; r < rows.size(); ++r) {
    int c = lead_col[r];
    i64 d = rows[r][c];
    i64 q = v[c] / d;
    if (q != 0)
      for (int j = c; j < cols; ++j) v[j] = mod_norm(v[j] - q * rows[r][j], k);
  }
  return v;
}

bool HowellForm::contains(const Vec& v) const {
  Vec r = residue(v);
  return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
}

HowellForm howell_form(std::vector<Vec> gen, i64 k, int cols) {
  if (k < 2) fail("howell form needs modulus >= 2");
  HowellForm H;
  H.k = k;
  H.cols = cols;
  std::vector<Vec> work;
  for (auto& g : gen) {
    if (static_cast<int>(g.size()) != cols) fail("howell row width mismatch");
    Vec w(cols);
    for (int j = 0; j < cols; ++j) w[j] = mod_norm(g[j], k);
    if (std::any_of(w.begin(), w.end(), [](i64 x) { return x != 0; })) work.push_back(std::move(w));
  }
  for (int c = 0; c < cols; ++c) {
    // combine every working row with a nonzero entry at c into one
    size_t base = work.size();
    for (size_t wi = 0; wi < work.size(); ++wi)
      if (work[wi][c] != 0) { base = wi; break; }
    if (base == work.size()) continue;
    for (size_t wi = base + 1; wi < work.size(); ++wi) {
      if (work[wi][c] == 0) continue;
      i64 x, y;
      i64 g = ext_gcd(work[base][c], work[wi][c], x, y);
      i64 a = work[base][c] / g, b = work[wi][c] / g;
      for (int j = 0; j < cols; ++j) {
        i64 nb = mod_norm(x * work[base][j] + y * work[wi][j], k);
        i64 nw = mod_norm(-b * work[base][j] + a * work[wi][j], k);
        work[base][j] = nb;
        work[wi][j] = nw;
      }
    }
    Vec row = std::move(work[base]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(base));
    i64 u = normalizing_unit(row[c], k);
    for (int j = 0; j < cols; ++j) row[j] = mod_norm(u * row[j], k);
    i64 d = row[c];
    // annihilator of the leading entry spans the rest of the row's span
    i64 ann = k / d;
    if (ann > 1) {
      Vec extra(cols, 0);
      for (int j = c + 1; j < cols; ++j) extra[j] = mod_norm(ann * row[j], k);
      if (std::any_of(extra.begin(), extra.end(), [](i64 x) { return x != 0; }))
        work.push_back(std::move(extra));
    }
    H.rows.push_back(std::move(row));
    H.lead_col.push_back(c);
    std::erase_if(work, [](const Vec& w) {
      return std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; });
    });
  }
  // reduce entries above each pivot so the form is unique for the span
  for (size_t r = 0; r < H.rows.size(); ++r) {
    int c = H.lead_col[r];
    i64 d = H.rows[r][c];
    for (size_t s = 0; s < r; ++s) {
      i64 q = H.rows[s][c] / d;
      if (q != 0)
        for (int j = c; j < H.cols; ++j)
          H.rows[s][j] = mod_norm(H.rows[s][j] - q * H.rows[r][j], k);
    }
  }
  return H;
}

}  // namespace qtoric
