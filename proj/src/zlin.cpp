#include "fibrum/zlin.hpp"

#include <algorithm>
#include <cstdlib>

namespace fibrum::zlin {

namespace {

constexpr long long kGuard = (1LL << 56);

long long checked(__int128 v) {
  if (v > kGuard || v < -kGuard) throw InternalError("overflow in exact linear algebra");
  return static_cast<long long>(v);
}

long long addmul(long long a, long long q, long long b) {  // a + q*b
  return checked(static_cast<__int128>(a) + static_cast<__int128>(q) * b);
}

void row_addmul(Mat& m, int dst, int src, long long q) {
  auto& d = m[dst];
  const auto& s = m[src];
  for (size_t j = 0; j < d.size(); ++j) d[j] = addmul(d[j], q, s[j]);
}

void col_addmul(Mat& m, int dst, int src, long long q) {
  for (auto& row : m) row[dst] = addmul(row[dst], q, row[src]);
}

void row_swap(Mat& m, int a, int b) { std::swap(m[a], m[b]); }

void col_swap(Mat& m, int a, int b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void row_negate(Mat& m, int r) {
  for (auto& x : m[r]) x = -x;
}

void col_negate(Mat& m, int c) {
  for (auto& row : m) row[c] = -row[c];
}

}  // namespace

Mat identity(int n) {
  Mat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int p = k ? static_cast<int>(b[0].size()) : 0;
  Mat c(n, std::vector<long long>(p, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (int l = 0; l < p; ++l) c[i][l] = addmul(c[i][l], a[i][j], b[j][l]);
    }
  return c;
}

std::vector<long long> mat_vec(const Mat& a, const std::vector<long long>& v) {
  std::vector<long long> r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0 && v[j] != 0) r[i] = addmul(r[i], a[i][j], v[j]);
  return r;
}

std::vector<long long> SmithResult::diag() const {
  std::vector<long long> out;
  size_t n = d.size() ? std::min(d.size(), d[0].size()) : 0;
  for (size_t i = 0; i < n; ++i) out.push_back(d[i][i]);
  return out;
}

SmithResult smith_normal_form(Mat a, bool want_left, bool want_right) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithResult res;
  if (want_left) res.left = identity(rows);
  if (want_right) res.right = identity(cols);

  int t = 0;
  while (t < rows && t < cols) {
    // Find a nonzero pivot with minimal absolute value.
    int pi = -1, pj = -1;
    long long best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < best)) {
          pi = i; pj = j; best = std::llabs(a[i][j]);
        }
    if (pi < 0) break;
    if (pi != t) { row_swap(a, pi, t); if (want_left) row_swap(res.left, pi, t); }
    if (pj != t) { col_swap(a, pj, t); if (want_right) col_swap(res.right, pj, t); }

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        long long q = a[i][t] / a[t][t];
        row_addmul(a, i, t, -q);
        if (want_left) row_addmul(res.left, i, t, -q);
        if (a[i][t] != 0) {  // remainder smaller than pivot: swap up
          row_swap(a, i, t);
          if (want_left) row_swap(res.left, i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        long long q = a[t][j] / a[t][t];
        col_addmul(a, j, t, -q);
        if (want_right) col_addmul(res.right, j, t, -q);
        if (a[t][j] != 0) {
          col_swap(a, j, t);
          if (want_right) col_swap(res.right, j, t);
          clean = false;
        }
      }
    }
    ++t;
  }
  res.rank = t;

  // Enforce the divisibility chain d_i | d_{i+1}.
  for (int i = 0; i < res.rank; ++i) {
    for (int j = i + 1; j < res.rank; ++j) {
      if (a[j][j] % a[i][i] == 0) continue;
      // Standard trick: fold a[j][j] into position (i,i) via one column add.
      col_addmul(a, i, j, 1);
      if (want_right) col_addmul(res.right, i, j, 1);
      // Re-clear the 2x2 block with row/col operations.
      while (a[j][i] != 0 || a[i][j] != 0 || a[j][j] % a[i][i] != 0) {
        if (std::llabs(a[j][i]) < std::llabs(a[i][i]) && a[j][i] != 0) {
          row_swap(a, i, j); if (want_left) row_swap(res.left, i, j);
        }
        if (a[j][i] != 0) {
          long long q = a[j][i] / a[i][i];
          row_addmul(a, j, i, -q);
          if (want_left) row_addmul(res.left, j, i, -q);
          if (a[j][i] != 0) { row_swap(a, i, j); if (want_left) row_swap(res.left, i, j); continue; }
        }
        if (a[i][j] != 0) {
          long long q = a[i][j] / a[i][i];
          col_addmul(a, j, i, -q);
          if (want_right) col_addmul(res.right, j, i, -q);
          if (a[i][j] != 0) { col_swap(a, i, j); if (want_right) col_swap(res.right, i, j); continue; }
        }
        if (a[j][j] % a[i][i] != 0) {
          col_addmul(a, i, j, 1);
          if (want_right) col_addmul(res.right, i, j, 1);
        }
      }
    }
  }
  for (int i = 0; i < res.rank; ++i) {
    if (a[i][i] < 0) {
      row_negate(a, i);
      if (want_left) row_negate(res.left, i);
    }
  }
  res.d = std::move(a);
  return res;
}

Mat lattice_column_basis(const Mat& columns) {
  int m = static_cast<int>(columns.size());
  Mat a = columns;  // m x t, column operations only
  int t = a.empty() ? 0 : static_cast<int>(a[0].size());
  int pivot_col = 0;
  for (int r = 0; r < m && pivot_col < t; ++r) {
    // Reduce entries of row r among columns >= pivot_col to a single gcd.
    while (true) {
      int jmin = -1;
      long long best = 0;
      for (int j = pivot_col; j < t; ++j)
        if (a[r][j] != 0 && (jmin < 0 || std::llabs(a[r][j]) < best)) {
          jmin = j; best = std::llabs(a[r][j]);
        }
      if (jmin < 0) break;
      col_swap(a, pivot_col, jmin);
      bool others = false;
      for (int j = pivot_col + 1; j < t; ++j) {
        if (a[r][j] == 0) continue;
        long long q = a[r][j] / a[r][pivot_col];
        col_addmul(a, j, pivot_col, -q);
        if (a[r][j] != 0) others = true;
      }
      if (!others) break;
    }
    if (a[r][pivot_col] != 0) {
      if (a[r][pivot_col] < 0) col_negate(a, pivot_col);
      ++pivot_col;
    }
  }
  // Keep the pivot columns only.
  Mat basis(m);
  for (int i = 0; i < m; ++i)
    basis[i] = std::vector<long long>(a[i].begin(), a[i].begin() + pivot_col);
  return basis;
}

std::optional<std::vector<long long>> solve_integer(const Mat& a,
                                                    const std::vector<long long>& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithResult s = smith_normal_form(a, true, true);
  std::vector<long long> c = mat_vec(s.left, b);
  std::vector<long long> z(cols, 0);
  for (int i = 0; i < rows; ++i) {
    long long di = (i < s.rank) ? s.d[i][i] : 0;
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      if (i < cols) z[i] = c[i] / di;
    }
  }
  std::vector<long long> x = mat_vec(s.right, z);
  return x;
}

QuotientPresentation quotient_presentation(const Mat& gens1, const Mat& gens2) {
  QuotientPresentation q;
  q.basis1 = lattice_column_basis(gens1);
  int k = q.basis1.empty() ? 0 : static_cast<int>(q.basis1[0].size());
  int t = gens2.empty() ? 0 : static_cast<int>(gens2[0].size());
  Mat rel(k, std::vector<long long>(t, 0));
  for (int j = 0; j < t; ++j) {
    std::vector<long long> col(gens2.size());
    for (size_t i = 0; i < gens2.size(); ++i) col[i] = gens2[i][j];
    auto y = solve_integer(q.basis1, col);
    check_internal(y.has_value(), "quotient_presentation: gens2 not inside L1");
    for (int i = 0; i < k; ++i) rel[i][j] = (*y)[i];
  }
  SmithResult s = smith_normal_form(rel, true, false);
  check_internal(s.rank == k, "quotient_presentation: quotient not finite");
  q.u_full_ = s.left;
  q.all_diag_ = s.diag();
  for (int i = 0; i < k; ++i) {
    if (q.all_diag_[i] > 1) {
      q.factors.push_back(q.all_diag_[i]);
      q.proj_.push_back(s.left[i]);
    }
  }
  return q;
}

std::vector<long long> QuotientPresentation::normal_form(
    const std::vector<long long>& v) const {
  auto y = solve_integer(basis1, v);
  check_internal(y.has_value(), "normal_form: vector not in L1");
  std::vector<long long> out(factors.size(), 0);
  for (size_t i = 0; i < factors.size(); ++i) {
    long long s = factors[i];
    long long acc = 0;
    for (size_t j = 0; j < y->size(); ++j)
      acc = (acc + (proj_[i][j] % s) * ((*y)[j] % s)) % s;
    out[i] = ((acc % s) + s) % s;
  }
  return out;
}

}  // namespace fibrum::zlin
