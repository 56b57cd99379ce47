#include "cuspcal/lattice.hpp"

#include <cstdlib>

#include "cuspcal/error.hpp"

namespace cuspcal::lattice {

namespace {

IntMatrix identity(size_t n) {
  IntMatrix m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void swap_rows(IntMatrix& m, size_t a, size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMatrix& m, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row a += f * row b
void add_row(IntMatrix& m, size_t a, size_t b, Int f) {
  for (size_t j = 0; j < m[a].size(); ++j) m[a][j] += f * m[b][j];
}

void add_col(IntMatrix& m, size_t a, size_t b, Int f) {
  for (auto& row : m) row[a] += f * row[b];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SmithForm s{identity(rows), identity(cols), a, 0};
  IntMatrix& D = s.D;
  size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Pick the smallest nonzero entry in the remaining block as pivot.
    for (;;) {
      size_t pi = rows, pj = cols;
      Int best = 0;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (D[i][j] != 0 && (best == 0 || std::llabs(D[i][j]) < best)) {
            best = std::llabs(D[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) goto done;
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        Int q = D[i][t] / D[t][t];
        if (q != 0) {
          add_row(D, i, t, -q);
          add_row(s.U, i, t, -q);
        }
        if (D[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        Int q = D[t][j] / D[t][t];
        if (q != 0) {
          add_col(D, j, t, -q);
          add_col(s.V, j, t, -q);
        }
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the whole remaining block.
      bool divides = true;
      for (size_t i = t + 1; i < rows && divides; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(D, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D[t][t] < 0) {
      for (auto& x : D[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
  }
done:
  s.rank = static_cast<int>(t);
  return s;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  const size_t cols = s.V.size();
  IntMatrix out;
  for (size_t j = s.rank; j < cols; ++j) {
    std::vector<Int> v(cols);
    for (size_t i = 0; i < cols; ++i) v[i] = s.V[i][j];
    out.push_back(v);
  }
  return out;
}

IntMatrix kernel_mod_prime_power(const IntMatrix& a, Int p, int k) {
  // A x = 0 mod p^k  <=>  D z = 0 mod p^k with x = V z.
  SmithForm s = smith_normal_form(a);
  const size_t cols = s.V.size();
  const Int pk = ipow(p, k);
  IntMatrix out;
  for (size_t j = 0; j < cols; ++j) {
    Int scale = 1;
    if (static_cast<int>(j) < s.rank) {
      Int d = s.diag(static_cast<int>(j));
      int v = 0;
      while (v < k && d % p == 0) {
        d /= p;
        ++v;
      }
      scale = ipow(p, k - v);
      if (scale == pk) continue;
    }
    std::vector<Int> x(cols);
    for (size_t i = 0; i < cols; ++i) x[i] = mod(s.V[i][j] * scale, pk);
    out.push_back(x);
  }
  return out;
}

bool in_span(const IntMatrix& basis, const std::vector<Int>& v) {
  if (basis.empty()) {
    for (Int x : v)
      if (x != 0) return false;
    return true;
  }
  // Columns of B^T are the basis vectors; solve B^T c = v via Smith form.
  const size_t n = v.size(), r = basis.size();
  IntMatrix bt(n, std::vector<Int>(r));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < r; ++j) bt[i][j] = basis[j][i];
  SmithForm s = smith_normal_form(bt);
  std::vector<Int> w(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) w[i] += s.U[i][j] * v[j];
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) < s.rank) {
      if (w[i] % s.diag(static_cast<int>(i)) != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (const auto& v : a)
    if (!in_span(b, v)) return false;
  for (const auto& v : b)
    if (!in_span(a, v)) return false;
  return true;
}

IntMatrix orbit_coroot_rows(int n, int delta) {
  IntMatrix rows;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> r(n, 0);
    r[i] += 1;
    r[mod(i + delta, n)] -= 1;
    rows.push_back(r);
  }
  return rows;
}

IntMatrix coset_sum_rows(int n, int d) {
  IntMatrix rows;
  for (int r = 0; r < d; ++r) {
    std::vector<Int> v(n, 0);
    for (int i = r; i < n; i += d) v[i] = 1;
    rows.push_back(v);
  }
  return rows;
}

}  // namespace cuspcal::lattice
