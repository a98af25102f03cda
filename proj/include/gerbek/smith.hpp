#pragma once

// Smith normal form over the integers with unimodular transform tracking,
// plus the lifted-matrix solvers for Z/n linear algebra built on it.

#include "gerbek/cyclotomic.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gerbek {

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix int_identity(int n) {
  IntMatrix m(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  int r = (int)a.size();
  int k = r ? (int)a[0].size() : 0;
  int c = b.empty() ? 0 : (int)b[0].size();
  IntMatrix out(r, std::vector<Int>(c, Int(0)));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

struct SmithForm {
  IntMatrix S;            // U * A * V = S, diagonal with divisibility chain
  IntMatrix U, U_inv;     // rows x rows (empty if not requested)
  IntMatrix V, V_inv;     // cols x cols (empty if not requested)
  std::vector<Int> diag;  // nonzero invariant factors
  int rank = 0;
};

// Elimination to Smith normal form. U/V tracking is optional because U can be
// large (rows x rows) and several callers only need the column transform.
inline SmithForm smith_normal_form(IntMatrix a, bool want_u = true, bool want_v = true) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  SmithForm out;
  if (want_u) {
    out.U = int_identity(rows);
    out.U_inv = int_identity(rows);
  }
  if (want_v) {
    out.V = int_identity(cols);
    out.V_inv = int_identity(cols);
  }

  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (want_u) {
      std::swap(out.U[i], out.U[j]);
      for (int r = 0; r < rows; ++r) std::swap(out.U_inv[r][i], out.U_inv[r][j]);
    }
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    if (want_v) {
      for (int r = 0; r < cols; ++r) std::swap(out.V[r][i], out.V[r][j]);
      std::swap(out.V_inv[i], out.V_inv[j]);
    }
  };
  auto row_axpy = [&](int dst, int src, const Int& q) {  // row dst -= q * row src
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) a[dst][c] -= q * a[src][c];
    if (want_u) {
      for (int c = 0; c < rows; ++c) out.U[dst][c] -= q * out.U[src][c];
      for (int r = 0; r < rows; ++r) out.U_inv[r][src] += q * out.U_inv[r][dst];
    }
  };
  auto col_axpy = [&](int dst, int src, const Int& q) {  // col dst -= q * col src
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) a[r][dst] -= q * a[r][src];
    if (want_v) {
      for (int r = 0; r < cols; ++r) out.V[r][dst] -= q * out.V[r][src];
      for (int c = 0; c < cols; ++c) out.V_inv[src][c] += q * out.V_inv[dst][c];
    }
  };
  auto row_negate = [&](int i) {
    for (int c = 0; c < cols; ++c) a[i][c] = -a[i][c];
    if (want_u) {
      for (int c = 0; c < rows; ++c) out.U[i][c] = -out.U[i][c];
      for (int r = 0; r < rows; ++r) out.U_inv[r][i] = -out.U_inv[r][i];
    }
  };

  int t = 0;
  int limit = std::min(rows, cols);
  while (t < limit) {
    // locate a pivot of minimal absolute value in the trailing block
    int pr = -1, pc = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        Int v = abs(a[i][j]);
        if (pr < 0 || v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // trailing block is zero
    row_swap(t, pr);
    col_swap(t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        row_axpy(i, t, q);
        if (a[i][t] != 0) {  // remainder became the smaller pivot
          row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        col_axpy(j, t, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
    }
    if (a[t][t] < 0) row_negate(t);
    ++t;
  }
  out.rank = t;

  // enforce the divisibility chain d_i | d_{i+1}
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < out.rank; ++i) {
      if (a[i + 1][i + 1] % a[i][i] == 0) continue;
      changed = true;
      // fold entry (i+1,i+1) into column i, then redo the 2x2 corner by
      // the same euclidean sweeps
      col_axpy(i, i + 1, Int(-1));  // col i += col i+1
      bool clean = false;
      while (!clean) {
        clean = true;
        if (a[i + 1][i] != 0) {
          Int q = a[i + 1][i] / a[i][i];
          row_axpy(i + 1, i, q);
          if (a[i + 1][i] != 0) {
            row_swap(i, i + 1);
            clean = false;
            continue;
          }
        }
        if (a[i][i + 1] != 0) {
          Int q = a[i][i + 1] / a[i][i];
          col_axpy(i + 1, i, q);
          if (a[i][i + 1] != 0) {
            col_swap(i, i + 1);
            clean = false;
          }
        }
      }
      if (a[i][i] < 0) row_negate(i);
      if (a[i + 1][i + 1] < 0) row_negate(i + 1);
    }
  }

  out.S = std::move(a);
  out.diag.clear();
  for (int i = 0; i < out.rank; ++i) out.diag.push_back(out.S[i][i]);
  return out;
}

// Solve A x = b over the integers. Returns std::nullopt when no integral
// solution exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  if ((int)b.size() != rows) throw std::invalid_argument("solve_integer: size mismatch");
  SmithForm f = smith_normal_form(a, true, true);
  // S = U A V, so A x = b  <=>  S (V^{-1} x) = U b
  std::vector<Int> ub(rows, Int(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) ub[i] += f.U[i][j] * b[j];
  std::vector<Int> w(cols, Int(0));
  for (int i = 0; i < rows; ++i) {
    if (i < f.rank) {
      if (ub[i] % f.diag[i] != 0) return std::nullopt;
      if (i < cols) w[i] = ub[i] / f.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(cols, Int(0));
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += f.V[i][j] * w[j];
  return x;
}

// Solve A x = b in Z/n via the lifted system [A | n*I] z = b over Z.
// Returns x with entries reduced to [0, n).
inline std::optional<std::vector<int>> solve_mod(const IntMatrix& a,
                                                 const std::vector<int>& b, int n) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  IntMatrix lifted(rows, std::vector<Int>(cols + rows, Int(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) lifted[i][j] = a[i][j];
    lifted[i][cols + i] = n;
  }
  std::vector<Int> rhs(b.begin(), b.end());
  auto z = solve_integer(lifted, rhs);
  if (!z) return std::nullopt;
  std::vector<int> x(cols);
  for (int j = 0; j < cols; ++j) {
    Int r = (*z)[j] % n;
    if (r < 0) r += n;
    x[j] = static_cast<int>(r);
  }
  return x;
}

// Column basis of the lattice {x in Z^cols : A x == 0 mod n}.
// The basis matrix B is cols x cols and every solution is an integer
// combination of its columns; n*Z^cols is contained in the lattice.
inline IntMatrix kernel_lattice_mod(const IntMatrix& a, int n) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  SmithForm f = smith_normal_form(a, false, true);
  IntMatrix basis(cols, std::vector<Int>(cols, Int(0)));
  for (int j = 0; j < cols; ++j) {
    Int scale = 1;
    if (j < f.rank) {
      Int g = gcd(f.diag[j], Int(n));
      scale = Int(n) / g;
    }
    for (int i = 0; i < cols; ++i) basis[i][j] = f.V[i][j] * scale;
  }
  return basis;
}

}  // namespace gerbek
