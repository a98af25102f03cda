#pragma once

// Exact irreducible character tables of small finite groups, computed by
// diagonalizing the centre of the group algebra: the class-sum matrices are
// simultaneously diagonalized over F_p for a split prime p = 1 (mod exponent),
// degrees are recovered from the orthogonality relation, and the character
// values are lifted to Z[zeta_m] by a discrete Fourier transform over the
// power map, using that eigenvalue multiplicities are bounded by the degree.

#include "gerbek/cyclotomic.hpp"
#include "gerbek/groupoid.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gerbek {

namespace fp {

inline long long pow_mod(long long b, long long e, long long p) {
  long long r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
inline long long inv_mod(long long a, long long p) { return pow_mod(a, p - 2, p); }

using Mat = std::vector<std::vector<long long>>;

// Columns spanning {x : A x = 0} over F_p.
inline Mat nullspace(Mat a, long long p) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] % p != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[r], a[pr]);
    long long inv = inv_mod(((a[r][c] % p) + p) % p, p);
    for (int j = 0; j < cols; ++j) a[r][j] = ((a[r][j] * inv) % p + p) % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long long f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  Mat basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<long long> v(cols, 0);
    v[f] = 1;
    for (int i = 0; i < (int)pivot_col.size(); ++i)
      v[pivot_col[i]] = ((-a[i][f]) % p + p) % p;
    basis.push_back(std::move(v));
  }
  // transpose into column vectors
  Mat out(cols, std::vector<long long>(basis.size(), 0));
  for (int j = 0; j < (int)basis.size(); ++j)
    for (int i = 0; i < cols; ++i) out[i][j] = basis[j][i];
  return out;
}

// Solve S R = B for R, where S has full column rank.
inline Mat solve_matrix(const Mat& s, const Mat& b, long long p) {
  int rows = (int)s.size();
  int cols = (int)s[0].size();
  int rhs = (int)b[0].size();
  Mat aug(rows, std::vector<long long>(cols + rhs, 0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = s[i][j];
    for (int j = 0; j < rhs; ++j) aug[i][cols + j] = b[i][j];
  }
  int r = 0;
  std::vector<int> pivot_of_col(cols, -1);
  for (int c = 0; c < cols; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (aug[i][c] % p != 0) {
        pr = i;
        break;
      }
    if (pr < 0) throw std::logic_error("solve_matrix: rank deficient");
    std::swap(aug[r], aug[pr]);
    long long inv = inv_mod(((aug[r][c] % p) + p) % p, p);
    for (int j = 0; j < cols + rhs; ++j) aug[r][j] = ((aug[r][j] * inv) % p + p) % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      long long f = aug[i][c];
      for (int j = 0; j < cols + rhs; ++j)
        aug[i][j] = ((aug[i][j] - f * aug[r][j]) % p + p) % p;
    }
    pivot_of_col[c] = r++;
  }
  Mat out(cols, std::vector<long long>(rhs, 0));
  for (int c = 0; c < cols; ++c)
    for (int j = 0; j < rhs; ++j) out[c][j] = aug[pivot_of_col[c]][cols + j];
  // consistency: rows below the pivots must be zero on the rhs block
  for (int i = r; i < rows; ++i)
    for (int j = 0; j < rhs; ++j)
      if (aug[i][cols + j] % p != 0) throw std::logic_error("solve_matrix: inconsistent");
  return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b, long long p) {
  int r = (int)a.size(), k = (int)a[0].size(), c = (int)b[0].size();
  Mat out(r, std::vector<long long>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < c; ++j) out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
    }
  return out;
}

}  // namespace fp

struct CharacterTable {
  int exponent = 1;                       // m; values live in Q(zeta_m)
  std::vector<std::vector<int>> classes;  // conjugacy classes, each sorted
  std::vector<int> class_of;              // element -> class index
  std::vector<int> representatives;       // first element of each class
  std::vector<int> degrees;               // d_pi
  std::vector<std::vector<Cyc>> values;   // values[pi][class]
};

inline int element_order(const FiniteGroup& G, int g) {
  int x = g, o = 1;
  while (x != G.identity) {
    x = G.mul[x][g];
    ++o;
  }
  return o;
}

inline std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G,
                                                       std::vector<int>& class_of) {
  class_of.assign(G.order, -1);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < G.order; ++g) {
    if (class_of[g] >= 0) continue;
    std::vector<int> cls;
    for (int x = 0; x < G.order; ++x) {
      int c = G.mul[G.mul[G.inverse[x]][g]][x];
      if (class_of[c] < 0) {
        class_of[c] = (int)classes.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline CharacterTable character_table(const FiniteGroup& G) {
  auto bad = validate_group(G);
  if (!bad.empty()) throw std::invalid_argument("character_table: " + bad.front());
  CharacterTable T;
  T.classes = conjugacy_classes(G, T.class_of);
  int k = (int)T.classes.size();
  for (auto& c : T.classes) T.representatives.push_back(c.front());

  int m = 1;
  for (int g = 0; g < G.order; ++g) m = std::lcm(m, element_order(G, g));
  T.exponent = m;

  // split prime p = 1 (mod m), p > 2|G| so small integers lift uniquely
  long long p = std::max(2 * G.order, m) + 1;
  auto is_prime = [](long long q) {
    if (q < 2) return false;
    for (long long d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  };
  while (!(is_prime(p) && (p - 1) % m == 0)) ++p;

  // theta: an element of exact multiplicative order m in F_p
  long long theta = 1;
  for (long long cand = 2; cand < p; ++cand) {
    long long t = fp::pow_mod(cand, (p - 1) / m, p);
    bool exact = (fp::pow_mod(t, m, p) == 1);
    for (int q = 2; q <= m && exact; ++q)
      if (m % q == 0 && is_prime(q) && fp::pow_mod(t, m / q, p) == 1) exact = false;
    if (exact && (m == 1 || t != 1)) {
      theta = t;
      break;
    }
  }

  // class-sum matrices: (M_i)_{c j} = #{ (x,y) in C_i x C_j : x y = rep_c }
  std::vector<fp::Mat> M(k, fp::Mat(k, std::vector<long long>(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int x : T.classes[i])
        for (int y : T.classes[j]) {
          int xy = G.mul[x][y];
          if (xy == T.representatives[T.class_of[xy]]) M[i][T.class_of[xy]][j] += 1;
        }

  // simultaneous eigenspace splitting over F_p
  std::vector<fp::Mat> spaces;
  {
    fp::Mat full(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(full);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<fp::Mat> next;
    for (auto& S : spaces) {
      int d = (int)S[0].size();
      if (d == 1) {
        next.push_back(S);
        continue;
      }
      fp::Mat R = fp::solve_matrix(S, fp::mat_mul(M[i], S, p), p);
      for (long long lam = 0; lam < p; ++lam) {
        fp::Mat shifted = R;
        for (int t = 0; t < d; ++t) shifted[t][t] = ((shifted[t][t] - lam) % p + p) % p;
        fp::Mat ns = fp::nullspace(shifted, p);
        if (!ns.empty() && !ns[0].empty()) next.push_back(fp::mat_mul(S, ns, p));
      }
    }
    spaces = std::move(next);
  }
  if ((int)spaces.size() != k)
    throw std::logic_error("character_table: centre did not split into " + std::to_string(k) +
                           " lines");

  const CycField& F = cyclotomic_field(m);
  std::vector<int> inv_class(k);
  for (int i = 0; i < k; ++i) inv_class[i] = T.class_of[G.inverse[T.representatives[i]]];

  for (auto& S : spaces) {
    if ((int)S[0].size() != 1)
      throw std::logic_error("character_table: eigenspace of dimension > 1 survived");
    // eigenvalues omega_i = |C_i| chi(c_i) / d on this common eigenvector
    std::vector<long long> v(k);
    for (int i = 0; i < k; ++i) v[i] = S[i][0];
    std::vector<long long> omega(k);
    for (int i = 0; i < k; ++i) {
      fp::Mat mv = fp::mat_mul(M[i], S, p);
      int nz = -1;
      for (int t = 0; t < k; ++t)
        if (v[t] != 0) {
          nz = t;
          break;
        }
      omega[i] = mv[nz][0] * fp::inv_mod(v[nz], p) % p;
      // eigenvector sanity
      for (int t = 0; t < k; ++t)
        if (mv[t][0] % p != omega[i] * v[t] % p)
          throw std::logic_error("character_table: not a common eigenvector");
    }
    // degree from the first orthogonality relation
    long long s = 0;
    for (int i = 0; i < k; ++i)
      s = (s + omega[i] * omega[inv_class[i]] % p *
                   fp::inv_mod((long long)T.classes[i].size(), p)) %
          p;
    long long d2 = (long long)G.order % p * fp::inv_mod(s, p) % p;
    int degree = -1;
    for (int d = 1; (long long)d * d <= G.order; ++d)
      if ((long long)d * d % p == d2) {
        degree = d;
        break;
      }
    if (degree < 0) throw std::logic_error("character_table: degree not recovered");

    // chi mod p on each class, then DFT over the power map to lift
    std::vector<long long> chi_p(k);
    for (int i = 0; i < k; ++i)
      chi_p[i] = (long long)degree * omega[i] % p *
                 fp::inv_mod((long long)T.classes[i].size(), p) % p;
    std::vector<Cyc> row;
    for (int i = 0; i < k; ++i) {
      int g = T.representatives[i];
      std::vector<long long> chi_pow(m);
      int x = G.identity;
      for (int t = 0; t < m; ++t) {
        chi_pow[t] = chi_p[T.class_of[x]];
        x = G.mul[x][g];
      }
      Cyc val = Cyc::zero(F);
      long long m_inv = fp::inv_mod(m % p, p);
      for (int j = 0; j < m; ++j) {
        long long aj = 0;
        for (int t = 0; t < m; ++t)
          aj = (aj + chi_pow[t] * fp::pow_mod(fp::inv_mod(theta, p), (long long)j * t % m, p)) % p;
        aj = aj * m_inv % p;
        if (aj > degree)
          throw std::logic_error("character_table: eigenvalue multiplicity out of range");
        if (aj != 0) val += Rational(aj) * Cyc::zeta_pow(F, j);
      }
      row.push_back(val);
    }
    T.degrees.push_back(degree);
    T.values.push_back(std::move(row));
  }

  int sum_sq = 0;
  for (int d : T.degrees) sum_sq += d * d;
  if (sum_sq != G.order)
    throw std::logic_error("character_table: sum of squared degrees is not |G|");
  return T;
}

}  // namespace gerbek
