#pragma once

// Canonical fixtures used across the test suites and shipped as input files:
// PT, Z2, V4, S3, SWAP (Z2 swapping two points), TRIV2 (trivial Z2 action on
// two points), plus small group constructors for randomized suites.

#include "gerbek/groupoid.hpp"

#include <array>
#include <string>
#include <vector>

namespace gerbek {
namespace fixtures {

inline FiniteGroupoid group_over_point(const FiniteGroup& G, std::string point = "pt") {
  GroupAction A;
  A.group = G;
  A.n_points = 1;
  A.act = {std::vector<int>(G.order, 0)};
  A.point_names = {std::move(point)};
  return action_groupoid(A);
}

inline FiniteGroup trivial_group() { return make_group({{0}}, {"e"}); }

inline FiniteGroup cyclic_group(int k, std::string stem = "c") {
  std::vector<std::vector<int>> mul(k, std::vector<int>(k));
  std::vector<std::string> names(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) mul[i][j] = (i + j) % k;
    names[i] = i == 0 ? "e" : (i == 1 ? stem : stem + std::to_string(i));
  }
  return make_group(std::move(mul), std::move(names));
}

inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  int n = A.order * B.order;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  auto id = [&](int a, int b) { return a * B.order + b; };
  for (int a1 = 0; a1 < A.order; ++a1)
    for (int b1 = 0; b1 < B.order; ++b1) {
      names[id(a1, b1)] = A.name(a1) + "," + B.name(b1);
      for (int a2 = 0; a2 < A.order; ++a2)
        for (int b2 = 0; b2 < B.order; ++b2)
          mul[id(a1, b1)][id(a2, b2)] = id(A.mul[a1][a2], B.mul[b1][b2]);
    }
  return make_group(std::move(mul), std::move(names));
}

// Elementary abelian group F_p^d; element index encodes the coordinate
// vector in base p, least significant digit first.
inline FiniteGroup elementary_abelian(int p, int d) {
  int n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int x = a, y = b, pow = 1, sum = 0;
      for (int i = 0; i < d; ++i) {
        sum += ((x % p + y % p) % p) * pow;
        x /= p;
        y /= p;
        pow *= p;
      }
      mul[a][b] = sum;
    }
  return make_group(std::move(mul));
}

// V4 = Z2 x Z2 with elements e, a, b, ab and index a + 2b.
inline FiniteGroup v4_group() {
  FiniteGroup G = elementary_abelian(2, 2);
  G.names = {"e", "a", "b", "ab"};
  return G;
}

// Dihedral group of order 2m; elements r^i and s r^i, names r, r2, ..., s, sr, ...
inline FiniteGroup dihedral_group(int m) {
  int n = 2 * m;
  auto id = [&](int flip, int rot) { return flip * m + rot; };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int r1 = 0; r1 < m; ++r1) {
      std::string nm = f1 ? "s" : "";
      if (r1 == 1) nm += "r";
      if (r1 > 1) nm += "r" + std::to_string(r1);
      if (nm.empty()) nm = "e";
      names[id(f1, r1)] = nm;
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r2 = 0; r2 < m; ++r2) {
          // (s^f1 r^r1)(s^f2 r^r2) = s^{f1+f2} r^{(-1)^{f2} r1 + r2}
          int rot = f2 ? ((m - r1) % m + r2) % m : (r1 + r2) % m;
          mul[id(f1, r1)][id(f2, r2)] = id((f1 + f2) % 2, rot);
        }
    }
  return make_group(std::move(mul), std::move(names));
}

// Quaternion group {1, -1, i, -i, j, -j, k, -k}.
inline FiniteGroup quaternion_group() {
  // encode q = sign * unit, units 1,i,j,k as 0..3, index = unit + 4*(sign<0)
  auto idx = [](int sign, int unit) { return unit + (sign < 0 ? 4 : 0); };
  // multiplication of units with sign: i*j=k, j*k=i, k*i=j, x*x=-1
  auto unit_mul = [](int a, int b, int& sign) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      sign = -sign;
      return 0;
    }
    // cyclic order i(1) j(2) k(3)
    int c = 6 - a - b;
    if ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1)) return c;
    sign = -sign;
    return c;
  };
  std::vector<std::vector<int>> mul(8, std::vector<int>(8));
  for (int s1 : {1, -1})
    for (int u1 = 0; u1 < 4; ++u1)
      for (int s2 : {1, -1})
        for (int u2 = 0; u2 < 4; ++u2) {
          int sign = s1 * s2;
          int u = unit_mul(u1, u2, sign);
          mul[idx(s1, u1)][idx(s2, u2)] = idx(sign, u);
        }
  return make_group(std::move(mul),
                    {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

// S3 as the permutations of {1,2,3}; the table composes left to right
// (g*h applies g first), which matches conjugate((12),(123)) = (23).
inline FiniteGroup s3_group() {
  using Perm = std::array<int, 3>;
  std::vector<Perm> perms = {
      {0, 1, 2},  // e
      {1, 2, 0},  // (123)
      {2, 0, 1},  // (132)
      {1, 0, 2},  // (12)
      {2, 1, 0},  // (13)
      {0, 2, 1},  // (23)
  };
  std::vector<std::string> names = {"e", "(123)", "(132)", "(12)", "(13)", "(23)"};
  auto find = [&](const Perm& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> mul(6, std::vector<int>(6));
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      Perm gh;
      for (int x = 0; x < 3; ++x) gh[x] = perms[h][perms[g][x]];  // g first, then h
      mul[g][h] = find(gh);
    }
  return make_group(std::move(mul), std::move(names));
}

inline FiniteGroupoid pt() { return group_over_point(trivial_group()); }
inline FiniteGroupoid z2() { return group_over_point(cyclic_group(2, "a")); }
inline FiniteGroupoid v4() { return group_over_point(v4_group()); }
inline FiniteGroupoid s3() { return group_over_point(s3_group()); }

// Z2 swapping the two points 1 and 2.
inline GroupAction swap_action() {
  GroupAction A;
  A.group = cyclic_group(2, "s");
  A.n_points = 2;
  A.act = {{0, 1}, {1, 0}};
  A.point_names = {"1", "2"};
  return A;
}
inline FiniteGroupoid swap_groupoid() { return action_groupoid(swap_action()); }

// Trivial Z2 action on two points.
inline GroupAction triv2_action() {
  GroupAction A;
  A.group = cyclic_group(2, "a");
  A.n_points = 2;
  A.act = {{0, 0}, {1, 1}};
  A.point_names = {"1", "2"};
  return A;
}
inline FiniteGroupoid triv2() { return action_groupoid(triv2_action()); }

}  // namespace fixtures
}  // namespace gerbek
