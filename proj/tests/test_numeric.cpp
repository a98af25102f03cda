#include "gerbek/cyclo_linalg.hpp"
#include "gerbek/cyclotomic.hpp"
#include "gerbek/smith.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace gerbek;

TEST_CASE("cyclotomic polynomials", "[numeric]") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("field arithmetic in Q(zeta_n)", "[numeric]") {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
    const CycField& F = cyclotomic_field(n);
    Cyc z = Cyc::zeta_pow(F, 1);
    // zeta^n = 1 and the primitive power structure
    Cyc p = Cyc::one(F);
    for (int k = 0; k < n; ++k) {
      CHECK(p == Cyc::zeta_pow(F, k));
      p = p * z;
    }
    CHECK(p == Cyc::one(F));
    // conjugation sends zeta to zeta^{-1}
    CHECK(z.conj() == Cyc::zeta_pow(F, -1));
    CHECK((z + z.conj()).conj() == z + z.conj());
  }
}

TEST_CASE("inverses on random elements", "[numeric]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int n : {1, 2, 3, 4, 6, 8}) {
    const CycField& F = cyclotomic_field(n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Rational> coords(F.degree());
      for (auto& c : coords) c = coef(rng);
      Cyc a(F, coords);
      if (a.is_zero()) continue;
      CHECK(a * a.inverse() == Cyc::one(F));
    }
  }
}

TEST_CASE("conjugation is a ring automorphism", "[numeric]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4);
  const CycField& F = cyclotomic_field(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> ca(F.degree()), cb(F.degree());
    for (auto& c : ca) c = coef(rng);
    for (auto& c : cb) c = coef(rng);
    Cyc a(F, ca), b(F, cb);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
    CHECK(a.conj().conj() == a);
  }
}

TEST_CASE("to_complex agrees with exact values", "[numeric]") {
  const CycField& F = cyclotomic_field(8);
  auto z = Cyc::zeta_pow(F, 1).to_complex();
  CHECK(std::abs(z - std::complex<double>(std::sqrt(0.5), std::sqrt(0.5))) < 1e-12);
}

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int mag) {
  std::uniform_int_distribution<int> d(-mag, mag);
  IntMatrix m(rows, std::vector<Int>(cols));
  for (auto& row : m)
    for (auto& v : row) v = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form invariants", "[numeric]") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + (int)(rng() % 6), cols = 1 + (int)(rng() % 6);
    IntMatrix A = random_matrix(rng, rows, cols, 5);
    SmithForm f = smith_normal_form(A, true, true);

    // U A V == S
    IntMatrix uav = int_mul(int_mul(f.U, A), f.V);
    REQUIRE(uav == f.S);
    // transforms are mutually inverse
    CHECK(int_mul(f.U, f.U_inv) == int_identity(rows));
    CHECK(int_mul(f.V, f.V_inv) == int_identity(cols));
    // diagonal, nonnegative, divisibility chain
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (i != j) CHECK(f.S[i][j] == 0);
    for (int i = 0; i + 1 < f.rank; ++i) {
      CHECK(f.diag[i] > 0);
      CHECK(f.diag[i + 1] % f.diag[i] == 0);
    }
  }
}

TEST_CASE("integer and modular solving", "[numeric]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 2 + (int)(rng() % 4), cols = 2 + (int)(rng() % 4);
    IntMatrix A = random_matrix(rng, rows, cols, 4);
    // make a guaranteed-solvable rhs
    std::vector<Int> x0(cols);
    for (auto& v : x0) v = (int)(rng() % 7) - 3;
    std::vector<Int> b(rows, Int(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b[i] += A[i][j] * x0[j];
    auto x = solve_integer(A, b);
    REQUIRE(x.has_value());
    for (int i = 0; i < rows; ++i) {
      Int acc = 0;
      for (int j = 0; j < cols; ++j) acc += A[i][j] * (*x)[j];
      CHECK(acc == b[i]);
    }
  }
  // modular: 2x = 2 mod 4 has a solution, 2x = 1 mod 4 does not
  IntMatrix two{{Int(2)}};
  CHECK(solve_mod(two, {2}, 4).has_value());
  CHECK_FALSE(solve_mod(two, {1}, 4).has_value());
}

TEST_CASE("kernel lattice mod n", "[numeric]") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 2 + (int)(rng() % 3), cols = 2 + (int)(rng() % 3);
    IntMatrix A = random_matrix(rng, rows, cols, 3);
    for (int n : {2, 3, 4}) {
      IntMatrix B = kernel_lattice_mod(A, n);
      // every column satisfies A x == 0 mod n
      for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
          Int acc = 0;
          for (int k = 0; k < cols; ++k) acc += A[i][k] * B[k][j];
          CHECK(acc % n == 0);
        }
      // brute force count of solutions mod n equals lattice index
      Int det_count = 1;
      // |Z^cols / B| = product of SNF diagonal of B; solutions mod n = n^cols / index
      SmithForm fb = smith_normal_form(B, false, false);
      REQUIRE(fb.rank == cols);
      for (auto& d : fb.diag) det_count *= d;
      long long brute = 0;
      std::vector<int> v(cols, 0);
      long long total = 1;
      for (int i = 0; i < cols; ++i) total *= n;
      for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < cols; ++i) {
          v[i] = (int)(c % n);
          c /= n;
        }
        bool ok = true;
        for (int i = 0; i < rows && ok; ++i) {
          Int acc = 0;
          for (int k = 0; k < cols; ++k) acc += A[i][k] * v[k];
          if (acc % n != 0) ok = false;
        }
        if (ok) ++brute;
      }
      Int expect = 1;
      for (int i = 0; i < cols; ++i) expect *= n;
      CHECK(expect % det_count == 0);
      CHECK(Int(brute) == expect / det_count);
    }
  }
}

TEST_CASE("sparse row space and nullspace", "[numeric]") {
  const CycField& F = cyclotomic_field(4);
  RowSpace rs(3);
  // x0 - i x1 = 0 ; x1 - x2 = 0
  SparseRow r1{{0, Cyc::one(F)}, {1, -Cyc::zeta_pow(F, 1)}};
  SparseRow r2{{1, Cyc::one(F)}, {2, -Cyc::one(F)}};
  CHECK(rs.insert(r1));
  CHECK(rs.insert(r2));
  // dependent row
  SparseRow r3 = sparse_axpy(r1, -Cyc::zeta_pow(F, 1), r2);  // r1 + i r2
  CHECK_FALSE(rs.insert(r3));
  CHECK(rs.rank() == 2);
  auto ns = rs.nullspace_basis(F);
  REQUIRE(ns.size() == 1);
  // check the null vector satisfies both equations
  CHECK(ns[0][0] == Cyc::zeta_pow(F, 1) * ns[0][1]);
  CHECK(ns[0][1] == ns[0][2]);
}
