#pragma once

// The Z/n groupoid cochain complex on the nerve: differential, cocycle and
// coboundary predicates, normalization, and cohomology computed exactly by
// Smith normal form on the lifted matrix [d | n*I].

#include "gerbek/groupoid.hpp"
#include "gerbek/smith.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gerbek {

// Composable pairs of a groupoid in lexicographic (g, h) order; this is also
// the tuple order of nerve(G, 2).
struct PairTable {
  std::vector<std::pair<int, int>> pairs;
  std::unordered_map<std::int64_t, int> index_of;

  static PairTable build(const FiniteGroupoid& G) {
    PairTable T;
    for (int g = 0; g < G.n_arrows(); ++g)
      for (int h = 0; h < G.n_arrows(); ++h)
        if (G.composable(g, h)) {
          T.index_of[FiniteGroupoid::key(g, h)] = (int)T.pairs.size();
          T.pairs.emplace_back(g, h);
        }
    return T;
  }
  int index(int g, int h) const { return index_of.at(FiniteGroupoid::key(g, h)); }
  int size() const { return (int)pairs.size(); }
};

// Additive phase table c : composable pairs -> Z/n, indexed by PairTable order.
struct PhaseCocycle {
  int n = 1;
  std::vector<int> by_pair;

  int at(const PairTable& T, int g, int h) const { return by_pair[T.index(g, h)]; }
};

inline PhaseCocycle zero_cocycle(const PairTable& T, int n) {
  return PhaseCocycle{n, std::vector<int>(T.size(), 0)};
}

struct Cochain {
  int degree = 0;
  int n = 1;
  std::vector<int> values;  // indexed by nerve(G, degree) order, entries in [0, n)
};

// Nerve tuples and index lookup for degrees 0..3, built lazily.
class NerveTable {
 public:
  explicit NerveTable(const FiniteGroupoid& G) : G_(&G), tuples_(4), built_(4, false) {}

  const std::vector<std::vector<int>>& tuples(int p) const {
    ensure(p);
    return tuples_[p];
  }
  int size(int p) const { return (int)tuples(p).size(); }
  int index(int p, const std::vector<int>& t) const {
    ensure(p);
    return index_[p].at(encode(t));
  }
  const FiniteGroupoid& groupoid() const { return *G_; }

 private:
  std::int64_t encode(const std::vector<int>& t) const {
    std::int64_t k = 0;
    for (int v : t) k = k * (G_->n_arrows() + G_->n_objects + 1) + (v + 1);
    return k;
  }
  void ensure(int p) const {
    if (p < 0 || p > 3) throw std::invalid_argument("NerveTable: degree out of range 0..3");
    if (built_[p]) return;
    auto* self = const_cast<NerveTable*>(this);
    self->tuples_[p] = nerve(*G_, p);
    self->index_.resize(4);
    for (int i = 0; i < (int)tuples_[p].size(); ++i)
      self->index_[p][encode(tuples_[p][i])] = i;
    self->built_[p] = true;
  }

  const FiniteGroupoid* G_;
  mutable std::vector<std::vector<std::vector<int>>> tuples_;
  mutable std::vector<std::unordered_map<std::int64_t, int>> index_;
  mutable std::vector<bool> built_;
};

// Simplicial face d_i of a composable tuple; for p = 1 the faces are the
// endpoint objects (d_0 = target, d_1 = source).
inline std::vector<int> face(const FiniteGroupoid& G, const std::vector<int>& t, int i) {
  int p = (int)t.size();
  if (p == 1) return {i == 0 ? G.tgt[t[0]] : G.src[t[0]]};
  std::vector<int> out;
  out.reserve(p - 1);
  if (i == 0) {
    out.assign(t.begin() + 1, t.end());
  } else if (i == p) {
    out.assign(t.begin(), t.end() - 1);
  } else {
    out.assign(t.begin(), t.end());
    out[i - 1] = G.compose(t[i - 1], t[i]);
    out.erase(out.begin() + i);
  }
  return out;
}

// (d f)(g_1,...,g_{p+1}) = sum_i (-1)^i f(d_i(g_1,...,g_{p+1}))
inline Cochain differential(const NerveTable& N, const Cochain& f) {
  const FiniteGroupoid& G = N.groupoid();
  if ((int)f.values.size() != N.size(f.degree))
    throw std::invalid_argument("differential: cochain not total on the nerve");
  Cochain out{f.degree + 1, f.n, std::vector<int>(N.size(f.degree + 1), 0)};
  const auto& high = N.tuples(f.degree + 1);
  for (int r = 0; r < (int)high.size(); ++r) {
    long long acc = 0;
    for (int i = 0; i <= f.degree + 1; ++i) {
      int sign = (i % 2 == 0) ? 1 : -1;
      acc += sign * f.values[N.index(f.degree, face(G, high[r], i))];
    }
    out.values[r] = (int)(((acc % f.n) + f.n) % f.n);
  }
  return out;
}

// Integer matrix of d : C^p -> C^{p+1} (rows indexed by Gamma_{p+1}).
inline IntMatrix differential_matrix(const NerveTable& N, int p) {
  const FiniteGroupoid& G = N.groupoid();
  const auto& high = N.tuples(p + 1);
  IntMatrix D(high.size(), std::vector<Int>(N.size(p), Int(0)));
  for (int r = 0; r < (int)high.size(); ++r)
    for (int i = 0; i <= p + 1; ++i)
      D[r][N.index(p, face(G, high[r], i))] += (i % 2 == 0) ? 1 : -1;
  return D;
}

// Returns the first failing triple, or nullopt when c is a 2-cocycle.
inline std::optional<std::array<int, 3>> cocycle_violation(const NerveTable& N,
                                                           const PairTable& T,
                                                           const PhaseCocycle& c) {
  const FiniteGroupoid& G = N.groupoid();
  for (const auto& t : N.tuples(3)) {
    int g = t[0], h = t[1], k = t[2];
    long long lhs = c.at(T, g, h) + c.at(T, G.compose(g, h), k);
    long long rhs = c.at(T, h, k) + c.at(T, g, G.compose(h, k));
    if ((lhs - rhs) % c.n != 0) return std::array<int, 3>{g, h, k};
  }
  return std::nullopt;
}

inline bool is_cocycle(const NerveTable& N, const PairTable& T, const PhaseCocycle& c) {
  return !cocycle_violation(N, T, c).has_value();
}

// Solve d b = c over Z/n; the witness is a degree-1 cochain.
inline std::optional<Cochain> coboundary_witness(const NerveTable& N, const PairTable& T,
                                                 const PhaseCocycle& c) {
  IntMatrix D = differential_matrix(N, 1);
  // rows of D are nerve(G,2) tuples == PairTable order
  std::vector<int> rhs = c.by_pair;
  auto b = solve_mod(D, rhs, c.n);
  if (!b) return std::nullopt;
  return Cochain{1, c.n, *b};
}

inline PhaseCocycle cochain_to_cocycle(const Cochain& f) {
  if (f.degree != 2) throw std::invalid_argument("expected a degree-2 cochain");
  return PhaseCocycle{f.n, f.values};
}

inline Cochain coboundary_of(const NerveTable& N, const Cochain& b) {
  if (b.degree != 1) throw std::invalid_argument("coboundary_of: need a degree-1 cochain");
  return differential(N, b);
}

inline PhaseCocycle add_cocycles(const PhaseCocycle& a, const std::vector<int>& b, int sign) {
  PhaseCocycle out = a;
  for (std::size_t i = 0; i < out.by_pair.size(); ++i)
    out.by_pair[i] = (int)((((long long)out.by_pair[i] + sign * (long long)b[i]) % a.n + a.n) % a.n);
  return out;
}

inline bool is_normalized(const FiniteGroupoid& G, const PairTable& T, const PhaseCocycle& c) {
  for (int g = 0; g < G.n_arrows(); ++g) {
    if (c.at(T, G.unit[G.tgt[g]], g) != 0) return false;
    if (c.at(T, g, G.unit[G.src[g]]) != 0) return false;
  }
  return true;
}

struct NormalizationResult {
  PhaseCocycle cocycle;   // normalized, cohomologous to the input
  Cochain witness;        // degree-1 b with  normalized = input - d b
};

// Subtract the standard coboundary built from the unit diagonal
// b(g) = c(unit(tgt g), unit(tgt g)).
inline NormalizationResult normalize_cocycle(const NerveTable& N, const PairTable& T,
                                             const PhaseCocycle& c) {
  if (auto viol = cocycle_violation(N, T, c)) {
    const FiniteGroupoid& G = N.groupoid();
    throw std::invalid_argument("normalize: not a cocycle, identity fails at (" +
                                G.arrow_name((*viol)[0]) + ", " + G.arrow_name((*viol)[1]) +
                                ", " + G.arrow_name((*viol)[2]) + ")");
  }
  const FiniteGroupoid& G = N.groupoid();
  Cochain b{1, c.n, std::vector<int>(G.n_arrows(), 0)};
  for (int g = 0; g < G.n_arrows(); ++g) {
    int u = G.unit[G.tgt[g]];
    b.values[g] = c.at(T, u, u);
  }
  Cochain db = differential(N, b);
  PhaseCocycle out = add_cocycles(c, db.values, -1);
  if (!is_normalized(G, T, out))
    throw std::logic_error("normalize: output failed the unit check");
  return {out, b};
}

// (f^* c)(g', h') = c(f g', f h')
inline PhaseCocycle pullback_cocycle(const FiniteGroupoid& dom, const PairTable& dom_pairs,
                                     const FiniteGroupoid& cod, const PairTable& cod_pairs,
                                     const GroupoidMorphism& f, const PhaseCocycle& c) {
  auto bad = morphism_violations(dom, cod, f);
  if (!bad.empty()) throw std::invalid_argument("pullback_cocycle: " + bad.front());
  PhaseCocycle out{c.n, std::vector<int>(dom_pairs.size(), 0)};
  for (int i = 0; i < dom_pairs.size(); ++i) {
    auto [g, h] = dom_pairs.pairs[i];
    out.by_pair[i] = c.at(cod_pairs, f.arrow_map[g], f.arrow_map[h]);
  }
  return out;
}

struct CohomologyResult {
  std::vector<Int> invariants;       // cyclic orders > 1
  Int order = 1;                     // total group order
  std::vector<Cochain> representatives;  // one cocycle per nontrivial generator
};

// H^p of the Z/n cochain complex, exactly: the kernel lattice
// {x : d_p x == 0 mod n} is computed from the Smith form of d_p, and the
// quotient by (im d_{p-1} + n Z^a) from the Smith form of the lifted
// relation matrix expressed in the kernel basis.
inline CohomologyResult cohomology(const NerveTable& N, int p, int n) {
  if (n < 1) throw std::invalid_argument("cohomology: modulus must be >= 1");
  CohomologyResult res;
  int a = N.size(p);
  if (a == 0 || n == 1) return res;

  IntMatrix D = differential_matrix(N, p);
  SmithForm fd = smith_normal_form(D, false, true);
  std::vector<Int> stretch(a, Int(1));
  for (int j = 0; j < fd.rank; ++j) stretch[j] = Int(n) / gcd(fd.diag[j], Int(n));
  // kernel lattice basis B = V * diag(stretch); B^{-1} = diag(1/stretch) * V^{-1}

  int c = (p >= 1) ? N.size(p - 1) : 0;
  IntMatrix E;
  if (p >= 1) E = differential_matrix(N, p - 1);

  // relations in B-coordinates: W = B^{-1} [E | n*I]
  IntMatrix W(a, std::vector<Int>(c + a, Int(0)));
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < c; ++j) {
      Int acc = 0;
      for (int k = 0; k < a; ++k) acc += fd.V_inv[i][k] * E[k][j];
      if (acc % stretch[i] != 0)
        throw std::logic_error("cohomology: coboundary outside the cocycle lattice");
      W[i][j] = acc / stretch[i];
    }
    for (int j = 0; j < a; ++j) {
      Int acc = fd.V_inv[i][j] * n;
      if (acc % stretch[i] != 0) throw std::logic_error("cohomology: bad lattice scaling");
      W[i][c + j] = acc / stretch[i];
    }
  }

  SmithForm fw = smith_normal_form(W, true, false);
  if (fw.rank != a) throw std::logic_error("cohomology: quotient is not finite");
  res.order = 1;
  for (int k = 0; k < a; ++k) {
    Int inv = fw.diag[k];
    res.order *= inv;
    if (inv == 1) continue;
    res.invariants.push_back(inv);
    // generator: ambient vector B * (column k of U^{-1}), reduced mod n
    Cochain rep{p, n, std::vector<int>(a, 0)};
    for (int i = 0; i < a; ++i) {
      Int acc = 0;
      for (int t = 0; t < a; ++t) acc += fd.V[i][t] * stretch[t] * fw.U_inv[t][k];
      Int r = acc % n;
      if (r < 0) r += n;
      rep.values[i] = (int)r;
    }
    res.representatives.push_back(std::move(rep));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Bilinear-form cocycles on elementary abelian groups (discrete torsion
// fixtures). The groupoid must be F_p^d over a point with arrow index
// encoding the coordinate vector in base p.

inline int bilinear_eval(int p, int d, const std::vector<std::vector<int>>& M, int x, int y) {
  long long acc = 0;
  int xi = x;
  for (int i = 0; i < d; ++i, xi /= p) {
    int yi = y;
    for (int j = 0; j < d; ++j, yi /= p) acc += (long long)(xi % p) * M[i][j] % p * (yi % p);
  }
  return (int)(acc % p);
}

inline PhaseCocycle bilinear_cocycle(const FiniteGroupoid& G, const PairTable& T, int p,
                                     int d, const std::vector<std::vector<int>>& M) {
  int npow = 1;
  for (int i = 0; i < d; ++i) npow *= p;
  if (G.n_objects != 1 || G.n_arrows() != npow)
    throw std::invalid_argument("bilinear_cocycle: groupoid is not F_p^d over a point");
  PhaseCocycle c{p, std::vector<int>(T.size(), 0)};
  for (int i = 0; i < T.size(); ++i) {
    auto [g, h] = T.pairs[i];
    c.by_pair[i] = bilinear_eval(p, d, M, g, h);
  }
  return c;
}

// Validate a full value table as a bilinear form and convert it. Throws on a
// non-bilinear table, naming the failing additivity instance.
inline PhaseCocycle bilinear_cocycle_from_table(const FiniteGroupoid& G, const PairTable& T,
                                                int p, int d,
                                                const std::vector<std::vector<int>>& table) {
  int npow = 1;
  for (int i = 0; i < d; ++i) npow *= p;
  if ((int)table.size() != npow)
    throw std::invalid_argument("bilinear table has wrong size");
  auto add = [&](int x, int y) {  // group law of F_p^d on encoded vectors
    int out = 0, pw = 1, xx = x, yy = y;
    for (int i = 0; i < d; ++i, xx /= p, yy /= p, pw *= p) out += (xx % p + yy % p) % p * pw;
    return out;
  };
  for (int x = 0; x < npow; ++x)
    for (int y = 0; y < npow; ++y)
      for (int z = 0; z < npow; ++z) {
        if ((table[add(x, y)][z] - table[x][z] - table[y][z]) % p != 0 ||
            (table[x][add(y, z)] - table[x][y] - table[x][z]) % p != 0)
          throw std::invalid_argument("non-bilinear table at (" + std::to_string(x) + "," +
                                      std::to_string(y) + "," + std::to_string(z) + ")");
      }
  PhaseCocycle c{p, std::vector<int>(T.size(), 0)};
  for (int i = 0; i < T.size(); ++i) {
    auto [g, h] = T.pairs[i];
    c.by_pair[i] = ((table[g][h] % p) + p) % p;
  }
  return c;
}

}  // namespace gerbek
