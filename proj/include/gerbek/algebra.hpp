#pragma once

// The twisted convolution *-algebra of (Gamma, c, n) over exact cyclotomic
// scalars: basis {delta_g}, product delta_g * delta_h = zeta^{c(g,h)}
// delta_{gh} on composable pairs. Block counts (the finite-scale stand-in for
// rank K_0 and dim HP_0) are computed twice, as the centre dimension and as
// dim A - dim [A,A], and cross-asserted. Floating point appears only in
// operator_norm.

#include "gerbek/cyclo_linalg.hpp"
#include "gerbek/cyclotomic.hpp"
#include "gerbek/extension.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gerbek {

using AlgebraElement = std::vector<Cyc>;  // coordinates in the arrow basis

class TwistedAlgebra {
 public:
  TwistedAlgebra(const FiniteGroupoid& G, const PhaseCocycle& c, int n)
      : G_(G), n_(n), c_(c), pairs_(PairTable::build(G)), field_(&cyclotomic_field(n)) {
    if (c.n != n) throw std::invalid_argument("TwistedAlgebra: modulus mismatch");
    NerveTable N(G_);
    if (!is_cocycle(N, pairs_, c_) || !is_normalized(G_, pairs_, c_))
      throw std::invalid_argument("TwistedAlgebra: cocycle must be normalized and valid");
  }

  const FiniteGroupoid& groupoid() const { return G_; }
  const CycField& field() const { return *field_; }
  const PairTable& pairs() const { return pairs_; }
  const PhaseCocycle& cocycle() const { return c_; }
  int modulus() const { return n_; }
  int dim() const { return G_.n_arrows(); }

  AlgebraElement zero() const { return AlgebraElement(dim(), Cyc::zero(*field_)); }
  AlgebraElement delta(int g) const {
    AlgebraElement a = zero();
    a[g] = Cyc::one(*field_);
    return a;
  }
  AlgebraElement unit_element() const {
    AlgebraElement a = zero();
    for (int x = 0; x < G_.n_objects; ++x) a[G_.unit[x]] = Cyc::one(*field_);
    return a;
  }

  AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) const {
    require_element(a);
    require_element(b);
    AlgebraElement out = zero();
    for (int i = 0; i < pairs_.size(); ++i) {
      auto [g, h] = pairs_.pairs[i];
      if (a[g].is_zero() || b[h].is_zero()) continue;
      out[G_.compose(g, h)] +=
          Cyc::zeta_pow(*field_, c_.by_pair[i]) * a[g] * b[h];
    }
    return out;
  }

  // (delta_g)^* = zeta^{-c(g, g^{-1})} delta_{g^{-1}}; antilinear extension.
  AlgebraElement adjoint(const AlgebraElement& a) const {
    require_element(a);
    AlgebraElement out = zero();
    for (int g = 0; g < dim(); ++g) {
      if (a[g].is_zero()) continue;
      out[G_.inv[g]] +=
          Cyc::zeta_pow(*field_, -c_.at(pairs_, g, G_.inv[g])) * a[g].conj();
    }
    return out;
  }

  // <xi, eta>_x = (xi^* * eta)(unit(x)) = sum over arrows based at x.
  Cyc inner_product_at(int x, const AlgebraElement& xi, const AlgebraElement& eta) const {
    if (x < 0 || x >= G_.n_objects) throw std::invalid_argument("inner_product_at: unknown object");
    return convolve(adjoint(xi), eta)[G_.unit[x]];
  }

  // pi_x(a) acting on the span of the arrows with source x.
  struct Representation {
    std::vector<int> basis_arrows;
    std::vector<std::vector<Cyc>> matrix;  // matrix[row][col]
  };
  Representation rep_matrix(const AlgebraElement& a, int x) const {
    if (x < 0 || x >= G_.n_objects) throw std::invalid_argument("rep_matrix: unknown object");
    require_element(a);
    Representation R;
    std::vector<int> pos(dim(), -1);
    for (int g = 0; g < dim(); ++g)
      if (G_.src[g] == x) {
        pos[g] = (int)R.basis_arrows.size();
        R.basis_arrows.push_back(g);
      }
    int m = (int)R.basis_arrows.size();
    R.matrix.assign(m, std::vector<Cyc>(m, Cyc::zero(*field_)));
    for (int col = 0; col < m; ++col) {
      AlgebraElement image = convolve(a, delta(R.basis_arrows[col]));
      for (int g = 0; g < dim(); ++g) {
        if (image[g].is_zero()) continue;
        if (pos[g] < 0) throw std::logic_error("rep_matrix: image left the fibre");
        R.matrix[pos[g]][col] = image[g];
      }
    }
    return R;
  }

  // sup over objects of the spectral norm of pi_x(a); diagnostics only.
  double operator_norm(const AlgebraElement& a) const {
    double best = 0.0;
    for (int x = 0; x < G_.n_objects; ++x) {
      Representation R = rep_matrix(a, x);
      int m = (int)R.basis_arrows.size();
      if (m == 0) continue;
      Eigen::MatrixXcd M(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = R.matrix[i][j].to_complex();
      Eigen::MatrixXcd MtM = M.adjoint() * M;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(MtM);
      double top = es.eigenvalues().maxCoeff();
      if (top > best) best = top;
    }
    return std::sqrt(std::max(best, 0.0));
  }

  // Basis of {z : z * delta_g == delta_g * z for all g}. Comparing the
  // delta_k coefficient of both sides gives one equation per (g, k):
  //   zeta^{c(j,g)} z_j = zeta^{c(g,j')} z_{j'}
  // with j = k g^{-1} (present iff src k = src g) and j' = g^{-1} k (present
  // iff tgt k = tgt g). Every row couples at most two coordinates.
  std::vector<AlgebraElement> center_basis() const {
    RowSpace rows(dim());
    for (int g = 0; g < dim(); ++g)
      for (int k = 0; k < dim(); ++k) {
        int j = -1, jp = -1;
        Cyc cj = Cyc::zero(*field_), cjp = Cyc::zero(*field_);
        if (G_.src[k] == G_.src[g]) {
          j = G_.compose(k, G_.inv[g]);
          cj = Cyc::zeta_pow(*field_, c_.at(pairs_, j, g));
        }
        if (G_.tgt[k] == G_.tgt[g]) {
          jp = G_.compose(G_.inv[g], k);
          cjp = -Cyc::zeta_pow(*field_, c_.at(pairs_, g, jp));
        }
        SparseRow r;
        if (j >= 0 && jp >= 0 && j == jp) {
          Cyc v = cj + cjp;
          if (!v.is_zero()) r.emplace_back(j, v);
        } else {
          if (j >= 0) r.emplace_back(j, cj);
          if (jp >= 0) r.emplace_back(jp, cjp);
          std::sort(r.begin(), r.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        if (!r.empty()) rows.insert(std::move(r));
      }
    return rows.nullspace_basis(*field_);
  }

  // dim span{ [delta_g, delta_h] } over all pairs.
  int commutator_rank() const {
    RowSpace rows(dim());
    for (int g = 0; g < dim(); ++g)
      for (int h = 0; h < dim(); ++h) {
        SparseRow r;
        bool gh_ok = G_.composable(g, h);
        bool hg_ok = G_.composable(h, g);
        if (!gh_ok && !hg_ok) continue;
        if (gh_ok && hg_ok && G_.compose(g, h) == G_.compose(h, g)) {
          Cyc v = Cyc::zeta_pow(*field_, c_.at(pairs_, g, h)) -
                  Cyc::zeta_pow(*field_, c_.at(pairs_, h, g));
          if (!v.is_zero()) r.emplace_back(G_.compose(g, h), v);
        } else {
          if (gh_ok) r.emplace_back(G_.compose(g, h),
                                    Cyc::zeta_pow(*field_, c_.at(pairs_, g, h)));
          if (hg_ok) r.emplace_back(G_.compose(h, g),
                                    -Cyc::zeta_pow(*field_, c_.at(pairs_, h, g)));
          std::sort(r.begin(), r.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        if (!r.empty()) rows.insert(std::move(r));
      }
    return rows.rank();
  }

  // Wedderburn block count: centre dimension, cross-checked against
  // dim A - dim [A,A].
  int block_count() const {
    int centre = (int)center_basis().size();
    int viaCommutator = dim() - commutator_rank();
    if (centre != viaCommutator)
      throw std::logic_error("block_count: centre dim " + std::to_string(centre) +
                             " != dim A - dim [A,A] = " + std::to_string(viaCommutator));
    return centre;
  }

 private:
  void require_element(const AlgebraElement& a) const {
    if ((int)a.size() != dim())
      throw std::invalid_argument("algebra element has wrong dimension");
  }

  FiniteGroupoid G_;
  int n_;
  PhaseCocycle c_;
  PairTable pairs_;
  const CycField* field_;
};

// ---------------------------------------------------------------------------
// Eigenspace decomposition of the untwisted algebra of the extension.
//
// T(f)(g,z) = f(g, z-1) is convolution by the central element
// sum_x delta_{(unit x, 1)}. Its zeta^k-eigenspace has basis
// e_g^k = sum_z zeta^{-kz} delta_{(g,z)}, one per base arrow, and
//   e_g^k * e_h^k = n * zeta^{k c(g,h)} e_{gh}^k,
//   e_g^k * e_h^l = 0 for k != l,
// so the eigenspaces are two-sided ideals and the k-th one is isomorphic to
// the k c-twisted algebra of the base. Under the pointwise product of
// functions on the extension the grading is additive instead:
// e_g^k . e_g^l = e_g^{k+l mod n}.

struct CharacterDecomposition {
  std::vector<std::vector<AlgebraElement>> eigenbasis;  // [k][base arrow]
  std::vector<int> summand_blocks;                      // blocks of the k c-twisted algebra
  int extension_blocks = 0;                             // blocks of the untwisted extension algebra
};

inline AlgebraElement eigenvector_basis_element(const TwistedAlgebra& ext_algebra,
                                                const ZnExtension& E, int g, int k) {
  AlgebraElement v = ext_algebra.zero();
  const CycField& F = ext_algebra.field();
  for (int z = 0; z < E.n; ++z) v[E.arrow_id(g, z)] = Cyc::zeta_pow(F, -(long long)k * z);
  return v;
}

inline AlgebraElement translate(const TwistedAlgebra& ext_algebra, const ZnExtension& E,
                                const AlgebraElement& f) {
  AlgebraElement out = ext_algebra.zero();
  for (int g = 0; g < E.base.n_arrows(); ++g)
    for (int z = 0; z < E.n; ++z)
      out[E.arrow_id(g, z)] = f[E.arrow_id(g, (z - 1 + E.n) % E.n)];
  return out;
}

inline PhaseCocycle scaled_cocycle(const PhaseCocycle& c, int k) {
  PhaseCocycle out = c;
  for (auto& v : out.by_pair) v = (int)(((long long)v * k) % c.n);
  return out;
}

inline CharacterDecomposition decompose_by_character(const ZnExtension& E) {
  TwistedAlgebra ext_algebra(E.total, zero_cocycle(PairTable::build(E.total), E.n), E.n);
  CharacterDecomposition out;
  const CycField& F = ext_algebra.field();
  out.eigenbasis.resize(E.n);
  for (int k = 0; k < E.n; ++k) {
    for (int g = 0; g < E.base.n_arrows(); ++g) {
      AlgebraElement v = eigenvector_basis_element(ext_algebra, E, g, k);
      // verify T v = zeta^k v
      AlgebraElement tv = translate(ext_algebra, E, v);
      Cyc zk = Cyc::zeta_pow(F, k);
      for (int a = 0; a < ext_algebra.dim(); ++a)
        if (tv[a] != zk * v[a])
          throw std::logic_error("decompose_by_character: eigenvector check failed");
      out.eigenbasis[k].push_back(std::move(v));
    }
    out.summand_blocks.push_back(
        TwistedAlgebra(E.base, scaled_cocycle(E.c, k), E.n).block_count());
  }
  out.extension_blocks = ext_algebra.block_count();
  int total = 0;
  for (int b : out.summand_blocks) total += b;
  if (total != out.extension_blocks)
    throw std::logic_error("decompose_by_character: block counts do not sum");
  return out;
}

}  // namespace gerbek
