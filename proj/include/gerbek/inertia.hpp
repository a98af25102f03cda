#pragma once

// The inertia groupoid (loops with the conjugation action) and the degree-0
// twisted cohomology: the space of sections f : loops -> Q(zeta_n) with
// f(g^{-1} h g) = zeta^{phase(h,g)} f(h) for every admissible pair, solved by
// exact Gaussian elimination. The alpha-regular orbit census is the
// independent combinatorial route to the same dimension.

#include "gerbek/cyclo_linalg.hpp"
#include "gerbek/cyclotomic.hpp"
#include "gerbek/extension.hpp"
#include "gerbek/groupoid.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace gerbek {

struct InertiaGroupoid {
  FiniteGroupoid gpd;
  std::vector<int> loop_of_object;            // object index -> loop arrow in the base
  std::vector<std::pair<int, int>> arrow_pair; // arrow index -> (h, g) in the base
};

// Transformation groupoid of the conjugation action: objects are the loops,
// an arrow (h, g) has target h and source h.g = g^{-1} h g, and
// (h, g)(h.g, g') = (h, g g').
inline InertiaGroupoid build_inertia(const FiniteGroupoid& G) {
  InertiaGroupoid I;
  I.loop_of_object = loops(G);
  std::unordered_map<int, int> obj_of_loop;
  for (int i = 0; i < (int)I.loop_of_object.size(); ++i)
    obj_of_loop[I.loop_of_object[i]] = i;

  FiniteGroupoid& H = I.gpd;
  H.n_objects = (int)I.loop_of_object.size();
  H.object_names.resize(H.n_objects);
  for (int i = 0; i < H.n_objects; ++i) H.object_names[i] = G.arrow_name(I.loop_of_object[i]);

  std::unordered_map<std::int64_t, int> arrow_of_pair;
  for (int i = 0; i < H.n_objects; ++i) {
    int h = I.loop_of_object[i];
    for (int g : G.arrows_by_tgt[G.src[h]]) {
      int a = (int)H.src.size();
      arrow_of_pair[FiniteGroupoid::key(h, g)] = a;
      I.arrow_pair.emplace_back(h, g);
      H.tgt.push_back(i);
      H.src.push_back(obj_of_loop.at(conjugate(G, h, g)));
      H.arrow_names.push_back("(" + G.arrow_name(h) + ";" + G.arrow_name(g) + ")");
    }
  }
  H.unit.resize(H.n_objects);
  for (int i = 0; i < H.n_objects; ++i) {
    int h = I.loop_of_object[i];
    H.unit[i] = arrow_of_pair.at(FiniteGroupoid::key(h, G.unit[G.src[h]]));
  }
  H.inv.resize(H.src.size());
  for (int a = 0; a < (int)H.src.size(); ++a) {
    auto [h, g] = I.arrow_pair[a];
    H.inv[a] = arrow_of_pair.at(FiniteGroupoid::key(conjugate(G, h, g), G.inv[g]));
  }
  for (int a = 0; a < (int)H.src.size(); ++a) {
    auto [h, g] = I.arrow_pair[a];
    for (int b = 0; b < (int)H.src.size(); ++b) {
      auto [h2, g2] = I.arrow_pair[b];
      if (h2 != conjugate(G, h, g)) continue;
      H.comp_table[FiniteGroupoid::key(a, b)] =
          arrow_of_pair.at(FiniteGroupoid::key(h, G.compose(g, g2)));
    }
  }
  H.index_arrows();
  return I;
}

// A section of the induced line bundle over the loop space, as coordinates
// indexed like loops(G).
struct SectorBasis {
  std::vector<int> loop_list;
  std::vector<std::vector<Cyc>> basis;
  int dimension = 0;
};

// Violations of the equivariance constraint for a candidate section.
inline std::vector<std::string> equivariance_violations(const ZnExtension& E,
                                                        const std::vector<Cyc>& f) {
  const FiniteGroupoid& G = E.base;
  std::vector<int> ls = loops(G);
  std::unordered_map<int, int> pos;
  for (int i = 0; i < (int)ls.size(); ++i) pos[ls[i]] = i;
  const CycField& F = f.empty() ? cyclotomic_field(E.n) : f.front().field();
  std::vector<std::string> bad;
  for (int i = 0; i < (int)ls.size(); ++i) {
    int h = ls[i];
    for (int g : G.arrows_by_tgt[G.src[h]]) {
      int hg = conjugate(G, h, g);
      Cyc lhs = f[pos.at(hg)];
      Cyc rhs = Cyc::zeta_pow(F, conjugation_phase(E, h, g)) * f[i];
      if (lhs != rhs)
        bad.push_back("equivariance fails at (" + G.arrow_name(h) + ", " + G.arrow_name(g) +
                      ")");
    }
  }
  return bad;
}

// Exact basis of the invariant-section space. One linear constraint per
// admissible pair (h, g): f(h.g) - zeta^{phase(h,g)} f(h) = 0.
inline SectorBasis invariant_sections(const ZnExtension& E) {
  const FiniteGroupoid& G = E.base;
  SectorBasis out;
  out.loop_list = loops(G);
  std::unordered_map<int, int> pos;
  for (int i = 0; i < (int)out.loop_list.size(); ++i) pos[out.loop_list[i]] = i;
  const CycField& F = cyclotomic_field(E.n);

  RowSpace rows((int)out.loop_list.size());
  for (int i = 0; i < (int)out.loop_list.size(); ++i) {
    int h = out.loop_list[i];
    for (int g : G.arrows_by_tgt[G.src[h]]) {
      int j = pos.at(conjugate(G, h, g));
      Cyc w = -Cyc::zeta_pow(F, conjugation_phase(E, h, g));
      SparseRow r;
      if (i == j) {
        Cyc v = Cyc::one(F) + w;
        if (!v.is_zero()) r.emplace_back(i, v);
      } else if (i < j) {
        r.emplace_back(i, w);
        r.emplace_back(j, Cyc::one(F));
      } else {
        r.emplace_back(j, Cyc::one(F));
        r.emplace_back(i, w);
      }
      rows.insert(std::move(r));
    }
  }
  out.basis = rows.nullspace_basis(F);
  out.dimension = (int)out.basis.size();
  for (const auto& b : out.basis) {
    auto bad = equivariance_violations(E, b);
    if (!bad.empty())
      throw std::logic_error("invariant_sections: basis vector fails equivariance: " +
                             bad.front());
  }
  return out;
}

struct OrbitCensus {
  std::vector<std::vector<int>> orbits;  // conjugation orbits of loops
  std::vector<bool> regular;             // per orbit
  int regular_count = 0;
};

// An orbit is alpha-regular when every stabilizing arrow acts with phase 0;
// checked exhaustively over all members and stabilizers.
inline OrbitCensus alpha_regular_orbits(const ZnExtension& E) {
  const FiniteGroupoid& G = E.base;
  OrbitCensus out;
  out.orbits = conjugation_orbits(G);
  out.regular.resize(out.orbits.size(), true);
  for (int o = 0; o < (int)out.orbits.size(); ++o) {
    for (int h : out.orbits[o]) {
      for (int g : G.arrows_by_tgt[G.src[h]]) {
        if (conjugate(G, h, g) != h) continue;
        if (conjugation_phase(E, h, g) != 0) {
          out.regular[o] = false;
          break;
        }
      }
      if (!out.regular[o]) break;
    }
    if (out.regular[o]) ++out.regular_count;
  }
  return out;
}

}  // namespace gerbek
