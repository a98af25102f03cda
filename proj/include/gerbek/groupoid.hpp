#pragma once

// Finite groupoids with dense integer indices for objects and arrows.
// Composition is a precomputed table over exactly the composable pairs
// {(g,h) : src(g) = tgt(h)}, and comp(g,h) is the arrow "h first, then g".
// Values are immutable after construction and safe to share.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gerbek {

struct FiniteGroupoid {
  int n_objects = 0;
  std::vector<int> src, tgt;  // per arrow
  std::vector<int> unit;      // per object
  std::vector<int> inv;       // per arrow
  std::unordered_map<std::int64_t, int> comp_table;
  std::vector<std::vector<int>> arrows_by_tgt;  // per object
  std::vector<std::string> object_names;        // optional; empty -> indices
  std::vector<std::string> arrow_names;

  int n_arrows() const { return (int)src.size(); }

  static std::int64_t key(int g, int h) { return (std::int64_t)g * 2000003 + h; }

  bool composable(int g, int h) const { return src[g] == tgt[h]; }

  int compose(int g, int h) const {
    auto it = comp_table.find(key(g, h));
    if (it == comp_table.end())
      throw std::invalid_argument("compose: pair (" + arrow_name(g) + ", " + arrow_name(h) +
                                  ") is not composable");
    return it->second;
  }

  std::string object_name(int x) const {
    if (x >= 0 && x < (int)object_names.size() && !object_names[x].empty())
      return object_names[x];
    return std::to_string(x);
  }
  std::string arrow_name(int g) const {
    if (g >= 0 && g < (int)arrow_names.size() && !arrow_names[g].empty())
      return arrow_names[g];
    return std::to_string(g);
  }

  void index_arrows() {
    arrows_by_tgt.assign(n_objects, {});
    for (int g = 0; g < n_arrows(); ++g) arrows_by_tgt[tgt[g]].push_back(g);
  }
};

// Assemble a groupoid from raw arrow data plus the composition triples
// (g, h, gh). Units and inverses are derived from the table; failures show up
// later in validate_groupoid rather than as exceptions, so corrupted inputs
// can be inspected.
inline FiniteGroupoid assemble_groupoid(int n_objects, std::vector<int> src,
                                        std::vector<int> tgt,
                                        const std::vector<std::array<int, 3>>& triples,
                                        std::vector<std::string> object_names = {},
                                        std::vector<std::string> arrow_names = {}) {
  FiniteGroupoid G;
  G.n_objects = n_objects;
  G.src = std::move(src);
  G.tgt = std::move(tgt);
  G.object_names = std::move(object_names);
  G.arrow_names = std::move(arrow_names);
  for (const auto& t : triples) G.comp_table[FiniteGroupoid::key(t[0], t[1])] = t[2];
  G.index_arrows();

  // derive units: the loop at x acting as a two-sided identity
  G.unit.assign(n_objects, -1);
  int n = G.n_arrows();
  for (int u = 0; u < n; ++u) {
    if (G.src[u] != G.tgt[u]) continue;
    int x = G.src[u];
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) {
      if (G.tgt[g] == x) {
        auto it = G.comp_table.find(FiniteGroupoid::key(u, g));
        if (it == G.comp_table.end() || it->second != g) ok = false;
      }
      if (ok && G.src[g] == x) {
        auto it = G.comp_table.find(FiniteGroupoid::key(g, u));
        if (it == G.comp_table.end() || it->second != g) ok = false;
      }
    }
    if (ok) G.unit[x] = u;
  }
  // derive inverses
  G.inv.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (G.src[h] != G.tgt[g] || G.tgt[h] != G.src[g]) continue;
      auto a = G.comp_table.find(FiniteGroupoid::key(g, h));
      auto b = G.comp_table.find(FiniteGroupoid::key(h, g));
      if (a != G.comp_table.end() && b != G.comp_table.end() &&
          G.unit[G.tgt[g]] >= 0 && a->second == G.unit[G.tgt[g]] &&
          G.unit[G.src[g]] >= 0 && b->second == G.unit[G.src[g]]) {
        G.inv[g] = h;
        break;
      }
    }
  }
  return G;
}

// Full axiom check; returns a list of human-readable violations (empty iff
// the groupoid is valid). Associativity is checked by exhaustive enumeration
// of composable triples.
inline std::vector<std::string> validate_groupoid(const FiniteGroupoid& G) {
  std::vector<std::string> bad;
  int n = G.n_arrows();
  auto arrow = [&](int g) { return G.arrow_name(g); };

  if ((int)G.tgt.size() != n) bad.push_back("src/tgt size mismatch");
  for (int g = 0; g < n; ++g) {
    if (G.src[g] < 0 || G.src[g] >= G.n_objects || G.tgt[g] < 0 || G.tgt[g] >= G.n_objects)
      bad.push_back("arrow " + arrow(g) + " has an out-of-range endpoint");
  }
  if (!bad.empty()) return bad;

  // domain of the composition table
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      auto it = G.comp_table.find(FiniteGroupoid::key(g, h));
      if (G.composable(g, h)) {
        if (it == G.comp_table.end()) {
          bad.push_back("composable pair (" + arrow(g) + ", " + arrow(h) +
                        ") missing from the composition table");
        } else {
          int gh = it->second;
          if (gh < 0 || gh >= n) {
            bad.push_back("comp(" + arrow(g) + ", " + arrow(h) + ") is out of range");
          } else if (G.src[gh] != G.src[h] || G.tgt[gh] != G.tgt[g]) {
            bad.push_back("comp(" + arrow(g) + ", " + arrow(h) + ") = " + arrow(gh) +
                          " has wrong endpoints");
          }
        }
      } else if (it != G.comp_table.end()) {
        bad.push_back("non-composable pair (" + arrow(g) + ", " + arrow(h) +
                      ") present in the composition table");
      }
    }
  if (!bad.empty()) return bad;

  // units
  if ((int)G.unit.size() != G.n_objects) {
    bad.push_back("unit table has wrong size");
    return bad;
  }
  for (int x = 0; x < G.n_objects; ++x) {
    int u = G.unit[x];
    if (u < 0 || u >= n || G.src[u] != x || G.tgt[u] != x) {
      bad.push_back("object " + G.object_name(x) + " has no unit arrow");
      continue;
    }
    for (int g = 0; g < n; ++g) {
      if (G.tgt[g] == x && G.compose(u, g) != g)
        bad.push_back("unit law fails: unit(" + G.object_name(x) + ") * " + arrow(g));
      if (G.src[g] == x && G.compose(g, u) != g)
        bad.push_back("unit law fails: " + arrow(g) + " * unit(" + G.object_name(x) + ")");
    }
  }
  // inverses
  if ((int)G.inv.size() != n) {
    bad.push_back("inverse table has wrong size");
    return bad;
  }
  for (int g = 0; g < n; ++g) {
    int h = G.inv[g];
    if (h < 0 || h >= n || G.src[h] != G.tgt[g] || G.tgt[h] != G.src[g]) {
      bad.push_back("arrow " + arrow(g) + " has no inverse");
      continue;
    }
    if (G.compose(g, h) != G.unit[G.tgt[g]] || G.compose(h, g) != G.unit[G.src[g]])
      bad.push_back("inverse law fails for arrow " + arrow(g));
  }
  // associativity on every composable triple
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (!G.composable(g, h)) continue;
      int gh = G.compose(g, h);
      for (int k = 0; k < n; ++k) {
        if (!G.composable(h, k)) continue;
        if (G.compose(gh, k) != G.compose(g, G.compose(h, k)))
          bad.push_back("associativity fails at (" + arrow(g) + ", " + arrow(h) + ", " +
                        arrow(k) + ")");
      }
    }
  return bad;
}

// Composable p-tuples (g_1,...,g_p) with src(g_i) = tgt(g_{i+1}).
// nerve(G,0) lists objects as singleton tuples.
inline std::vector<std::vector<int>> nerve(const FiniteGroupoid& G, int p) {
  if (p < 0) throw std::invalid_argument("nerve: negative degree");
  std::vector<std::vector<int>> out;
  if (p == 0) {
    for (int x = 0; x < G.n_objects; ++x) out.push_back({x});
    return out;
  }
  std::vector<int> tuple;
  // depth-first extension on matching endpoints
  auto extend = [&](auto&& self, int depth) -> void {
    if (depth == p) {
      out.push_back(tuple);
      return;
    }
    for (int g = 0; g < G.n_arrows(); ++g) {
      if (depth > 0 && G.src[tuple[depth - 1]] != G.tgt[g]) continue;
      tuple.push_back(g);
      self(self, depth + 1);
      tuple.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

inline std::vector<int> loops(const FiniteGroupoid& G) {
  std::vector<int> out;
  for (int g = 0; g < G.n_arrows(); ++g)
    if (G.src[g] == G.tgt[g]) out.push_back(g);
  return out;
}

// Right conjugation action h * g = g^{-1} h g of an arrow g on a loop h
// with tgt(g) = src(h).
inline int conjugate(const FiniteGroupoid& G, int h, int g) {
  if (G.src[h] != G.tgt[h]) throw std::invalid_argument("conjugate: h is not a loop");
  if (G.tgt[g] != G.src[h])
    throw std::invalid_argument("conjugate: tgt(g) != src(h) for (" + G.arrow_name(h) +
                                ", " + G.arrow_name(g) + ")");
  return G.compose(G.compose(G.inv[g], h), g);
}

// Partition the loops into orbits of the conjugation action.
inline std::vector<std::vector<int>> conjugation_orbits(const FiniteGroupoid& G) {
  std::vector<int> ls = loops(G);
  std::unordered_map<int, int> loop_index;
  for (int i = 0; i < (int)ls.size(); ++i) loop_index[ls[i]] = i;
  std::vector<int> comp(ls.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < (int)ls.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = (int)orbits.size();
    std::vector<int> orbit;
    while (!stack.empty()) {
      int j = stack.back();
      stack.pop_back();
      orbit.push_back(ls[j]);
      int h = ls[j];
      for (int g : G.arrows_by_tgt[G.src[h]]) {
        int k = loop_index.at(conjugate(G, h, g));
        if (comp[k] < 0) {
          comp[k] = comp[i];
          stack.push_back(k);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Orbits of objects under "there is an arrow between" (the coarse orbit
// space |Gamma|).
inline std::vector<std::vector<int>> object_orbits(const FiniteGroupoid& G) {
  std::vector<int> parent(G.n_objects);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int g = 0; g < G.n_arrows(); ++g) {
    int a = find(G.src[g]), b = find(G.tgt[g]);
    if (a != b) parent[a] = b;
  }
  std::unordered_map<int, std::vector<int>> groups;
  for (int x = 0; x < G.n_objects; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Groups and right actions

struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[g][h] = g*h
  int identity = -1;
  std::vector<int> inverse;
  std::vector<std::string> names;

  std::string name(int g) const {
    if (g >= 0 && g < (int)names.size() && !names[g].empty()) return names[g];
    return std::to_string(g);
  }
};

inline std::vector<std::string> validate_group(const FiniteGroup& G) {
  std::vector<std::string> bad;
  int n = G.order;
  if ((int)G.mul.size() != n) return {"multiplication table has wrong size"};
  for (int i = 0; i < n; ++i) {
    if ((int)G.mul[i].size() != n) return {"multiplication table row has wrong size"};
    for (int j = 0; j < n; ++j)
      if (G.mul[i][j] < 0 || G.mul[i][j] >= n) return {"multiplication table entry out of range"};
  }
  if (G.identity < 0 || G.identity >= n) bad.push_back("no identity element");
  for (int g = 0; g < n && bad.empty(); ++g)
    if (G.mul[G.identity][g] != g || G.mul[g][G.identity] != g)
      bad.push_back("identity law fails at " + G.name(g));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (G.mul[G.mul[g][h]][k] != G.mul[g][G.mul[h][k]]) {
          bad.push_back("associativity fails at (" + G.name(g) + ", " + G.name(h) + ", " +
                        G.name(k) + ")");
          return bad;
        }
  for (int g = 0; g < n; ++g) {
    int h = (g < (int)G.inverse.size()) ? G.inverse[g] : -1;
    if (h < 0 || h >= n || G.mul[g][h] != G.identity || G.mul[h][g] != G.identity)
      bad.push_back("inverse fails at " + G.name(g));
  }
  return bad;
}

// Derive identity and inverses from a bare multiplication table.
inline FiniteGroup make_group(std::vector<std::vector<int>> mul,
                              std::vector<std::string> names = {}) {
  FiniteGroup G;
  G.order = (int)mul.size();
  G.mul = std::move(mul);
  G.names = std::move(names);
  for (int e = 0; e < G.order; ++e) {
    bool ok = true;
    for (int g = 0; g < G.order && ok; ++g)
      if (G.mul[e][g] != g || G.mul[g][e] != g) ok = false;
    if (ok) {
      G.identity = e;
      break;
    }
  }
  G.inverse.assign(G.order, -1);
  if (G.identity >= 0)
    for (int g = 0; g < G.order; ++g)
      for (int h = 0; h < G.order; ++h)
        if (G.mul[g][h] == G.identity && G.mul[h][g] == G.identity) {
          G.inverse[g] = h;
          break;
        }
  return G;
}

struct GroupAction {
  FiniteGroup group;
  int n_points = 0;
  std::vector<std::vector<int>> act;  // act[x][g], a right action
  std::vector<std::string> point_names;

  std::string point_name(int x) const {
    if (x >= 0 && x < (int)point_names.size() && !point_names[x].empty())
      return point_names[x];
    return std::to_string(x);
  }
};

inline std::vector<std::string> validate_action(const GroupAction& A) {
  std::vector<std::string> bad = validate_group(A.group);
  if (!bad.empty()) return bad;
  if ((int)A.act.size() != A.n_points) return {"action table has wrong size"};
  for (int x = 0; x < A.n_points; ++x) {
    if ((int)A.act[x].size() != A.group.order) return {"action table row has wrong size"};
    for (int g = 0; g < A.group.order; ++g)
      if (A.act[x][g] < 0 || A.act[x][g] >= A.n_points)
        return {"action table entry out of range"};
  }
  for (int x = 0; x < A.n_points; ++x) {
    if (A.act[x][A.group.identity] != x)
      bad.push_back("act(" + A.point_name(x) + ", e) != " + A.point_name(x));
    for (int g = 0; g < A.group.order; ++g)
      for (int h = 0; h < A.group.order; ++h)
        if (A.act[A.act[x][g]][h] != A.act[x][A.group.mul[g][h]]) {
          bad.push_back("action law fails at (" + A.point_name(x) + ", " +
                        A.group.name(g) + ", " + A.group.name(h) + ")");
          return bad;
        }
  }
  return bad;
}

// The action groupoid M x| G: objects are points, arrows are pairs (x, g)
// indexed as x*|G| + g, with src(x,g) = x.g and tgt(x,g) = x.
inline FiniteGroupoid action_groupoid(const GroupAction& A) {
  auto bad = validate_action(A);
  if (!bad.empty()) throw std::invalid_argument("action_groupoid: " + bad.front());
  const int ng = A.group.order;
  FiniteGroupoid G;
  G.n_objects = A.n_points;
  G.object_names.resize(A.n_points);
  for (int x = 0; x < A.n_points; ++x) G.object_names[x] = A.point_name(x);
  G.src.resize(A.n_points * ng);
  G.tgt.resize(A.n_points * ng);
  G.arrow_names.resize(A.n_points * ng);
  auto id = [&](int x, int g) { return x * ng + g; };
  for (int x = 0; x < A.n_points; ++x)
    for (int g = 0; g < ng; ++g) {
      G.src[id(x, g)] = A.act[x][g];
      G.tgt[id(x, g)] = x;
      G.arrow_names[id(x, g)] =
          A.n_points == 1 ? A.group.name(g) : A.group.name(g) + "@" + A.point_name(x);
    }
  G.unit.resize(A.n_points);
  for (int x = 0; x < A.n_points; ++x) G.unit[x] = id(x, A.group.identity);
  G.inv.resize(G.src.size());
  for (int x = 0; x < A.n_points; ++x)
    for (int g = 0; g < ng; ++g)
      G.inv[id(x, g)] = id(A.act[x][g], A.group.inverse[g]);
  // (x,g)(y,h) with y = x.g composes to (x, g h)
  for (int x = 0; x < A.n_points; ++x)
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < ng; ++h)
        G.comp_table[FiniteGroupoid::key(id(x, g), id(A.act[x][g], h))] =
            id(x, A.group.mul[g][h]);
  G.index_arrows();
  return G;
}

// ---------------------------------------------------------------------------
// Covers and refinement

struct Cover {
  std::vector<std::vector<int>> pieces;
};

inline std::vector<std::string> validate_cover(const FiniteGroupoid& G, const Cover& C) {
  std::vector<bool> seen(G.n_objects, false);
  for (const auto& piece : C.pieces)
    for (int x : piece) {
      if (x < 0 || x >= G.n_objects) return {"cover references an unknown object"};
      seen[x] = true;
    }
  for (int x = 0; x < G.n_objects; ++x)
    if (!seen[x]) return {"object " + G.object_name(x) + " is not covered"};
  return {};
}

struct GroupoidMorphism {
  std::vector<int> object_map;  // objects of dom -> objects of cod
  std::vector<int> arrow_map;   // arrows of dom -> arrows of cod
};

inline std::vector<std::string> morphism_violations(const FiniteGroupoid& dom,
                                                    const FiniteGroupoid& cod,
                                                    const GroupoidMorphism& f) {
  std::vector<std::string> bad;
  if ((int)f.object_map.size() != dom.n_objects || (int)f.arrow_map.size() != dom.n_arrows())
    return {"morphism tables have wrong sizes"};
  for (int g = 0; g < dom.n_arrows(); ++g) {
    int fg = f.arrow_map[g];
    if (fg < 0 || fg >= cod.n_arrows()) return {"morphism image out of range"};
    if (cod.src[fg] != f.object_map[dom.src[g]] || cod.tgt[fg] != f.object_map[dom.tgt[g]])
      bad.push_back("morphism breaks endpoints at arrow " + dom.arrow_name(g));
  }
  for (int g = 0; g < dom.n_arrows(); ++g)
    for (int h = 0; h < dom.n_arrows(); ++h) {
      if (!dom.composable(g, h)) continue;
      if (f.arrow_map[dom.compose(g, h)] != cod.compose(f.arrow_map[g], f.arrow_map[h])) {
        bad.push_back("morphism breaks composition at (" + dom.arrow_name(g) + ", " +
                      dom.arrow_name(h) + ")");
        return bad;
      }
    }
  return bad;
}

struct Refinement {
  FiniteGroupoid gpd;
  GroupoidMorphism to_base;
  // labels for the refined cells
  std::vector<std::pair<int, int>> object_pair;       // (piece, object)
  std::vector<std::array<int, 3>> arrow_triple;       // (i, j, g)
};

// Pullback groupoid of a cover: arrows are triples (i, j, g) with
// tgt(g) in U_i and src(g) in U_j, product (i,j,g)(j,k,h) = (i,k,gh).
inline Refinement refine(const FiniteGroupoid& G, const Cover& C) {
  auto bad = validate_cover(G, C);
  if (!bad.empty()) throw std::invalid_argument("refine: " + bad.front());
  Refinement R;
  int np = (int)C.pieces.size();
  std::vector<std::vector<int>> obj_id(np);
  std::vector<std::vector<bool>> in_piece(np, std::vector<bool>(G.n_objects, false));
  for (int i = 0; i < np; ++i) {
    obj_id[i].assign(G.n_objects, -1);
    for (int x : C.pieces[i]) in_piece[i][x] = true;
  }
  FiniteGroupoid& H = R.gpd;
  for (int i = 0; i < np; ++i)
    for (int x = 0; x < G.n_objects; ++x) {
      if (!in_piece[i][x]) continue;
      obj_id[i][x] = H.n_objects++;
      R.object_pair.emplace_back(i, x);
      H.object_names.push_back(G.object_name(x) + "#" + std::to_string(i));
      R.to_base.object_map.push_back(x);
    }
  std::vector<std::vector<std::vector<int>>> arrow_id(
      np, std::vector<std::vector<int>>(np, std::vector<int>(G.n_arrows(), -1)));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      for (int g = 0; g < G.n_arrows(); ++g) {
        if (!in_piece[i][G.tgt[g]] || !in_piece[j][G.src[g]]) continue;
        int a = (int)H.src.size();
        arrow_id[i][j][g] = a;
        H.src.push_back(obj_id[j][G.src[g]]);
        H.tgt.push_back(obj_id[i][G.tgt[g]]);
        H.arrow_names.push_back(std::to_string(i) + "." + std::to_string(j) + "." +
                                G.arrow_name(g));
        R.arrow_triple.push_back({i, j, g});
        R.to_base.arrow_map.push_back(g);
      }
  H.unit.assign(H.n_objects, -1);
  for (int o = 0; o < H.n_objects; ++o) {
    auto [i, x] = R.object_pair[o];
    H.unit[o] = arrow_id[i][i][G.unit[x]];
  }
  H.inv.resize(H.src.size());
  for (int a = 0; a < (int)H.src.size(); ++a) {
    auto [i, j, g] = R.arrow_triple[a];
    H.inv[a] = arrow_id[j][i][G.inv[g]];
  }
  for (int a = 0; a < (int)H.src.size(); ++a) {
    auto [i, j, g] = R.arrow_triple[a];
    for (int b = 0; b < (int)H.src.size(); ++b) {
      auto [j2, k, h] = R.arrow_triple[b];
      if (j2 != j || !G.composable(g, h)) continue;
      H.comp_table[FiniteGroupoid::key(a, b)] = arrow_id[i][k][G.compose(g, h)];
    }
  }
  H.index_arrows();
  return R;
}

}  // namespace gerbek
