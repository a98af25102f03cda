#pragma once

// Subcommand dispatch shared by the CLI and the tests. Every command produces
// deterministic text or JSON (stable key order, no timestamps). Exit codes:
// 0 verdict true / report, 2 verdict false, 1 input or usage error.

#include "gerbek/chern.hpp"
#include "gerbek/commands_fwd.hpp"
#include "gerbek/io.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace gerbek {

inline PhaseCocycle effective_cocycle(const Document& doc, const RunOptions& opt,
                                      std::string& notice) {
  if (doc.cocycle) {
    if (doc.cocycle_was_normalized)
      notice += "notice: input cocycle was normalized (same class)\n";
    return *doc.cocycle;
  }
  int n = opt.n_override.value_or(1);
  notice += "notice: no cocycle given; using the zero cocycle with n=" + std::to_string(n) +
            "\n";
  return zero_cocycle(PairTable::build(doc.groupoid), n);
}

inline RunResult run_command(const std::string& subcommand, const Document& doc,
                             const RunOptions& opt) {
  using ordered_json = nlohmann::ordered_json;
  RunResult res;
  const FiniteGroupoid& G = doc.groupoid;
  std::ostringstream text;

  if (subcommand == "validate") {
    auto bad = validate_groupoid(G);
    if (opt.json) {
      ordered_json j;
      j["command"] = "validate";
      j["valid"] = bad.empty();
      j["violations"] = bad;
      res.out = j.dump(2) + "\n";
    } else if (bad.empty()) {
      res.out = "ok\n";
    } else {
      for (auto& b : bad) text << b << "\n";
      res.out = text.str();
    }
    res.exit_code = bad.empty() ? 0 : 2;
    return res;
  }

  if (subcommand == "h2") {
    int n = opt.n_override.value_or(doc.cocycle ? doc.cocycle->n : 2);
    if (!opt.n_override && !doc.cocycle)
      res.notice += "notice: no modulus given; using n=2\n";
    NerveTable N(G);
    CohomologyResult H = cohomology(N, 2, n);
    PairTable pairs = PairTable::build(G);
    if (opt.json) {
      ordered_json j;
      j["command"] = "h2";
      j["n"] = n;
      j["invariants"] = ordered_json::array();
      for (const auto& v : H.invariants) j["invariants"].push_back(v.str());
      j["order"] = H.order.str();
      j["representatives"] = ordered_json::array();
      for (const auto& rep : H.representatives) {
        ordered_json lines = ordered_json::array();
        for (int i = 0; i < pairs.size(); ++i) {
          if (rep.values[i] == 0) continue;
          auto [g, h] = pairs.pairs[i];
          lines.push_back({{"g", G.arrow_name(g)}, {"h", G.arrow_name(h)},
                           {"value", rep.values[i]}});
        }
        j["representatives"].push_back(lines);
      }
      res.out = j.dump(2) + "\n";
    } else {
      text << "H^2 with Z/" << n << " coefficients: ";
      if (H.invariants.empty()) {
        text << "trivial group\n";
      } else {
        bool first = true;
        for (const auto& v : H.invariants) {
          text << (first ? "" : " x ") << "Z/" << v.str();
          first = false;
        }
        text << "  (order " << H.order.str() << ")\n";
      }
      for (std::size_t r = 0; r < H.representatives.size(); ++r) {
        text << "generator " << r + 1 << ":";
        for (int i = 0; i < pairs.size(); ++i) {
          if (H.representatives[r].values[i] == 0) continue;
          auto [g, h] = pairs.pairs[i];
          text << " c(" << G.arrow_name(g) << "," << G.arrow_name(h)
               << ")=" << H.representatives[r].values[i];
        }
        text << "\n";
      }
      res.out = text.str();
    }
    return res;
  }

  if (subcommand == "inertia") {
    InertiaGroupoid I = build_inertia(G);
    auto orbits = conjugation_orbits(G);
    if (opt.json) {
      ordered_json j;
      j["command"] = "inertia";
      j["loops"] = I.gpd.n_objects;
      j["arrows"] = I.gpd.n_arrows();
      j["orbits"] = ordered_json::array();
      for (const auto& o : orbits) {
        ordered_json names = ordered_json::array();
        for (int h : o) names.push_back(G.arrow_name(h));
        j["orbits"].push_back(names);
      }
      res.out = j.dump(2) + "\n";
    } else {
      text << "inertia groupoid: " << I.gpd.n_objects << " loops, " << I.gpd.n_arrows()
           << " arrows, " << orbits.size() << " conjugation orbits\n";
      for (const auto& o : orbits) {
        text << " orbit:";
        for (int h : o) text << " " << G.arrow_name(h);
        text << "\n";
      }
      res.out = text.str();
    }
    return res;
  }

  // the remaining commands need a cocycle (or its zero default)
  PhaseCocycle c = effective_cocycle(doc, opt, res.notice);
  int n = c.n;

  if (subcommand == "ktheory") {
    TwistedAlgebra A(G, c, n);
    ZnExtension E = build_extension(G, c, n);
    int blocks = A.block_count();
    int centre = (int)A.center_basis().size();
    int codim = A.dim() - A.commutator_rank();
    CharacterDecomposition D = decompose_by_character(E);
    if (opt.json) {
      ordered_json j;
      j["command"] = "ktheory";
      j["n"] = n;
      j["block_count"] = blocks;
      j["center_dim"] = centre;
      j["commutator_codim"] = codim;
      j["k1"] = 0;
      j["eigenspace_blocks"] = D.summand_blocks;
      j["extension_blocks"] = D.extension_blocks;
      res.out = j.dump(2) + "\n";
    } else {
      text << "block count (rank K_0 x C = dim HP_0): " << blocks << "\n";
      text << "center dimension: " << centre << ", commutator codimension: " << codim
           << "\n";
      text << "K_1 = 0 (finite-dimensional algebra)\n";
      text << "eigenspace blocks of the Z/" << n << " extension:";
      for (int k = 0; k < (int)D.summand_blocks.size(); ++k)
        text << " k=" << k << ":" << D.summand_blocks[k];
      text << " (total " << D.extension_blocks << ")\n";
      res.out = text.str();
    }
    return res;
  }

  if (subcommand == "twisted-cohomology") {
    ZnExtension E = build_extension(G, c, n);
    SectorBasis S = invariant_sections(E);
    OrbitCensus census = alpha_regular_orbits(E);
    std::unordered_map<int, int> pos;
    for (int i = 0; i < (int)S.loop_list.size(); ++i) pos[S.loop_list[i]] = i;
    if (opt.json) {
      ordered_json j;
      j["command"] = "twisted-cohomology";
      j["n"] = n;
      j["dimension"] = S.dimension;
      j["orbits"] = ordered_json::array();
      for (std::size_t o = 0; o < census.orbits.size(); ++o) {
        ordered_json names = ordered_json::array();
        for (int h : census.orbits[o]) names.push_back(G.arrow_name(h));
        j["orbits"].push_back({{"loops", names}, {"regular", (bool)census.regular[o]}});
      }
      j["basis_supports"] = ordered_json::array();
      for (const auto& b : S.basis) {
        ordered_json supp = ordered_json::array();
        for (int i = 0; i < (int)S.loop_list.size(); ++i)
          if (!b[i].is_zero()) supp.push_back(G.arrow_name(S.loop_list[i]));
        j["basis_supports"].push_back(supp);
      }
      res.out = j.dump(2) + "\n";
    } else {
      text << "degree-0 twisted cohomology dimension: " << S.dimension << "\n";
      for (std::size_t o = 0; o < census.orbits.size(); ++o) {
        text << " orbit" << (census.regular[o] ? " (regular):" : " (irregular):");
        for (int h : census.orbits[o]) text << " " << G.arrow_name(h);
        text << "\n";
      }
      for (std::size_t b = 0; b < S.basis.size(); ++b) {
        text << " basis " << b + 1 << " supported on:";
        for (int i = 0; i < (int)S.loop_list.size(); ++i)
          if (!S.basis[b][i].is_zero()) text << " " << G.arrow_name(S.loop_list[i]);
        text << "\n";
      }
      res.out = text.str();
    }
    return res;
  }

  if (subcommand == "chern-check") {
    ChernReport rep = chern_rank_check(G, c, n);
    if (opt.json) {
      ordered_json j;
      j["k_rank"] = rep.k_rank;
      j["h_even"] = rep.h_even;
      j["h_odd"] = rep.h_odd;
      j["verdict"] = rep.verdict;
      j["witness_rank"] = rep.witness_rank;
      res.out = j.dump(2) + "\n";
    } else {
      text << "k_rank (blocks) = " << rep.k_rank << "\n";
      text << "h_even (sections) = " << rep.h_even << ", h_odd = " << rep.h_odd << "\n";
      text << "alpha-regular orbits = " << rep.regular_orbits << "\n";
      text << "witness rank = " << rep.witness_rank << "\n";
      text << "verdict: " << (rep.verdict ? "true" : "false") << "\n";
      res.out = text.str();
    }
    res.exit_code = rep.verdict ? 0 : 2;
    return res;
  }

  if (subcommand == "character-table") {
    if (G.n_objects != 1) {
      res.exit_code = 1;
      res.out = "error: character-table needs a group over a single object\n";
      return res;
    }
    FiniteGroup Grp;
    Grp.order = G.n_arrows();
    Grp.mul.assign(Grp.order, std::vector<int>(Grp.order));
    for (int g = 0; g < Grp.order; ++g)
      for (int h = 0; h < Grp.order; ++h) Grp.mul[g][h] = G.compose(g, h);
    Grp.names.resize(Grp.order);
    for (int g = 0; g < Grp.order; ++g) Grp.names[g] = G.arrow_name(g);
    Grp = make_group(Grp.mul, Grp.names);

    CharacterCheckReport rep = character_check(Grp);
    const CharacterTable& T = rep.table;
    if (opt.json) {
      ordered_json j;
      j["command"] = "character-table";
      j["classes"] = ordered_json::array();
      for (const auto& cls : T.classes) {
        ordered_json names = ordered_json::array();
        for (int g : cls) names.push_back(Grp.name(g));
        j["classes"].push_back(names);
      }
      j["degrees"] = T.degrees;
      j["values"] = ordered_json::array();
      for (const auto& row : T.values) {
        ordered_json vals = ordered_json::array();
        for (const auto& v : row) vals.push_back(v.str());
        j["values"].push_back(vals);
      }
      j["idempotent_checks"] = rep.idempotent_checks;
      j["value_checks"] = rep.value_checks;
      j["passed"] = rep.passed;
      res.out = j.dump(2) + "\n";
    } else {
      text << "classes:";
      for (const auto& cls : T.classes) text << " {" << Grp.name(cls.front()) << "}x" << cls.size();
      text << "\n";
      for (std::size_t pi = 0; pi < T.values.size(); ++pi) {
        text << "chi_" << pi + 1 << " (degree " << T.degrees[pi] << "):";
        for (const auto& v : T.values[pi]) text << " " << v.str();
        text << "\n";
      }
      text << "idempotent and trace checks: "
           << (rep.passed ? "all passed" : "FAILED") << " (" << rep.value_checks
           << " value checks)\n";
      for (const auto& f : rep.failures) text << "  " << f << "\n";
      res.out = text.str();
    }
    res.exit_code = rep.passed ? 0 : 2;
    return res;
  }

  res.exit_code = 1;
  res.out = "error: unknown subcommand '" + subcommand + "'\n";
  return res;
}

}  // namespace gerbek
