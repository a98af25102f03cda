#pragma once

// The input format and its parser. One self-contained text format:
//
//   [objects]            object names, whitespace separated
//   [arrows]             lines "id src tgt"
//   [compose]            lines "g h gh"   (meaning comp(g,h) = gh)
// or, for action groupoids,
//   [group]              lines "g h gh"   (full multiplication table)
//   [action]             lines "x g y"    (act(x,g) = y; points from [objects]
//                                          or inferred in order of appearance)
// plus an optional
//   [cocycle] n=INT      lines "g h value"; unlisted composable pairs are 0
//
// '#' starts a comment. Parsing is total: malformed input produces a located
// diagnostic, never a crash. Cocycles are normalized at parse time.

#include "gerbek/cochain.hpp"
#include "gerbek/groupoid.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gerbek {

struct ParseError {
  int line = 0;
  std::string message;
  std::string str() const { return "line " + std::to_string(line) + ": " + message; }
};

struct Document {
  FiniteGroupoid groupoid;
  bool action_form = false;
  std::optional<GroupAction> action;
  std::optional<PhaseCocycle> cocycle;  // normalized, over PairTable::build(groupoid)
  bool cocycle_was_normalized = false;  // true when parsing had to adjust it
};

namespace io_detail {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line l{number, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

struct NameTable {
  std::map<std::string, int> index;
  std::vector<std::string> names;
  int lookup(const std::string& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
  int intern(const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = (int)names.size();
    index.emplace(s, id);
    names.push_back(s);
    return id;
  }
};

}  // namespace io_detail

struct ParseResult {
  std::optional<Document> doc;
  std::optional<ParseError> error;
  bool ok() const { return doc.has_value(); }
};

inline ParseResult parse_document(const std::string& text) {
  using io_detail::Line;
  auto fail = [](int line, std::string msg) {
    ParseResult r;
    r.error = ParseError{line, std::move(msg)};
    return r;
  };
  try {
    std::vector<Line> lines = io_detail::tokenize(text);

    enum Section { NONE, OBJECTS, ARROWS, COMPOSE, GROUP, ACTION, COCYCLE };
    Section cur = NONE;
    io_detail::NameTable objects, arrows, group_elems;
    struct ArrowDecl { int line; std::string src, tgt; };
    std::vector<ArrowDecl> arrow_decls;
    std::vector<std::array<std::string, 3>> compose_lines, group_lines, action_lines;
    std::vector<int> compose_line_nos, group_line_nos, action_line_nos;
    std::vector<std::array<std::string, 3>> cocycle_lines;
    std::vector<int> cocycle_line_nos;
    int cocycle_n = 0, cocycle_header_line = 0;
    bool has_explicit = false, has_action = false;
    int first_line = lines.empty() ? 1 : lines.front().number;

    for (const auto& l : lines) {
      const std::string& head = l.tokens[0];
      if (head == "[objects]") {
        cur = OBJECTS;
        for (std::size_t i = 1; i < l.tokens.size(); ++i) objects.intern(l.tokens[i]);
        continue;
      }
      if (head == "[arrows]") { cur = ARROWS; has_explicit = true; continue; }
      if (head == "[compose]") { cur = COMPOSE; has_explicit = true; continue; }
      if (head == "[group]") { cur = GROUP; has_action = true; continue; }
      if (head == "[action]") { cur = ACTION; has_action = true; continue; }
      if (head == "[cocycle]") {
        cur = COCYCLE;
        cocycle_header_line = l.number;
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
          const std::string& t = l.tokens[i];
          if (t.rfind("n=", 0) == 0) {
            try {
              cocycle_n = std::stoi(t.substr(2));
            } catch (...) {
              return fail(l.number, "bad modulus '" + t + "' in [cocycle] header");
            }
          } else {
            return fail(l.number, "unexpected token '" + t + "' in [cocycle] header");
          }
        }
        if (cocycle_n < 1) return fail(l.number, "[cocycle] header needs n=INT with n >= 1");
        continue;
      }
      if (head.front() == '[') return fail(l.number, "unknown section '" + head + "'");

      switch (cur) {
        case NONE:
          return fail(l.number, "content before any section header");
        case OBJECTS:
          for (const auto& t : l.tokens) objects.intern(t);
          break;
        case ARROWS: {
          if (l.tokens.size() != 3)
            return fail(l.number, "[arrows] lines must be 'id src tgt'");
          if (arrows.lookup(l.tokens[0]) >= 0)
            return fail(l.number, "duplicate arrow '" + l.tokens[0] + "'");
          arrows.intern(l.tokens[0]);
          arrow_decls.push_back({l.number, l.tokens[1], l.tokens[2]});
          break;
        }
        case COMPOSE:
          if (l.tokens.size() != 3)
            return fail(l.number, "[compose] lines must be 'g h gh'");
          compose_lines.push_back({l.tokens[0], l.tokens[1], l.tokens[2]});
          compose_line_nos.push_back(l.number);
          break;
        case GROUP:
          if (l.tokens.size() != 3)
            return fail(l.number, "[group] lines must be 'g h gh'");
          group_lines.push_back({l.tokens[0], l.tokens[1], l.tokens[2]});
          group_line_nos.push_back(l.number);
          break;
        case ACTION:
          if (l.tokens.size() != 3)
            return fail(l.number, "[action] lines must be 'point element point'");
          action_lines.push_back({l.tokens[0], l.tokens[1], l.tokens[2]});
          action_line_nos.push_back(l.number);
          break;
        case COCYCLE:
          if (l.tokens.size() != 3)
            return fail(l.number, "[cocycle] lines must be 'g h value'");
          cocycle_lines.push_back({l.tokens[0], l.tokens[1], l.tokens[2]});
          cocycle_line_nos.push_back(l.number);
          break;
      }
    }

    if (has_explicit && has_action)
      return fail(first_line, "mix of explicit ([arrows]) and action ([group]) forms");
    if (!has_explicit && !has_action)
      return fail(first_line, "no groupoid data: need [arrows]/[compose] or [group]/[action]");

    Document doc;
    if (has_explicit) {
      std::vector<int> src, tgt;
      for (const auto& d : arrow_decls) {
        int s = objects.lookup(d.src), t = objects.lookup(d.tgt);
        if (s < 0) return fail(d.line, "unknown object '" + d.src + "'");
        if (t < 0) return fail(d.line, "unknown object '" + d.tgt + "'");
        src.push_back(s);
        tgt.push_back(t);
      }
      std::vector<std::array<int, 3>> triples;
      for (std::size_t i = 0; i < compose_lines.size(); ++i) {
        std::array<int, 3> t;
        for (int j = 0; j < 3; ++j) {
          t[j] = arrows.lookup(compose_lines[i][j]);
          if (t[j] < 0)
            return fail(compose_line_nos[i],
                        "unknown arrow '" + compose_lines[i][j] + "'");
        }
        triples.push_back(t);
      }
      doc.groupoid = assemble_groupoid((int)objects.names.size(), src, tgt, triples,
                                       objects.names, arrows.names);
      auto bad = validate_groupoid(doc.groupoid);
      if (!bad.empty()) return fail(first_line, "invalid groupoid: " + bad.front());
    } else {
      // group table
      for (const auto& g : group_lines)
        for (const auto& t : g) group_elems.intern(t);
      int order = (int)group_elems.names.size();
      if (order == 0) return fail(first_line, "[group] section is empty");
      std::vector<std::vector<int>> mul(order, std::vector<int>(order, -1));
      for (std::size_t i = 0; i < group_lines.size(); ++i) {
        int a = group_elems.lookup(group_lines[i][0]);
        int b = group_elems.lookup(group_lines[i][1]);
        int c = group_elems.lookup(group_lines[i][2]);
        mul[a][b] = c;
      }
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
          if (mul[a][b] < 0)
            return fail(first_line, "incomplete group table: missing " +
                                        group_elems.names[a] + " * " + group_elems.names[b]);
      GroupAction A;
      A.group = make_group(mul, group_elems.names);
      auto gbad = validate_group(A.group);
      if (!gbad.empty()) return fail(first_line, "not a group: " + gbad.front());

      // points: declared under [objects] or inferred from the action lines
      io_detail::NameTable points = objects;
      for (const auto& a : action_lines) {
        points.intern(a[0]);
        points.intern(a[2]);
      }
      if (points.names.empty()) points.intern("pt");
      A.n_points = (int)points.names.size();
      A.point_names = points.names;
      A.act.assign(A.n_points, std::vector<int>(order, -1));
      for (int x = 0; x < A.n_points; ++x) A.act[x][A.group.identity] = x;
      for (std::size_t i = 0; i < action_lines.size(); ++i) {
        int x = points.lookup(action_lines[i][0]);
        int g = group_elems.lookup(action_lines[i][1]);
        int y = points.lookup(action_lines[i][2]);
        if (g < 0)
          return fail(action_line_nos[i],
                      "unknown group element '" + action_lines[i][1] + "'");
        A.act[x][g] = y;
      }
      for (int x = 0; x < A.n_points; ++x)
        for (int g = 0; g < order; ++g)
          if (A.act[x][g] < 0)
            return fail(first_line, "incomplete action table: missing act(" +
                                        points.names[x] + ", " + group_elems.names[g] + ")");
      auto abad = validate_action(A);
      if (!abad.empty()) return fail(first_line, "not an action: " + abad.front());
      doc.action_form = true;
      doc.action = A;
      doc.groupoid = action_groupoid(A);
    }

    if (cocycle_n > 0) {
      PairTable pairs = PairTable::build(doc.groupoid);
      PhaseCocycle c = zero_cocycle(pairs, cocycle_n);
      std::map<std::string, int> arrow_by_name;
      for (int g = 0; g < doc.groupoid.n_arrows(); ++g)
        arrow_by_name[doc.groupoid.arrow_name(g)] = g;
      for (std::size_t i = 0; i < cocycle_lines.size(); ++i) {
        auto itg = arrow_by_name.find(cocycle_lines[i][0]);
        auto ith = arrow_by_name.find(cocycle_lines[i][1]);
        if (itg == arrow_by_name.end())
          return fail(cocycle_line_nos[i], "unknown arrow '" + cocycle_lines[i][0] + "'");
        if (ith == arrow_by_name.end())
          return fail(cocycle_line_nos[i], "unknown arrow '" + cocycle_lines[i][1] + "'");
        int value;
        try {
          value = std::stoi(cocycle_lines[i][2]);
        } catch (...) {
          return fail(cocycle_line_nos[i], "bad cocycle value '" + cocycle_lines[i][2] + "'");
        }
        if (!doc.groupoid.composable(itg->second, ith->second))
          return fail(cocycle_line_nos[i], "pair (" + cocycle_lines[i][0] + ", " +
                                               cocycle_lines[i][1] + ") is not composable");
        c.by_pair[pairs.index(itg->second, ith->second)] =
            ((value % cocycle_n) + cocycle_n) % cocycle_n;
      }
      NerveTable N(doc.groupoid);
      if (auto v = cocycle_violation(N, pairs, c))
        return fail(cocycle_header_line,
                    "not a cocycle: identity fails at (" + doc.groupoid.arrow_name((*v)[0]) +
                        ", " + doc.groupoid.arrow_name((*v)[1]) + ", " +
                        doc.groupoid.arrow_name((*v)[2]) + ")");
      if (!is_normalized(doc.groupoid, pairs, c)) {
        c = normalize_cocycle(N, pairs, c).cocycle;
        doc.cocycle_was_normalized = true;
      }
      doc.cocycle = std::move(c);
    }

    ParseResult res;
    res.doc = std::move(doc);
    return res;
  } catch (const std::exception& e) {
    return fail(0, std::string("internal parse failure: ") + e.what());
  }
}

inline std::string serialize_document(const Document& doc) {
  std::ostringstream os;
  const FiniteGroupoid& G = doc.groupoid;
  if (doc.action_form) {
    const GroupAction& A = *doc.action;
    os << "[objects]\n";
    for (int x = 0; x < A.n_points; ++x) os << A.point_name(x) << "\n";
    os << "[group]\n";
    for (int g = 0; g < A.group.order; ++g)
      for (int h = 0; h < A.group.order; ++h)
        os << A.group.name(g) << " " << A.group.name(h) << " "
           << A.group.name(A.group.mul[g][h]) << "\n";
    os << "[action]\n";
    for (int x = 0; x < A.n_points; ++x)
      for (int g = 0; g < A.group.order; ++g)
        os << A.point_name(x) << " " << A.group.name(g) << " "
           << A.point_name(A.act[x][g]) << "\n";
  } else {
    os << "[objects]\n";
    for (int x = 0; x < G.n_objects; ++x) os << G.object_name(x) << "\n";
    os << "[arrows]\n";
    for (int g = 0; g < G.n_arrows(); ++g)
      os << G.arrow_name(g) << " " << G.object_name(G.src[g]) << " "
         << G.object_name(G.tgt[g]) << "\n";
    os << "[compose]\n";
    for (int g = 0; g < G.n_arrows(); ++g)
      for (int h = 0; h < G.n_arrows(); ++h)
        if (G.composable(g, h))
          os << G.arrow_name(g) << " " << G.arrow_name(h) << " "
             << G.arrow_name(G.compose(g, h)) << "\n";
  }
  if (doc.cocycle) {
    PairTable pairs = PairTable::build(G);
    os << "[cocycle] n=" << doc.cocycle->n << "\n";
    for (int i = 0; i < pairs.size(); ++i) {
      if (doc.cocycle->by_pair[i] == 0) continue;
      auto [g, h] = pairs.pairs[i];
      os << G.arrow_name(g) << " " << G.arrow_name(h) << " " << doc.cocycle->by_pair[i]
         << "\n";
    }
  }
  return os.str();
}

// Parse a standalone cocycle file ([cocycle] section only) against an
// already-parsed groupoid.
inline ParseResult attach_cocycle(Document doc, const std::string& cocycle_text) {
  // drop any cocycle the document already carries, then re-parse with the
  // new section appended; names round-trip through the serializer
  doc.cocycle.reset();
  return parse_document(serialize_document(doc) + cocycle_text);
}

}  // namespace gerbek
