#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "puzred/common.hpp"

namespace puzred {

using VertexId = int;

enum class Side : std::uint8_t { Unknown = 0, One = 1, Two = 2 };

inline Side other_side(Side s) {
  if (s == Side::One) return Side::Two;
  if (s == Side::Two) return Side::One;
  return Side::Unknown;
}

enum class EdgeKind : std::uint8_t { Undirected = 0, Required = 1, Arc = 2 };

// Undirected and required edges are stored with u < v; arcs as tail u, head v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  EdgeKind kind = EdgeKind::Undirected;

  VertexId lo() const { return std::min(u, v); }
  VertexId hi() const { return std::max(u, v); }
  bool undirected() const { return kind != EdgeKind::Arc; }
  bool required() const { return kind == EdgeKind::Required; }
  VertexId other(VertexId x) const { return x == u ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline std::tuple<VertexId, VertexId, std::uint8_t> canonical_edge_key(const Edge& e) {
  return {e.lo(), e.hi(), static_cast<std::uint8_t>(e.kind)};
}

struct VertexDecl {
  VertexId id = 0;
  Side side = Side::Unknown;
  friend bool operator==(const VertexDecl&, const VertexDecl&) = default;
};

// Mixed graph with an undirected-edge subset marked required.
// Canonical form: vertices sorted by id, edges sorted by (lo, hi, kind).
struct MixedGraph {
  std::vector<VertexDecl> vertices;
  std::vector<Edge> edges;

  void add_vertex(VertexId id, Side side = Side::Unknown) {
    vertices.push_back({id, side});
  }

  void add_edge(VertexId u, VertexId v, EdgeKind kind) {
    if (kind != EdgeKind::Arc && u > v) std::swap(u, v);
    edges.push_back({u, v, kind});
  }

  void add_undirected(VertexId u, VertexId v) { add_edge(u, v, EdgeKind::Undirected); }
  void add_required(VertexId u, VertexId v) { add_edge(u, v, EdgeKind::Required); }
  void add_arc(VertexId tail, VertexId head) { add_edge(tail, head, EdgeKind::Arc); }

  // Sorts into canonical form. Duplicate vertex ids are a structural error.
  void normalize() {
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexDecl& a, const VertexDecl& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (vertices[i].id == vertices[i - 1].id)
        throw StructuralError("duplicate vertex id " + std::to_string(vertices[i].id));
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return canonical_edge_key(a) < canonical_edge_key(b);
    });
  }

  bool is_canonical() const {
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (vertices[i].id <= vertices[i - 1].id) return false;
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (canonical_edge_key(edges[i]) < canonical_edge_key(edges[i - 1])) return false;
    return true;
  }

  bool has_vertex(VertexId id) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), id,
                               [](const VertexDecl& a, VertexId b) { return a.id < b; });
    return it != vertices.end() && it->id == id;
  }

  Side side_of(VertexId id) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), id,
                               [](const VertexDecl& a, VertexId b) { return a.id < b; });
    if (it == vertices.end() || it->id != id)
      throw StructuralError("unknown vertex id " + std::to_string(id));
    return it->side;
  }

  // Index of the unique connection between u and v, or -1.
  int find_edge(VertexId u, VertexId v) const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return static_cast<int>(i);
    }
    return -1;
  }

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;
};

// Incident edge indices per vertex; requires all endpoints declared.
inline std::map<VertexId, std::vector<int>> incidence_map(const MixedGraph& g) {
  std::map<VertexId, std::vector<int>> inc;
  for (const auto& vd : g.vertices) inc[vd.id];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    for (VertexId x : {e.u, e.v}) {
      auto it = inc.find(x);
      if (it == inc.end())
        throw StructuralError("edge endpoint " + std::to_string(x) + " is not a declared vertex");
      it->second.push_back(static_cast<int>(i));
    }
  }
  return inc;
}

// One edge state per graph edge, in graph edge order.
// Forward on an undirected edge means traversal u -> v as stored; on an arc,
// Forward is the only used state and Backward is invalid.
enum class EdgeState : std::uint8_t { Unused = 0, Forward = 1, Backward = 2 };

struct CoverAssignment {
  std::vector<EdgeState> state;
  friend bool operator==(const CoverAssignment&, const CoverAssignment&) = default;
  friend auto operator<=>(const CoverAssignment&, const CoverAssignment&) = default;
};

// Compact form: one char per edge in canonical order, '.' unused, '>' forward,
// '<' backward.
inline std::string cover_to_string(const CoverAssignment& c) {
  std::string s;
  s.reserve(c.state.size());
  for (EdgeState st : c.state)
    s.push_back(st == EdgeState::Unused ? '.' : (st == EdgeState::Forward ? '>' : '<'));
  return s;
}

// ---------------------------------------------------------------------------
// Text format, one record per line:
//   v <id> [1|2]
//   e <u> <v> undir|req
//   a <tail> <head>
// '#' starts a comment; blank lines ignored. Every endpoint must be declared
// by a v record somewhere in the input.
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line_no, std::string("trailing characters in ") + what + " '" + tok + "'");
  return value;
}
}  // namespace detail

inline MixedGraph parse_mixed_graph(const std::string& text) {
  MixedGraph g;
  struct Ref {
    VertexId id;
    int line;
  };
  std::vector<Ref> refs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() != 2 && tok.size() != 3) throw ParseError(line_no, "v takes <id> [1|2]");
      VertexId id = detail::parse_int(tok[1], line_no, "vertex id");
      Side side = Side::Unknown;
      if (tok.size() == 3) {
        if (tok[2] == "1")
          side = Side::One;
        else if (tok[2] == "2")
          side = Side::Two;
        else
          throw ParseError(line_no, "side must be 1 or 2, got '" + tok[2] + "'");
      }
      g.add_vertex(id, side);
    } else if (tok[0] == "e") {
      if (tok.size() != 4) throw ParseError(line_no, "e takes <u> <v> undir|req");
      VertexId u = detail::parse_int(tok[1], line_no, "endpoint");
      VertexId v = detail::parse_int(tok[2], line_no, "endpoint");
      EdgeKind kind;
      if (tok[3] == "undir")
        kind = EdgeKind::Undirected;
      else if (tok[3] == "req")
        kind = EdgeKind::Required;
      else
        throw ParseError(line_no, "edge kind must be undir or req, got '" + tok[3] + "'");
      g.add_edge(u, v, kind);
      refs.push_back({u, line_no});
      refs.push_back({v, line_no});
    } else if (tok[0] == "a") {
      if (tok.size() != 3) throw ParseError(line_no, "a takes <tail> <head>");
      VertexId t = detail::parse_int(tok[1], line_no, "endpoint");
      VertexId h = detail::parse_int(tok[2], line_no, "endpoint");
      g.add_arc(t, h);
      refs.push_back({t, line_no});
      refs.push_back({h, line_no});
    } else {
      throw ParseError(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  try {
    g.normalize();
  } catch (const StructuralError& e) {
    throw ParseError(line_no, e.what());
  }
  for (const auto& r : refs)
    if (!g.has_vertex(r.id))
      throw ParseError(r.line, "undeclared vertex id " + std::to_string(r.id));
  return g;
}

inline std::string serialize_mixed_graph(const MixedGraph& g) {
  if (!g.is_canonical()) throw StructuralError("graph not in canonical form");
  std::ostringstream out;
  for (const auto& vd : g.vertices) {
    out << "v " << vd.id;
    if (vd.side == Side::One) out << " 1";
    if (vd.side == Side::Two) out << " 2";
    out << "\n";
  }
  for (const Edge& e : g.edges) {
    if (e.kind == EdgeKind::Arc)
      out << "a " << e.u << " " << e.v << "\n";
    else
      out << "e " << e.u << " " << e.v << (e.kind == EdgeKind::Required ? " req" : " undir")
          << "\n";
  }
  return out.str();
}

}  // namespace puzred
