#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/validate.hpp"

namespace puzred {

struct Pt {
  int x = 0;
  int y = 0;
  friend bool operator==(const Pt&, const Pt&) = default;
  friend auto operator<=>(const Pt&, const Pt&) = default;
  Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
  Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
};

struct Box {
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  int width() const { return max_x - min_x; }
  int height() const { return max_y - min_y; }
  friend bool operator==(const Box&, const Box&) = default;
};

// Orthogonal lattice drawing: one lattice point per vertex, one unit-step
// lattice path per edge, stored from the edge's u endpoint to its v endpoint.
struct GridLayout {
  MixedGraph graph;
  std::map<VertexId, Pt> vertex_pos;
  std::vector<std::vector<Pt>> edge_path;  // by edge index

  Box bounding_box() const {
    Box b;
    bool first = true;
    auto grow = [&](const Pt& p) {
      if (first) {
        b = {p.x, p.y, p.x, p.y};
        first = false;
        return;
      }
      b.min_x = std::min(b.min_x, p.x);
      b.min_y = std::min(b.min_y, p.y);
      b.max_x = std::max(b.max_x, p.x);
      b.max_y = std::max(b.max_y, p.y);
    };
    for (const auto& [v, p] : vertex_pos) grow(p);
    for (const auto& path : edge_path)
      for (const Pt& p : path) grow(p);
    return b;
  }
};

namespace detail {

inline bool unit_step(const Pt& a, const Pt& b) {
  int dx = b.x - a.x, dy = b.y - a.y;
  return (dx == 0 && (dy == 1 || dy == -1)) || (dy == 0 && (dx == 1 || dx == -1));
}

inline std::pair<Pt, Pt> seg_key(const Pt& a, const Pt& b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

inline std::string pt_str(const Pt& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace detail

// Structural validity: every vertex placed, positions distinct, every edge
// drawn as a self-avoiding unit-step path between its endpoints, paths
// pairwise disjoint except where they share an endpoint vertex.
inline void check_layout(const GridLayout& lay) {
  const MixedGraph& g = lay.graph;
  if (!g.is_canonical()) throw StructuralError("layout graph not canonical");
  std::set<Pt> vpts;
  for (const auto& vd : g.vertices) {
    auto it = lay.vertex_pos.find(vd.id);
    if (it == lay.vertex_pos.end())
      throw StructuralError("vertex " + std::to_string(vd.id) + " has no position");
    if (!vpts.insert(it->second).second)
      throw StructuralError("two vertices share point " + detail::pt_str(it->second));
  }
  if (lay.edge_path.size() != g.edges.size())
    throw StructuralError("edge path count does not match edge count");

  std::map<Pt, int> interior_owner;          // path interior point -> edge
  std::set<std::pair<Pt, Pt>> used_segments;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const Edge& e = g.edges[ei];
    const auto& path = lay.edge_path[ei];
    if (path.size() < 2) throw StructuralError("edge path too short");
    if (path.front() != lay.vertex_pos.at(e.u) || path.back() != lay.vertex_pos.at(e.v))
      throw StructuralError("path endpoints disagree with vertex positions for edge " +
                            std::to_string(e.u) + "-" + std::to_string(e.v));
    std::set<Pt> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!seen.insert(path[i]).second)
        throw StructuralError("edge path revisits " + detail::pt_str(path[i]));
      if (i + 1 < path.size()) {
        if (!detail::unit_step(path[i], path[i + 1]))
          throw StructuralError("non-unit step at " + detail::pt_str(path[i]));
        if (!used_segments.insert(detail::seg_key(path[i], path[i + 1])).second)
          throw StructuralError("two paths share the segment at " + detail::pt_str(path[i]));
      }
      if (i == 0 || i + 1 == path.size()) continue;
      if (vpts.count(path[i]))
        throw StructuralError("path passes through a vertex point at " + detail::pt_str(path[i]));
      if (!interior_owner.emplace(path[i], static_cast<int>(ei)).second)
        throw StructuralError("two paths share the point " + detail::pt_str(path[i]));
    }
  }
}

// Realized cyclic edge order at each vertex (first-step directions sorted
// counterclockwise starting east). Directions: 0 E, 1 N, 2 W, 3 S.
inline std::vector<std::vector<int>> realized_rotation(const GridLayout& lay) {
  const MixedGraph& g = lay.graph;
  std::map<VertexId, int> idx;
  for (const auto& vd : g.vertices) idx[vd.id] = static_cast<int>(idx.size());
  std::vector<std::vector<std::pair<int, int>>> at(idx.size());  // (direction, edge)
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto& path = lay.edge_path[ei];
    auto dir = [](const Pt& from, const Pt& to) {
      if (to.x > from.x) return 0;
      if (to.y > from.y) return 1;
      if (to.x < from.x) return 2;
      return 3;
    };
    at[idx.at(g.edges[ei].u)].push_back({dir(path[0], path[1]), static_cast<int>(ei)});
    at[idx.at(g.edges[ei].v)].push_back(
        {dir(path[path.size() - 1], path[path.size() - 2]), static_cast<int>(ei)});
  }
  std::vector<std::vector<int>> rot(idx.size());
  for (std::size_t v = 0; v < at.size(); ++v) {
    std::sort(at[v].begin(), at[v].end());
    for (auto& [d, e] : at[v]) rot[v].push_back(e);
  }
  return rot;
}

// True when `got` equals `want` at every vertex up to cyclic shift, either
// as given everywhere or reversed everywhere (one mirror flag per connected
// component would be more permissive; whole-layout chirality suffices here).
inline bool rotation_matches(const std::vector<std::vector<int>>& got,
                             const std::vector<std::vector<int>>& want) {
  if (got.size() != want.size()) return false;
  auto cyclic_eq = [](std::vector<int> a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < a.size(); ++s) {
      std::rotate(a.begin(), a.begin() + 1, a.end());
      if (a == b) return true;
    }
    return false;
  };
  bool straight = true, mirrored = true;
  for (std::size_t v = 0; v < got.size(); ++v) {
    if (!cyclic_eq(got[v], want[v])) straight = false;
    std::vector<int> rev(want[v].rbegin(), want[v].rend());
    if (!cyclic_eq(got[v], rev)) mirrored = false;
  }
  return straight || mirrored;
}

// Bend-everywhere check: consecutive path segments alternate axis, and the
// required edge leaves each vertex orthogonally to both other edges.
inline void check_zigzag(const GridLayout& lay) {
  const MixedGraph& g = lay.graph;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto& path = lay.edge_path[ei];
    for (std::size_t i = 2; i < path.size(); ++i) {
      bool h1 = path[i - 1].y == path[i - 2].y;
      bool h2 = path[i].y == path[i - 1].y;
      if (h1 == h2)
        throw StructuralError("straight run through " + detail::pt_str(path[i - 1]));
    }
  }
  auto inc = incidence_map(g);
  for (const auto& [v, list] : inc) {
    int req_axis = -1;
    std::vector<int> other_axis;
    for (int ei : list) {
      const auto& path = lay.edge_path[ei];
      Pt a = lay.vertex_pos.at(v);
      Pt b = path.front() == a ? path[1] : path[path.size() - 2];
      int axis = b.y == a.y ? 0 : 1;
      if (g.edges[ei].required())
        req_axis = axis;
      else
        other_axis.push_back(axis);
    }
    if (req_axis == -1) continue;  // arc-marked instances have no required edges
    for (int a : other_axis)
      if (a == req_axis)
        throw StructuralError("required edge not orthogonal at vertex " + std::to_string(v));
  }
}

// ---------------------------------------------------------------------------
// Text format. Header `layout <minx> <miny> <maxx> <maxy>`, then
// `p <id> <x> <y>` per vertex and `path <edgeidx> <x1> <y1> ... <xk> <yk>`
// per edge. The graph itself travels separately in its own format.

inline std::string serialize_layout(const GridLayout& lay) {
  std::ostringstream out;
  Box b = lay.bounding_box();
  out << "layout " << b.min_x << " " << b.min_y << " " << b.max_x << " " << b.max_y << "\n";
  for (const auto& [v, p] : lay.vertex_pos) out << "p " << v << " " << p.x << " " << p.y << "\n";
  for (std::size_t ei = 0; ei < lay.edge_path.size(); ++ei) {
    out << "path " << ei;
    for (const Pt& p : lay.edge_path[ei]) out << " " << p.x << " " << p.y;
    out << "\n";
  }
  return out.str();
}

inline GridLayout parse_layout(const MixedGraph& g, const std::string& text) {
  GridLayout lay;
  lay.graph = g;
  lay.edge_path.resize(g.edges.size());
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind == "#") continue;
    if (kind == "layout") {
      have_header = true;
      continue;  // header is advisory; box is recomputed
    }
    if (kind == "p") {
      long long id;
      Pt p;
      if (!(ls >> id >> p.x >> p.y)) throw ParseError(line_no, "bad vertex position line");
      lay.vertex_pos[static_cast<VertexId>(id)] = p;
      continue;
    }
    if (kind == "path") {
      std::size_t ei;
      if (!(ls >> ei) || ei >= lay.edge_path.size())
        throw ParseError(line_no, "bad edge index");
      std::vector<Pt> path;
      Pt p;
      while (ls >> p.x >> p.y) path.push_back(p);
      if (path.size() < 2) throw ParseError(line_no, "path needs at least two points");
      lay.edge_path[ei] = std::move(path);
      continue;
    }
    throw ParseError(line_no, "unknown record '" + kind + "'");
  }
  if (!have_header) throw ParseError(line_no, "missing layout header");
  check_layout(lay);
  return lay;
}

}  // namespace puzred
