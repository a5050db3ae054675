#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/grid_layout.hpp"
#include "puzred/mixed_graph.hpp"

namespace puzred {

enum class SegStatus : std::uint8_t { Empty = 0, Undirected = 1, Required = 2, Directed = 3 };

// One unit segment of the full bounding-box grid. For directed segments
// `reversed` is false when the tail-to-head traversal runs toward +x/+y.
struct GridSegment {
  SegStatus status = SegStatus::Empty;
  bool reversed = false;
  int edge = -1;
  friend bool operator==(const GridSegment&, const GridSegment&) = default;
};

// The whole bounding box as a lattice: every unit segment carries a status,
// including the empty ones. Lattice points are (x, y) with 0 <= x <= width,
// 0 <= y <= height after translating the layout by -origin.
struct GridGraph {
  int width = 0, height = 0;
  Pt origin;
  std::vector<GridSegment> hseg;  // width * (height + 1), index y * width + x
  std::vector<GridSegment> vseg;  // (width + 1) * height, index y * (width + 1) + x
  std::map<Pt, VertexId> vertex_at;
  std::map<Pt, int> interior_edge;
  MixedGraph graph;

  GridSegment& horizontal(int x, int y) { return hseg[y * width + x]; }
  GridSegment& vertical(int x, int y) { return vseg[y * (width + 1) + x]; }
  const GridSegment& horizontal(int x, int y) const { return hseg[y * width + x]; }
  const GridSegment& vertical(int x, int y) const { return vseg[y * (width + 1) + x]; }

  int point_degree(int x, int y) const {
    return (x > 0 ? 1 : 0) + (x < width ? 1 : 0) + (y > 0 ? 1 : 0) + (y < height ? 1 : 0);
  }
};

inline GridGraph to_grid_graph(const GridLayout& lay) {
  check_layout(lay);
  GridGraph gg;
  Box b = lay.bounding_box();
  gg.origin = {b.min_x, b.min_y};
  gg.width = b.width();
  gg.height = b.height();
  gg.graph = lay.graph;
  gg.hseg.assign(static_cast<std::size_t>(gg.width) * (gg.height + 1), {});
  gg.vseg.assign(static_cast<std::size_t>(gg.width + 1) * gg.height, {});

  for (const auto& [v, p] : lay.vertex_pos) gg.vertex_at[p - gg.origin] = v;
  for (std::size_t ei = 0; ei < lay.edge_path.size(); ++ei) {
    const Edge& e = lay.graph.edges[ei];
    const auto& path = lay.edge_path[ei];
    SegStatus st = e.kind == EdgeKind::Required
                       ? SegStatus::Required
                       : (e.kind == EdgeKind::Arc ? SegStatus::Directed : SegStatus::Undirected);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Pt a = path[i] - gg.origin, c = path[i + 1] - gg.origin;
      GridSegment seg{st, c.x < a.x || c.y < a.y, static_cast<int>(ei)};
      if (a.y == c.y)
        gg.horizontal(std::min(a.x, c.x), a.y) = seg;
      else
        gg.vertical(a.x, std::min(a.y, c.y)) = seg;
      if (i > 0) gg.interior_edge[a] = static_cast<int>(ei);
    }
  }
  return gg;
}

namespace detail {

inline char seg_char(const GridSegment& s, bool horizontal) {
  switch (s.status) {
    case SegStatus::Empty: return '.';
    case SegStatus::Undirected: return 'u';
    case SegStatus::Required: return 'r';
    case SegStatus::Directed:
      if (horizontal) return s.reversed ? '<' : '>';
      return s.reversed ? 'v' : '^';
  }
  throw StructuralError("unknown segment status");
}

inline GridSegment seg_from_char(char c, bool horizontal, int line_no) {
  switch (c) {
    case '.': return {SegStatus::Empty, false, -1};
    case 'u': return {SegStatus::Undirected, false, -1};
    case 'r': return {SegStatus::Required, false, -1};
    case '>': if (horizontal) return {SegStatus::Directed, false, -1}; break;
    case '<': if (horizontal) return {SegStatus::Directed, true, -1}; break;
    case '^': if (!horizontal) return {SegStatus::Directed, false, -1}; break;
    case 'v': if (!horizontal) return {SegStatus::Directed, true, -1}; break;
    default: break;
  }
  throw ParseError(line_no, std::string("bad segment character '") + c + "'");
}

}  // namespace detail

// Row-major text form: all horizontal rows bottom to top, then all vertical
// rows. Horizontal row y lists the segments (x,y)-(x+1,y) for x ascending;
// vertical row y lists (x,y)-(x,y+1).
inline std::string serialize_grid(const GridGraph& gg) {
  std::ostringstream out;
  out << "grid " << gg.width << " " << gg.height << "\n";
  for (int y = 0; y <= gg.height; ++y) {
    for (int x = 0; x < gg.width; ++x) out << detail::seg_char(gg.horizontal(x, y), true);
    out << "\n";
  }
  for (int y = 0; y < gg.height; ++y) {
    for (int x = 0; x <= gg.width; ++x) out << detail::seg_char(gg.vertical(x, y), false);
    out << "\n";
  }
  return out.str();
}

// Rebuilds the lattice statuses (the graph and back-maps do not travel
// through this format).
inline GridGraph parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError(0, "empty grid file");
  GridGraph gg;
  {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind >> gg.width >> gg.height) || kind != "grid" || gg.width < 0 ||
        gg.height < 0)
      throw ParseError(line_no, "expected 'grid <width> <height>'");
  }
  gg.hseg.assign(static_cast<std::size_t>(gg.width) * (gg.height + 1), {});
  gg.vseg.assign(static_cast<std::size_t>(gg.width + 1) * gg.height, {});
  for (int y = 0; y <= gg.height; ++y) {
    ++line_no;
    if (!std::getline(in, line) || static_cast<int>(line.size()) != gg.width)
      throw ParseError(line_no, "horizontal row has wrong length");
    for (int x = 0; x < gg.width; ++x)
      gg.horizontal(x, y) = detail::seg_from_char(line[x], true, line_no);
  }
  for (int y = 0; y < gg.height; ++y) {
    ++line_no;
    if (!std::getline(in, line) || static_cast<int>(line.size()) != gg.width + 1)
      throw ParseError(line_no, "vertical row has wrong length");
    for (int x = 0; x <= gg.width; ++x)
      gg.vertical(x, y) = detail::seg_from_char(line[x], false, line_no);
  }
  return gg;
}

// Contracts the drawn unit segments back into an abstract instance: lattice
// points with two collinear-or-bent drawn segments are path interiors, all
// others are vertices. Segment statuses must agree along each chain. Vertex
// identities come from `names` when given (by normalized lattice point),
// else fresh ids in scan order.
inline MixedGraph contract_grid(const GridGraph& gg, const std::map<Pt, VertexId>* names = nullptr) {
  auto seg_at = [&](Pt p, int d) -> const GridSegment* {  // d: 0 +x, 1 +y, 2 -x, 3 -y
    switch (d) {
      case 0: return p.x < gg.width ? &gg.horizontal(p.x, p.y) : nullptr;
      case 1: return p.y < gg.height ? &gg.vertical(p.x, p.y) : nullptr;
      case 2: return p.x > 0 ? &gg.horizontal(p.x - 1, p.y) : nullptr;
      default: return p.y > 0 ? &gg.vertical(p.x, p.y - 1) : nullptr;
    }
  };
  auto drawn_dirs = [&](Pt p) {
    std::vector<int> dirs;
    for (int d = 0; d < 4; ++d) {
      const GridSegment* s = seg_at(p, d);
      if (s && s->status != SegStatus::Empty) dirs.push_back(d);
    }
    return dirs;
  };

  std::map<Pt, VertexId> vid;
  VertexId next = 0;
  for (int y = 0; y <= gg.height; ++y)
    for (int x = 0; x < gg.width + 1; ++x) {
      Pt p{x, y};
      std::size_t deg = drawn_dirs(p).size();
      if (deg == 0 || deg == 2) continue;
      if (names) {
        auto it = names->find(p);
        if (it == names->end())
          throw StructuralError("no name for junction at " + detail::pt_str(p));
        vid[p] = it->second;
      } else {
        vid[p] = next++;
      }
    }

  MixedGraph out;
  for (const auto& [p, v] : vid) out.add_vertex(v);
  std::set<std::pair<Pt, int>> walked;  // (vertex point, outgoing direction)
  static const Pt step[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [p0, v0] : vid) {
    for (int d0 : drawn_dirs(p0)) {
      if (walked.count({p0, d0})) continue;
      Pt p = p0;
      int d = d0;
      SegStatus st = seg_at(p, d)->status;
      bool head_first = false;  // true when the first step runs against the arrow
      if (st == SegStatus::Directed) {
        const GridSegment* s = seg_at(p, d);
        bool toward_positive = (d == 0 || d == 1);
        head_first = (s->reversed == toward_positive);
      }
      while (true) {
        const GridSegment* s = seg_at(p, d);
        if (s->status != st)
          throw StructuralError("segment status changes along a chain at " + detail::pt_str(p));
        p = p + step[d];
        auto dirs = drawn_dirs(p);
        if (dirs.size() != 2) break;
        d = dirs[0] == ((d + 2) % 4) ? dirs[1] : dirs[0];
      }
      walked.insert({p, (d + 2) % 4});
      VertexId a = v0, b = vid.at(p);
      if (st == SegStatus::Directed) {
        if (head_first) std::swap(a, b);
        out.add_arc(a, b);
      } else if (st == SegStatus::Required) {
        out.add_required(a, b);
      } else {
        out.add_undirected(a, b);
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace puzred
