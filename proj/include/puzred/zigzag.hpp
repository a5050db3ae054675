#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/grid_layout.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/validate.hpp"

namespace puzred {

namespace detail {

inline int fine_parity(const Pt& p) { return ((p.x + p.y) % 2 + 2) % 2; }

inline int floor_half(int x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }

inline Pt block_of(const Pt& fine) { return {floor_half(fine.x), floor_half(fine.y)}; }

inline Pt rel_in_block(const Pt& fine) {
  Pt b = block_of(fine);
  return {fine.x - 2 * b.x, fine.y - 2 * b.y};
}

// Sub-point from which a walk with rule k exits a block toward `dir`.
// A walk moves horizontally exactly at points of parity k, so each exit
// side has a single admissible row or column.
inline Pt exit_rel(const Pt& dir, int k) {
  if (dir.x == 1) return {1, 1 ^ k};
  if (dir.x == -1) return {0, k};
  if (dir.y == 1) return {k, 1};
  return {1 ^ k, 0};
}

inline Pt forced_in_block_step(const Pt& cur, int k) {
  Pt b = block_of(cur), r = rel_in_block(cur);
  if (fine_parity(cur) == k)
    return {2 * b.x + (1 - r.x), cur.y};
  return {cur.x, 2 * b.y + (1 - r.y)};
}

struct StubPlan {
  int edge = -1;
  bool at_tail = false;  // true when the vertex is the stored u endpoint
  int rule = 0;          // horizontal exactly at fine points of this parity
  Pt dir;                // first coarse step away from the vertex
  Pt corridor;           // first coarse path point after the vertex
  std::vector<Pt> route; // fine points from the vertex point into the corridor block
};

}  // namespace detail

// Scale-2 refinement: each coarse lattice point becomes a 2x2 block of fine
// points and every edge is redrawn so that it bends at every intermediate
// point. Each edge walks under a fixed rule (horizontal moves exactly at one
// fine-coordinate parity) derived from its endpoints' sides, which makes the
// required edge leave every vertex orthogonally to the other two edges and
// puts all required stubs in one parity class: a required edge leaves its
// vertex horizontally exactly when the vertex's fine parity differs from its
// side class. Needs a bipartite instance with exactly one required edge per
// degree-3 vertex and enough clearance around vertices (the embedding pass
// provides it); insufficient clearance is a structural error.
inline GridLayout zigzag_refine(const GridLayout& coarse) {
  check_layout(coarse);
  const MixedGraph& g = coarse.graph;
  auto sides = computed_sides(g);  // ClassError when not bipartite
  auto inc = incidence_map(g);
  for (const auto& [v, list] : inc) {
    if (list.size() != 3)
      throw ClassError("refinement needs degree 3, vertex " + std::to_string(v));
    int req = 0;
    for (int ei : list) req += g.edges[ei].required() ? 1 : 0;
    if (req != 1)
      throw ClassError("refinement needs one required edge at vertex " + std::to_string(v));
  }
  for (const auto& path : coarse.edge_path)
    if (path.size() < 4)
      throw StructuralError("edge drawn too short to refine; re-embed with more clearance");

  std::vector<VertexId> ids;
  std::map<VertexId, int> vidx;
  for (const auto& vd : g.vertices) {
    vidx[vd.id] = static_cast<int>(ids.size());
    ids.push_back(vd.id);
  }
  std::vector<int> chi(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) chi[i] = sides.at(ids[i]) == Side::Two ? 1 : 0;
  std::vector<int> rule(g.edges.size());
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    int cu = chi[vidx.at(g.edges[ei].u)];
    rule[ei] = g.edges[ei].required() ? 1 - cu : cu;
  }

  // coarse occupancy: vertex blocks and path interiors are reserved
  std::map<Pt, int> owner;  // coarse point -> edge index, or -1 for a vertex
  for (const auto& [v, p] : coarse.vertex_pos) owner[p] = -1;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
    for (std::size_t i = 1; i + 1 < coarse.edge_path[ei].size(); ++i)
      owner[coarse.edge_path[ei][i]] = static_cast<int>(ei);

  std::map<Pt, int> claimed;  // free coarse block -> vertex that routed through it
  std::set<Pt> used_fine;
  std::map<int, Pt> vertex_fine;
  std::map<std::pair<int, int>, std::vector<Pt>> stub_route;  // (vertex, edge)

  for (std::size_t vi = 0; vi < ids.size(); ++vi) {
    VertexId v = ids[vi];
    Pt vc = coarse.vertex_pos.at(v);
    std::vector<detail::StubPlan> stubs;
    for (int ei : inc.at(v)) {
      const auto& path = coarse.edge_path[ei];
      detail::StubPlan sp;
      sp.edge = ei;
      sp.at_tail = path.front() == vc;
      sp.corridor = sp.at_tail ? path[1] : path[path.size() - 2];
      sp.dir = sp.corridor - vc;
      sp.rule = sp.at_tail ? rule[ei] : 1 - rule[ei];
      stubs.push_back(sp);
    }
    // required stub routes first; the remaining order follows the compass
    std::sort(stubs.begin(), stubs.end(), [&](const auto& a, const auto& b) {
      bool ra = g.edges[a.edge].required(), rb = g.edges[b.edge].required();
      if (ra != rb) return ra;
      return std::pair{a.dir.x, a.dir.y} < std::pair{b.dir.x, b.dir.y};
    });

    bool built = false;
    for (Pt delta : {Pt{0, 0}, Pt{1, 0}, Pt{0, 1}, Pt{1, 1}}) {
      Pt start{2 * vc.x + delta.x, 2 * vc.y + delta.y};
      if (used_fine.count(start)) continue;
      std::set<Pt> local = used_fine;
      std::vector<std::vector<Pt>> routes;
      bool ok = true;
      for (const auto& sp : stubs) {
        auto allowed = [&](const Pt& f) {
          Pt b = detail::block_of(f);
          if (std::abs(b.x - vc.x) > 1 || std::abs(b.y - vc.y) > 1) return false;
          if (b == vc) return true;
          if (b == sp.corridor) return true;
          for (const auto& other : stubs)
            if (other.edge != sp.edge && b == other.corridor) return false;
          if (owner.count(b)) return false;
          auto it = claimed.find(b);
          if (it != claimed.end() && it->second != static_cast<int>(vi)) return false;
          return true;
        };
        std::map<Pt, Pt> par;
        std::deque<Pt> q{start};
        par[start] = start;
        Pt hit{0, 0};
        bool found = false;
        while (!q.empty() && !found) {
          Pt x = q.front();
          q.pop_front();
          bool horiz = detail::fine_parity(x) == sp.rule;
          for (int sgn : {1, -1}) {
            Pt y = horiz ? Pt{x.x + sgn, x.y} : Pt{x.x, x.y + sgn};
            if (par.count(y) || local.count(y) || !allowed(y)) continue;
            par[y] = x;
            if (detail::block_of(y) == sp.corridor) {
              hit = y;
              found = true;
              break;
            }
            q.push_back(y);
          }
        }
        if (!found) {
          ok = false;
          break;
        }
        std::vector<Pt> route;
        for (Pt x = hit;; x = par[x]) {
          route.push_back(x);
          if (x == start) break;
        }
        std::reverse(route.begin(), route.end());
        for (std::size_t i = 1; i < route.size(); ++i) local.insert(route[i]);
        routes.push_back(std::move(route));
      }
      if (!ok) continue;
      local.insert(start);
      used_fine = std::move(local);
      vertex_fine[static_cast<int>(vi)] = start;
      for (std::size_t si = 0; si < stubs.size(); ++si) {
        for (const Pt& f : routes[si]) {
          Pt b = detail::block_of(f);
          if (b != vc && !owner.count(b)) claimed[b] = static_cast<int>(vi);
        }
        stub_route[{static_cast<int>(vi), stubs[si].edge}] = std::move(routes[si]);
      }
      built = true;
      break;
    }
    if (!built)
      throw StructuralError("no refinement tile fits at vertex " + std::to_string(v));
  }

  GridLayout fine;
  fine.graph = g;
  for (std::size_t vi = 0; vi < ids.size(); ++vi) fine.vertex_pos[ids[vi]] = vertex_fine.at(vi);
  fine.edge_path.resize(g.edges.size());
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto& cpath = coarse.edge_path[ei];
    int k = rule[ei];
    int ui = vidx.at(g.edges[ei].u), wi = vidx.at(g.edges[ei].v);
    std::vector<Pt> out = stub_route.at({ui, static_cast<int>(ei)});
    const auto& back = stub_route.at({wi, static_cast<int>(ei)});
    std::size_t last = cpath.size() - 1;
    Pt cur = out.back();
    auto step_to = [&](const Pt& target_rel, const Pt& in_block) {
      for (int guard = 0; guard < 4; ++guard) {
        if (detail::rel_in_block(cur) == target_rel) return;
        cur = detail::forced_in_block_step(cur, k);
        out.push_back(cur);
      }
      throw StructuralError("refinement walk failed to find its exit (edge " +
                            std::to_string(ei) + " near block " + detail::pt_str(in_block) + ")");
    };
    for (std::size_t i = 1; i + 1 < last; ++i) {
      Pt dir = cpath[i + 1] - cpath[i];
      step_to(detail::exit_rel(dir, k), cpath[i]);
      cur = cur + dir;
      out.push_back(cur);
    }
    const Pt z = back.back();
    for (int guard = 0; guard <= 4; ++guard) {
      if (cur == z) break;
      if (guard == 4)
        throw StructuralError("refinement walk missed the far handoff on edge " +
                              std::to_string(ei));
      cur = detail::forced_in_block_step(cur, k);
      out.push_back(cur);
    }
    for (std::size_t i = back.size() - 1; i-- > 0;) out.push_back(back[i]);
    fine.edge_path[ei] = std::move(out);
  }

  check_layout(fine);
  check_zigzag(fine);
  if (!rotation_matches(realized_rotation(fine), realized_rotation(coarse)))
    throw StructuralError("refinement disturbed the cyclic order at a vertex");
  return fine;
}

// Parity convention of refined drawings: at every vertex, the required stub
// leaves horizontally exactly when the vertex sits at a fine point whose
// coordinate parity differs from its side class (side One counts as 0).
inline void check_refined_parity(const GridLayout& lay) {
  auto sides = computed_sides(lay.graph);
  auto inc = incidence_map(lay.graph);
  for (const auto& [v, list] : inc) {
    Pt p = lay.vertex_pos.at(v);
    int chi = sides.at(v) == Side::Two ? 1 : 0;
    for (int ei : list) {
      const auto& path = lay.edge_path[ei];
      Pt next = path.front() == p ? path[1] : path[path.size() - 2];
      bool horiz = next.y == p.y;
      bool want = (chi ^ detail::fine_parity(p)) == 1;
      if (!lay.graph.edges[ei].required()) want = !want;
      if (horiz != want)
        throw StructuralError("refined stub parity is off at vertex " + std::to_string(v));
    }
  }
}

}  // namespace puzred
