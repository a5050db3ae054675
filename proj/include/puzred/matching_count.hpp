#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "puzred/cover_enum.hpp"
#include "puzred/mixed_graph.hpp"

namespace puzred {

// Cover counting through the required-matching decomposition. When every
// vertex has exactly one required edge and exactly two other connections, the
// used edge set of any cover is required ∪ M for a perfect matching M of the
// non-required subgraph. That subgraph is 2-regular, so M picks one of the two
// alternating edge classes per non-required cycle, and arc directions then
// orient or kill each resulting cover cycle. Counting is exponential in the
// number of non-required cycles instead of the number of edges.

struct RequiredMatchingModel {
  // dense vertex index
  std::map<VertexId, int> idx;
  std::vector<VertexId> vertex_of;
  std::vector<int> required_at;                // vertex -> required edge index
  std::vector<std::array<int, 2>> nonreq_at;   // vertex -> two non-required edge indices
  std::vector<std::vector<int>> nonreq_cycles; // cycles as edge index sequences
};

inline RequiredMatchingModel build_required_matching_model(const MixedGraph& g) {
  if (!g.is_canonical())
    throw StructuralError("graph not in canonical form; call normalize()");
  RequiredMatchingModel m;
  int n = static_cast<int>(g.vertices.size());
  for (const auto& vd : g.vertices) {
    m.idx[vd.id] = static_cast<int>(m.vertex_of.size());
    m.vertex_of.push_back(vd.id);
  }
  m.required_at.assign(n, -1);
  m.nonreq_at.assign(n, {-1, -1});
  std::vector<int> nonreq_deg(n, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    auto iu = m.idx.find(e.u);
    auto iv = m.idx.find(e.v);
    if (iu == m.idx.end() || iv == m.idx.end())
      throw StructuralError("edge endpoint not declared");
    for (int w : {iu->second, iv->second}) {
      if (e.required()) {
        if (m.required_at[w] != -1)
          throw ClassError("vertex " + std::to_string(m.vertex_of[w]) +
                           " has more than one required edge");
        m.required_at[w] = static_cast<int>(i);
      } else {
        if (nonreq_deg[w] >= 2)
          throw ClassError("vertex " + std::to_string(m.vertex_of[w]) +
                           " has more than two non-required connections");
        m.nonreq_at[w][nonreq_deg[w]++] = static_cast<int>(i);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (m.required_at[v] == -1)
      throw ClassError("vertex " + std::to_string(m.vertex_of[v]) + " has no required edge");
    if (nonreq_deg[v] != 2)
      throw ClassError("vertex " + std::to_string(m.vertex_of[v]) +
                       " needs exactly two non-required connections");
  }
  // walk the 2-regular non-required subgraph into cycles
  std::vector<char> edge_done(g.edges.size(), 0);
  for (int v0 = 0; v0 < n; ++v0) {
    for (int first : m.nonreq_at[v0]) {
      if (edge_done[first]) continue;
      std::vector<int> cyc;
      int v = v0;
      int e = first;
      do {
        cyc.push_back(e);
        edge_done[e] = 1;
        int w = m.idx.at(g.edges[e].other(m.vertex_of[v]));
        e = m.nonreq_at[w][0] == e ? m.nonreq_at[w][1] : m.nonreq_at[w][0];
        v = w;
      } while (e != first);
      m.nonreq_cycles.push_back(std::move(cyc));
    }
  }
  return m;
}

namespace detail {

// Orientation freedom of one cover cycle: walks from `start` along used
// edges and reports how many of the two traversal directions respect every
// arc on the cycle (2 = no arcs, 1 = pinned, 0 = conflict). Appends the
// traversal as (edge, forward?) pairs for the walked direction.
inline int cover_cycle_orientations(const MixedGraph& g, const std::map<VertexId, int>& idx,
                                    const std::vector<VertexId>& vertex_of,
                                    const std::vector<std::array<int, 2>>& used_at, int start,
                                    std::vector<char>& vertex_done,
                                    std::vector<std::pair<int, bool>>& walk) {
  bool fwd_ok = true, bwd_ok = true;
  int v = start;
  int e = used_at[v][0];
  do {
    vertex_done[v] = 1;
    const Edge& ed = g.edges[e];
    bool forward = idx.at(ed.u) == v;  // traversing u -> v of the stored edge
    walk.push_back({e, forward});
    if (ed.kind == EdgeKind::Arc) {
      if (forward)
        bwd_ok = false;
      else
        fwd_ok = false;
    }
    int w = idx.at(ed.other(vertex_of[v]));
    e = used_at[w][0] == e ? used_at[w][1] : used_at[w][0];
    v = w;
  } while (v != start);
  return (fwd_ok ? 1 : 0) + (bwd_ok ? 1 : 0);
}

inline int cover_cycle_orientations(const MixedGraph& g, const RequiredMatchingModel& m,
                                    const std::vector<std::array<int, 2>>& used_at, int start,
                                    std::vector<char>& vertex_done,
                                    std::vector<std::pair<int, bool>>& walk) {
  return cover_cycle_orientations(g, m.idx, m.vertex_of, used_at, start, vertex_done, walk);
}

}  // namespace detail

// All covers via the matching decomposition, sorted to match
// enumerate_cycle_covers byte for byte.
inline std::vector<CoverAssignment> enumerate_covers_required_matching(const MixedGraph& g) {
  RequiredMatchingModel m = build_required_matching_model(g);
  int n = static_cast<int>(g.vertices.size());
  int ncyc = static_cast<int>(m.nonreq_cycles.size());
  for (const auto& cyc : m.nonreq_cycles)
    if (cyc.size() % 2 != 0) return {};  // odd cycle: no perfect matching
  std::vector<CoverAssignment> result;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ncyc); ++pick) {
    // used edges: every required edge plus one alternating class per cycle
    std::vector<std::array<int, 2>> used_at(n);
    for (int v = 0; v < n; ++v) used_at[v] = {m.required_at[v], -1};
    for (int c = 0; c < ncyc; ++c) {
      const auto& cyc = m.nonreq_cycles[c];
      for (std::size_t k = (pick >> c) & 1; k < cyc.size(); k += 2) {
        const Edge& ed = g.edges[cyc[k]];
        for (VertexId end : {ed.u, ed.v}) used_at[m.idx.at(end)][1] = cyc[k];
      }
    }
    // decompose required ∪ M into cover cycles and collect orientation freedom
    std::vector<char> vertex_done(n, 0);
    std::vector<std::vector<std::pair<int, bool>>> walks;
    std::vector<int> freedom;
    bool dead = false;
    for (int v = 0; v < n && !dead; ++v) {
      if (vertex_done[v]) continue;
      std::vector<std::pair<int, bool>> walk;
      int orient = detail::cover_cycle_orientations(g, m, used_at, v, vertex_done, walk);
      if (orient == 0) dead = true;
      walks.push_back(std::move(walk));
      freedom.push_back(orient);
    }
    if (dead) continue;
    // expand each cycle's allowed orientations into explicit covers
    std::vector<CoverAssignment> partial{CoverAssignment{
        std::vector<EdgeState>(g.edges.size(), EdgeState::Unused)}};
    for (std::size_t c = 0; c < walks.size(); ++c) {
      std::vector<CoverAssignment> next;
      for (const auto& base : partial) {
        for (int rev = 0; rev < 2; ++rev) {
          bool ok = true;
          for (auto [e, forward] : walks[c]) {
            bool f = rev ? !forward : forward;
            if (g.edges[e].kind == EdgeKind::Arc && !f) ok = false;
          }
          if (!ok) continue;
          CoverAssignment cur = base;
          for (auto [e, forward] : walks[c]) {
            bool f = rev ? !forward : forward;
            cur.state[e] = f ? EdgeState::Forward : EdgeState::Backward;
          }
          next.push_back(std::move(cur));
        }
      }
      partial = std::move(next);
    }
    for (auto& c : partial) result.push_back(std::move(c));
  }
  std::sort(result.begin(), result.end());
  return result;
}

// Counting for arc-marked instances without required edges: every vertex has
// exactly three connections, a cover uses two per vertex, so the unused edges
// form a perfect matching. Enumerates those matchings by branching on the
// lowest unmatched vertex, then orients each complement cycle per its arcs.

struct UnusedMatchingModel {
  std::map<VertexId, int> idx;
  std::vector<VertexId> vertex_of;
  std::vector<std::array<int, 3>> edges_at;
};

inline UnusedMatchingModel build_unused_matching_model(const MixedGraph& g) {
  if (!g.is_canonical())
    throw StructuralError("graph not in canonical form; call normalize()");
  UnusedMatchingModel m;
  int n = static_cast<int>(g.vertices.size());
  for (const auto& vd : g.vertices) {
    m.idx[vd.id] = static_cast<int>(m.vertex_of.size());
    m.vertex_of.push_back(vd.id);
  }
  m.edges_at.assign(n, {-1, -1, -1});
  std::vector<int> deg(n, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (e.required())
      throw ClassError("instance must not carry required edges");
    for (VertexId end : {e.u, e.v}) {
      auto it = m.idx.find(end);
      if (it == m.idx.end()) throw StructuralError("edge endpoint not declared");
      int w = it->second;
      if (deg[w] >= 3)
        throw ClassError("vertex " + std::to_string(end) + " has more than three connections");
      m.edges_at[w][deg[w]++] = static_cast<int>(i);
    }
  }
  for (int v = 0; v < n; ++v)
    if (deg[v] != 3)
      throw ClassError("vertex " + std::to_string(m.vertex_of[v]) +
                       " needs exactly three connections");
  return m;
}

namespace detail {

// Parity union-find over used-edge orientations with an undo log. Each used
// edge gets a boolean "traversed stored-u to stored-v"; two used edges meeting
// at a vertex are tied by an xor constant (exactly one points in), and an arc
// pins its own value. A contradiction proves every completion of the current
// partial matching turns some cycle against one of its arcs.
struct OrientationState {
  std::vector<int> parent;
  std::vector<unsigned char> rel;  // parity to parent; 0 at roots
  std::vector<int> size;
  std::vector<signed char> forced;  // at roots: -1 free, else the pinned value
  struct Op {
    int child;  // -1 for a pin
    int root;
    signed char root_forced;
  };
  std::vector<Op> log;

  explicit OrientationState(std::size_t edges)
      : parent(edges), rel(edges, 0), size(edges, 1), forced(edges, -1) {
    for (std::size_t e = 0; e < edges; ++e) parent[e] = static_cast<int>(e);
  }

  std::pair<int, int> find(int e) const {
    int p = 0;
    while (parent[e] != e) {
      p ^= rel[e];
      e = parent[e];
    }
    return {e, p};
  }

  bool pin(int e, int value) {
    auto [r, p] = find(e);
    int want = value ^ p;
    if (forced[r] != -1) return forced[r] == want;
    log.push_back({-1, r, -1});
    forced[r] = static_cast<signed char>(want);
    return true;
  }

  // o_e xor o_f == xor_val; on a forced clash the union is still applied and
  // logged, so the caller rewinds uniformly
  bool relate(int e, int f, int xor_val) {
    auto [re, pe] = find(e);
    auto [rf, pf] = find(f);
    if (re == rf) return (pe ^ pf) == xor_val;
    int want = pe ^ pf ^ xor_val;
    if (size[re] < size[rf]) {
      std::swap(re, rf);
    }
    log.push_back({rf, re, forced[re]});
    parent[rf] = re;
    rel[rf] = static_cast<unsigned char>(want);
    size[re] += size[rf];
    if (forced[rf] != -1) {
      int implied = forced[rf] ^ want;
      if (forced[re] == -1)
        forced[re] = static_cast<signed char>(implied);
      else if (forced[re] != implied)
        return false;
    }
    return true;
  }

  std::size_t mark() const { return log.size(); }

  void rewind(std::size_t to) {
    while (log.size() > to) {
      Op op = log.back();
      log.pop_back();
      if (op.child == -1) {
        forced[op.root] = -1;
      } else {
        size[op.root] -= size[op.child];
        parent[op.child] = op.child;
        rel[op.child] = 0;
        forced[op.root] = op.root_forced;
      }
    }
  }
};

// Branches on the lowest unmatched vertex. Once a vertex is matched its two
// other edges are permanently used (a later vertex can only match toward an
// unmatched partner), so their pairing constraint and arc pins hold for the
// whole subtree and dead orientations prune before the matching is complete.
// Leaves see exactly the matchings whose complement cycles are orientable;
// at a leaf the components of `orient` over used edges are those cycles.
template <typename Fn>
inline void for_each_orientable_matching(const MixedGraph& g, const UnusedMatchingModel& m,
                                         Fn&& leaf) {
  int n = static_cast<int>(m.vertex_of.size());
  std::vector<char> matched(n, 0);
  std::vector<char> is_unused(g.edges.size(), 0);
  OrientationState orient(g.edges.size());

  auto tie_at = [&](int x, int skip) -> bool {
    int f = -1, h = -1;
    for (int e : m.edges_at[x]) {
      if (e == skip) continue;
      (f == -1 ? f : h) = e;
    }
    for (int e : {f, h})
      if (g.edges[e].kind == EdgeKind::Arc && !orient.pin(e, 1)) return false;
    VertexId id = m.vertex_of[x];
    int fin = g.edges[f].v == id ? 1 : 0;
    int hin = g.edges[h].v == id ? 1 : 0;
    return orient.relate(f, h, fin == hin ? 1 : 0);
  };

  auto rec = [&](auto&& self, int from) -> void {
    int v = from;
    while (v < n && matched[v]) ++v;
    if (v == n) {
      leaf(is_unused, orient);
      return;
    }
    for (int e : m.edges_at[v]) {
      const Edge& ed = g.edges[e];
      int w = m.idx.at(ed.other(m.vertex_of[v]));
      if (w == v || matched[w]) continue;
      std::size_t at = orient.mark();
      matched[v] = matched[w] = 1;
      is_unused[e] = 1;
      if (tie_at(v, e) && tie_at(w, e)) self(self, v + 1);
      orient.rewind(at);
      is_unused[e] = 0;
      matched[v] = matched[w] = 0;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// All covers of a no-required-edge instance, sorted to match
// enumerate_cycle_covers byte for byte.
inline std::vector<CoverAssignment> enumerate_covers_unused_matching(const MixedGraph& g) {
  UnusedMatchingModel m = build_unused_matching_model(g);
  int n = static_cast<int>(m.vertex_of.size());
  std::vector<CoverAssignment> result;
  detail::for_each_orientable_matching(g, m, [&](const std::vector<char>& is_unused,
                                                 const detail::OrientationState&) {
    std::vector<std::array<int, 2>> used_at(n);
    for (int v = 0; v < n; ++v) {
      int k = 0;
      for (int e : m.edges_at[v])
        if (!is_unused[e]) used_at[v][k++] = e;
    }
    std::vector<char> vertex_done(n, 0);
    std::vector<std::vector<std::pair<int, bool>>> walks;
    bool dead = false;
    for (int v = 0; v < n && !dead; ++v) {
      if (vertex_done[v]) continue;
      std::vector<std::pair<int, bool>> walk;
      if (detail::cover_cycle_orientations(g, m.idx, m.vertex_of, used_at, v, vertex_done,
                                           walk) == 0)
        dead = true;
      walks.push_back(std::move(walk));
    }
    if (dead) return;
    std::vector<CoverAssignment> partial{CoverAssignment{
        std::vector<EdgeState>(g.edges.size(), EdgeState::Unused)}};
    for (const auto& wk : walks) {
      std::vector<CoverAssignment> next;
      for (const auto& base : partial) {
        for (int rev = 0; rev < 2; ++rev) {
          bool ok = true;
          for (auto [e, forward] : wk) {
            bool f = rev ? !forward : forward;
            if (g.edges[e].kind == EdgeKind::Arc && !f) ok = false;
          }
          if (!ok) continue;
          CoverAssignment cur = base;
          for (auto [e, forward] : wk) {
            bool f = rev ? !forward : forward;
            cur.state[e] = f ? EdgeState::Forward : EdgeState::Backward;
          }
          next.push_back(std::move(cur));
        }
      }
      partial = std::move(next);
    }
    for (auto& c : partial) result.push_back(std::move(c));
  });
  std::sort(result.begin(), result.end());
  return result;
}

inline std::size_t count_covers_unused_matching(const MixedGraph& g) {
  UnusedMatchingModel m = build_unused_matching_model(g);
  std::size_t total = 0;
  std::vector<int> seen(g.edges.size(), 0);
  int stamp = 0;
  detail::for_each_orientable_matching(
      g, m, [&](const std::vector<char>& is_unused, const detail::OrientationState& orient) {
        // components over used edges are the cover cycles; a free component
        // has no arc and contributes both directions
        ++stamp;
        int free_cycles = 0;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
          if (is_unused[e]) continue;
          int r = orient.find(static_cast<int>(e)).first;
          if (seen[r] == stamp) continue;
          seen[r] = stamp;
          if (orient.forced[r] == -1) ++free_cycles;
        }
        total += std::size_t{1} << free_cycles;
      });
  return total;
}

// Cover count via the matching decomposition, without materializing covers.
inline std::size_t count_covers_required_matching(const MixedGraph& g) {
  RequiredMatchingModel m = build_required_matching_model(g);
  int n = static_cast<int>(g.vertices.size());
  int ncyc = static_cast<int>(m.nonreq_cycles.size());
  for (const auto& cyc : m.nonreq_cycles)
    if (cyc.size() % 2 != 0) return 0;
  std::size_t total = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ncyc); ++pick) {
    std::vector<std::array<int, 2>> used_at(n);
    for (int v = 0; v < n; ++v) used_at[v] = {m.required_at[v], -1};
    for (int c = 0; c < ncyc; ++c) {
      const auto& cyc = m.nonreq_cycles[c];
      for (std::size_t k = (pick >> c) & 1; k < cyc.size(); k += 2) {
        const Edge& ed = g.edges[cyc[k]];
        for (VertexId end : {ed.u, ed.v}) used_at[m.idx.at(end)][1] = cyc[k];
      }
    }
    std::vector<char> vertex_done(n, 0);
    std::size_t weight = 1;
    for (int v = 0; v < n && weight; ++v) {
      if (vertex_done[v]) continue;
      std::vector<std::pair<int, bool>> walk;
      weight *= detail::cover_cycle_orientations(g, m, used_at, v, vertex_done, walk);
    }
    total += weight;
  }
  return total;
}

}  // namespace puzred
