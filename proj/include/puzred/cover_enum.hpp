#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "puzred/mixed_graph.hpp"
#include "puzred/validate.hpp"

namespace puzred {

struct EnumLimits {
  int max_edges = 64;
  std::size_t max_covers = std::size_t{1} << 20;
};

// Full validity check: every required edge used, arcs never Backward, every
// vertex with exactly one incoming and one outgoing traversal.
inline bool is_valid_cover(const MixedGraph& g, const CoverAssignment& c) {
  if (c.state.size() != g.edges.size()) return false;
  std::map<VertexId, std::pair<int, int>> inout;  // vertex -> (in, out)
  for (const auto& vd : g.vertices) inout[vd.id] = {0, 0};
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    EdgeState st = c.state[i];
    if (st == EdgeState::Unused) {
      if (e.required()) return false;
      continue;
    }
    if (e.kind == EdgeKind::Arc && st == EdgeState::Backward) return false;
    VertexId from = st == EdgeState::Forward ? e.u : e.v;
    VertexId to = st == EdgeState::Forward ? e.v : e.u;
    auto fi = inout.find(from);
    auto ti = inout.find(to);
    if (fi == inout.end() || ti == inout.end()) return false;
    fi->second.second += 1;
    ti->second.first += 1;
  }
  for (const auto& [v, io] : inout)
    if (io.first != 1 || io.second != 1) return false;
  return true;
}

// Decomposes a valid cover into its cycles, each listed from its smallest
// vertex id in traversal order. Throws on invalid covers.
inline std::vector<std::vector<VertexId>> cover_cycles(const MixedGraph& g,
                                                       const CoverAssignment& c) {
  if (!is_valid_cover(g, c)) throw StructuralError("not a valid cycle cover");
  std::map<VertexId, VertexId> succ;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    EdgeState st = c.state[i];
    if (st == EdgeState::Unused) continue;
    const Edge& e = g.edges[i];
    VertexId from = st == EdgeState::Forward ? e.u : e.v;
    VertexId to = st == EdgeState::Forward ? e.v : e.u;
    succ[from] = to;
  }
  std::vector<std::vector<VertexId>> cycles;
  std::set<VertexId> done;
  for (const auto& vd : g.vertices) {
    if (done.count(vd.id)) continue;
    std::vector<VertexId> cyc;
    VertexId x = vd.id;
    do {
      cyc.push_back(x);
      done.insert(x);
      x = succ.at(x);
    } while (x != vd.id);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

// All cycle covers in lexicographic order over canonical edge states with
// Unused < Forward < Backward. Deterministic; throws CapError past limits.
inline std::vector<CoverAssignment> enumerate_cycle_covers(const MixedGraph& g,
                                                           EnumLimits lim = {}) {
  if (!g.is_canonical())
    throw StructuralError("graph not in canonical form; call normalize()");
  if (static_cast<int>(g.edges.size()) > lim.max_edges)
    throw CapError("edge count " + std::to_string(g.edges.size()) + " exceeds cap " +
                   std::to_string(lim.max_edges));
  {
    ValidationReport rep = validate(g, Profile::General);
    if (!rep.ok()) throw ClassError("cover enumeration needs a simple mixed graph:\n" + rep.summary());
  }

  int n = static_cast<int>(g.vertices.size());
  int m = static_cast<int>(g.edges.size());
  std::map<VertexId, int> idx;
  for (const auto& vd : g.vertices) idx[vd.id] = static_cast<int>(idx.size());

  std::vector<int> undecided(n, 0);
  for (const Edge& e : g.edges) {
    ++undecided[idx.at(e.u)];
    ++undecided[idx.at(e.v)];
  }
  // a vertex with no incident connection can never be covered
  for (int v = 0; v < n; ++v)
    if (undecided[v] == 0) return {};

  std::vector<int> in(n, 0), out(n, 0);
  std::vector<EdgeState> state(m, EdgeState::Unused);
  std::vector<CoverAssignment> result;

  // endpoint feasibility after deciding one more incident edge
  auto feasible = [&](int v) {
    int need = (1 - in[v]) + (1 - out[v]);
    return need <= undecided[v] && in[v] <= 1 && out[v] <= 1;
  };

  auto apply = [&](int ei, EdgeState st, bool undo) {
    const Edge& e = g.edges[ei];
    int a = idx.at(e.u), b = idx.at(e.v);
    int d = undo ? 1 : -1;
    undecided[a] += d;
    undecided[b] += d;
    if (st != EdgeState::Unused) {
      int from = st == EdgeState::Forward ? a : b;
      int to = st == EdgeState::Forward ? b : a;
      out[from] += undo ? -1 : 1;
      in[to] += undo ? -1 : 1;
    }
  };

  auto dfs = [&](auto&& self, int ei) -> void {
    if (ei == m) {
      if (result.size() >= lim.max_covers)
        throw CapError("cover count exceeds cap " + std::to_string(lim.max_covers));
      result.push_back({state});
      return;
    }
    const Edge& e = g.edges[ei];
    int a = idx.at(e.u), b = idx.at(e.v);
    const EdgeState candidates[3] = {EdgeState::Unused, EdgeState::Forward, EdgeState::Backward};
    int ncand = e.kind == EdgeKind::Arc ? 2 : 3;
    for (int k = 0; k < ncand; ++k) {
      EdgeState st = candidates[k];
      if (st == EdgeState::Unused && e.required()) continue;
      apply(ei, st, false);
      if (feasible(a) && feasible(b)) {
        state[ei] = st;
        self(self, ei + 1);
      }
      apply(ei, st, true);
    }
    state[ei] = EdgeState::Unused;
  };
  dfs(dfs, 0);
  return result;
}

inline std::size_t count_cycle_covers(const MixedGraph& g, EnumLimits lim = {}) {
  return enumerate_cycle_covers(g, lim).size();
}

}  // namespace puzred
