#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/grid_layout.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/planar.hpp"
#include "puzred/validate.hpp"

namespace puzred {

namespace detail {

// Index-space view of the instance plus augmentation edges. Real edges keep
// their original indices; virtual edges are appended and never drawn.
struct EmbedWork {
  int n = 0;
  std::vector<VertexId> ids;                 // vertex index -> id
  std::vector<std::pair<int, int>> ends;     // per edge, endpoint indices
  int real_edges = 0;
  std::vector<std::vector<int>> rot;         // cyclic edge lists per vertex
};

inline int edge_other(const EmbedWork& w, int e, int v) {
  return w.ends[e].first == v ? w.ends[e].second : w.ends[e].first;
}

inline void rot_insert_before(std::vector<int>& order, int anchor, int e_new) {
  auto it = std::find(order.begin(), order.end(), anchor);
  if (it == order.end()) throw StructuralError("rotation insert: anchor edge missing");
  order.insert(it, e_new);
}

inline void rot_insert_after(std::vector<int>& order, int anchor, int e_new) {
  auto it = std::find(order.begin(), order.end(), anchor);
  if (it == order.end()) throw StructuralError("rotation insert: anchor edge missing");
  order.insert(it + 1, e_new);
}

// Biconnected-component label per edge (iterative lowpoint with edge stack).
inline std::vector<int> bicomp_labels(const EmbedWork& w) {
  int m = static_cast<int>(w.ends.size());
  std::vector<int> label(m, -1), disc(w.n, -1), low(w.n, 0), parent_edge(w.n, -1);
  std::vector<int> estack;
  int timer = 0, next_label = 0;

  struct Frame {
    int v;
    std::size_t k;
  };
  for (int root = 0; root < w.n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      if (k < w.rot[v].size()) {
        int e = w.rot[v][k++];
        if (e == parent_edge[v]) continue;
        int to = edge_other(w, e, v);
        if (disc[to] < 0) {
          estack.push_back(e);
          parent_edge[to] = e;
          disc[to] = low[to] = timer++;
          stack.push_back({to, 0});
        } else if (disc[to] < disc[v] && label[e] < 0) {
          estack.push_back(e);
          low[v] = std::min(low[v], disc[to]);
        }
      } else {
        stack.pop_back();
        if (stack.empty()) continue;
        int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
          int lbl = next_label++;
          while (true) {
            int e = estack.back();
            estack.pop_back();
            label[e] = lbl;
            if (e == parent_edge[v]) break;
          }
        }
      }
    }
  }
  for (int e = 0; e < m; ++e)
    if (label[e] < 0) throw StructuralError("bicomp labeling missed an edge");
  return label;
}

// Chains components together with virtual edges (appended at the rotation
// tails, which places each inside some face of either side).
inline void make_connected(EmbedWork& w) {
  std::vector<int> comp(w.n, -1);
  int ncomp = 0;
  for (int s = 0; s < w.n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> st{s};
    comp[s] = ncomp;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int e : w.rot[v]) {
        int to = edge_other(w, e, v);
        if (comp[to] < 0) {
          comp[to] = ncomp;
          st.push_back(to);
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> rep(ncomp, -1);
  for (int v = w.n - 1; v >= 0; --v) rep[comp[v]] = v;
  for (int c = 1; c < ncomp; ++c) {
    int a = rep[0], b = rep[c];
    int e = static_cast<int>(w.ends.size());
    w.ends.push_back({a, b});
    w.rot[a].push_back(e);
    w.rot[b].push_back(e);
  }
}

// Adds a virtual edge across the first rotation corner whose two edges lie in
// different blocks, until the whole graph is one block. Inserting before the
// first corner edge at one far endpoint and after the second at the other
// keeps the drawing planar: the new edge splits the face of that corner.
inline void biconnect(EmbedWork& w) {
  while (true) {
    auto label = bicomp_labels(w);
    bool all_same = true;
    for (std::size_t e = 1; e < w.ends.size(); ++e)
      if (label[e] != label[0]) all_same = false;
    if (all_same) return;
    bool added = false;
    for (int v = 0; v < w.n && !added; ++v) {
      std::size_t deg = w.rot[v].size();
      if (deg < 2) continue;
      for (std::size_t k = 0; k < deg && !added; ++k) {
        int e = w.rot[v][k], f = w.rot[v][(k + 1) % deg];
        if (label[e] == label[f]) continue;
        int a = edge_other(w, e, v), b = edge_other(w, f, v);
        if (a == b) continue;
        int q = static_cast<int>(w.ends.size());
        w.ends.push_back({a, b});
        rot_insert_before(w.rot[a], e, q);
        rot_insert_after(w.rot[b], f, q);
        added = true;
      }
    }
    if (!added) throw StructuralError("no corner available to biconnect");
  }
}

// st-order from an open ear decomposition growing out of edge e0 = (s, t).
// Every ear's interior is inserted between the ear's endpoints, so each
// vertex except s and t ends up with both an earlier and a later neighbor.
inline std::vector<int> st_order_by_ears(const EmbedWork& w, int e0) {
  int s = w.ends[e0].first, t = w.ends[e0].second;
  std::vector<int> parent(w.n, -1), parent_edge(w.n, -1);
  std::vector<char> placed(w.n, 0);

  // base cycle: s plus the path s..t that avoids e0 itself
  {
    std::vector<char> vis(w.n, 0);
    std::deque<int> bfs{s};
    vis[s] = 1;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      if (v == t) break;
      for (int e : w.rot[v]) {
        if (e == e0) continue;
        int to = edge_other(w, e, v);
        if (!vis[to]) {
          vis[to] = 1;
          parent[to] = v;
          bfs.push_back(to);
        }
      }
    }
    if (!vis[t]) throw StructuralError("no cycle through the base edge");
  }
  std::vector<int> order;
  for (int v = t; v != -1; v = parent[v]) order.push_back(v);
  std::reverse(order.begin(), order.end());
  for (int v : order) placed[v] = 1;

  int placed_count = static_cast<int>(order.size());
  while (placed_count < w.n) {
    bool grew = false;
    for (std::size_t ai = 0; ai < order.size() && !grew; ++ai) {
      int a = order[ai];
      for (int e : w.rot[a]) {
        int b = edge_other(w, e, a);
        if (placed[b]) continue;
        // open ear: path from b through unplaced vertices, never via a,
        // until some other placed vertex
        std::vector<int> par(w.n, -2);
        std::deque<int> bfs{b};
        par[b] = -1;
        par[a] = -3;  // excluded
        int c = -1, last = -1;
        while (!bfs.empty() && c < 0) {
          int x = bfs.front();
          bfs.pop_front();
          for (int f : w.rot[x]) {
            int y = edge_other(w, f, x);
            if (par[y] != -2) continue;
            if (placed[y]) {
              c = y;
              last = x;
              break;
            }
            par[y] = x;
            bfs.push_back(y);
          }
        }
        if (c < 0) throw StructuralError("graph is not biconnected at ear growth");
        std::vector<int> chain;
        for (int x = last; x != -1; x = par[x]) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());  // b ... last
        auto pos = [&](int v) {
          return std::find(order.begin(), order.end(), v) - order.begin();
        };
        auto pa = pos(a), pc = pos(c);
        if (pa < pc)
          order.insert(order.begin() + pa + 1, chain.begin(), chain.end());
        else
          order.insert(order.begin() + pc + 1, chain.rbegin(), chain.rend());
        for (int x : chain) placed[x] = 1;
        placed_count += static_cast<int>(chain.size());
        grew = true;
        break;
      }
    }
    if (!grew) throw StructuralError("ear decomposition stalled");
  }

  std::vector<int> st(w.n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) st[order[i]] = static_cast<int>(i);
  if (st[s] != 0 || st[t] != w.n - 1) throw StructuralError("st order endpoints misplaced");
  for (int v = 0; v < w.n; ++v) {
    if (v == s || v == t) continue;
    bool lower = false, higher = false;
    for (int e : w.rot[v]) {
      int u = edge_other(w, e, v);
      (st[u] < st[v] ? lower : higher) = true;
    }
    if (!lower || !higher) throw StructuralError("st order lacks a bipolar neighbor");
  }
  return st;
}

// Face orbit per dart. Dart 2e is ends[e].first -> second; successor of a
// dart is the dart leaving its head along the next edge of the rotation.
struct FaceTrace {
  std::vector<int> face_of;  // per dart
  int nfaces = 0;
};

inline FaceTrace trace_faces(const EmbedWork& w) {
  int m = static_cast<int>(w.ends.size());
  std::vector<std::map<int, int>> pos(w.n);
  for (int v = 0; v < w.n; ++v)
    for (std::size_t k = 0; k < w.rot[v].size(); ++k) pos[v][w.rot[v][k]] = static_cast<int>(k);
  FaceTrace ft;
  ft.face_of.assign(2 * m, -1);
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (ft.face_of[d0] >= 0) continue;
    int f = ft.nfaces++;
    int d = d0;
    while (ft.face_of[d] < 0) {
      ft.face_of[d] = f;
      int e = d / 2;
      int head = (d % 2 == 0) ? w.ends[e].second : w.ends[e].first;
      int k2 = (pos[head].at(e) + 1) % static_cast<int>(w.rot[head].size());
      int e2 = w.rot[head][k2];
      d = 2 * e2 + (w.ends[e2].first == head ? 0 : 1);
    }
  }
  return ft;
}

}  // namespace detail

// Orthogonal lattice drawing in the visibility style: rows are st-order
// ranks, every edge owns one column, each vertex sits at its median stub
// column so the three stubs leave west, east, and vertically. Coordinates
// come out scaled by 4 to leave clearance for later refinement. The realized
// cyclic order at every vertex equals the requested rotation up to one
// whole-drawing reflection.
inline GridLayout rectilinear_embed(const MixedGraph& g, const RotationSystem& rot) {
  auto rccp = validate(g, Profile::RestrictedRccp);
  if (!rccp.ok()) {
    auto ccp = validate(g, Profile::RestrictedCcp);
    if (!ccp.ok())
      throw ClassError("embedding input is off-profile: " + rccp.summary());
  }
  if (rot.order.size() != g.vertices.size())
    throw StructuralError("rotation system size mismatch");

  detail::EmbedWork w;
  w.n = static_cast<int>(g.vertices.size());
  std::map<VertexId, int> idx;
  for (const auto& vd : g.vertices) {
    idx[vd.id] = static_cast<int>(w.ids.size());
    w.ids.push_back(vd.id);
  }
  for (const Edge& e : g.edges) w.ends.push_back({idx.at(e.u), idx.at(e.v)});
  w.real_edges = static_cast<int>(w.ends.size());
  w.rot = rot.order;
  {
    auto inc = incidence_map(g);
    for (int v = 0; v < w.n; ++v) {
      std::vector<int> want = inc.at(w.ids[v]), got = w.rot[v];
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) throw StructuralError("rotation does not list the incident edges");
    }
  }

  detail::make_connected(w);
  detail::biconnect(w);
  {
    std::vector<std::pair<int, int>> el(w.ends.begin(), w.ends.end());
    RotationSystem full{w.rot};
    if (!euler_ok(w.n, el, full))
      throw StructuralError("augmented embedding fails the Euler check");
  }

  auto st = detail::st_order_by_ears(w, 0);
  auto faces = detail::trace_faces(w);
  int m = static_cast<int>(w.ends.size());

  // dual levels; the outer face splits into a source (left of the base
  // edge) and an extra sink node
  auto fwd_dart = [&](int e) {
    return 2 * e + (st[w.ends[e].first] < st[w.ends[e].second] ? 0 : 1);
  };
  int outer = faces.face_of[fwd_dart(0)];
  int tstar = faces.nfaces;
  int nodes = faces.nfaces + 1;
  std::vector<std::vector<int>> dual(nodes);
  std::vector<int> indeg(nodes, 0);
  std::vector<int> lface(m), rface(m);
  for (int e = 0; e < m; ++e) {
    int lf = faces.face_of[fwd_dart(e)];
    int rf = faces.face_of[fwd_dart(e) ^ 1];
    lface[e] = lf;  // outer doubles as the source node id
    rface[e] = (rf == outer) ? tstar : rf;
    if (e == 0) continue;  // the base edge hugs the left outer boundary
    dual[lface[e]].push_back(rface[e]);
    ++indeg[rface[e]];
  }
  std::vector<int> lev(nodes, 0), topo;
  {
    std::deque<int> q;
    for (int f = 0; f < nodes; ++f)
      if (indeg[f] == 0) q.push_back(f);
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      topo.push_back(f);
      for (int to : dual[f]) {
        lev[to] = std::max(lev[to], lev[f] + 1);
        if (--indeg[to] == 0) q.push_back(to);
      }
    }
    if (static_cast<int>(topo.size()) != nodes)
      throw StructuralError("face dual is not acyclic");
  }

  // one column per edge: order by dual level, break ties by lower endpoint row
  std::vector<int> col(m), by_col(m);
  std::iota(by_col.begin(), by_col.end(), 0);
  auto ylo = [&](int e) { return std::min(st[w.ends[e].first], st[w.ends[e].second]); };
  std::stable_sort(by_col.begin(), by_col.end(), [&](int a, int b) {
    if (lev[lface[a]] != lev[lface[b]]) return lev[lface[a]] < lev[lface[b]];
    return ylo(a) < ylo(b);
  });
  for (int r = 0; r < m; ++r) col[by_col[r]] = r;

  // vertex point at the median column over its real stubs
  constexpr int kPad = 4;  // clearance factor for the later refinement pass
  GridLayout lay;
  lay.graph = g;
  std::vector<Pt> point(w.n);
  for (int v = 0; v < w.n; ++v) {
    std::vector<int> cols;
    for (std::size_t k = 0; k < w.rot[v].size(); ++k)
      if (w.rot[v][k] < w.real_edges) cols.push_back(col[w.rot[v][k]]);
    std::sort(cols.begin(), cols.end());
    if (cols.empty()) throw StructuralError("vertex has no drawable edge");
    point[v] = {kPad * cols[cols.size() / 2], kPad * st[v]};
    lay.vertex_pos[w.ids[v]] = point[v];
  }

  auto straight = [](Pt a, Pt b, std::vector<Pt>& out) {
    int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
    while (a != b) {
      a = {a.x + dx, a.y + dy};
      out.push_back(a);
    }
  };
  lay.edge_path.resize(w.real_edges);
  for (int e = 0; e < w.real_edges; ++e) {
    int ui = w.ends[e].first, vi = w.ends[e].second;
    Pt cu{kPad * col[e], point[ui].y}, cv{kPad * col[e], point[vi].y};
    std::vector<Pt> path{point[ui]};
    straight(point[ui], cu, path);
    straight(cu, cv, path);
    straight(cv, point[vi], path);
    lay.edge_path[e] = std::move(path);
  }

  check_layout(lay);
  if (!rotation_matches(realized_rotation(lay), rot.order))
    throw StructuralError("drawing does not realize the requested rotation");
  return lay;
}

// Planarity-derived default rotation for an instance, in g.vertices order.
inline RotationSystem plan_embedding(const MixedGraph& g) {
  std::map<VertexId, int> idx;
  for (const auto& vd : g.vertices) idx[vd.id] = static_cast<int>(idx.size());
  std::vector<std::pair<int, int>> el;
  for (const Edge& e : g.edges) el.push_back({idx.at(e.u), idx.at(e.v)});
  auto res = test_planarity(static_cast<int>(g.vertices.size()), el);
  if (!res.planar) throw NonPlanarError(res.kuratowski);
  return res.rotation;
}

}  // namespace puzred
