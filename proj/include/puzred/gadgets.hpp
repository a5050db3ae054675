#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/cover_enum.hpp"
#include "puzred/matching_count.hpp"
#include "puzred/mixed_graph.hpp"

namespace puzred {

// An open arc stub on a gadget boundary. `tail` means the eventual arc points
// out of the gadget (this vertex is the arc's tail).
struct Stub {
  VertexId at = -1;
  bool tail = false;
};

// One connection point: a pair of open stubs with opposite arc senses. Fusing
// two terminals joins first stubs into one arc and second stubs into another.
struct Terminal {
  Stub first, second;
};

// Graph fragment plus its ordered open terminals. Fragments use local vertex
// ids starting at 0; InstanceBuilder relocates them.
struct Gadget {
  MixedGraph fragment;
  std::vector<Terminal> terminals;
};

class InstanceBuilder {
 public:
  // Copies the gadget in with vertex ids shifted; returns relocated terminals.
  std::vector<Terminal> add(const Gadget& gad) {
    VertexId base = next_;
    for (const auto& vd : gad.fragment.vertices) {
      g_.add_vertex(vd.id + base, vd.side);
      if (vd.id + base >= next_) next_ = vd.id + base + 1;
    }
    for (const Edge& e : gad.fragment.edges) g_.add_edge(e.u + base, e.v + base, e.kind);
    std::vector<Terminal> out = gad.terminals;
    for (auto& t : out) {
      t.first.at += base;
      t.second.at += base;
    }
    return out;
  }

  // Joins two terminals: each stub pair becomes one arc from its tail side to
  // its head side.
  void fuse(const Terminal& a, const Terminal& b) {
    auto join = [&](const Stub& x, const Stub& y) {
      if (x.tail == y.tail)
        throw StructuralError("terminal stubs must have opposite arc senses");
      const Stub& t = x.tail ? x : y;
      const Stub& h = x.tail ? y : x;
      g_.add_arc(t.at, h.at);
    };
    join(a.first, b.first);
    join(a.second, b.second);
  }

  MixedGraph take() {
    g_.normalize();
    return std::move(g_);
  }

 private:
  MixedGraph g_;
  VertexId next_ = 0;
};

// Degree-1 variable: eight vertices on an open chain 0..7 with a required
// perfect matching across it. Found by `gadget_search cap`; smaller blocks
// force a Kuratowski subgraph once the surrounding connection closes the
// chain. The two covers use either both links (true) or neither (false),
// each orientation-pinned by the chain arcs.
inline Gadget degree_one_variable() {
  Gadget gad;
  MixedGraph& g = gad.fragment;
  for (int i = 0; i < 8; ++i) g.add_vertex(i, i % 2 == 0 ? Side::Two : Side::One);
  g.add_required(0, 3);
  g.add_required(1, 6);
  g.add_required(2, 5);
  g.add_required(4, 7);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_undirected(2, 3);
  g.add_arc(3, 4);
  g.add_undirected(4, 5);
  g.add_arc(5, 6);
  g.add_undirected(6, 7);
  g.normalize();
  gad.terminals.push_back({{7, true}, {0, false}});  // x1 outgoing, x2 incoming
  return gad;
}

// Variable of degree d >= 2: a ring of four-vertex sections, one terminal
// each. Ring arcs make the all-links state and the no-links state the only
// covers; every mixed state hits an arc conflict.
inline Gadget ring_variable(int degree) {
  if (degree < 2) throw StructuralError("ring variable needs degree >= 2");
  Gadget gad;
  MixedGraph& g = gad.fragment;
  // section j ids: x1=4j x2=4j+1 y1=4j+2 y2=4j+3
  for (int j = 0; j < degree; ++j) {
    VertexId x1 = 4 * j, x2 = 4 * j + 1, y1 = 4 * j + 2, y2 = 4 * j + 3;
    g.add_vertex(x1, Side::One);
    g.add_vertex(x2, Side::Two);
    g.add_vertex(y1, Side::Two);
    g.add_vertex(y2, Side::One);
    g.add_required(x1, y1);
    g.add_required(x2, y2);
    g.add_arc(x2, x1);  // skip edge
    g.add_arc(y1, y2);  // ring chord
    gad.terminals.push_back({{x1, true}, {x2, false}});
  }
  for (int j = 0; j < degree; ++j) {
    VertexId y2 = 4 * j + 3, y1n = 4 * ((j + 1) % degree) + 2;
    g.add_arc(y2, y1n);  // ring bridge
  }
  g.normalize();
  return gad;
}

inline Gadget variable_gadget(int degree) {
  if (degree < 1) throw StructuralError("variable degree must be positive");
  return degree == 1 ? degree_one_variable() : ring_variable(degree);
}

// Clause block: three terminals whose closed covers realize exactly the three
// one-hot link patterns, one completion each. Eight internal vertices pair up
// into required dominoes; slot paths of lengths 3, 3, 5 join each terminal
// pair through them. Found by `gadget_search clause`; fewer internals cannot
// split the internal cover cycle between states.
inline Gadget clause_gadget() {
  Gadget gad;
  MixedGraph& g = gad.fragment;
  for (int j = 0; j < 3; ++j) {
    g.add_vertex(2 * j, Side::Two);      // c1_j
    g.add_vertex(2 * j + 1, Side::One);  // c2_j
    g.add_required(2 * j, 2 * j + 1);
    gad.terminals.push_back({{2 * j, false}, {2 * j + 1, true}});
  }
  for (int i = 6; i <= 9; ++i) g.add_vertex(i, Side::One);
  for (int i = 10; i <= 13; ++i) g.add_vertex(i, Side::Two);
  g.add_required(6, 12);
  g.add_required(7, 13);
  g.add_required(8, 10);
  g.add_required(9, 11);
  g.add_arc(0, 6);  // terminal 0 slot path 0-6-10-1
  g.add_arc(6, 10);
  g.add_undirected(1, 10);
  g.add_arc(7, 2);  // terminal 1 slot path 2-7-11-3
  g.add_arc(11, 7);
  g.add_undirected(3, 11);
  g.add_undirected(4, 8);  // terminal 2 slot path 4-8-12-9-13-5
  g.add_arc(12, 8);
  g.add_undirected(9, 12);
  g.add_arc(9, 13);
  g.add_undirected(5, 13);
  g.normalize();
  return gad;
}

// Splice block that simulates one required edge u-v using none: u gains an
// undirected stub to vertex 0 (f_a) and v one to vertex 1 (f_b). The bare
// block has no cover of its own, and closing the seam with a required edge
// 0-1 yields exactly one cover per traversal direction, so splicing preserves
// cover counts bijectively. Found by `gadget_search sim`; six internals
// cannot splice planar because the seam closure is K3,3 there.
inline MixedGraph required_edge_block() {
  MixedGraph g;
  for (int v : {0, 5, 6, 7}) g.add_vertex(v, Side::Two);
  for (int v : {1, 2, 3, 4}) g.add_vertex(v, Side::One);
  g.add_arc(0, 2);
  g.add_arc(3, 0);
  g.add_undirected(1, 5);
  g.add_arc(6, 1);
  g.add_arc(5, 2);
  g.add_arc(2, 7);
  g.add_undirected(3, 6);
  g.add_undirected(3, 7);
  g.add_arc(4, 5);
  g.add_undirected(4, 6);
  g.add_undirected(4, 7);
  g.normalize();
  return g;
}

// Two-vertex required pair, the shared interface core: one terminal toward a
// variable (link side) and one away (slot side).
inline Gadget required_pair() {
  Gadget pair;
  pair.fragment.add_vertex(0, Side::Two);  // c1
  pair.fragment.add_vertex(1, Side::One);  // c2
  pair.fragment.add_required(0, 1);
  pair.terminals.push_back({{0, false}, {1, true}});  // link side
  pair.terminals.push_back({{0, false}, {1, true}});  // slot side
  return pair;
}

// Neutral test closure for a variable terminal: a required pair whose far
// side is sealed with a degree-1 block. Accepts either terminal state with
// exactly one completion each.
inline Gadget terminal_tester(const Gadget& seal) {
  InstanceBuilder b;
  auto pt = b.add(required_pair());
  auto ct = b.add(seal);
  b.fuse(pt[1], ct[0]);
  Gadget gad;
  gad.fragment = b.take();
  gad.terminals.push_back(pt[0]);
  return gad;
}

inline Gadget terminal_tester() { return terminal_tester(degree_one_variable()); }

// Variable closed with one tester per terminal.
inline MixedGraph close_variable(const Gadget& var, const Gadget& seal) {
  InstanceBuilder b;
  auto vt = b.add(var);
  Gadget tester = terminal_tester(seal);
  for (const auto& t : vt) {
    auto tt = b.add(tester);
    b.fuse(t, tt[0]);
  }
  return b.take();
}

inline MixedGraph close_variable(const Gadget& var) {
  return close_variable(var, degree_one_variable());
}

}  // namespace puzred
