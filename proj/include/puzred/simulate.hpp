#pragma once

#include <string>
#include <vector>

#include "puzred/cover_enum.hpp"
#include "puzred/gadgets.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/validate.hpp"

namespace puzred {

// Required-edge elimination: splices required_edge_block() into every
// required edge, turning a one-required-edge-per-vertex instance into an
// arc-marked instance with no required edges and the same cover count.

struct SimulationTrace {
  MixedGraph before;
  MixedGraph after;
  struct Splice {
    int before_edge = -1;  // replaced required edge, index into before.edges
    VertexId side_one = -1;  // endpoint that received the f_a stub
    VertexId side_two = -1;
    VertexId base = -1;  // block copy vertex id offset
    int stub_a = -1;     // after edge index of side_one - f_a
    int stub_b = -1;     // after edge index of f_b - side_two
  };
  std::vector<Splice> splices;
  // before edge index -> after edge index for kept edges, -1 for replaced
  std::vector<int> kept;
};

namespace detail {

// Block cover completing one seam traversal, keyed by direction: states in
// block edge canonical order. forward = external traversal side-one vertex
// toward side-two vertex (through f_a first).
struct SeamModes {
  MixedGraph block;
  std::vector<EdgeState> forward;
  std::vector<EdgeState> backward;
};

inline const SeamModes& seam_modes() {
  static const SeamModes modes = [] {
    SeamModes sm;
    sm.block = required_edge_block();
    MixedGraph seam = sm.block;
    seam.add_required(0, 1);
    seam.normalize();
    int seam_edge = seam.find_edge(0, 1);
    auto covers = enumerate_cycle_covers(seam);
    if (covers.size() != 2 ||
        covers[0].state[seam_edge] == covers[1].state[seam_edge])
      throw StructuralError("seam closure must have one cover per direction");
    // strip the seam edge, mapping states back onto block edge order
    for (const auto& c : covers) {
      std::vector<EdgeState> onto(sm.block.edges.size());
      for (std::size_t i = 0; i < sm.block.edges.size(); ++i) {
        const Edge& e = sm.block.edges[i];
        int j = seam.find_edge(e.u, e.v);
        onto[i] = c.state[j];
      }
      // seam required edge traversed f_b -> f_a closes the f_a -> f_b block
      // path, the forward external mode
      bool fwd = c.state[seam_edge] == EdgeState::Backward;
      (fwd ? sm.forward : sm.backward) = std::move(onto);
    }
    return sm;
  }();
  return modes;
}

}  // namespace detail

// check = true validates the input as restricted vertex-cap class and the
// output as the arc-marked class; either failure is a ClassError.
inline SimulationTrace simulate_required_edges(const MixedGraph& g, bool check = true) {
  if (!g.is_canonical())
    throw StructuralError("graph not in canonical form; call normalize()");
  if (check) {
    ValidationReport rep = validate(g, Profile::RestrictedRccp);
    if (!rep.ok())
      throw ClassError("required-edge elimination input:\n" + rep.summary());
  }
  const MixedGraph block = required_edge_block();

  SimulationTrace tr;
  tr.before = g;
  VertexId next = 0;
  for (const auto& vd : g.vertices) {
    tr.after.add_vertex(vd.id, vd.side);
    next = std::max(next, vd.id + 1);
  }
  struct Pending {
    Edge e;
    int before_edge;   // -1 for block internals and stubs
    int splice = -1;   // owning splice index for stub edges
    bool stub_a = false;
    bool stub_b = false;
  };
  std::vector<Pending> pend;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (!e.required()) {
      pend.push_back({e, static_cast<int>(i)});
      continue;
    }
    SimulationTrace::Splice sp;
    sp.before_edge = static_cast<int>(i);
    sp.side_one = g.side_of(e.u) == Side::One ? e.u : e.v;
    sp.side_two = e.other(sp.side_one);
    if (g.side_of(sp.side_one) != Side::One || g.side_of(sp.side_two) != Side::Two)
      throw ClassError("required edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                       " needs one endpoint on each side");
    sp.base = next;
    for (const auto& vd : block.vertices) tr.after.add_vertex(vd.id + sp.base, vd.side);
    for (const Edge& be : block.edges)
      pend.push_back({{be.u + sp.base, be.v + sp.base, be.kind}, -1});
    int spi = static_cast<int>(tr.splices.size());
    pend.push_back({{std::min(sp.side_one, sp.base), std::max(sp.side_one, sp.base),
                     EdgeKind::Undirected},
                    -1, spi, true, false});
    pend.push_back({{std::min(sp.side_two, sp.base + 1), std::max(sp.side_two, sp.base + 1),
                     EdgeKind::Undirected},
                    -1, spi, false, true});
    tr.splices.push_back(sp);
    next += static_cast<VertexId>(block.vertices.size());
  }
  for (const Pending& p : pend) tr.after.add_edge(p.e.u, p.e.v, p.e.kind);
  tr.after.normalize();

  tr.kept.assign(g.edges.size(), -1);
  for (const Pending& p : pend) {
    int j = tr.after.find_edge(p.e.u, p.e.v);
    if (j < 0) throw StructuralError("spliced edge lost");
    if (p.before_edge >= 0) tr.kept[p.before_edge] = j;
    if (p.splice >= 0 && p.stub_a) tr.splices[p.splice].stub_a = j;
    if (p.splice >= 0 && p.stub_b) tr.splices[p.splice].stub_b = j;
  }

  if (check) {
    ValidationReport rep = validate(tr.after, Profile::RestrictedCcp);
    if (!rep.ok())
      throw ClassError("required-edge elimination output:\n" + rep.summary());
  }
  return tr;
}

// after-instance cover -> before-instance cover
inline CoverAssignment project_simulated_cover(const SimulationTrace& tr,
                                               const CoverAssignment& after) {
  if (after.state.size() != tr.after.edges.size())
    throw StructuralError("cover does not fit the spliced instance");
  CoverAssignment out{std::vector<EdgeState>(tr.before.edges.size(), EdgeState::Unused)};
  for (std::size_t i = 0; i < tr.before.edges.size(); ++i)
    if (tr.kept[i] >= 0) out.state[i] = after.state[tr.kept[i]];
  for (const auto& sp : tr.splices) {
    EdgeState sa = after.state[sp.stub_a];
    if (sa == EdgeState::Unused)
      throw StructuralError("stub unused; not a cover of a spliced instance");
    const Edge& stub = tr.after.edges[sp.stub_a];
    bool exits_one = (sa == EdgeState::Forward) == (stub.u == sp.side_one);
    const Edge& be = tr.before.edges[sp.before_edge];
    out.state[sp.before_edge] = (be.u == sp.side_one) == exits_one ? EdgeState::Forward
                                                                   : EdgeState::Backward;
  }
  return out;
}

// before-instance cover -> after-instance cover
inline CoverAssignment lift_simulated_cover(const SimulationTrace& tr,
                                            const CoverAssignment& before) {
  if (before.state.size() != tr.before.edges.size())
    throw StructuralError("cover does not fit the original instance");
  const detail::SeamModes& sm = detail::seam_modes();
  CoverAssignment out{std::vector<EdgeState>(tr.after.edges.size(), EdgeState::Unused)};
  for (std::size_t i = 0; i < tr.before.edges.size(); ++i)
    if (tr.kept[i] >= 0) out.state[tr.kept[i]] = before.state[i];
  for (const auto& sp : tr.splices) {
    const Edge& be = tr.before.edges[sp.before_edge];
    EdgeState bs = before.state[sp.before_edge];
    if (bs == EdgeState::Unused)
      throw StructuralError("required edge unused; not a cover");
    bool exits_one = (bs == EdgeState::Forward) == (be.u == sp.side_one);
    const auto& mode = exits_one ? sm.forward : sm.backward;
    for (std::size_t i = 0; i < sm.block.edges.size(); ++i) {
      const Edge& e = sm.block.edges[i];
      int j = tr.after.find_edge(e.u + sp.base, e.v + sp.base);
      out.state[j] = mode[i];
    }
    const Edge& stub_a = tr.after.edges[sp.stub_a];
    const Edge& stub_b = tr.after.edges[sp.stub_b];
    // forward mode: side_one -> f_a and f_b -> side_two
    bool a_from_one = stub_a.u == sp.side_one;
    out.state[sp.stub_a] = (a_from_one == exits_one) ? EdgeState::Forward : EdgeState::Backward;
    bool b_from_two = stub_b.u == sp.side_two;
    out.state[sp.stub_b] = (b_from_two != exits_one) ? EdgeState::Forward : EdgeState::Backward;
  }
  return out;
}

}  // namespace puzred
