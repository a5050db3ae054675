#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "puzred/cover_enum.hpp"
#include "puzred/formula.hpp"
#include "puzred/gadgets.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/validate.hpp"

namespace puzred {

// Formula -> instance with one cover per satisfying assignment. Variables
// become variable gadgets, clauses become clause blocks, and each occurrence
// fuses one variable terminal with one clause terminal. Terminals follow the
// cyclic orders of a planar embedding of the incidence graph, so the composed
// instance stays planar.
struct ReductionTrace {
  Formula formula;
  MixedGraph instance;

  struct VariablePart {
    VertexId base = 0;
    int degree = 0;
    std::vector<int> slots;  // terminal j -> incidence edge index
  };
  struct ClausePart {
    VertexId base = 0;
    std::array<int, 3> slots{};  // gadget terminal j -> incidence edge index
  };
  struct Link {
    int into_clause = -1;   // edge index of the arc x1 -> c1
    int out_of_clause = -1;  // edge index of the arc c2 -> x2
  };
  std::vector<VariablePart> variables;  // by variable - 1
  std::vector<ClausePart> clauses;      // by clause index
  std::vector<Link> links;              // by incidence edge index
};

namespace detail {

// variable of incidence edge i, matching incidence_edges() order
inline int incidence_var(const Formula& f, int i) { return f.clauses[i / 3][i % 3]; }

}  // namespace detail

inline ReductionTrace reduce_formula(const Formula& f) {
  auto rotation = plan_incidence_embedding(f);
  auto inc_edges = incidence_edges(f);

  ReductionTrace tr;
  tr.formula = f;
  tr.links.resize(inc_edges.size());

  InstanceBuilder b;
  VertexId next_base = 0;

  std::vector<std::vector<Terminal>> var_terms(f.num_vars);
  std::vector<int> var_term_of_edge(inc_edges.size(), -1);
  for (int v = 1; v <= f.num_vars; ++v) {
    const auto& rot = rotation.order[v - 1];
    ReductionTrace::VariablePart part;
    part.base = next_base;
    part.degree = static_cast<int>(rot.size());
    part.slots.assign(rot.begin(), rot.end());
    Gadget gad = variable_gadget(part.degree);
    var_terms[v - 1] = b.add(gad);
    next_base += static_cast<VertexId>(gad.fragment.vertices.size());
    for (std::size_t j = 0; j < rot.size(); ++j) var_term_of_edge[rot[j]] = static_cast<int>(j);
    tr.variables.push_back(std::move(part));
  }

  std::vector<std::vector<Terminal>> clause_terms(f.clauses.size());
  std::vector<int> clause_slot_of_edge(inc_edges.size(), -1);
  for (std::size_t k = 0; k < f.clauses.size(); ++k) {
    const auto& rot = rotation.order[f.num_vars + k];
    if (rot.size() != 3) throw StructuralError("clause vertex degree is not 3 in the embedding");
    ReductionTrace::ClausePart part;
    part.base = next_base;
    for (int j = 0; j < 3; ++j) part.slots[j] = rot[j];
    Gadget gad = clause_gadget();
    clause_terms[k] = b.add(gad);
    next_base += static_cast<VertexId>(gad.fragment.vertices.size());
    for (int j = 0; j < 3; ++j) clause_slot_of_edge[rot[j]] = j;
    tr.clauses.push_back(part);
  }

  for (std::size_t i = 0; i < inc_edges.size(); ++i) {
    int v = detail::incidence_var(f, static_cast<int>(i));
    int k = inc_edges[i].second - f.num_vars;
    b.fuse(var_terms[v - 1][var_term_of_edge[i]], clause_terms[k][clause_slot_of_edge[i]]);
  }
  tr.instance = b.take();

  for (std::size_t i = 0; i < inc_edges.size(); ++i) {
    int v = detail::incidence_var(f, static_cast<int>(i));
    int k = inc_edges[i].second - f.num_vars;
    const Terminal& vt = var_terms[v - 1][var_term_of_edge[i]];
    const Terminal& ct = clause_terms[k][clause_slot_of_edge[i]];
    tr.links[i].into_clause = tr.instance.find_edge(vt.first.at, ct.first.at);
    tr.links[i].out_of_clause = tr.instance.find_edge(ct.second.at, vt.second.at);
    if (tr.links[i].into_clause < 0 || tr.links[i].out_of_clause < 0)
      throw StructuralError("missing link edge after composition");
  }

  auto report = validate(tr.instance, Profile::RestrictedRccp);
  if (!report.ok()) throw ClassError("reduction output is off-profile: " + report.summary());
  return tr;
}

namespace detail {

// Internal edge states of one gadget per external configuration, derived by
// enumerating a sealed copy once. Edges are keyed by fragment endpoints so
// they can be re-found after relocation.
struct GadgetStates {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::vector<EdgeState>> per_config;
};

inline GadgetStates make_variable_states(int degree) {
  Gadget var = variable_gadget(degree);
  MixedGraph closed = close_variable(var);
  EnumLimits lim;
  lim.max_edges = static_cast<int>(closed.edges.size());
  auto covers = enumerate_cycle_covers(closed, lim);
  if (covers.size() != 2)
    throw StructuralError("sealed variable must have exactly two covers, found " +
                          std::to_string(covers.size()));
  // the link arc out of terminal 0 separates the two configurations
  VertexId x1 = var.terminals[0].first.at;
  VertexId frag_n = static_cast<VertexId>(var.fragment.vertices.size());
  int link = -1;
  for (std::size_t i = 0; i < closed.edges.size(); ++i)
    if (closed.edges[i].u == x1 && closed.edges[i].v >= frag_n) link = static_cast<int>(i);
  if (link < 0) throw StructuralError("terminal link not found in sealed variable");

  GadgetStates st;
  st.per_config.assign(2, {});
  for (const Edge& e : var.fragment.edges) st.edges.push_back({e.u, e.v});
  for (const auto& cover : covers) {
    int cfg = cover.state[link] == EdgeState::Unused ? 0 : 1;
    auto& out = st.per_config[cfg];
    if (!out.empty()) throw StructuralError("sealed variable covers do not split by terminal state");
    for (auto [u, v] : st.edges) out.push_back(cover.state[closed.find_edge(u, v)]);
  }
  return st;
}

inline const GadgetStates& variable_states(int degree) {
  static std::map<int, GadgetStates> memo;
  auto it = memo.find(degree);
  if (it == memo.end()) it = memo.emplace(degree, make_variable_states(degree)).first;
  return it->second;
}

inline GadgetStates make_clause_states() {
  Gadget cl = clause_gadget();
  InstanceBuilder b;
  auto ct = b.add(cl);
  std::array<int, 3> c1{};
  for (int j = 0; j < 3; ++j) {
    auto vt = b.add(degree_one_variable());
    b.fuse(vt[0], ct[j]);
    c1[j] = static_cast<int>(ct[j].first.at);
  }
  MixedGraph closed = b.take();
  EnumLimits lim;
  lim.max_edges = static_cast<int>(closed.edges.size());
  auto covers = enumerate_cycle_covers(closed, lim);
  if (covers.size() != 3)
    throw StructuralError("sealed clause must have exactly three covers, found " +
                          std::to_string(covers.size()));

  VertexId frag_n = static_cast<VertexId>(cl.fragment.vertices.size());
  std::array<int, 3> link{};
  for (int j = 0; j < 3; ++j) {
    link[j] = -1;
    for (std::size_t i = 0; i < closed.edges.size(); ++i)
      if (closed.edges[i].v == c1[j] && closed.edges[i].u >= frag_n) link[j] = static_cast<int>(i);
    if (link[j] < 0) throw StructuralError("slot link not found in sealed clause");
  }

  GadgetStates st;
  st.per_config.assign(3, {});
  for (const Edge& e : cl.fragment.edges) st.edges.push_back({e.u, e.v});
  for (const auto& cover : covers) {
    int cfg = -1;
    for (int j = 0; j < 3; ++j)
      if (cover.state[link[j]] != EdgeState::Unused) {
        if (cfg != -1) throw StructuralError("sealed clause cover uses two slots");
        cfg = j;
      }
    if (cfg < 0) throw StructuralError("sealed clause cover uses no slot");
    auto& out = st.per_config[cfg];
    if (!out.empty()) throw StructuralError("sealed clause covers do not split by slot");
    for (auto [u, v] : st.edges) out.push_back(cover.state[closed.find_edge(u, v)]);
  }
  return st;
}

inline const GadgetStates& clause_states() {
  static GadgetStates memo = make_clause_states();
  return memo;
}

inline void stamp(const MixedGraph& g, const GadgetStates& st, int cfg, VertexId base,
                  std::vector<EdgeState>& out) {
  for (std::size_t i = 0; i < st.edges.size(); ++i) {
    int e = g.find_edge(st.edges[i].first + base, st.edges[i].second + base);
    if (e < 0) throw StructuralError("relocated gadget edge not found");
    out[e] = st.per_config[cfg][i];
  }
}

}  // namespace detail

// The cover realizing one satisfying assignment; bit (v-1) of `mask` is the
// value of variable v. Throws ClassError when some clause is not exactly-one.
inline CoverAssignment cover_from_assignment(const ReductionTrace& tr, std::uint32_t mask) {
  const Formula& f = tr.formula;
  if (f.num_vars > 32) throw CapError("assignment mask limited to 32 variables");
  auto value = [&](int var) { return (mask >> (var - 1)) & 1u; };

  CoverAssignment cover;
  cover.state.assign(tr.instance.edges.size(), EdgeState::Unused);
  for (int v = 1; v <= f.num_vars; ++v) {
    const auto& part = tr.variables[v - 1];
    detail::stamp(tr.instance, detail::variable_states(part.degree), value(v) ? 1 : 0, part.base,
                  cover.state);
  }
  for (std::size_t k = 0; k < f.clauses.size(); ++k) {
    const auto& part = tr.clauses[k];
    int cfg = -1;
    for (int j = 0; j < 3; ++j) {
      int var = detail::incidence_var(f, part.slots[j]);
      if (!value(var)) continue;
      if (cfg != -1)
        throw ClassError("clause " + std::to_string(k) + " has two true variables");
      cfg = j;
    }
    if (cfg < 0) throw ClassError("clause " + std::to_string(k) + " has no true variable");
    detail::stamp(tr.instance, detail::clause_states(), cfg, part.base, cover.state);
  }
  for (std::size_t i = 0; i < tr.links.size(); ++i) {
    EdgeState st = value(detail::incidence_var(f, static_cast<int>(i))) ? EdgeState::Forward
                                                                        : EdgeState::Unused;
    cover.state[tr.links[i].into_clause] = st;
    cover.state[tr.links[i].out_of_clause] = st;
  }
  if (!is_valid_cover(tr.instance, cover))
    throw StructuralError("composed cover is invalid; gadget tables out of sync");
  return cover;
}

// The satisfying assignment a cover realizes. Rejects covers that are invalid
// or that drive some variable's terminals incoherently.
inline std::uint32_t assignment_from_cover(const ReductionTrace& tr, const CoverAssignment& cover) {
  const Formula& f = tr.formula;
  if (f.num_vars > 32) throw CapError("assignment mask limited to 32 variables");
  if (!is_valid_cover(tr.instance, cover)) throw ClassError("not a valid cover of the instance");

  std::uint32_t mask = 0;
  std::vector<signed char> bit(f.num_vars + 1, -1);
  for (std::size_t i = 0; i < tr.links.size(); ++i) {
    bool in_used = cover.state[tr.links[i].into_clause] != EdgeState::Unused;
    bool out_used = cover.state[tr.links[i].out_of_clause] != EdgeState::Unused;
    if (in_used != out_used)
      throw ClassError("cover uses only one link arc of occurrence " + std::to_string(i));
    int var = detail::incidence_var(f, static_cast<int>(i));
    if (bit[var] != -1 && bit[var] != static_cast<int>(in_used))
      throw ClassError("cover drives variable " + std::to_string(var) + " to both values");
    bit[var] = in_used ? 1 : 0;
    if (in_used) mask |= std::uint32_t{1} << (var - 1);
  }
  for (std::size_t k = 0; k < f.clauses.size(); ++k) {
    int trues = 0;
    for (int var : f.clauses[k]) trues += bit[var] == 1 ? 1 : 0;
    if (trues != 1)
      throw ClassError("cover satisfies clause " + std::to_string(k) + " " +
                       std::to_string(trues) + " times");
  }
  return mask;
}

}  // namespace puzred
