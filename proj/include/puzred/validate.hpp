#pragma once

#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "puzred/mixed_graph.hpp"
#include "puzred/planar.hpp"

namespace puzred {

enum class Profile { General, RestrictedRccp, RestrictedCcp };

inline const char* profile_name(Profile p) {
  switch (p) {
    case Profile::General: return "general";
    case Profile::RestrictedRccp: return "restricted_rccp";
    case Profile::RestrictedCcp: return "restricted_ccp";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when passing
};

struct ValidationReport {
  Profile profile = Profile::General;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string summary() const {
    std::string s = std::string("profile ") + profile_name(profile) + ":";
    for (const auto& c : checks) {
      s += "\n  " + c.name + ": " + (c.pass ? "pass" : "FAIL");
      if (!c.pass && !c.witness.empty()) s += " (" + c.witness + ")";
    }
    return s;
  }
};

// Bipartition respecting declared side labels. Unlabeled components take
// Side::One at their lowest-id labeled vertex, falling back to the lowest id.
// Returns empty map and a witness string if the graph is not 2-colorable.
inline std::map<VertexId, Side> try_bipartition(const MixedGraph& g, std::string* witness) {
  auto inc = incidence_map(g);
  std::map<VertexId, Side> color;
  for (const auto& vd : g.vertices) {
    if (color.count(vd.id)) continue;
    // collect the component by BFS with relative colors
    std::map<VertexId, int> rel;
    rel[vd.id] = 0;
    std::queue<VertexId> q;
    q.push(vd.id);
    std::vector<VertexId> members{vd.id};
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      for (int ei : inc.at(x)) {
        const Edge& e = g.edges[ei];
        VertexId y = e.other(x);
        if (y == x) continue;  // self-loop caught elsewhere
        auto it = rel.find(y);
        if (it == rel.end()) {
          rel[y] = rel[x] ^ 1;
          members.push_back(y);
          q.push(y);
        } else if (it->second == rel[x]) {
          if (witness)
            *witness = "odd cycle through edge " + std::to_string(e.u) + "-" + std::to_string(e.v);
          return {};
        }
      }
    }
    // pick orientation from the lowest-id labeled member, else lowest id
    std::sort(members.begin(), members.end());
    int flip = 0;
    bool anchored = false;
    for (VertexId x : members) {
      Side s = g.side_of(x);
      if (s == Side::Unknown) continue;
      flip = (s == Side::One ? 0 : 1) ^ rel[x];
      anchored = true;
      break;
    }
    (void)anchored;
    for (VertexId x : members) {
      Side s = (rel[x] ^ flip) == 0 ? Side::One : Side::Two;
      Side declared = g.side_of(x);
      if (declared != Side::Unknown && declared != s) {
        if (witness) *witness = "side label conflict at vertex " + std::to_string(x);
        return {};
      }
      color[x] = s;
    }
  }
  return color;
}

// Bipartition or throw; for callers past validation.
inline std::map<VertexId, Side> computed_sides(const MixedGraph& g) {
  std::string witness;
  auto sides = try_bipartition(g, &witness);
  if (sides.empty() && !g.vertices.empty()) throw ClassError("graph is not bipartite: " + witness);
  return sides;
}

inline ValidationReport validate(const MixedGraph& g, Profile profile) {
  if (!g.is_canonical())
    throw StructuralError("graph not in canonical form; call normalize()");
  auto inc = incidence_map(g);  // throws StructuralError on dangling endpoints

  ValidationReport rep;
  rep.profile = profile;
  auto check = [&rep](const std::string& name, bool pass, const std::string& witness) {
    rep.checks.push_back({name, pass, pass ? std::string{} : witness});
  };

  {
    std::string w;
    bool ok = true;
    for (const Edge& e : g.edges)
      if (e.u == e.v) {
        ok = false;
        w = "self-loop at vertex " + std::to_string(e.u);
        break;
      }
    check("no_self_loops", ok, w);
  }
  bool simple = true;
  {
    std::string w;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : g.edges)
      if (!seen.insert({e.lo(), e.hi()}).second) {
        simple = false;
        w = "multiple connections between " + std::to_string(e.lo()) + " and " +
            std::to_string(e.hi());
        break;
      }
    check("simple_pairs", simple, w);
  }
  if (profile == Profile::General) return rep;

  {
    std::string w;
    bool ok = true;
    for (const auto& [v, list] : inc)
      if (list.size() != 3) {
        ok = false;
        w = "vertex " + std::to_string(v) + " has degree " + std::to_string(list.size());
        break;
      }
    check("degree_exactly_3", ok, w);
  }
  std::map<VertexId, Side> sides;
  {
    std::string w;
    sides = try_bipartition(g, &w);
    check("bipartite_sides", !sides.empty() || g.vertices.empty(), w);
  }
  {
    // planarity of the underlying simple graph
    std::map<VertexId, int> idx;
    for (const auto& vd : g.vertices) idx[vd.id] = static_cast<int>(idx.size());
    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges)
      if (e.u != e.v) pairs.insert({std::min(idx[e.u], idx[e.v]), std::max(idx[e.u], idx[e.v])});
    std::vector<std::pair<int, int>> simple_edges(pairs.begin(), pairs.end());
    auto pr = test_planarity(static_cast<int>(idx.size()), simple_edges);
    std::string w;
    if (!pr.planar) {
      w = "Kuratowski subgraph with " + std::to_string(pr.kuratowski.size()) + " edges";
    }
    check("planar", pr.planar, w);
  }

  if (profile == Profile::RestrictedRccp) {
    std::string w;
    bool ok = true;
    for (const auto& [v, list] : inc) {
      int req = 0;
      for (int ei : list) req += g.edges[ei].required() ? 1 : 0;
      if (req != 1) {
        ok = false;
        w = "vertex " + std::to_string(v) + " has " + std::to_string(req) + " required edges";
        break;
      }
    }
    check("one_required_edge_per_vertex", ok, w);
  } else {
    {
      std::string w;
      bool ok = true;
      for (const Edge& e : g.edges)
        if (e.required()) {
          ok = false;
          w = "required edge " + std::to_string(e.u) + "-" + std::to_string(e.v);
          break;
        }
      check("no_required_edges", ok, w);
    }
    {
      std::string w;
      bool ok = true;
      for (const auto& [v, list] : inc) {
        bool has_arc = false;
        for (int ei : list) has_arc = has_arc || g.edges[ei].kind == EdgeKind::Arc;
        if (!has_arc) {
          ok = false;
          w = "vertex " + std::to_string(v) + " has no incident arc";
          break;
        }
      }
      check("arc_at_every_vertex", ok, w);
    }
  }
  return rep;
}

}  // namespace puzred
