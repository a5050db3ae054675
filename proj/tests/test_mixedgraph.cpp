#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "puzred/cover_enum.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/planar.hpp"
#include "puzred/validate.hpp"

using namespace puzred;

namespace {

MixedGraph cycle_graph(int n, EdgeKind kind = EdgeKind::Undirected) {
  MixedGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, kind);
  g.normalize();
  return g;
}

// Cube graph; the four bit-2 "vertical" edges get the given kind.
MixedGraph cube_with_matching(EdgeKind vertical_kind) {
  MixedGraph g;
  for (int i = 0; i < 8; ++i) g.add_vertex(i, __builtin_popcount(i) % 2 == 0 ? Side::One : Side::Two);
  for (int i = 0; i < 8; ++i)
    for (int b : {1, 2, 4})
      if (i < (i ^ b)) g.add_edge(i, i ^ b, b == 4 ? vertical_kind : EdgeKind::Undirected);
  g.normalize();
  return g;
}

// Brute force over every edge-state combination, filtered by is_valid_cover.
std::vector<CoverAssignment> brute_force_covers(const MixedGraph& g) {
  std::vector<CoverAssignment> out;
  std::size_t m = g.edges.size();
  CoverAssignment c;
  c.state.assign(m, EdgeState::Unused);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      if (is_valid_cover(g, c)) out.push_back(c);
      return;
    }
    int ncand = g.edges[i].kind == EdgeKind::Arc ? 2 : 3;
    const EdgeState cands[3] = {EdgeState::Unused, EdgeState::Forward, EdgeState::Backward};
    for (int k = 0; k < ncand; ++k) {
      c.state[i] = cands[k];
      self(self, i + 1);
    }
    c.state[i] = EdgeState::Unused;
  };
  rec(rec, 0);
  return out;
}

void check_matches_brute_force(const MixedGraph& g) {
  auto fast = enumerate_cycle_covers(g);
  auto slow = brute_force_covers(g);
  REQUIRE(fast == slow);
  REQUIRE(std::is_sorted(fast.begin(), fast.end()));
}

}  // namespace

TEST_CASE("text format round-trips") {
  std::string text =
      "# sample instance\n"
      "v 1 1\n"
      "v 2 2\n"
      "v 3 1\n"
      "v 4 2\n"
      "e 1 2 undir\n"
      "e 3 4 req\n"
      "a 2 3\n"
      "a 4 1   # wraps around\n";
  MixedGraph g = parse_mixed_graph(text);
  REQUIRE(g.vertices.size() == 4);
  REQUIRE(g.edges.size() == 4);
  REQUIRE(g.side_of(1) == Side::One);
  REQUIRE(g.side_of(4) == Side::Two);
  REQUIRE(g.edges[0] == Edge{1, 2, EdgeKind::Undirected});
  REQUIRE(g.edges[2] == Edge{2, 3, EdgeKind::Arc});

  std::string ser = serialize_mixed_graph(g);
  REQUIRE(parse_mixed_graph(ser) == g);
  REQUIRE(serialize_mixed_graph(parse_mixed_graph(ser)) == ser);
}

TEST_CASE("parser reports line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      parse_mixed_graph(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line == line);
    }
  };
  expect_line("v 1\nv 2\ne 1 2 banana\n", 3);
  expect_line("v 1\ne 1 2 undir\n", 2);     // undeclared endpoint
  expect_line("v 1\nv 1\n", 2);             // duplicate id reported at end
  expect_line("v 1 3\n", 1);                // bad side
  expect_line("q 1\n", 1);                  // unknown record
  expect_line("v 1\nv 2\na 1\n", 3);        // arity
  expect_line("v 1\nv 2\ne 1 2x undir\n", 3);
}

TEST_CASE("validate profiles and witnesses") {
  SECTION("C4 passes general, fails restricted_rccp") {
    MixedGraph g = cycle_graph(4);
    REQUIRE(validate(g, Profile::General).ok());
    auto rep = validate(g, Profile::RestrictedRccp);
    REQUIRE(!rep.ok());
    bool saw_degree = false;
    for (auto& c : rep.checks)
      if (c.name == "degree_exactly_3" && !c.pass) saw_degree = true;
    REQUIRE(saw_degree);
  }
  SECTION("self-loop and parallel connections are witnessed") {
    MixedGraph g;
    g.add_vertex(1);
    g.add_vertex(2);
    g.add_undirected(1, 1);
    g.add_undirected(1, 2);
    g.add_arc(2, 1);
    g.normalize();
    auto rep = validate(g, Profile::General);
    REQUIRE(!rep.ok());
    std::set<std::string> failed;
    for (auto& c : rep.checks)
      if (!c.pass) failed.insert(c.name);
    REQUIRE(failed == std::set<std::string>{"no_self_loops", "simple_pairs"});
  }
  SECTION("dangling endpoint is a structural error, not a class failure") {
    MixedGraph g;
    g.add_vertex(1);
    g.add_undirected(1, 2);
    g.normalize();
    REQUIRE_THROWS_AS(validate(g, Profile::General), StructuralError);
  }
  SECTION("K3,3 is cubic bipartite but not planar") {
    MixedGraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j) g.add_arc(i, j);
    g.normalize();
    auto rep = validate(g, Profile::RestrictedCcp);
    REQUIRE(!rep.ok());
    for (auto& c : rep.checks) {
      if (c.name == "planar") REQUIRE(!c.pass);
      if (c.name == "degree_exactly_3") REQUIRE(c.pass);
      if (c.name == "bipartite_sides") REQUIRE(c.pass);
      if (c.name == "arc_at_every_vertex") REQUIRE(c.pass);
    }
  }
  SECTION("cube with required matching passes restricted_rccp") {
    MixedGraph g = cube_with_matching(EdgeKind::Required);
    REQUIRE(validate(g, Profile::RestrictedRccp).ok());
    REQUIRE(!validate(g, Profile::RestrictedCcp).ok());
  }
  SECTION("cube with arc matching passes restricted_ccp") {
    MixedGraph g = cube_with_matching(EdgeKind::Arc);
    REQUIRE(validate(g, Profile::RestrictedCcp).ok());
  }
  SECTION("conflicting side labels are rejected") {
    MixedGraph g;
    g.add_vertex(1, Side::One);
    g.add_vertex(2, Side::One);
    g.add_undirected(1, 2);
    g.normalize();
    std::string w;
    REQUIRE(try_bipartition(g, &w).empty());
    REQUIRE(!w.empty());
  }
  SECTION("labels anchor the computed bipartition") {
    MixedGraph g;
    g.add_vertex(1);
    g.add_vertex(2, Side::One);
    g.add_undirected(1, 2);
    g.normalize();
    auto sides = computed_sides(g);
    REQUIRE(sides.at(2) == Side::One);
    REQUIRE(sides.at(1) == Side::Two);
  }
}

TEST_CASE("cover counts on small graphs") {
  SECTION("undirected C4 has the two orientations") {
    auto covers = enumerate_cycle_covers(cycle_graph(4));
    REQUIRE(covers.size() == 2);
    for (auto& c : covers) REQUIRE(cover_cycles(cycle_graph(4), c).size() == 1);
  }
  SECTION("consistently directed C4 has one cover") {
    MixedGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    for (int i = 0; i < 4; ++i) g.add_arc(i, (i + 1) % 4);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).size() == 1);
  }
  SECTION("one reversed arc kills every cover") {
    MixedGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 3);
    g.add_arc(0, 3);  // reversed
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).empty());
  }
  SECTION("odd cycle still has two covers at the general profile") {
    REQUIRE(enumerate_cycle_covers(cycle_graph(5)).size() == 2);
  }
  SECTION("required edge on C4 leaves both orientations") {
    MixedGraph g = cycle_graph(4);
    g.edges[0].kind = EdgeKind::Required;
    REQUIRE(enumerate_cycle_covers(g).size() == 2);
  }
  SECTION("K4 covers are its oriented hamiltonian cycles") {
    MixedGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) g.add_undirected(i, j);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).size() == 6);
  }
  SECTION("chord on C4 adds nothing") {
    MixedGraph g = cycle_graph(4);
    g.add_undirected(0, 2);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).size() == 2);
  }
  SECTION("path has no cover") {
    MixedGraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(i);
    g.add_undirected(0, 1);
    g.add_undirected(1, 2);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).empty());
  }
  SECTION("isolated vertex has no cover") {
    MixedGraph g = cycle_graph(4);
    g.add_vertex(9);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).empty());
  }
  SECTION("disjoint cycles multiply") {
    MixedGraph g;
    for (int i = 0; i < 8; ++i) g.add_vertex(i);
    for (int i = 0; i < 4; ++i) g.add_undirected(i, (i + 1) % 4);
    for (int i = 0; i < 4; ++i) g.add_undirected(4 + i, 4 + (i + 1) % 4);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).size() == 4);
  }
  SECTION("K3,3 covers are its twelve oriented hamiltonian cycles") {
    MixedGraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j) g.add_undirected(i, j);
    g.normalize();
    REQUIRE(enumerate_cycle_covers(g).size() == 12);
  }
  SECTION("cube with required matching") {
    MixedGraph g = cube_with_matching(EdgeKind::Required);
    REQUIRE(enumerate_cycle_covers(g).size() == 12);
  }
  SECTION("empty graph has the empty cover") {
    MixedGraph g;
    REQUIRE(enumerate_cycle_covers(g).size() == 1);
  }
  SECTION("edge cap refuses loudly") {
    EnumLimits lim;
    lim.max_edges = 3;
    REQUIRE_THROWS_AS(enumerate_cycle_covers(cycle_graph(4), lim), CapError);
  }
}

TEST_CASE("enumerator agrees with exhaustive filtering") {
  check_matches_brute_force(cycle_graph(4));
  check_matches_brute_force(cycle_graph(5));
  check_matches_brute_force(cycle_graph(6));
  {
    MixedGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) g.add_undirected(i, j);
    g.normalize();
    check_matches_brute_force(g);
  }
  {
    MixedGraph g = cycle_graph(4);
    g.edges[0].kind = EdgeKind::Required;
    g.add_undirected(0, 2);
    g.normalize();
    check_matches_brute_force(g);
  }
  {
    MixedGraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j) g.add_undirected(i, j);
    g.normalize();
    check_matches_brute_force(g);
  }
  {
    // mixed kinds: square with one arc and one required edge
    MixedGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    g.add_arc(0, 1);
    g.add_undirected(1, 2);
    g.add_required(2, 3);
    g.add_undirected(0, 3);
    g.normalize();
    check_matches_brute_force(g);
    REQUIRE(enumerate_cycle_covers(g).size() == 1);
  }
}

TEST_CASE("covers of bipartite graphs use even cycles") {
  for (MixedGraph g : {cycle_graph(4), cycle_graph(6), cube_with_matching(EdgeKind::Required)}) {
    for (auto& c : enumerate_cycle_covers(g))
      for (auto& cyc : cover_cycles(g, c)) REQUIRE(cyc.size() % 2 == 0);
  }
}

TEST_CASE("planarity wrapper") {
  SECTION("C4 is planar with a 4-face-consistent rotation") {
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    auto pr = test_planarity(4, edges);
    REQUIRE(pr.planar);
    REQUIRE(euler_ok(4, edges, pr.rotation));
    REQUIRE(count_faces(4, edges, pr.rotation) == 2);
  }
  SECTION("K5 yields a Kuratowski witness") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) edges.push_back({i, j});
    auto pr = test_planarity(5, edges);
    REQUIRE(!pr.planar);
    REQUIRE(pr.kuratowski.size() >= 9);
  }
  SECTION("disconnected graphs satisfy Euler per component") {
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    auto pr = test_planarity(6, edges);
    REQUIRE(pr.planar);
    REQUIRE(euler_ok(6, edges, pr.rotation));
  }
}
