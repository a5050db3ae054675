#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "puzred/cover_enum.hpp"
#include "puzred/gadgets.hpp"
#include "puzred/matching_count.hpp"
#include "puzred/simulate.hpp"
#include "puzred/validate.hpp"

using namespace puzred;

namespace {

MixedGraph hexagon_with_chords() {
  MixedGraph g;
  for (int v = 0; v < 6; ++v) g.add_vertex(v, v % 2 == 0 ? Side::One : Side::Two);
  g.add_required(0, 1);
  g.add_undirected(1, 2);
  g.add_required(2, 3);
  g.add_undirected(3, 4);
  g.add_required(4, 5);
  g.add_undirected(5, 0);
  g.add_undirected(0, 3);
  g.add_undirected(1, 4);
  g.add_undirected(2, 5);
  g.normalize();
  return g;
}

MixedGraph cube_with_required_verticals() {
  MixedGraph g;
  for (int v = 0; v < 8; ++v) {
    int pop = __builtin_popcount(static_cast<unsigned>(v));
    g.add_vertex(v, pop % 2 == 0 ? Side::One : Side::Two);
  }
  for (int v = 0; v < 8; ++v)
    for (int bit : {1, 2}) {
      int w = v ^ bit;
      if (w > v) g.add_undirected(v, w);
    }
  for (int v = 0; v < 4; ++v) g.add_required(v, v | 4);
  g.normalize();
  return g;
}

void check_roundtrip(const MixedGraph& g, bool check_profiles, bool cross_check = false) {
  SimulationTrace tr = simulate_required_edges(g, check_profiles);
  EnumLimits lim;
  lim.max_edges = 256;
  auto before = enumerate_cycle_covers(g, lim);
  auto after = enumerate_covers_unused_matching(tr.after);
  if (cross_check) REQUIRE(enumerate_cycle_covers(tr.after, lim) == after);
  REQUIRE(count_covers_unused_matching(tr.after) == after.size());
  REQUIRE(before.size() == after.size());

  std::vector<CoverAssignment> projected;
  for (const auto& c : after) {
    CoverAssignment p = project_simulated_cover(tr, c);
    REQUIRE(is_valid_cover(g, p));
    projected.push_back(std::move(p));
  }
  std::sort(projected.begin(), projected.end());
  REQUIRE(projected == before);

  std::vector<CoverAssignment> lifted;
  for (const auto& c : before) {
    CoverAssignment l = lift_simulated_cover(tr, c);
    REQUIRE(is_valid_cover(tr.after, l));
    REQUIRE(project_simulated_cover(tr, l) == c);
    lifted.push_back(std::move(l));
  }
  std::sort(lifted.begin(), lifted.end());
  REQUIRE(lifted == after);
}

}  // namespace

TEST_CASE("seam closure of the splice block has one completion per direction") {
  MixedGraph seam = required_edge_block();
  seam.add_required(0, 1);
  seam.normalize();
  auto covers = enumerate_cycle_covers(seam);
  REQUIRE(covers.size() == 2);
  int e = seam.find_edge(0, 1);
  REQUIRE(covers[0].state[e] != covers[1].state[e]);
  REQUIRE(enumerate_cycle_covers(required_edge_block()).empty());
}

TEST_CASE("splicing preserves covers bijectively on small instances") {
  check_roundtrip(hexagon_with_chords(), false, true);
  check_roundtrip(cube_with_required_verticals(), false, true);
}

TEST_CASE("capped variable instances convert to the arc-marked class") {
  MixedGraph capped = close_variable(variable_gadget(1));
  SimulationTrace tr = simulate_required_edges(capped);
  ValidationReport rep = validate(tr.after, Profile::RestrictedCcp);
  INFO(rep.summary());
  REQUIRE(rep.ok());
  check_roundtrip(capped, true);
}

TEST_CASE("sealed clause instances convert and keep three covers") {
  InstanceBuilder b;
  auto ct = b.add(clause_gadget());
  for (int j = 0; j < 3; ++j) {
    auto vt = b.add(variable_gadget(1));
    b.fuse(vt[0], ct[j]);
  }
  MixedGraph closed = b.take();
  SimulationTrace tr = simulate_required_edges(closed);
  REQUIRE(count_covers_unused_matching(tr.after) == 3);
}

TEST_CASE("conversion rejects off-profile inputs and arc-free outputs") {
  MixedGraph c4;
  for (int v = 0; v < 4; ++v) c4.add_vertex(v, v % 2 == 0 ? Side::One : Side::Two);
  for (int v = 0; v < 4; ++v) c4.add_undirected(v, (v + 1) % 4);
  c4.normalize();
  REQUIRE_THROWS_AS(simulate_required_edges(c4), ClassError);

  // planar, one required edge per vertex, but no arcs anywhere: the output
  // violates the arc-at-every-vertex condition
  REQUIRE_THROWS_AS(simulate_required_edges(cube_with_required_verticals()), ClassError);
}
