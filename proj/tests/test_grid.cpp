#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "puzred/cover_enum.hpp"
#include "puzred/embed.hpp"
#include "puzred/gadgets.hpp"
#include "puzred/grid_graph.hpp"
#include "puzred/zigzag.hpp"

using namespace puzred;

namespace {

MixedGraph cube_instance() {
  MixedGraph g;
  for (VertexId v = 0; v < 8; ++v)
    g.add_vertex(v, (__builtin_popcount(static_cast<unsigned>(v)) % 2) ? Side::Two : Side::One);
  for (VertexId v = 0; v < 8; ++v)
    for (unsigned bit : {1u, 2u}) {
      VertexId w = v ^ bit;
      if (w > v) g.add_undirected(v, w);
    }
  for (VertexId v = 0; v < 4; ++v) g.add_required(v, v | 4);
  g.normalize();
  return g;
}

MixedGraph k33_instance() {
  MixedGraph g;
  for (VertexId v = 0; v < 6; ++v) g.add_vertex(v, v % 2 ? Side::Two : Side::One);
  for (VertexId v = 0; v < 6; ++v) g.add_undirected(v, (v + 1) % 6);
  g.add_required(0, 3);
  g.add_required(1, 4);
  g.add_required(2, 5);
  g.normalize();
  return g;
}

GridLayout draw_cube_with_short_inner_edge() {
  GridLayout lay;
  lay.graph = cube_instance();
  lay.vertex_pos = {{0, {0, 0}},  {1, {12, 0}}, {2, {0, 12}}, {3, {12, 12}},
                    {4, {4, 4}},  {5, {6, 4}},  {6, {4, 8}},  {7, {6, 8}}};
  auto straight = [](Pt a, Pt b) {
    std::vector<Pt> pts{a};
    Pt d{(b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y)};
    while (pts.back() != b) pts.push_back(pts.back() + d);
    return pts;
  };
  auto bent = [&](std::vector<Pt> corners) {
    std::vector<Pt> pts{corners[0]};
    for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
      auto leg = straight(corners[i], corners[i + 1]);
      pts.insert(pts.end(), leg.begin() + 1, leg.end());
    }
    return pts;
  };
  lay.edge_path.resize(lay.graph.edges.size());
  auto path_for = [&](VertexId u, VertexId v, std::vector<Pt> corners) {
    for (std::size_t i = 0; i < lay.graph.edges.size(); ++i) {
      const Edge& e = lay.graph.edges[i];
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
        if (e.u != u) std::reverse(corners.begin(), corners.end());
        lay.edge_path[i] = bent(corners);
        return;
      }
    }
    FAIL("edge not found");
  };
  path_for(0, 1, {{0, 0}, {0, -2}, {12, -2}, {12, 0}});
  path_for(2, 3, {{0, 12}, {0, 14}, {12, 14}, {12, 12}});
  path_for(0, 2, {{0, 0}, {0, 12}});
  path_for(1, 3, {{12, 0}, {12, 12}});
  path_for(4, 5, {{4, 4}, {6, 4}});
  path_for(6, 7, {{4, 8}, {6, 8}});
  path_for(4, 6, {{4, 4}, {4, 8}});
  path_for(5, 7, {{6, 4}, {6, 8}});
  path_for(0, 4, {{0, 0}, {4, 0}, {4, 4}});
  path_for(1, 5, {{12, 0}, {6, 0}, {6, 4}});
  path_for(2, 6, {{0, 12}, {4, 12}, {4, 8}});
  path_for(3, 7, {{12, 12}, {6, 12}, {6, 8}});
  check_layout(lay);
  return lay;
}

GridLayout draw_k4() {
  MixedGraph g;
  for (VertexId v = 0; v < 4; ++v) g.add_vertex(v);
  g.add_required(0, 1);
  g.add_undirected(0, 2);
  g.add_undirected(0, 3);
  g.add_undirected(1, 2);
  g.add_undirected(1, 3);
  g.add_required(2, 3);
  g.normalize();
  std::string text =
      "layout 0 -2 8 8\n"
      "p 0 0 0\np 1 8 0\np 2 4 8\np 3 4 3\n"
      "path 0 0 0  0 -1  0 -2  1 -2  2 -2  3 -2  4 -2  5 -2  6 -2  7 -2  8 -2  8 -1  8 0\n"
      "path 1 0 0  0 1  0 2  0 3  0 4  0 5  0 6  0 7  0 8  1 8  2 8  3 8  4 8\n"
      "path 2 0 0  1 0  2 0  3 0  4 0  4 1  4 2  4 3\n"
      "path 3 8 0  8 1  8 2  8 3  8 4  8 5  8 6  8 7  8 8  7 8  6 8  5 8  4 8\n"
      "path 4 8 0  7 0  6 0  5 0  5 1  5 2  5 3  4 3\n"
      "path 5 4 8  4 7  4 6  4 5  4 4  4 3\n";
  return parse_layout(g, text);
}

}  // namespace

TEST_CASE("rectilinear embedding draws the cube instance") {
  MixedGraph g = cube_instance();
  RotationSystem rot = plan_embedding(g);
  GridLayout lay = rectilinear_embed(g, rot);

  check_layout(lay);
  CHECK(lay.vertex_pos.size() == 8);
  CHECK(lay.edge_path.size() == 12);
  Box b = lay.bounding_box();
  CHECK(b.width() > 0);
  CHECK(b.height() > 0);
  CHECK(rotation_matches(realized_rotation(lay), rot.order));

  GridLayout again = rectilinear_embed(g, rot);
  CHECK(serialize_layout(again) == serialize_layout(lay));
}

TEST_CASE("embedding rejects nonplanar and off-profile input") {
  CHECK_THROWS_AS(plan_embedding(k33_instance()), NonPlanarError);

  MixedGraph path;
  path.add_vertex(0, Side::One);
  path.add_vertex(1, Side::Two);
  path.add_undirected(0, 1);
  path.normalize();
  RotationSystem rot;
  rot.order = {{0}, {0}};
  CHECK_THROWS_AS(rectilinear_embed(path, rot), ClassError);
}

TEST_CASE("layout text form round-trips") {
  MixedGraph g = cube_instance();
  GridLayout lay = rectilinear_embed(g, plan_embedding(g));
  std::string s = serialize_layout(lay);
  GridLayout back = parse_layout(g, s);
  CHECK(serialize_layout(back) == s);

  CHECK_THROWS_AS(parse_layout(g, "layout 0 0 1 1\nbogus\n"), ParseError);
  CHECK_THROWS_AS(parse_layout(g, "layout 0 0 1 1\np 0 0\n"), ParseError);
}

TEST_CASE("zigzag refinement produces alternating drawings") {
  for (MixedGraph g : {cube_instance(), close_variable(variable_gadget(1)),
                       close_variable(variable_gadget(2))}) {
    GridLayout coarse = rectilinear_embed(g, plan_embedding(g));
    GridLayout fine = zigzag_refine(coarse);
    check_layout(fine);
    check_zigzag(fine);
    check_refined_parity(fine);
    CHECK(rotation_matches(realized_rotation(fine), realized_rotation(coarse)));
    Box bc = coarse.bounding_box(), bf = fine.bounding_box();
    CHECK(bf.width() >= 2 * bc.width() + 1);
    CHECK(bf.width() <= 2 * bc.width() + 5);
    CHECK(bf.height() >= 2 * bc.height() + 1);
    CHECK(bf.height() <= 2 * bc.height() + 5);
  }
}

TEST_CASE("refinement rejects non-bipartite drawings") {
  GridLayout k4 = draw_k4();
  check_layout(k4);
  CHECK_THROWS_AS(zigzag_refine(k4), ClassError);
}

TEST_CASE("refinement demands drawing clearance") {
  GridLayout tight = draw_cube_with_short_inner_edge();
  CHECK_THROWS_AS(zigzag_refine(tight), StructuralError);
  CHECK_THROWS_WITH(zigzag_refine(tight), Catch::Matchers::ContainsSubstring("too short"));
}

TEST_CASE("grid form lists every unit segment of the bounding box") {
  MixedGraph g = cube_instance();
  GridLayout fine = zigzag_refine(rectilinear_embed(g, plan_embedding(g)));
  GridGraph gg = to_grid_graph(fine);

  Box b = fine.bounding_box();
  CHECK(gg.width == b.width());
  CHECK(gg.height == b.height());
  CHECK(gg.hseg.size() == static_cast<std::size_t>(gg.width) * (gg.height + 1));
  CHECK(gg.vseg.size() == static_cast<std::size_t>(gg.width + 1) * gg.height);

  std::size_t drawn = 0, required = 0;
  for (const auto* bank : {&gg.hseg, &gg.vseg})
    for (const GridSegment& s : *bank) {
      drawn += s.status != SegStatus::Empty;
      required += s.status == SegStatus::Required;
    }
  std::size_t expect_drawn = 0, expect_required = 0;
  for (std::size_t i = 0; i < fine.edge_path.size(); ++i) {
    expect_drawn += fine.edge_path[i].size() - 1;
    if (fine.graph.edges[i].required()) expect_required += fine.edge_path[i].size() - 1;
  }
  CHECK(drawn == expect_drawn);
  CHECK(required == expect_required);
}

TEST_CASE("grid text form round-trips") {
  MixedGraph g = close_variable(variable_gadget(1));
  GridGraph gg = to_grid_graph(zigzag_refine(rectilinear_embed(g, plan_embedding(g))));
  std::string s = serialize_grid(gg);
  CHECK(serialize_grid(parse_grid(s)) == s);

  CHECK_THROWS_AS(parse_grid("grid x y\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid 2 1\n..\nq.\n..\n...\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid 2 1\n..\n..\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid 1 1\n^\n.\n..\n"), ParseError);
}

TEST_CASE("contracting the drawn grid recovers the instance") {
  for (MixedGraph g : {cube_instance(), close_variable(variable_gadget(1))}) {
    for (bool refine : {false, true}) {
      GridLayout lay = rectilinear_embed(g, plan_embedding(g));
      if (refine) lay = zigzag_refine(lay);
      GridGraph gg = to_grid_graph(lay);

      MixedGraph named = contract_grid(gg, &gg.vertex_at);
      named.normalize();
      REQUIRE(named.edges.size() == g.edges.size());
      for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(named.edges[i].u == g.edges[i].u);
        CHECK(named.edges[i].v == g.edges[i].v);
        CHECK(named.edges[i].kind == g.edges[i].kind);
      }

      MixedGraph anon = contract_grid(gg);
      CHECK(enumerate_cycle_covers(anon).size() == enumerate_cycle_covers(g).size());
    }
  }
}
