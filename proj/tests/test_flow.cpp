#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "puzred/embed.hpp"
#include "puzred/flow.hpp"
#include "puzred/gadgets.hpp"
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

GridGraph bare_grid(int w, int h) {
  GridGraph gg;
  gg.width = w;
  gg.height = h;
  gg.hseg.assign(static_cast<std::size_t>(w) * (h + 1), {});
  gg.vseg.assign(static_cast<std::size_t>(w + 1) * h, {});
  return gg;
}

FlowNetwork refined_network(const MixedGraph& g) {
  GridLayout fine = zigzag_refine(rectilinear_embed(g, plan_embedding(g)));
  return build_network(to_grid_graph(fine));
}

}  // namespace

TEST_CASE("network construction balances supply and demand") {
  MixedGraph g = cube_instance();
  FlowNetwork n = refined_network(g);

  long long demand = 0;
  for (const FlowSink& s : n.sinks) demand += s.demand;
  CHECK(demand == 2 * static_cast<long long>(n.sources.size()));
  CHECK(n.sinks.size() == static_cast<std::size_t>(n.width + 1) * (n.height + 1));

  std::size_t unconstrained = 0, exclusive = 0, fixed = 0, biased = 0;
  for (const FlowSource& s : n.sources) {
    unconstrained += s.type == SourceType::Unconstrained;
    exclusive += s.type == SourceType::Exclusive;
    biased += s.type == SourceType::Biased;
    fixed += s.type == SourceType::Fixed;
  }
  std::size_t drawn_undirected = 0, drawn_required = 0, drawn_directed = 0, empty = 0;
  for (const auto* bank : {&n.grid.hseg, &n.grid.vseg})
    for (const GridSegment& sg : *bank) {
      drawn_undirected += sg.status == SegStatus::Undirected;
      drawn_required += sg.status == SegStatus::Required;
      drawn_directed += sg.status == SegStatus::Directed;
      empty += sg.status == SegStatus::Empty;
    }
  CHECK(unconstrained == drawn_undirected);
  CHECK(exclusive == drawn_required);
  CHECK(biased == drawn_directed);
  CHECK(fixed == empty);
}

TEST_CASE("all-empty grid has one flow and only blank sinks") {
  FlowNetwork n = build_network(bare_grid(3, 2));
  for (FlowMode m : {FlowMode::Exact, FlowMode::AtLeast, FlowMode::AtMost}) {
    auto flows = enumerate_flows(n, m);
    REQUIRE(flows.size() == 1);
    for (auto pr : flows[0].send) CHECK(pr == std::array<int, 2>{1, 1});
  }
  auto cls = classify_sinks(n);
  CHECK(cls.size() == n.sinks.size());
  for (auto [k, c] : cls) CHECK(c == SinkClass::Blank);

  CoverAssignment empty_cover;
  Flow f = cover_to_flow(empty_cover, n);
  CHECK(f == enumerate_flows(n, FlowMode::Exact)[0]);
}

TEST_CASE("required segment between two leaf sinks admits no flow") {
  GridGraph gg = bare_grid(1, 0);
  gg.horizontal(0, 0) = {SegStatus::Required, false, 0};
  FlowNetwork n = build_network(gg);
  REQUIRE(n.sinks.size() == 2);
  CHECK(n.sinks[0].demand == 1);
  CHECK(n.sinks[1].demand == 1);
  for (FlowMode m : {FlowMode::Exact, FlowMode::AtLeast, FlowMode::AtMost})
    CHECK(enumerate_flows(n, m).empty());
}

TEST_CASE("lone unconstrained source must split evenly") {
  GridGraph gg = bare_grid(1, 0);
  gg.horizontal(0, 0) = {SegStatus::Undirected, false, 0};
  FlowNetwork n = build_network(gg);
  auto flows = enumerate_flows(n, FlowMode::Exact);
  REQUIRE(flows.size() == 1);
  CHECK(flows[0].send[0] == std::array<int, 2>{1, 1});
}

TEST_CASE("biased sources record their target sink explicitly") {
  for (bool reversed : {false, true}) {
    GridGraph gg = bare_grid(2, 0);
    gg.horizontal(0, 0) = {SegStatus::Directed, reversed, 0};
    FlowNetwork n = build_network(gg);
    const FlowSource& s = n.sources[0];
    CHECK(s.type == SourceType::Biased);
    CHECK(s.sink_a == (reversed ? 0 : 1));
    CHECK(s.sink_b == (reversed ? 1 : 0));
    std::string line = std::string("source 0 0 b ") + (reversed ? "0 1" : "1 0");
    CHECK(serialize_network(n).find(line) != std::string::npos);
    CHECK(enumerate_flows(n, FlowMode::Exact).size() == 1);
  }
}

TEST_CASE("flow counts match cycle cover counts in all three modes") {
  for (MixedGraph g : {cube_instance(), close_variable(variable_gadget(1)),
                       close_variable(variable_gadget(2))}) {
    FlowNetwork n = refined_network(g);
    std::size_t covers = enumerate_cycle_covers(g).size();
    auto exact = enumerate_flows(n, FlowMode::Exact);
    auto least = enumerate_flows(n, FlowMode::AtLeast);
    auto most = enumerate_flows(n, FlowMode::AtMost);
    CHECK(exact.size() == covers);
    CHECK(exact == least);
    CHECK(exact == most);
  }
}

TEST_CASE("cover and flow maps are mutually inverse bijections") {
  for (MixedGraph g : {cube_instance(), close_variable(variable_gadget(1))}) {
    FlowNetwork n = refined_network(g);
    auto covers = enumerate_cycle_covers(g);
    auto flows = enumerate_flows(n, FlowMode::Exact);
    REQUIRE(covers.size() == flows.size());

    std::set<Flow> flow_set(flows.begin(), flows.end());
    std::set<Flow> mapped;
    for (const CoverAssignment& c : covers) {
      Flow f = cover_to_flow(c, n);
      CHECK(flow_set.count(f) == 1);
      CHECK(mapped.insert(f).second);
      CHECK(flow_to_cover(f, n).state == c.state);
    }
    for (const Flow& f : flows) {
      CoverAssignment c = flow_to_cover(f, n);
      CHECK(is_valid_cover(g, c));
      CHECK(cover_to_flow(c, n) == f);
    }
  }
}

TEST_CASE("junction sinks always receive contributions zero one and two") {
  MixedGraph g = cube_instance();
  FlowNetwork n = refined_network(g);
  auto cls = classify_sinks(n);
  for (const Flow& f : enumerate_flows(n, FlowMode::Exact)) {
    std::vector<std::multiset<int>> contrib(n.sinks.size());
    for (std::size_t i = 0; i < n.sources.size(); ++i) {
      if (n.sources[i].type == SourceType::Fixed) continue;
      contrib[n.sources[i].sink_a].insert(f.send[i][0]);
      contrib[n.sources[i].sink_b].insert(f.send[i][1]);
    }
    for (auto [k, c] : cls)
      if (c == SinkClass::TShaped) CHECK(contrib[k] == std::multiset<int>{0, 1, 2});
  }
}

TEST_CASE("refined drawings classify every sink") {
  MixedGraph g = close_variable(variable_gadget(1));
  FlowNetwork n = refined_network(g);
  auto cls = classify_sinks(n);
  CHECK(cls.size() == n.sinks.size());
  std::size_t t = 0, lu = 0, lx = 0, lb = 0;
  for (auto [k, c] : cls) {
    t += c == SinkClass::TShaped;
    lu += c == SinkClass::LUnconstrained;
    lx += c == SinkClass::LExclusive;
    lb += c == SinkClass::LBiased;
  }
  CHECK(t == g.vertices.size());
  CHECK(lu > 0);
  CHECK(lx > 0);
  CHECK(lb > 0);  // the closed variable carries arcs
}

TEST_CASE("straight drawings are legitimately unclassifiable") {
  MixedGraph g = cube_instance();
  GridLayout coarse = rectilinear_embed(g, plan_embedding(g));
  FlowNetwork n = build_network(to_grid_graph(coarse));
  CHECK_THROWS_AS(classify_sinks(n), UnclassifiableError);
  CHECK_THROWS_WITH(classify_sinks(n), Catch::Matchers::ContainsSubstring("collinear"));
}

TEST_CASE("network and flow text forms round-trip") {
  MixedGraph g = cube_instance();
  FlowNetwork n = refined_network(g);
  std::string s = serialize_network(n);
  FlowNetwork back = parse_network(s);
  CHECK(serialize_network(back) == s);
  CHECK(enumerate_flows(back, FlowMode::Exact).size() ==
        enumerate_flows(n, FlowMode::Exact).size());

  Flow f = enumerate_flows(n, FlowMode::Exact).front();
  CHECK(parse_flow(n, serialize_flow(f)) == f);

  CHECK_THROWS_AS(parse_network("sink 0 0 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_network("sink 0 0 1\nsink 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("sink 0 0 1\nsink 2 0 1\nsource 0 0 u 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_flow(n, "f 0 3 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_flow(n, "f 0 1 1\n"), ParseError);  // all other lines missing
}

TEST_CASE("enumeration caps fail loud") {
  MixedGraph g = cube_instance();
  FlowNetwork n = refined_network(g);
  CHECK_THROWS_AS(enumerate_flows(n, FlowMode::Exact, {1 << 20, 10}), CapError);
  CHECK_THROWS_AS(enumerate_flows(n, FlowMode::Exact, {4, 200'000'000}), CapError);
}
